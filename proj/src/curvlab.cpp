#include "bachflat/curvlab.hpp"

#include <algorithm>

namespace bachflat {

namespace {

using Jet4 = std::array<std::array<Jet2, 4>, 4>;

// derivative along coordinate axis 0..3; the angles never carry dependence
Jet2 coord_d(const Jet2& j, int axis) {
  switch (axis) {
    case 0: return j.d1();
    case 1: return j.d2();
    default: return Jet2();  // exact zero to every order
  }
}

Rat coord_partial(const Jet2& j, int axis) {
  switch (axis) {
    case 0: return j.partial(1, 0);
    case 1: return j.partial(0, 1);
    default: return Rat(0);
  }
}

JetMat2 invert2(const JetMat2& m) {
  const Jet2 det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Jet2 idet = det.inv();
  JetMat2 out;
  out[0][0] = m[1][1] * idet;
  out[0][1] = -m[0][1] * idet;
  out[1][0] = -m[1][0] * idet;
  out[1][1] = m[0][0] * idet;
  return out;
}

JetMat2 scale2(const JetMat2& m, const Jet2& s) {
  JetMat2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = m[i][j] * s;
  }
  return out;
}

// Levi-Civita pipeline for a block-diagonal torus-invariant metric. Values of
// Riemann and Ricci are exact; Christoffels are kept as jets so that the
// Riemann derivative terms stay exact too.
struct Pipeline {
  Jet4 g, ginv;
  Mat4 gv, ginvv;
  Jet2 gam[4][4][4];  // gam[k][i][j], upper index first, symmetric in (i, j)
  Rat riem_up[4][4][4][4];
  Rat riem[4][4][4][4];  // fully lowered
  Mat4 ric;
  Rat scal;
  bool symmetries_ok = true;
  bool ricci_cross_zero = true;
};

Pipeline run_pipeline(const JetMat2& xx, const JetMat2& tt) {
  Pipeline pl;
  for (auto& row : pl.gv) row.fill(Rat(0));
  for (auto& row : pl.ginvv) row.fill(Rat(0));
  for (auto& row : pl.ric) row.fill(Rat(0));

  const JetMat2 xx_inv = invert2(xx);
  const JetMat2 tt_inv = invert2(tt);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      pl.g[i][j] = xx[i][j];
      pl.g[i + 2][j + 2] = tt[i][j];
      pl.ginv[i][j] = xx_inv[i][j];
      pl.ginv[i + 2][j + 2] = tt_inv[i][j];
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      pl.gv[i][j] = pl.g[i][j].value();
      pl.ginvv[i][j] = pl.ginv[i][j].value();
    }
  }

  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        Jet2 acc;
        for (int l = 0; l < 4; ++l) {
          acc += pl.ginv[k][l] * (coord_d(pl.g[j][l], i) + coord_d(pl.g[i][l], j) -
                                  coord_d(pl.g[i][j], l));
        }
        pl.gam[k][i][j] = acc * Rat(1, 2);
        pl.gam[k][j][i] = pl.gam[k][i][j];
      }
    }
  }

  // R^rho_{sigma mu nu} = d_mu Gam^rho_{nu sigma} - d_nu Gam^rho_{mu sigma}
  //                       + Gam^rho_{mu l} Gam^l_{nu sigma}
  //                       - Gam^rho_{nu l} Gam^l_{mu sigma}
  for (int rho = 0; rho < 4; ++rho) {
    for (int sig = 0; sig < 4; ++sig) {
      for (int mu = 0; mu < 4; ++mu) pl.riem_up[rho][sig][mu][mu] = Rat(0);
      for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu + 1; nu < 4; ++nu) {
          Rat val = coord_partial(pl.gam[rho][nu][sig], mu) -
                    coord_partial(pl.gam[rho][mu][sig], nu);
          for (int l = 0; l < 4; ++l) {
            val = val + pl.gam[rho][mu][l].value() * pl.gam[l][nu][sig].value() -
                  pl.gam[rho][nu][l].value() * pl.gam[l][mu][sig].value();
          }
          pl.riem_up[rho][sig][mu][nu] = val;
          pl.riem_up[rho][sig][nu][mu] = -val;
        }
      }
    }
  }

  for (int sig = 0; sig < 4; ++sig) {
    for (int nu = 0; nu < 4; ++nu) {
      Rat acc(0);
      for (int mu = 0; mu < 4; ++mu) acc = acc + pl.riem_up[mu][sig][mu][nu];
      pl.ric[sig][nu] = acc;
    }
  }
  pl.scal = Rat(0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) pl.scal = pl.scal + pl.ginvv[i][j] * pl.ric[i][j];
  }

  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          Rat acc(0);
          for (int l = 0; l < 4; ++l) acc = acc + pl.gv[a][l] * pl.riem_up[l][b][c][d];
          pl.riem[a][b][c][d] = acc;
        }
      }
    }
  }

  for (int a = 0; a < 4 && pl.symmetries_ok; ++a) {
    for (int b = 0; b < 4 && pl.symmetries_ok; ++b) {
      for (int c = 0; c < 4 && pl.symmetries_ok; ++c) {
        for (int d = 0; d < 4; ++d) {
          const Rat& R = pl.riem[a][b][c][d];
          if (R != -pl.riem[b][a][c][d] || R != pl.riem[c][d][a][b] ||
              !(R + pl.riem[a][c][d][b] + pl.riem[a][d][b][c]).is_zero()) {
            pl.symmetries_ok = false;
            break;
          }
        }
      }
    }
  }

  for (int i = 0; i < 2; ++i) {
    for (int j = 2; j < 4; ++j) {
      if (!pl.ric[i][j].is_zero() || !pl.ric[j][i].is_zero()) {
        pl.ricci_cross_zero = false;
      }
    }
  }
  return pl;
}

Rat max_abs(const Mat4& m) {
  Rat best(0);
  for (const auto& row : m) {
    for (const auto& v : row) best = std::max(best, v.abs());
  }
  return best;
}

// Hessian of the scalar curvature function s(r) = 2 q3 + q4 r: affine in the
// action coordinates, so only the Christoffel terms survive.
Mat4 hessian_of_scal(const Pipeline& pl, const Rat& q4) {
  Mat4 h;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      h[i][j] = -(pl.gam[0][i][j].value() + pl.gam[1][i][j].value()) * q4;
    }
  }
  return h;
}

Rat metric_trace(const Pipeline& pl, const Mat4& t) {
  Rat acc(0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) acc = acc + pl.ginvv[i][j] * t[i][j];
  }
  return acc;
}

// 2-form index pairs, the basis of Lambda^2
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

int perm_sign(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) {
        std::swap(p[i], p[j]);
        sign = -sign;
      }
    }
  }
  return sign;
}

using Mat6 = std::array<std::array<Rat, 6>, 6>;

// operator on 2-forms from a (0,4) tensor antisymmetric in its last pair:
// (K alpha)_{ab} = (1/2) K_{ab}^{..cd} alpha_{cd}
Mat6 two_form_operator(const Rat K[4][4][4][4], const Mat4& ginv) {
  Mat6 M;
  for (int r = 0; r < 6; ++r) {
    const int a = kPairs[r][0], b = kPairs[r][1];
    for (int c6 = 0; c6 < 6; ++c6) {
      const int c = kPairs[c6][0], d = kPairs[c6][1];
      Rat acc(0);
      for (int e = 0; e < 4; ++e) {
        for (int f = 0; f < 4; ++f) {
          acc = acc + K[a][b][e][f] * ginv[e][c] * ginv[f][d];
        }
      }
      M[r][c6] = acc;
    }
  }
  return M;
}

// Characteristic polynomial of W+ on the self-dual 2-forms. The orientation
// is the complex one, for which the symplectic form dx1^dth1 + dx2^dth2 is
// self-dual; against the coordinate order (x1, x2, th1, th2) that orientation
// carries sign -1. Needs unit metric determinant, which the symplectic
// normalization guarantees.
Poly wplus_charpoly(const Pipeline& pl) {
  const Rat det_x = pl.gv[0][0] * pl.gv[1][1] - pl.gv[0][1] * pl.gv[1][0];
  const Rat det_t = pl.gv[2][2] * pl.gv[3][3] - pl.gv[2][3] * pl.gv[3][2];
  if (det_x * det_t != Rat(1)) {
    throw DefectError("self-dual decomposition needs unit metric determinant");
  }

  // Weyl values by the four-dimensional decomposition of Riemann
  Rat W[4][4][4][4];
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          Rat v = pl.riem[a][b][c][d];
          v = v - Rat(1, 2) * (pl.gv[a][c] * pl.ric[b][d] - pl.gv[a][d] * pl.ric[b][c] +
                               pl.gv[b][d] * pl.ric[a][c] - pl.gv[b][c] * pl.ric[a][d]);
          v = v + (pl.scal / Rat(6)) *
                      (pl.gv[a][c] * pl.gv[b][d] - pl.gv[a][d] * pl.gv[b][c]);
          W[a][b][c][d] = v;
        }
      }
    }
  }

  Rat eps[4][4][4][4];
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) eps[a][b][c][d] = Rat(-perm_sign(a, b, c, d));
      }
    }
  }

  const Mat6 star = two_form_operator(eps, pl.ginvv);
  const Mat6 wop = two_form_operator(W, pl.ginvv);

  // star^2 = id and the symplectic form is self-dual; both pin the orientation
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      Rat acc(0);
      for (int k = 0; k < 6; ++k) acc = acc + star[i][k] * star[k][j];
      if (acc != Rat(i == j ? 1 : 0)) {
        throw DefectError("star operator does not square to the identity");
      }
    }
  }
  Rat omega[6] = {Rat(0), Rat(1), Rat(0), Rat(0), Rat(1), Rat(0)};
  for (int i = 0; i < 6; ++i) {
    Rat acc(0);
    for (int k = 0; k < 6; ++k) acc = acc + star[i][k] * omega[k];
    if (acc != omega[i]) {
      throw DefectError("symplectic form is not self-dual in the chosen orientation");
    }
  }

  // projector onto the self-dual subspace
  Mat6 proj;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      proj[i][j] = (star[i][j] + Rat(i == j ? 1 : 0)) * Rat(1, 2);
    }
  }

  // pivot columns of the projector give an exact basis of Lambda^2_+
  Mat6 red = proj;
  int basis_cols[3];
  int rank = 0;
  int row = 0;
  for (int col = 0; col < 6 && row < 6; ++col) {
    int piv = -1;
    for (int i = row; i < 6; ++i) {
      if (!red[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(red[piv], red[row]);
    const Rat inv = red[row][col].inv();
    for (int j = 0; j < 6; ++j) red[row][j] = red[row][j] * inv;
    for (int i = 0; i < 6; ++i) {
      if (i == row || red[i][col].is_zero()) continue;
      const Rat f = red[i][col];
      for (int j = 0; j < 6; ++j) red[i][j] = red[i][j] - f * red[row][j];
    }
    if (rank < 3) basis_cols[rank] = col;
    ++rank;
    ++row;
  }
  if (rank != 3) throw DefectError("self-dual subspace does not have rank three");

  // restrict W to the invariant subspace: solve B X = (W P) B exactly
  Rat B[6][3], WB[6][3];
  for (int i = 0; i < 6; ++i) {
    for (int k = 0; k < 3; ++k) B[i][k] = proj[i][basis_cols[k]];
  }
  for (int i = 0; i < 6; ++i) {
    for (int k = 0; k < 3; ++k) {
      Rat acc(0);
      for (int l = 0; l < 6; ++l) acc = acc + wop[i][l] * B[l][k];
      WB[i][k] = acc;
    }
  }
  // Gaussian elimination on the 6x(3+3) system
  Rat aug[6][6];
  for (int i = 0; i < 6; ++i) {
    for (int k = 0; k < 3; ++k) {
      aug[i][k] = B[i][k];
      aug[i][3 + k] = WB[i][k];
    }
  }
  int prow = 0;
  int pivot_col_of_row[3] = {-1, -1, -1};
  for (int col = 0; col < 3 && prow < 6; ++col) {
    int piv = -1;
    for (int i = prow; i < 6; ++i) {
      if (!aug[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) throw DefectError("self-dual basis degenerated");
    std::swap(aug[piv], aug[prow]);
    const Rat inv = aug[prow][col].inv();
    for (int j = 0; j < 6; ++j) aug[prow][j] = aug[prow][j] * inv;
    for (int i = 0; i < 6; ++i) {
      if (i == prow || aug[i][col].is_zero()) continue;
      const Rat f = aug[i][col];
      for (int j = 0; j < 6; ++j) aug[i][j] = aug[i][j] - f * aug[prow][j];
    }
    pivot_col_of_row[col] = prow;
    ++prow;
  }
  for (int i = prow; i < 6; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (!aug[i][3 + k].is_zero()) {
        throw DefectError("Weyl operator leaks off the self-dual subspace");
      }
    }
  }
  Rat X[3][3];
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) X[r][k] = aug[pivot_col_of_row[r]][3 + k];
  }

  // char(t) = t^3 - tr t^2 + (sum principal 2x2 minors) t - det
  const Rat tr = X[0][0] + X[1][1] + X[2][2];
  Rat minors(0);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      minors = minors + X[i][i] * X[j][j] - X[i][j] * X[j][i];
    }
  }
  const Rat det = X[0][0] * (X[1][1] * X[2][2] - X[1][2] * X[2][1]) -
                  X[0][1] * (X[1][0] * X[2][2] - X[1][2] * X[2][0]) +
                  X[0][2] * (X[1][0] * X[2][1] - X[1][1] * X[2][0]);
  return Poly({-det, minors, -tr, Rat(1)});
}

LaplacianCheck laplacian_core(const Profile& pr, const Point4& pt, const Rat& g1,
                              const Rat& g2) {
  const MetricJets mj = metric_at(pr, pt);
  const Pipeline pl = run_pipeline(mj.xx, mj.angle);
  Rat trace(0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Rat hess = -(pl.gam[0][i][j].value() + pl.gam[1][i][j].value()) * g1;
      if (i < 2 && j < 2) hess = hess + g2;
      trace = trace + pl.ginvv[i][j] * hess;
    }
  }
  const Rat r = pt.r();
  const Rat q = pr.q_poly().eval(r);
  const Rat qp = pr.q_poly().derivative().eval(r);
  LaplacianCheck out;
  out.trace_laplacian = trace;
  out.hodge_laplacian = -trace;
  out.closed_form = Rat(-2) * ((Rat(2) - qp / r) * g1 + (r - q / r) * g2);
  out.residual = out.hodge_laplacian - out.closed_form;
  return out;
}

}  // namespace

MetricJets metric_at(const Profile& pr, const Point4& pt) {
  if (!(pt.x1 > Rat(0)) || !(pt.x2 > Rat(0))) {
    throw DomainError("point is outside the open quadrant x1, x2 > 0");
  }
  if (!(pt.r() > pr.a)) {
    throw DomainError("point lies at or below the zero section r = a");
  }
  MetricJets mj;
  mj.x1 = Jet2::seed1(pt.x1);
  mj.x2 = Jet2::seed2(pt.x2);
  mj.r = mj.x1 + mj.x2;
  const Jet2 q = eval_on_jet(pr.q_poly(), mj.r);
  const Jet2 p = eval_on_jet(pr.p_poly(), mj.r);
  if (p.value().is_zero()) {
    throw DomainError("metric is singular where p(r) vanishes");
  }
  const Jet2 hdd = -mj.r.inv() + mj.r / p;  // h''(r) = -1/r + r/p
  const Rat half(1, 2);
  mj.xx[0][0] = (mj.x1.inv() + hdd) * half;
  mj.xx[0][1] = hdd * half;
  mj.xx[1][0] = mj.xx[0][1];
  mj.xx[1][1] = (mj.x2.inv() + hdd) * half;

  const Jet2 f = q / (mj.r * mj.r * mj.r);
  const Rat two(2);
  mj.angle[0][0] = (mj.x1 - mj.x1 * mj.x1 * f) * two;
  mj.angle[0][1] = -(mj.x1 * mj.x2 * f) * two;
  mj.angle[1][0] = mj.angle[0][1];
  mj.angle[1][1] = (mj.x2 - mj.x2 * mj.x2 * f) * two;

  mj.xx_inv = invert2(mj.xx);
  mj.det_xx = mj.xx[0][0] * mj.xx[1][1] - mj.xx[0][1] * mj.xx[1][0];
  return mj;
}

CurvatureReport curvature_at(const Profile& pr, const Point4& pt) {
  const MetricJets mj = metric_at(pr, pt);
  const Pipeline pl = run_pipeline(mj.xx, mj.angle);

  CurvatureReport rep;
  rep.pt = pt;
  rep.r = pt.r();
  rep.metric = pl.gv;
  rep.metric_inv = pl.ginvv;
  rep.scal = pl.scal;
  rep.abreu_scal =
      -(mj.angle[0][0].partial(2, 0) + Rat(2) * mj.angle[0][1].partial(1, 1) +
        mj.angle[1][1].partial(0, 2));
  rep.ricci = pl.ric;
  rep.lambda = einstein_constant(pr) / Rat(4);
  rep.bach_flat = is_bach_flat(pr);
  rep.riemann_symmetries_hold = pl.symmetries_ok;

  // J sends the x-block frame to the angle frame through Hess(u); Ricci is
  // J-invariant iff the cross block vanishes and U Ric_tt U^T = Ric_xx.
  bool jinv = pl.ricci_cross_zero;
  for (int i = 0; i < 2 && jinv; ++i) {
    for (int j = 0; j < 2; ++j) {
      Rat acc(0);
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          acc = acc + pl.gv[i][k] * pl.ric[k + 2][l + 2] * pl.gv[j][l];
        }
      }
      if (acc != pl.ric[i][j]) {
        jinv = false;
        break;
      }
    }
  }
  rep.ricci_j_invariant = jinv;

  const Rat s = pl.scal;
  const Mat4 hess_s = hessian_of_scal(pl, pr.q4);
  const Rat lap_s = metric_trace(pl, hess_s);
  Mat4 ric0, hess0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      ric0[i][j] = pl.ric[i][j] - (s / Rat(4)) * pl.gv[i][j];
      hess0[i][j] = hess_s[i][j] - (lap_s / Rat(4)) * pl.gv[i][j];
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rep.bach[i][j] = (s * ric0[i][j] + Rat(2) * hess0[i][j]) / Rat(12);
    }
  }
  rep.bach_max_entry = max_abs(rep.bach);

  rep.weyl_plus_charpoly = wplus_charpoly(pl);

  if (!s.is_zero()) {
    bool prop = true;
    for (int i = 0; i < 4 && prop; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (s * ric0[i][j] != Rat(-2) * hess0[i][j]) {
          prop = false;
          break;
        }
      }
    }
    rep.trace_free_ricci_proportional = prop;

    const Jet2 sj = Jet2::constant(Rat(2) * pr.q3) + mj.r * pr.q4;
    const Jet2 w2 = (sj * sj).inv();
    const Pipeline cpl = run_pipeline(scale2(mj.xx, w2), scale2(mj.angle, w2));
    const Rat S = einstein_constant(pr);
    Mat4 res;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        res[i][j] = cpl.ric[i][j] - (S / Rat(4)) * cpl.gv[i][j];
      }
    }
    rep.einstein_residual = max_abs(res);
  }
  return rep;
}

EinsteinResidualReport conformal_einstein_residual(const Profile& pr,
                                                   const std::vector<Point4>& pts) {
  EinsteinResidualReport out;
  out.S = einstein_constant(pr);
  out.lambda = out.S / Rat(4);
  out.max_residual = Rat(0);
  for (const Point4& pt : pts) {
    if (pr.scal_at(pt.r()).is_zero()) {
      const VanishingLocus loc = vanishing_locus(pr);
      std::string where = loc.kind == VanishKind::IdenticallyZero
                              ? "everywhere"
                              : "on the hypersurface r = " + loc.r_star.to_string();
      throw DomainError("conformal metric undefined: scal vanishes " + where);
    }
    const CurvatureReport rep = curvature_at(pr, pt);
    out.max_residual = std::max(out.max_residual, *rep.einstein_residual);
    ++out.points;
  }
  return out;
}

LaplacianCheck laplacian_check(const Profile& pr, const Poly& gamma,
                               const Point4& pt) {
  const Rat r = pt.r();
  const Poly d1 = gamma.derivative();
  return laplacian_core(pr, pt, d1.eval(r), d1.derivative().eval(r));
}

LaplacianCheck laplacian_check_inv_scal(const Profile& pr, const Point4& pt) {
  const Rat s = pr.scal_at(pt.r());
  if (s.is_zero()) {
    throw DomainError("1/scal undefined where the scalar curvature vanishes");
  }
  // gamma = 1/s, s affine with slope q4
  const Rat g1 = -pr.q4 / (s * s);
  const Rat g2 = Rat(2) * pr.q4 * pr.q4 / (s * s * s);
  return laplacian_core(pr, pt, g1, g2);
}

ConstancyReport derdzinski_scalar_identity(const Profile& pr,
                                           const std::vector<Point4>& pts) {
  ConstancyReport out;
  out.einstein_scalar = einstein_constant(pr);
  bool first = true;
  out.max_deviation = Rat(0);
  for (const Point4& pt : pts) {
    const MetricJets mj = metric_at(pr, pt);
    const Pipeline pl = run_pipeline(mj.xx, mj.angle);
    const Rat s = pr.scal_at(pt.r());
    const Mat4 hess_s = hessian_of_scal(pl, pr.q4);
    const Rat lap_s = metric_trace(pl, hess_s);
    const Rat ds2 = pr.q4 * pr.q4 *
                    (pl.ginvv[0][0] + Rat(2) * pl.ginvv[0][1] + pl.ginvv[1][1]);
    // s^3 - 6 s (Hodge Laplacian of s) - 12 |ds|^2, trace-Laplacian signs
    const Rat value = s.pow(3) + Rat(6) * s * lap_s - Rat(12) * ds2;
    if (first) {
      out.constant = value;
      first = false;
    }
    out.max_deviation = std::max(out.max_deviation, (value - out.constant).abs());
    ++out.points;
  }
  out.equals_einstein_scalar =
      out.points > 0 && out.max_deviation.is_zero() && out.constant == out.einstein_scalar;
  return out;
}

DiagonalFrame diagonal_frame_check(const Profile& pr, const Point4& pt) {
  const MetricJets mj = metric_at(pr, pt);
  const Rat x1 = pt.x1, x2 = pt.x2, r = pt.r();
  Mat2 gx, gt, ut;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      gx[i][j] = mj.xx[i][j].value();
      gt[i][j] = mj.angle[i][j].value();
      ut[i][j] = gt[i][j];  // u^{ij}, the inverse metric on x-type 1-forms
    }
  }

  // coframe rows (dr, kappa) = A_x (dx1, dx2) and (eta, chi) = A_t (dth1, dth2);
  // inverse change of basis carries the metric to the new coframe
  const Mat2 ax_inv = {{{x1 / r, Rat(-1) / r}, {x2 / r, Rat(1) / r}}};
  const Mat2 at_inv = {{{Rat(1), x2}, {Rat(1), Rat(-1) * x1}}};
  auto congruence = [](const Mat2& base, const Mat2& inv) {
    Mat2 out;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Rat acc(0);
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l) acc = acc + inv[k][i] * base[k][l] * inv[l][j];
        }
        out[i][j] = acc;
      }
    }
    return out;
  };
  const Mat2 mx = congruence(gx, ax_inv);
  const Mat2 mt = congruence(gt, at_inv);

  DiagonalFrame out;
  out.c_dr = mx[0][0];
  out.c_kappa = mx[1][1];
  out.c_eta = mt[0][0];
  out.c_chi = mt[1][1];
  out.off_diagonal_max = std::max(mx[0][1].abs(), mt[0][1].abs());
  out.dr_kappa_inner = -(x2 * (ut[0][0] + ut[0][1])) + x1 * (ut[1][1] + ut[0][1]);

  const Rat p = pr.p_poly().eval(r);
  out.candidate_2r_over_p = out.c_dr == Rat(2) * r / p;
  out.candidate_2_over_rp = out.c_dr == Rat(2) / (r * p);
  out.eta_coeff_p_over_r = out.c_eta == p / r;
  return out;
}

BeyondLimit beyond_limit(int m, const Rat& a, const std::vector<Point4>& pts) {
  const Profile pr = profile_from_local(m, a, Rat(0));
  BeyondLimit out;
  out.m = m;
  out.a = a;
  out.rescaled = m != 2;
  if (m == 1) {
    out.S = Rat(12) / a;
  } else if (m == 2) {
    out.S = Rat(0);
  } else {
    out.S = Rat(-12) * Rat(m - 2) / a;
    out.singular_radius = Rat(2) * Rat(m - 1) * a / Rat(m - 2);
  }
  const Rat lam = out.S / Rat(4);
  out.max_residual = Rat(0);
  for (const Point4& pt : pts) {
    const MetricJets mj = metric_at(pr, pt);
    JetMat2 xx = mj.xx;
    JetMat2 tt = mj.angle;
    if (m != 2) {
      // phi^-1 = (8(m-1) - 4(m-2) r/a) / (4m)
      const Jet2 phinv = Jet2::constant(Rat(2) * Rat(m - 1) / Rat(m)) -
                         mj.r * (Rat(m - 2) / (Rat(m) * a));
      if (!(phinv.value() > Rat(0))) {
        throw DomainError("conformal factor is not positive at the sample point");
      }
      const Jet2 phi2 = (phinv * phinv).inv();
      xx = scale2(xx, phi2);
      tt = scale2(tt, phi2);
    }
    const Pipeline pl = run_pipeline(xx, tt);
    Mat4 res;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        res[i][j] = pl.ric[i][j] - lam * pl.gv[i][j];
      }
    }
    out.max_residual = std::max(out.max_residual, max_abs(res));
    ++out.points;
  }
  return out;
}

}  // namespace bachflat
