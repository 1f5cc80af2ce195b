#include "bachflat/geoprobe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bachflat/poly.hpp"
#include "bachflat/roots.hpp"

namespace bachflat {

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

std::vector<double> to_doubles(const Poly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const Rat& r : p.coeffs()) c.push_back(r.to_double());
  return c;
}

double eval_d(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// exact quotient p / (x - root)^mult; the divisions must come out exact
Poly shift_out_root(const Poly& p, const Rat& root, int mult) {
  Poly quot = p;
  const Poly lin({-root, Rat(1)});
  for (int k = 0; k < mult; ++k) {
    PolyDivMod dm = quot.divmod(lin);
    if (!dm.rem.is_zero()) {
      throw DefectError("factoring out a non-root");
    }
    quot = dm.quot;
  }
  return quot;
}

// tol halves with each split but never drops below tol_floor, the rounding
// noise of the whole integral; otherwise integrand noise (e.g. cancellation
// in a polynomial evaluated near a multiple root) fails the acceptance test
// at every scale and drives the subdivision to full depth
double simpson_adapt(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, double tol_floor, int depth, double& err_acc) {
  const double m = 0.5 * (a + b);
  if (m <= a || m >= b) {
    err_acc += std::fabs(whole) * 1e-15;
    return whole;
  }
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double h12 = (b - a) / 12.0;
  const double left = h12 * (fa + 4.0 * flm + fm);
  const double right = h12 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    err_acc += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  const double half = std::max(0.5 * tol, tol_floor);
  return simpson_adapt(f, a, m, fa, flm, fm, left, half, tol_floor, depth - 1,
                       err_acc) +
         simpson_adapt(f, m, b, fm, frm, fb, right, half, tol_floor, depth - 1,
                       err_acc);
}

// least-squares line y = slope x + icept with the max absolute residual
struct LineFit {
  double slope = 0.0;
  double icept = 0.0;
  double residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.icept = my - f.slope * mx;
  for (size_t i = 0; i < n; ++i) {
    f.residual =
        std::max(f.residual, std::fabs(y[i] - f.slope * x[i] - f.icept));
  }
  return f;
}

void require_scal_somewhere(const Profile& pr) {
  if (pr.q3.is_zero() && pr.q4.is_zero()) {
    throw DomainError("conformal metric undefined: scal vanishes everywhere");
  }
}

// the zero of the affine scal, when there is one
std::optional<Rat> scal_zero_radius(const Profile& pr) {
  if (pr.q4.is_zero()) return std::nullopt;
  return Rat(-2) * pr.q3 / pr.q4;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, double rel_tol) {
  QuadResult out;
  if (!(hi > lo)) return out;
  const double m = 0.5 * (lo + hi);
  const double fa = f(lo), fm = f(m), fb = f(hi);
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  double scale = std::fabs(whole);
  if (scale == 0.0) scale = 1.0;
  const double tol_floor =
      32.0 * std::numeric_limits<double>::epsilon() * scale;
  double err = 0.0;
  out.value = simpson_adapt(f, lo, hi, fa, fm, fb, whole,
                            std::max(rel_tol * scale, tol_floor), tol_floor,
                            48, err);
  out.error = std::max(err, std::fabs(out.value) * rel_tol);
  return out;
}

EndpointExponent endpoint_exponent(const Profile& pr,
                                   const std::optional<Rat>& endpoint,
                                   bool conformal) {
  if (conformal) require_scal_somewhere(pr);
  const Poly p = pr.p_poly();
  EndpointExponent out;
  if (!endpoint) {
    out.at_infinity = true;
    // p = r^2 - q keeps the quadratic coefficient 1, so degree is 2, 3, or 4
    const int alpha = p.degree();
    Rat e = Rat(1 - alpha, 2);
    if (conformal && !pr.q4.is_zero()) e -= Rat(1);
    out.exponent = e;
    return out;
  }
  const Rat& b = *endpoint;
  out.p_multiplicity = multiplicity_at(p, b);
  out.scal_zero = conformal && pr.scal_at(b).is_zero();
  out.exponent =
      Rat(-out.p_multiplicity, 2) - Rat(out.scal_zero ? 1 : 0);
  return out;
}

RayLength ray_length(const Profile& pr, const Rat& r_lo,
                     const std::optional<Rat>& r_hi, bool conformal,
                     double rel_tol) {
  if (r_lo.sign() <= 0) throw DomainError("ray must start at positive r");
  if (r_hi && *r_hi <= r_lo) throw DomainError("empty ray: r_hi <= r_lo");
  if (conformal) {
    require_scal_somewhere(pr);
    if (const auto rs = scal_zero_radius(pr)) {
      if (*rs > r_lo && (!r_hi || *rs < *r_hi)) {
        throw DomainError(
            "conformal metric undefined: scal vanishes on the hypersurface "
            "r = " +
            rs->to_string());
      }
    }
  }
  const Poly p = pr.p_poly();
  const int inside =
      r_hi ? count_roots_in(p, r_lo, *r_hi) : count_roots_above(p, r_lo);
  if (inside > 0) throw DomainError("p vanishes inside the ray");
  const Rat probe = r_hi ? (r_lo + *r_hi) / Rat(2) : r_lo + Rat(1);
  if (p.eval(probe).sign() <= 0) {
    throw DomainError("p is not positive along the ray");
  }

  const EndpointExponent elo = endpoint_exponent(pr, r_lo, conformal);
  const EndpointExponent ehi = endpoint_exponent(pr, r_hi, conformal);
  RayLength out;
  if (elo.divergent()) {
    out.divergence_exponent = elo.exponent;
    return out;
  }
  if (ehi.divergent()) {
    out.divergence_exponent = ehi.exponent;
    return out;
  }

  const auto pd = to_doubles(p);
  const double q3d = pr.q3.to_double(), q4d = pr.q4.to_double();
  const bool conf = conformal;
  auto cf = [q3d, q4d, conf](double l) {
    return conf ? 1.0 / std::fabs(2.0 * q3d + q4d * l) : 1.0;
  };
  auto plain = [&pd, cf](double l) {
    return std::sqrt(l / eval_d(pd, l)) * cf(l);
  };

  double value = 0.0, err = 0.0;
  auto add = [&value, &err](const QuadResult& q) {
    value += q.value;
    err += q.error;
  };

  // a convergent improper endpoint is always a simple root of p away from
  // any scal zero; the substitution l = endpoint -+ u^2 removes it exactly
  if (r_hi) {
    const double lo = r_lo.to_double(), hi = r_hi->to_double();
    const double mid = 0.5 * (lo + hi);
    if (elo.improper()) {
      const auto p1 = to_doubles(shift_out_root(p, r_lo, 1));
      auto g = [&p1, cf, lo](double u) {
        const double l = lo + u * u;
        return 2.0 * std::sqrt(l / eval_d(p1, l)) * cf(l);
      };
      add(integrate_adaptive(g, 0.0, std::sqrt(mid - lo), rel_tol));
    } else {
      add(integrate_adaptive(plain, lo, mid, rel_tol));
    }
    if (ehi.improper()) {
      Poly p1 = shift_out_root(p, *r_hi, 1);
      p1 *= Rat(-1);  // p = (r_hi - l) p1 with p1 positive below r_hi
      const auto p1d = to_doubles(p1);
      auto g = [&p1d, cf, hi](double u) {
        const double l = hi - u * u;
        return 2.0 * std::sqrt(l / eval_d(p1d, l)) * cf(l);
      };
      add(integrate_adaptive(g, 0.0, std::sqrt(hi - mid), rel_tol));
    } else {
      add(integrate_adaptive(plain, mid, hi, rel_tol));
    }
  } else {
    const double lo = r_lo.to_double();
    const double r0 = (r_lo + Rat(1)).to_double();
    if (elo.improper()) {
      const auto p1 = to_doubles(shift_out_root(p, r_lo, 1));
      auto g = [&p1, cf, lo](double u) {
        const double l = lo + u * u;
        return 2.0 * std::sqrt(l / eval_d(p1, l)) * cf(l);
      };
      add(integrate_adaptive(g, 0.0, std::sqrt(r0 - lo), rel_tol));
    } else {
      add(integrate_adaptive(plain, lo, r0, rel_tol));
    }
    // tail via l = 1/v^2; only quartic p converges out here, making the
    // substituted integrand regular down to v = 0
    const int alpha = p.degree();
    std::vector<double> rev(static_cast<size_t>(2 * alpha + 1), 0.0);
    for (int i = 0; i <= alpha; ++i) {
      rev[static_cast<size_t>(2 * (alpha - i))] = p.coeff(i).to_double();
    }
    auto tail = [rev, alpha, q3d, q4d, conf](double v) {
      const double P = eval_d(rev, v);
      double g = 2.0 * std::pow(v, alpha - 4) / std::sqrt(P);
      if (conf) {
        g *= (q4d != 0.0) ? v * v / std::fabs(q4d + 2.0 * q3d * v * v)
                          : 1.0 / std::fabs(2.0 * q3d);
      }
      return g;
    };
    add(integrate_adaptive(tail, 0.0, 1.0 / std::sqrt(r0), rel_tol));
  }
  out.value = value;
  out.error_bound = err;
  return out;
}

VolumeResult volume(const Profile& pr, const Rat& r_hi, bool conformal,
                    double rel_tol) {
  if (r_hi < pr.a) {
    throw DomainError("volume cutoff below the zero section r = a");
  }
  VolumeResult out;
  if (!conformal) {
    const Rat coeff = r_hi * r_hi - pr.a * pr.a;
    out.over_two_pi_sq = coeff;
    out.value = kTwoPiSq * coeff.to_double();
    return out;
  }
  require_scal_somewhere(pr);
  if (const auto rs = scal_zero_radius(pr)) {
    if (r_hi > pr.a && *rs >= pr.a && *rs <= r_hi) {
      throw DomainError("conformal volume undefined: scal vanishes at r = " +
                        rs->to_string());
    }
  }
  const double q3d = pr.q3.to_double(), q4d = pr.q4.to_double();
  auto f = [q3d, q4d](double r) {
    const double s = 2.0 * q3d + q4d * r;
    const double s2 = s * s;
    return 2.0 * kTwoPiSq * r / (s2 * s2);
  };
  const QuadResult q =
      integrate_adaptive(f, pr.a.to_double(), r_hi.to_double(), rel_tol);
  out.value = q.value;
  out.error_bound = q.error;
  return out;
}

GrowthEstimate growth_exponent(const Profile& pr, bool conformal, int samples,
                               double rel_tol) {
  if (samples < 20) throw DomainError("growth fit needs at least 20 samples");
  const Poly p = pr.p_poly();
  const Rat& a = pr.a;
  if (a.sign() <= 0) throw DomainError("zero section needs a > 0");
  const int ka = multiplicity_at(p, a);
  if (ka >= 2) throw DomainError("zero section at infinite distance");
  if (p.eval(a).sign() < 0) {
    throw DomainError("p is negative at the zero section");
  }
  if (conformal) {
    require_scal_somewhere(pr);
    if (pr.scal_at(a).is_zero()) {
      throw DomainError("zero section at infinite conformal distance");
    }
  }

  // the probed end: the first root of p above a, or infinity; the conformal
  // rescaling moves the end inward to the scal zero when that comes first
  std::vector<IsolatedRoot> roots = real_roots_above(p, a);
  std::optional<Rat> rstar;
  if (conformal) {
    if (const auto rs = scal_zero_radius(pr)) {
      if (*rs > a) rstar = rs;
    }
  }

  bool end_finite = false;
  std::optional<Rat> end_exact;
  double end_d = 0.0;
  int k_end = 0;
  bool j_end = false;  // scal zero at the end
  if (!roots.empty()) {
    IsolatedRoot first = roots.front();
    int cmp = 1;  // "root after rstar" when rstar is absent means: use root
    if (rstar) cmp = first.compare(*rstar);
    if (rstar && cmp >= 0) {
      end_finite = true;
      end_exact = *rstar;
      end_d = rstar->to_double();
      j_end = true;
      k_end = (cmp == 0) ? first.multiplicity : 0;
    } else {
      end_finite = true;
      j_end = false;
      k_end = first.multiplicity;
      if (first.exact) {
        end_exact = first.value();
        end_d = end_exact->to_double();
      } else {
        first.refine(Rat(1, 1000000000000L));
        end_d = first.approx();
      }
    }
  } else if (rstar) {
    end_finite = true;
    end_exact = *rstar;
    end_d = rstar->to_double();
    j_end = true;
    k_end = 0;
  }

  GrowthEstimate out;
  const int alpha = p.degree();
  if (!end_finite) {
    Rat e(1 - alpha, 2);
    if (conformal && !pr.q4.is_zero()) e -= Rat(1);
    if (e < Rat(-1)) {
      throw DomainError("incomplete end: infinity at finite distance");
    }
    out.model =
        (alpha == 2) ? GrowthModel::Polynomial : GrowthModel::Exponential;
  } else if (!j_end) {
    out.model = GrowthModel::FiniteTotal;
  } else {
    // length integrand ~ t^{-k/2 - 1} at the scal zero: power-law distance
    // for k >= 1, logarithmic for k = 0
    out.model =
        (k_end >= 1) ? GrowthModel::Polynomial : GrowthModel::Exponential;
  }

  // shared numeric pieces
  const double a_d = a.to_double();
  const auto pd = to_doubles(p);
  const double q3d = pr.q3.to_double(), q4d = pr.q4.to_double();
  const bool conf = conformal;
  auto cf = [q3d, q4d, conf](double l) {
    return conf ? 1.0 / std::fabs(2.0 * q3d + q4d * l) : 1.0;
  };
  // clamped against double-rounding of p within noise of a root end; the
  // exact classification above never depends on this evaluation
  auto plain_len = [&pd, cf](double l) {
    const double pv = eval_d(pd, l);
    return std::sqrt(l / std::max(pv, 1e-300)) * cf(l);
  };
  auto plain_vol = [q3d, q4d](double r) {
    const double s = 2.0 * q3d + q4d * r;
    const double s2 = s * s;
    return 2.0 * kTwoPiSq * r / (s2 * s2);
  };

  const int n = samples;
  std::vector<double> ells(static_cast<size_t>(n));
  if (!end_finite) {
    for (int i = 0; i < n; ++i) {
      ells[static_cast<size_t>(i)] =
          a_d + std::pow(10.0, 3.0 + 6.0 * i / (n - 1.0));
    }
  } else {
    const double span = end_d - a_d;
    for (int i = 0; i < n; ++i) {
      const double delta = 0.01 * span * std::pow(10.0, -6.0 * i / (n - 1.0));
      ells[static_cast<size_t>(i)] = end_d - delta;
    }
  }

  // factored length integrand near a rational finite end: the singular
  // factor t^{-k/2-j} is carried analytically, dodging cancellation in p
  std::vector<double> p1d;
  double sing_exp = 0.0;
  bool factored = false;
  if (end_finite && end_exact && (k_end > 0 || j_end)) {
    Poly p1 = shift_out_root(p, *end_exact, k_end);
    if (k_end % 2 == 1) p1 *= Rat(-1);  // p = (E - l)^k p1s, p1s > 0 near E
    p1d = to_doubles(p1);
    sing_exp = -0.5 * k_end - (j_end ? 1.0 : 0.0);
    factored = true;
  }
  const double jfac = j_end ? 1.0 / std::fabs(q4d) : 1.0;
  auto shell_len = [&](double l1, double l2) {
    if (!factored) {
      return integrate_adaptive(plain_len, l1, l2, rel_tol).value;
    }
    const double t1 = end_d - l2, t2 = end_d - l1;
    auto shape = [&](double t) {
      const double l = end_d - t;
      double s = std::sqrt(l / eval_d(p1d, l)) * std::pow(t, sing_exp) * jfac;
      if (conf && !j_end) s *= cf(l);
      return s;
    };
    return integrate_adaptive(shape, t1, t2, rel_tol).value;
  };
  auto shell_vol = [&](double l1, double l2) {
    if (j_end) {
      const double t1 = end_d - l2, t2 = end_d - l1;
      const double c4 = std::pow(q4d, 4);
      auto shape = [&](double t) {
        const double l = end_d - t;
        return 2.0 * kTwoPiSq * l / (c4 * t * t * t * t);
      };
      return integrate_adaptive(shape, t1, t2, rel_tol).value;
    }
    return integrate_adaptive(plain_vol, l1, l2, rel_tol).value;
  };

  // distance from the zero section, accumulated shell by shell
  std::vector<double> dist(static_cast<size_t>(n)), vol(static_cast<size_t>(n));
  double acc = 0.0;
  {
    const double l0 = ells[0];
    if (ka == 1) {
      const auto p1a = to_doubles(shift_out_root(p, a, 1));
      auto g = [&p1a, cf, a_d](double u) {
        const double l = a_d + u * u;
        return 2.0 * std::sqrt(l / eval_d(p1a, l)) * cf(l);
      };
      acc += integrate_adaptive(g, 0.0, std::sqrt(l0 - a_d), rel_tol).value;
    } else {
      acc += integrate_adaptive(plain_len, a_d, l0, rel_tol).value;
    }
  }
  dist[0] = acc;
  for (int i = 1; i < n; ++i) {
    acc += shell_len(ells[static_cast<size_t>(i - 1)],
                     ells[static_cast<size_t>(i)]);
    dist[static_cast<size_t>(i)] = acc;
  }

  // sublevel volumes
  const bool conf_quadrature = conf && !pr.q4.is_zero();
  const double s0 = 2.0 * q3d;  // constant scal when q4 = 0
  if (!conf_quadrature) {
    const double scale = conf ? 1.0 / std::pow(s0, 4) : 1.0;
    for (int i = 0; i < n; ++i) {
      const double l = ells[static_cast<size_t>(i)];
      vol[static_cast<size_t>(i)] = scale * kTwoPiSq * (l * l - a_d * a_d);
    }
  } else {
    double vacc =
        integrate_adaptive(plain_vol, a_d, ells[0], rel_tol).value;
    vol[0] = vacc;
    for (int i = 1; i < n; ++i) {
      vacc += shell_vol(ells[static_cast<size_t>(i - 1)],
                        ells[static_cast<size_t>(i)]);
      vol[static_cast<size_t>(i)] = vacc;
    }
  }

  out.table.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.table[static_cast<size_t>(i)] = {ells[static_cast<size_t>(i)],
                                         dist[static_cast<size_t>(i)],
                                         vol[static_cast<size_t>(i)]};
  }

  if (out.model == GrowthModel::FiniteTotal) {
    if (!conf_quadrature) {
      const double scale = conf ? 1.0 / std::pow(s0, 4) : 1.0;
      out.value = scale * kTwoPiSq * (end_d * end_d - a_d * a_d);
    } else {
      // scal stays away from zero up to the end, so the full quadrature
      // converges
      out.value =
          vol.back() +
          integrate_adaptive(plain_vol, ells.back(), end_d, rel_tol).value;
    }
    out.fit_residual = 0.0;
    return out;
  }

  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const size_t s = static_cast<size_t>(i);
    xs[s] = (out.model == GrowthModel::Polynomial) ? std::log(dist[s])
                                                   : dist[s];
    ys[s] = std::log(vol[s]);
  }
  const LineFit f = fit_line(xs, ys);
  out.value = f.slope;
  out.fit_residual = f.residual;
  return out;
}

const char* growth_model_name(GrowthModel m) {
  switch (m) {
    case GrowthModel::Polynomial:
      return "polynomial";
    case GrowthModel::Exponential:
      return "exponential";
    case GrowthModel::FiniteTotal:
      return "finite";
  }
  return "unknown";
}

std::string growth_csv(const GrowthEstimate& est) {
  std::ostringstream os;
  os.precision(17);
  os << "R,volume,distance\n";
  for (const GrowthSample& s : est.table) {
    os << s.ell << ',' << s.volume << ',' << s.distance << '\n';
  }
  return os.str();
}

}  // namespace bachflat
