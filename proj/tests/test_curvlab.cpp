#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bachflat/curvlab.hpp"
#include "bachflat/profile.hpp"

#include <vector>

using namespace bachflat;

namespace {

struct Lcg {
  unsigned long long s;
  explicit Lcg(unsigned long long seed) : s(seed) {}
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) % static_cast<unsigned long long>(hi - lo + 1));
  }
  Rat positive_rat(long max_num, long max_den) {
    long d = next(1, max_den);
    return Rat(next(1, max_num), d);
  }
};

// interior point with r = x1 + x2 strictly between lo and hi
Point4 point_between(Lcg& rng, const Rat& lo, const Rat& hi) {
  const Rat t(rng.next(1, 19), 20);
  const Rat r = lo + (hi - lo) * t;
  const Rat split(rng.next(1, 9), 10);
  return Point4{r * split, r * (Rat(1) - split)};
}

bool jets_equal(const Jet2& a, const Jet2& b) {
  const int ord = std::min(a.order(), b.order());
  for (int i = 0; i <= ord; ++i) {
    for (int j = 0; i + j <= ord; ++j) {
      if (a.coeff(i, j) != b.coeff(i, j)) return false;
    }
  }
  return true;
}

// the spectrum the complex orientation forces on self-dual Weyl
Poly kahler_charpoly(const Rat& s) {
  return Poly::from_roots({s / Rat(6), -s / Rat(12), -s / Rat(12)});
}

std::vector<Profile> bach_flat_panel() {
  return {
      profile_from_local(1, Rat(1), Rat(6)),    // two ends, double root
      profile_from_local(1, Rat(1), Rat(3)),    // cone angle family
      profile_from_local(3, Rat(1), Rat(-4)),   // constant negative scal
      profile_from_local(3, Rat(1), Rat(12)),   // incomplete, S = -5184
      profile_from_local(2, Rat(1), Rat(0)),    // scalar flat
      profile_from_local(5, Rat(2), Rat(-1)),
      profile_from_local(4, Rat(1, 2), Rat(7, 3)),
  };
}

}  // namespace

TEST_CASE("metric jets: inverse identity, closed form, determinant") {
  Lcg rng(20240816);
  const auto panel = bach_flat_panel();
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Profile& pr = panel[static_cast<size_t>(trial) % panel.size()];
    const Point4 pt = point_between(rng, pr.a, pr.a + Rat(3, 2));
    if (pr.p_poly().eval(pt.r()).is_zero()) continue;
    const MetricJets mj = metric_at(pr, pt);

    // Hess(u) times its jet inverse is the constant identity jet
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Jet2 prod;
        for (int k = 0; k < 2; ++k) prod += mj.xx[i][k] * mj.xx_inv[k][j];
        CHECK(jets_equal(prod, Jet2::constant(Rat(i == j ? 1 : 0))));
      }
    }
    // the closed-form angle block is that inverse
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CAPTURE(i);
        CAPTURE(j);
        CHECK(jets_equal(mj.angle[i][j], mj.xx_inv[i][j]));
      }
    }
    // det Hess(u) = r^2 / (4 x1 x2 p)
    const Jet2 p = eval_on_jet(pr.p_poly(), mj.r);
    const Jet2 expect = (mj.r * mj.r) / (Rat(4) * mj.x1 * mj.x2 * p);
    CHECK(jets_equal(mj.det_xx, expect));
    ++checked;
  }
  CHECK(checked == 25);
}

TEST_CASE("metric_at rejects the boundary and the singular locus") {
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  CHECK_THROWS_AS(metric_at(tb, Point4{Rat(-1), Rat(2)}), DomainError);
  CHECK_THROWS_AS(metric_at(tb, Point4{Rat(1, 2), Rat(0)}), DomainError);
  CHECK_THROWS_AS(metric_at(tb, Point4{Rat(1, 4), Rat(1, 4)}), DomainError);
  // p has its double root at r = 3
  CHECK_THROWS_AS(metric_at(tb, Point4{Rat(1), Rat(2)}), DomainError);
  CHECK_NOTHROW(metric_at(tb, Point4{Rat(1), Rat(3, 2)}));
}

TEST_CASE("scalar curvature: pipeline, closed form, fourth-order divergence") {
  Lcg rng(7);
  for (const Profile& pr : bach_flat_panel()) {
    for (int k = 0; k < 2; ++k) {
      const Point4 pt = point_between(rng, pr.a, pr.a + Rat(1));
      if (pr.p_poly().eval(pt.r()).is_zero()) continue;
      const CurvatureReport rep = curvature_at(pr, pt);
      CAPTURE(pr.m);
      CHECK(rep.scal == pr.scal_at(pt.r()));
      CHECK(rep.scal == Rat(2) * pr.q3 + pr.q4 * pt.r());
      CHECK(rep.abreu_scal == rep.scal);
      CHECK(rep.riemann_symmetries_hold);
      CHECK(rep.ricci_j_invariant);
      CHECK(rep.lambda == einstein_constant(pr) / Rat(4));
    }
  }
  // the double-root family anchor: scal(r) = 9 - 3r
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  const CurvatureReport rep = curvature_at(tb, Point4{Rat(1), Rat(1)});
  CHECK(rep.scal == Rat(3));
  CHECK(rep.r == Rat(2));
}

TEST_CASE("self-dual Weyl spectrum is s/6, -s/12, -s/12") {
  Lcg rng(99);
  for (const Profile& pr : bach_flat_panel()) {
    const Point4 pt = point_between(rng, pr.a, pr.a + Rat(4, 5));
    if (pr.p_poly().eval(pt.r()).is_zero()) continue;
    const CurvatureReport rep = curvature_at(pr, pt);
    CAPTURE(pr.m);
    CHECK(rep.weyl_plus_charpoly == kahler_charpoly(rep.scal));
  }
  // scalar-flat: W+ vanishes entirely, charpoly t^3
  const Profile sf = profile_from_local(2, Rat(1), Rat(0));
  const CurvatureReport rep = curvature_at(sf, Point4{Rat(1), Rat(3, 4)});
  CHECK(rep.scal == Rat(0));
  CHECK(rep.weyl_plus_charpoly == Poly({Rat(0), Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("Bach tensor vanishes exactly iff q3 q1 = q4 q0") {
  Lcg rng(5150);
  for (const Profile& pr : bach_flat_panel()) {
    const Point4 pt = point_between(rng, pr.a, pr.a + Rat(1));
    if (pr.p_poly().eval(pt.r()).is_zero()) continue;
    const CurvatureReport rep = curvature_at(pr, pt);
    CHECK(rep.bach_flat);
    CHECK(rep.bach_max_entry == Rat(0));
    if (!rep.scal.is_zero()) {
      REQUIRE(rep.trace_free_ricci_proportional.has_value());
      CHECK(*rep.trace_free_ricci_proportional);
    }
  }

  // an off-family boundary weight: same ansatz, Bach tensor nonzero
  const ConeProfile cp = profile_from_cone(1, Rat(1), Rat(2), Rat(1));
  const Profile& bad = cp.base;
  REQUIRE(!is_bach_flat(bad));
  const Point4 pt{Rat(3, 4), Rat(3, 4)};
  const CurvatureReport rep = curvature_at(bad, pt);
  CHECK(rep.bach_max_entry > Rat(0));
  CHECK(!rep.bach_flat);
  REQUIRE(rep.trace_free_ricci_proportional.has_value());
  CHECK(!*rep.trace_free_ricci_proportional);
  // extremality is a property of the ansatz, not of the weight choice
  CHECK(rep.riemann_symmetries_hold);
  CHECK(rep.ricci_j_invariant);
  CHECK(rep.scal == bad.scal_at(pt.r()));
  CHECK(rep.weyl_plus_charpoly == kahler_charpoly(rep.scal));
}

TEST_CASE("conformal Einstein residual vanishes exactly for the Bach-flat family") {
  // double-root profile: ten interior points across (1, 3)
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  std::vector<Point4> pts;
  for (int k = 1; k <= 10; ++k) {
    const Rat r = Rat(1) + Rat(2 * k, 11);  // strictly inside (1, 3)
    pts.push_back(Point4{r * Rat(2, 5), r * Rat(3, 5)});
  }
  const EinsteinResidualReport rep = conformal_einstein_residual(tb, pts);
  CHECK(rep.points == 10);
  CHECK(rep.S == Rat(0));
  CHECK(rep.lambda == Rat(0));
  CHECK(rep.max_residual == Rat(0));

  // constant-scal profile: the metric is Einstein on its own
  const Profile ke = profile_from_local(3, Rat(1), Rat(-4));
  const std::vector<Point4> kpts = {Point4{Rat(1), Rat(1, 2)},
                                    Point4{Rat(2), Rat(5, 3)},
                                    Point4{Rat(7, 2), Rat(1, 5)}};
  const EinsteinResidualReport krep = conformal_einstein_residual(ke, kpts);
  CHECK(krep.S == Rat(-64));
  CHECK(krep.lambda == Rat(-16));
  CHECK(krep.max_residual == Rat(0));
  // Ric(g) = (scal/4) g directly: constant scal makes the rescaling a homothety
  const CurvatureReport kc = curvature_at(ke, kpts[0]);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(kc.ricci[i][j] == (kc.scal / Rat(4)) * kc.metric[i][j]);
    }
  }

  // the incomplete representative with S = -5184
  const Profile inc = profile_from_local(3, Rat(1), Rat(12));
  const EinsteinResidualReport irep = conformal_einstein_residual(
      inc, {Point4{Rat(1, 2), Rat(5, 8)}, Point4{Rat(1), Rat(1, 3)}});
  CHECK(irep.S == Rat(-5184));
  CHECK(irep.max_residual == Rat(0));

  // non-Bach-flat ansatz member: residual strictly positive, recorded
  const ConeProfile cp = profile_from_cone(1, Rat(1), Rat(2), Rat(1));
  const EinsteinResidualReport brep =
      conformal_einstein_residual(cp.base, {Point4{Rat(3, 4), Rat(3, 4)}});
  CHECK(brep.max_residual > Rat(0));

  // scal vanishing inside the domain is refused by name
  CHECK_THROWS_WITH_AS(
      conformal_einstein_residual(inc, {Point4{Rat(7, 8), Rat(7, 8)}}),
      "conformal metric undefined: scal vanishes on the hypersurface r = 7/4",
      DomainError);
}

TEST_CASE("Laplacian closed form -2[(2 - q'/r) g' + (r - q/r) g'']") {
  Lcg rng(321);
  const Poly gr({Rat(0), Rat(1)});                       // r
  const Poly gr2({Rat(0), Rat(0), Rat(1)});              // r^2
  const Poly gr3({Rat(0), Rat(0), Rat(0), Rat(1)});      // r^3
  for (const Profile& pr : bach_flat_panel()) {
    for (int k = 0; k < 2; ++k) {
      const Point4 pt = point_between(rng, pr.a, pr.a + Rat(6, 5));
      if (pr.p_poly().eval(pt.r()).is_zero()) continue;
      for (const Poly* g : {&gr, &gr2, &gr3}) {
        const LaplacianCheck lc = laplacian_check(pr, *g, pt);
        CAPTURE(pr.m);
        CHECK(lc.residual == Rat(0));
        CHECK(lc.hodge_laplacian == -lc.trace_laplacian);
      }
      if (!pr.scal_at(pt.r()).is_zero()) {
        CHECK(laplacian_check_inv_scal(pr, pt).residual == Rat(0));
      }
    }
  }
  // gamma = r has gamma'' = 0: closed form is -2(2 - q'/r)
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  const Point4 pt{Rat(1), Rat(1)};
  const LaplacianCheck lc = laplacian_check(tb, gr, pt);
  const Rat r = pt.r();
  CHECK(lc.closed_form ==
        Rat(-2) * (Rat(2) - tb.q_poly().derivative().eval(r) / r));
  CHECK(lc.residual == Rat(0));

  const Profile sf = profile_from_local(2, Rat(1), Rat(0));
  CHECK_THROWS_AS(laplacian_check_inv_scal(sf, pt), DomainError);
}

TEST_CASE("scalar identity s^3 - 6 s Lap s - 12 |ds|^2 is the Einstein scalar") {
  const std::vector<Point4> pts = {
      Point4{Rat(3, 5), Rat(3, 4)}, Point4{Rat(1), Rat(2, 3)},
      Point4{Rat(5, 4), Rat(5, 4)}, Point4{Rat(2), Rat(1, 7)}};

  const ConstancyReport tb =
      derdzinski_scalar_identity(profile_from_local(1, Rat(1), Rat(6)), pts);
  CHECK(tb.constant == Rat(0));
  CHECK(tb.max_deviation == Rat(0));
  CHECK(tb.equals_einstein_scalar);

  const ConstancyReport inc =
      derdzinski_scalar_identity(profile_from_local(3, Rat(1), Rat(12)), pts);
  CHECK(inc.constant == Rat(-5184));
  CHECK(inc.max_deviation == Rat(0));
  CHECK(inc.equals_einstein_scalar);

  // constant scal: gradient terms drop, the constant is s^3
  const Profile ke = profile_from_local(3, Rat(1), Rat(-4));
  const ConstancyReport kr = derdzinski_scalar_identity(ke, pts);
  CHECK(kr.constant == (Rat(2) * ke.q3).pow(3));
  CHECK(kr.constant == Rat(-64));
  CHECK(kr.equals_einstein_scalar);

  // off the Bach-flat locus the expression acquires a 1/r defect whose
  // coefficient is 24 q4 (q4 q0 - q3 q1), so constancy detects Bach-flatness
  const ConeProfile cp = profile_from_cone(1, Rat(1), Rat(2), Rat(1));
  const Profile& bad = cp.base;
  REQUIRE(!is_bach_flat(bad));
  const ConstancyReport br = derdzinski_scalar_identity(bad, pts);
  const Rat D = Rat(24) * bad.q4 * (bad.q4 * bad.q0 - bad.q3 * bad.q1);
  REQUIRE(!D.is_zero());
  CHECK(br.constant == einstein_constant(bad) + D / pts[0].r());
  Rat dev(0);
  for (const Point4& pt : pts) {
    dev = std::max(dev, (D / pt.r() - D / pts[0].r()).abs());
  }
  CHECK(br.max_deviation == dev);
  CHECK(!br.equals_einstein_scalar);
}

TEST_CASE("diagonal coframe: exact coefficients r/(2p), 1/(2rx1x2), 2p/r, 2rx1x2") {
  Lcg rng(424242);
  const auto panel = bach_flat_panel();
  for (size_t i = 0; i < 5; ++i) {
    const Profile& pr = panel[i];
    const Point4 pt = point_between(rng, pr.a, pr.a + Rat(9, 10));
    if (pr.p_poly().eval(pt.r()).is_zero() || pt.r() == Rat(2)) continue;
    const Rat r = pt.r();
    const Rat p = pr.p_poly().eval(r);
    const DiagonalFrame df = diagonal_frame_check(pr, pt);
    CAPTURE(pr.m);
    CHECK(df.c_dr == r / (Rat(2) * p));
    CHECK(df.c_kappa == Rat(1) / (Rat(2) * r * pt.x1 * pt.x2));
    CHECK(df.c_eta == Rat(2) * p / r);
    CHECK(df.c_chi == Rat(2) * r * pt.x1 * pt.x2);
    CHECK(df.off_diagonal_max == Rat(0));
    CHECK(df.dr_kappa_inner == Rat(0));
    // published candidates 2r/p and 2/(rp) both miss (away from r = 2, where
    // 2/(rp) crosses the true value), as does the published eta factor p/r
    CHECK(!df.candidate_2r_over_p);
    CHECK(!df.candidate_2_over_rp);
    CHECK(!df.eta_coeff_p_over_r);
  }
  // the accidental crossing: at r = 2, 2/(rp) equals r/(2p)
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  const DiagonalFrame at2 = diagonal_frame_check(tb, Point4{Rat(1), Rat(1)});
  CHECK(at2.candidate_2_over_rp);
  CHECK(!at2.candidate_2r_over_p);
  CHECK(at2.c_dr == Rat(1) / tb.p_poly().eval(Rat(2)));
}

TEST_CASE("rescaled conformal limit of the degenerating Einstein family") {
  const std::vector<Point4> pts = {Point4{Rat(3, 4), Rat(3, 4)},
                                   Point4{Rat(1), Rat(4, 5)},
                                   Point4{Rat(3, 2), Rat(1)}};

  const BeyondLimit m1 = beyond_limit(1, Rat(1), pts);
  CHECK(m1.rescaled);
  CHECK(m1.S == Rat(12));
  CHECK(!m1.singular_radius.has_value());
  CHECK(m1.max_residual == Rat(0));
  CHECK(m1.points == 3);

  const BeyondLimit m1b = beyond_limit(1, Rat(2), {Point4{Rat(3, 2), Rat(1)}});
  CHECK(m1b.S == Rat(6));
  CHECK(m1b.max_residual == Rat(0));

  // m = 2: factor is identically one and the scalar-flat metric is already
  // Ricci-flat
  const BeyondLimit m2 = beyond_limit(2, Rat(1), pts);
  CHECK(!m2.rescaled);
  CHECK(m2.S == Rat(0));
  CHECK(m2.max_residual == Rat(0));

  const BeyondLimit m3 = beyond_limit(3, Rat(1), pts);
  CHECK(m3.rescaled);
  CHECK(m3.S == Rat(-12));
  REQUIRE(m3.singular_radius.has_value());
  CHECK(*m3.singular_radius == Rat(4));
  CHECK(m3.max_residual == Rat(0));

  const BeyondLimit m4 = beyond_limit(4, Rat(2), {Point4{Rat(5, 2), Rat(2)}});
  CHECK(m4.S == Rat(-12));
  CHECK(*m4.singular_radius == Rat(6));
  CHECK(m4.max_residual == Rat(0));

  const BeyondLimit m5 = beyond_limit(5, Rat(3), {Point4{Rat(7, 2), Rat(1, 2)}});
  CHECK(m5.S == Rat(-12));
  CHECK(*m5.singular_radius == Rat(8));
  CHECK(m5.max_residual == Rat(0));

  // the factor degenerates at the singular radius and beyond
  CHECK_THROWS_AS(beyond_limit(3, Rat(1), {Point4{Rat(2), Rat(2)}}), DomainError);
  CHECK_THROWS_AS(beyond_limit(3, Rat(1), {Point4{Rat(3), Rat(2)}}), DomainError);
}
