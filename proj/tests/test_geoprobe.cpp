#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bachflat/geoprobe.hpp"
#include "bachflat/profile.hpp"
#include "bachflat/roots.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

using namespace bachflat;

namespace {

constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

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

// wraps a bare p with unit quadratic coefficient as a curvature profile;
// q = r^2 - p reproduces p exactly through the factorial storage
Profile profile_from_p(const Poly& p) {
  REQUIRE(p.coeff(2) == Rat(1));
  Profile pr;
  pr.m = 1;
  pr.a = Rat(1);
  pr.q0 = -p.coeff(0);
  pr.q1 = -p.coeff(1);
  pr.q3 = Rat(-6) * p.coeff(3);
  pr.q4 = Rat(-24) * p.coeff(4);
  REQUIRE(pr.p_poly() == p);
  return pr;
}

// length integrand built from the factored form scale * prod (l - root);
// expanding and re-evaluating by Horner would cancel catastrophically near
// a multiple root
std::function<double(double)> factored_integrand(const Rat& scale,
                                                 const std::vector<Rat>& roots) {
  std::vector<double> rd;
  rd.reserve(roots.size());
  for (const Rat& r : roots) rd.push_back(r.to_double());
  const double sd = scale.to_double();
  return [sd, rd](double l) {
    double p = sd;
    for (double r : rd) p *= l - r;
    return std::sqrt(l / p);
  };
}

// ratio of successive dyadic partial integrals toward a finite endpoint;
// converges to 2^{-(e+1)} when the integrand grows like t^e there
double dyadic_ratio_finite(const std::function<double(double)>& f, double b,
                           double delta0, int steps) {
  double prev = 0.0, ratio = 0.0, delta = delta0;
  for (int m = 0; m < steps; ++m) {
    const double piece =
        integrate_adaptive(f, b - delta, b - delta / 2.0, 1e-10).value;
    if (m > 0) ratio = piece / prev;
    prev = piece;
    delta /= 2.0;
  }
  return ratio;
}

// same toward infinity over doubling windows; limit is 2^{e+1}
double dyadic_ratio_infinity(const std::function<double(double)>& f,
                             double start, int steps) {
  double prev = 0.0, ratio = 0.0, lo = start;
  for (int m = 0; m < steps; ++m) {
    const double piece = integrate_adaptive(f, lo, 2.0 * lo, 1e-10).value;
    if (m > 0) ratio = piece / prev;
    prev = piece;
    lo *= 2.0;
  }
  return ratio;
}

}  // namespace

TEST_CASE("endpoint exponents follow multiplicity and scal zeros") {
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));  // two-ended, double root at 3

  // regular interior point: proper endpoint
  EndpointExponent reg = endpoint_exponent(tb, Rat(2), false);
  CHECK(reg.p_multiplicity == 0);
  CHECK(!reg.improper());
  CHECK(!reg.divergent());
  CHECK(reg.exponent == Rat(0));

  // simple root: integrable 1/sqrt singularity
  EndpointExponent bolt_a = endpoint_exponent(tb, Rat(1), false);
  CHECK(bolt_a.p_multiplicity == 1);
  CHECK(bolt_a.improper());
  CHECK(!bolt_a.divergent());
  CHECK(bolt_a.exponent == Rat(-1, 2));

  // double root: logarithmic divergence, exponent -1
  EndpointExponent bolt_b = endpoint_exponent(tb, Rat(3), false);
  CHECK(bolt_b.p_multiplicity == 2);
  CHECK(bolt_b.divergent());
  CHECK(bolt_b.exponent == Rat(-1));

  // the conformal factor adds one to the blow-up order where scal = 9 - 3r
  // vanishes, which is the same radius r = 3
  EndpointExponent conf_b = endpoint_exponent(tb, Rat(3), true);
  CHECK(conf_b.scal_zero);
  CHECK(conf_b.exponent == Rat(-2));
  CHECK(conf_b.divergent());

  // infinity: exponent (1 - deg p)/2, minus 1 conformally when q4 != 0
  const Profile quartic = profile_from_local(3, Rat(1), Rat(12));
  const Profile cubic = profile_from_local(3, Rat(1, 3), Rat(-12));
  const Profile quadratic = profile_from_local(2, Rat(1), Rat(0));
  CHECK(endpoint_exponent(quadratic, std::nullopt, false).exponent == Rat(-1, 2));
  CHECK(endpoint_exponent(cubic, std::nullopt, false).exponent == Rat(-1));
  CHECK(endpoint_exponent(quartic, std::nullopt, false).exponent == Rat(-3, 2));
  CHECK(endpoint_exponent(quadratic, std::nullopt, false).divergent());
  CHECK(endpoint_exponent(cubic, std::nullopt, false).divergent());
  CHECK(!endpoint_exponent(quartic, std::nullopt, false).divergent());
  CHECK(endpoint_exponent(quartic, std::nullopt, true).exponent == Rat(-5, 2));
  CHECK(endpoint_exponent(tb, std::nullopt, true).exponent == Rat(-5, 2));

  // constant nonzero scal rescales by a constant: no shift at infinity
  const Profile cscal = profile_from_local(3, Rat(1), Rat(-4));
  CHECK(endpoint_exponent(cscal, std::nullopt, true).exponent == Rat(-1));

  // identically zero scal has no conformal rescaling at all
  CHECK_THROWS_WITH_AS(endpoint_exponent(quadratic, Rat(2), true),
                       "conformal metric undefined: scal vanishes everywhere",
                       DomainError);
}

TEST_CASE("ray length reproduces an elementary integral exactly") {
  // p = r^2 gives integrand 1/sqrt(l), so the [1, 4] length is exactly 2
  const Profile pr = profile_from_p(Poly{Rat(0), Rat(0), Rat(1)});
  const RayLength two = ray_length(pr, Rat(1), Rat(4), false);
  REQUIRE(two.finite());
  CHECK(*two.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(two.error_bound < 1e-6);
  CHECK(two.error_bound > 0.0);

  // and [1, 9] has length 2(3 - 1) = 4
  const RayLength four = ray_length(pr, Rat(1), Rat(9), false);
  CHECK(*four.value == doctest::Approx(4.0).epsilon(1e-12));

  // quadratic p diverges toward infinity like r^{-1/2}
  const RayLength inf = ray_length(pr, Rat(1), std::nullopt, false);
  CHECK(!inf.finite());
  CHECK(*inf.divergence_exponent == Rat(-1, 2));

  CHECK_THROWS_WITH_AS(ray_length(pr, Rat(1), Rat(4), true),
                       "conformal metric undefined: scal vanishes everywhere",
                       DomainError);
}

TEST_CASE("ray length on the curvature families") {
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  const Profile quartic = profile_from_local(3, Rat(1), Rat(12));
  const Profile cone = profile_from_local(1, Rat(1), Rat(3));
  const Profile cscal = profile_from_local(3, Rat(1), Rat(-4));

  SUBCASE("argument validation") {
    CHECK_THROWS_WITH_AS(ray_length(tb, Rat(0), Rat(2), false),
                         "ray must start at positive r", DomainError);
    CHECK_THROWS_WITH_AS(ray_length(tb, Rat(2), Rat(2), false),
                         "empty ray: r_hi <= r_lo", DomainError);
    CHECK_THROWS_WITH_AS(ray_length(tb, Rat(2), Rat(4), false),
                         "p vanishes inside the ray", DomainError);
    CHECK_THROWS_WITH_AS(ray_length(cone, Rat(4), Rat(5), false),
                         "p is not positive along the ray", DomainError);
    CHECK_THROWS_WITH_AS(
        ray_length(quartic, Rat(3, 2), std::nullopt, true),
        "conformal metric undefined: scal vanishes on the hypersurface r = 7/4",
        DomainError);
  }

  SUBCASE("divergent endpoints are classified, not integrated") {
    const RayLength to_bolt = ray_length(tb, Rat(2), Rat(3), false);
    CHECK(!to_bolt.finite());
    CHECK(*to_bolt.divergence_exponent == Rat(-1));

    const RayLength to_bolt_conf = ray_length(tb, Rat(2), Rat(3), true);
    CHECK(!to_bolt_conf.finite());
    CHECK(*to_bolt_conf.divergence_exponent == Rat(-2));

    const RayLength from_bolt = ray_length(tb, Rat(3), std::nullopt, false);
    CHECK(!from_bolt.finite());
    CHECK(*from_bolt.divergence_exponent == Rat(-1));
  }

  SUBCASE("finite rays are additive across a split point") {
    // lower endpoint at the simple root r = 1 is regularized by substitution
    const RayLength whole = ray_length(tb, Rat(1), Rat(2), false);
    const RayLength left = ray_length(tb, Rat(1), Rat(3, 2), false);
    const RayLength right = ray_length(tb, Rat(3, 2), Rat(2), false);
    REQUIRE(whole.finite());
    const double slack =
        whole.error_bound + left.error_bound + right.error_bound + 1e-12;
    CHECK(std::fabs(*whole.value - (*left.value + *right.value)) < slack);
    CHECK(*whole.value > 0.0);

    // the quartic family reaches infinity at finite distance
    const RayLength all = ray_length(quartic, Rat(3, 2), std::nullopt, false);
    const RayLength head = ray_length(quartic, Rat(3, 2), Rat(1000000), false);
    const RayLength tail = ray_length(quartic, Rat(1000000), std::nullopt, false);
    REQUIRE(all.finite());
    REQUIRE(head.finite());
    REQUIRE(tail.finite());
    CHECK(*head.value < *all.value);
    const double slack2 =
        all.error_bound + head.error_bound + tail.error_bound + 1e-12;
    CHECK(std::fabs(*all.value - (*head.value + *tail.value)) < slack2);

    // conformal ray clear of the scal zero at 7/4 also converges at infinity
    const RayLength conf = ray_length(quartic, Rat(2), std::nullopt, true);
    REQUIRE(conf.finite());
    CHECK(*conf.value > 0.0);

    const RayLength interior = ray_length(cone, Rat(3, 2), Rat(5, 2), false);
    REQUIRE(interior.finite());
    CHECK(*interior.value > 0.0);
  }

  SUBCASE("constant scal rescales lengths by a constant") {
    // scal = -4 identically, so conformal distance is a quarter of plain
    const RayLength plain = ray_length(cscal, Rat(2), Rat(5), false);
    const RayLength conf = ray_length(cscal, Rat(2), Rat(5), true);
    REQUIRE(plain.finite());
    REQUIRE(conf.finite());
    CHECK(*conf.value == doctest::Approx(*plain.value / 4.0).epsilon(1e-13));
  }
}

TEST_CASE("dyadic partial integrals confirm every endpoint classification") {
  Lcg rng(20260816ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const int pattern = trial % 8;
    std::vector<Rat> roots;
    Rat scale(1);
    std::optional<Rat> endpoint;
    int expect_mult = 0;

    const Rat b = Rat(rng.next(2, 8), rng.next(1, 2));
    const Rat c = b + Rat(rng.next(1, 6), 1);
    const Rat d = c + Rat(rng.next(1, 4), 1);
    switch (pattern) {
      case 0:  // simple root, quadratic p
        roots = {b, c};
        endpoint = b;
        expect_mult = 1;
        break;
      case 1:  // double root, quadratic p
        roots = {b, b};
        endpoint = b;
        expect_mult = 2;
        break;
      case 2:  // simple root, cubic p, scaled so [r^2] = 1
        roots = {b, c, d};
        scale = Rat(-1) / (b + c + d);
        endpoint = b;
        expect_mult = 1;
        break;
      case 3:  // double root, cubic p
        roots = {b, b, c};
        scale = Rat(-1) / (Rat(2) * b + c);
        endpoint = b;
        expect_mult = 2;
        break;
      case 4:  // double root, quartic p
        roots = {b, b, c, d};
        scale = (b * b + Rat(2) * b * c + Rat(2) * b * d + c * d).inv();
        endpoint = b;
        expect_mult = 2;
        break;
      case 5:  // triple root, quartic p
        roots = {b, b, b, c};
        scale = (Rat(3) * b * b + Rat(3) * b * c).inv();
        endpoint = b;
        expect_mult = 3;
        break;
      case 6:  // cubic p, all roots negative: probe infinity
        roots = {-b, -c, -d};
        scale = (b + c + d).inv();
        break;
      case 7:  // quartic p, all roots negative: probe infinity
        roots = {-b, -b, -c, -d};
        scale = (b * b + Rat(2) * b * c + Rat(2) * b * d + c * d).inv();
        break;
    }

    CAPTURE(trial);
    CAPTURE(pattern);
    const Profile pr = profile_from_p(Poly::from_roots(roots) * scale);
    const EndpointExponent ee = endpoint_exponent(pr, endpoint, false);
    const auto f = factored_integrand(scale, roots);

    double ratio, expected;
    if (endpoint) {
      REQUIRE(ee.p_multiplicity == expect_mult);
      REQUIRE(ee.exponent == Rat(-expect_mult, 2));
      const double bd = endpoint->to_double();
      REQUIRE(pr.p_poly().eval(*endpoint - Rat(1, 8)).sign() > 0);
      ratio = dyadic_ratio_finite(f, bd, 0.25 * bd, 12);
      expected = std::pow(2.0, -(ee.exponent.to_double() + 1.0));
    } else {
      REQUIRE(ee.at_infinity);
      ratio = dyadic_ratio_infinity(f, 8.0, 12);
      expected = std::pow(2.0, ee.exponent.to_double() + 1.0);
    }
    CHECK(ratio == doctest::Approx(expected).epsilon(0.08));

    // the measured decay agrees with the convergence verdict
    CHECK(ee.divergent() == (expected >= 1.0 - 1e-9));
  }

  // conformal spot checks: the scal zero adds one full order
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  REQUIRE(tb.p_poly() ==
          Poly::from_roots({Rat(-1), Rat(1), Rat(3), Rat(3)}) * Rat(1, 8));
  auto ftb = [](double l) {
    const double p = 0.125 * (l + 1.0) * (l - 1.0) * (l - 3.0) * (l - 3.0);
    return std::sqrt(l / p) / std::fabs(9.0 - 3.0 * l);
  };
  const EndpointExponent etb = endpoint_exponent(tb, Rat(3), true);
  CHECK(etb.exponent == Rat(-2));
  CHECK(dyadic_ratio_finite(ftb, 3.0, 0.5, 12) ==
        doctest::Approx(2.0).epsilon(0.08));

  // scal = 28 - 16 r vanishes at 7/4 where p is regular
  const Profile quartic = profile_from_local(3, Rat(1), Rat(12));
  const Poly pq = quartic.p_poly();
  std::vector<double> pqd;
  for (const Rat& r : pq.coeffs()) pqd.push_back(r.to_double());
  auto fq = [pqd](double l) {
    double p = 0.0;
    for (size_t i = pqd.size(); i-- > 0;) p = p * l + pqd[i];
    return std::sqrt(l / p) / std::fabs(28.0 - 16.0 * l);
  };
  const EndpointExponent eq = endpoint_exponent(quartic, Rat(7, 4), true);
  CHECK(eq.p_multiplicity == 0);
  CHECK(eq.scal_zero);
  CHECK(eq.exponent == Rat(-1));
  CHECK(eq.divergent());
  CHECK(dyadic_ratio_finite(fq, 1.75, 0.25, 12) ==
        doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("volume closed form and conformal quadrature") {
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  const Profile flat = profile_from_local(2, Rat(1), Rat(0));
  const Profile cscal = profile_from_local(3, Rat(1), Rat(-4));
  const Profile quartic = profile_from_local(3, Rat(1), Rat(12));

  SUBCASE("sublevel volume is 2 pi^2 (r^2 - a^2) exactly") {
    const VolumeResult v = volume(tb, Rat(3), false);
    REQUIRE(v.over_two_pi_sq.has_value());
    CHECK(*v.over_two_pi_sq == Rat(8));
    CHECK(v.value == doctest::Approx(16.0 * M_PI * M_PI).epsilon(1e-14));

    const VolumeResult w = volume(flat, Rat(7, 2), false);
    CHECK(*w.over_two_pi_sq == Rat(45, 4));

    // zero at the zero section
    const VolumeResult z = volume(tb, Rat(1), false);
    CHECK(*z.over_two_pi_sq == Rat(0));
    CHECK(z.value == 0.0);

    CHECK_THROWS_WITH_AS(volume(tb, Rat(1, 2), false),
                         "volume cutoff below the zero section r = a",
                         DomainError);

    // quadrature of the density reproduces the closed form
    auto density = [](double r) { return 2.0 * kTwoPiSq * r; };
    const QuadResult q = integrate_adaptive(density, 1.0, 3.0, 1e-12);
    CHECK(q.value == doctest::Approx(v.value).epsilon(1e-12));
  }

  SUBCASE("constant scal scales volume by scal^-4") {
    const VolumeResult plain = volume(cscal, Rat(5), false);
    const VolumeResult conf = volume(cscal, Rat(5), true);
    CHECK(conf.value ==
          doctest::Approx(plain.value / 256.0).epsilon(1e-10));
    CHECK(!conf.over_two_pi_sq.has_value());
  }

  SUBCASE("conformal volume blows up like the fourth power at the scal zero") {
    // scal = 9 - 3r vanishes at r = 3: V(3 - delta) ~ C delta^-3
    const Rat delta(1, 1000);
    const VolumeResult v1 = volume(tb, Rat(3) - delta, true);
    const VolumeResult v2 = volume(tb, Rat(3) - delta / Rat(2), true);
    CHECK(v2.value / v1.value == doctest::Approx(8.0).epsilon(0.02));

    CHECK_THROWS_WITH_AS(volume(tb, Rat(3), true),
                         "conformal volume undefined: scal vanishes at r = 3",
                         DomainError);
    CHECK_THROWS_WITH_AS(volume(tb, Rat(4), true),
                         "conformal volume undefined: scal vanishes at r = 3",
                         DomainError);
    CHECK_THROWS_WITH_AS(volume(quartic, Rat(2), true),
                         "conformal volume undefined: scal vanishes at r = 7/4",
                         DomainError);
  }
}

TEST_CASE("volume growth models and rates") {
  SUBCASE("quadratic p grows like the flat quartic cone") {
    const GrowthEstimate est =
        growth_exponent(profile_from_local(2, Rat(1), Rat(0)), false);
    CHECK(est.model == GrowthModel::Polynomial);
    CHECK(est.value == doctest::Approx(4.0).epsilon(0.025));
    CHECK(est.fit_residual < 0.05);
  }

  SUBCASE("cubic p opens a hyperbolic end with rate 2 sqrt(lc)") {
    // leading coefficient (m - 2)/(3a) = 1 here, so the rate is exactly 2
    const GrowthEstimate est =
        growth_exponent(profile_from_local(3, Rat(1, 3), Rat(-12)), false);
    CHECK(est.model == GrowthModel::Exponential);
    CHECK(est.value == doctest::Approx(2.0).epsilon(0.05));
    CHECK(est.fit_residual < 0.05);
  }

  SUBCASE("the rescaled two-ended metric grows cubically toward the bolt") {
    const GrowthEstimate est =
        growth_exponent(profile_from_local(1, Rat(1), Rat(6)), true);
    CHECK(est.model == GrowthModel::Polynomial);
    CHECK(est.value == doctest::Approx(3.0).epsilon(0.034));

    // without rescaling the same metric closes up with total volume 16 pi^2
    const GrowthEstimate tot =
        growth_exponent(profile_from_local(1, Rat(1), Rat(6)), false);
    CHECK(tot.model == GrowthModel::FiniteTotal);
    CHECK(tot.value == doctest::Approx(16.0 * M_PI * M_PI).epsilon(1e-12));
  }

  SUBCASE("a simple p root under a coincident scal zero gives exponent 6") {
    // scal = 4 - 2r vanishes exactly at the simple root r = 2, and p
    // decreases monotonically from 25/12 at the zero section
    const Profile pr = profile_from_p(
        Poly{Rat(16, 3), Rat(-4), Rat(1), Rat(-1, 3), Rat(1, 12)});
    REQUIRE(pr.p_poly().eval(Rat(2)) == Rat(0));
    REQUIRE(pr.scal_at(Rat(2)) == Rat(0));
    REQUIRE(pr.p_poly().derivative().eval(Rat(2)) == Rat(-4, 3));
    const GrowthEstimate est = growth_exponent(pr, true);
    CHECK(est.model == GrowthModel::Polynomial);
    CHECK(est.value == doctest::Approx(6.0).epsilon(0.034));
  }

  SUBCASE("a scal zero away from any p root gives logarithmic distance") {
    const GrowthEstimate est =
        growth_exponent(profile_from_local(3, Rat(1), Rat(12)), true);
    CHECK(est.model == GrowthModel::Exponential);
    CHECK(est.value > 0.0);
  }

  SUBCASE("incomplete ends are refused") {
    CHECK_THROWS_WITH_AS(
        growth_exponent(profile_from_local(3, Rat(1), Rat(12)), false),
        "incomplete end: infinity at finite distance", DomainError);
  }

  SUBCASE("finite conformal volume comes out of the quadrature") {
    // simple p root at 4 with scal = (84 + 24 r)/19 never vanishing
    Poly p = Poly::from_roots({Rat(1), Rat(4)}) *
             Poly{Rat(37), Rat(12), Rat(1)};  // (x + 6)^2 + 1
    p *= Rat(-1, 19);
    const Profile pr = profile_from_p(p);
    REQUIRE(pr.scal_at(Rat(0)) == Rat(84, 19));
    const GrowthEstimate est = growth_exponent(pr, true);
    CHECK(est.model == GrowthModel::FiniteTotal);

    const double q3d = pr.q3.to_double(), q4d = pr.q4.to_double();
    auto density = [q3d, q4d](double r) {
      const double s = 2.0 * q3d + q4d * r;
      return 2.0 * kTwoPiSq * r / (s * s * s * s);
    };
    const QuadResult direct = integrate_adaptive(density, 1.0, 4.0, 1e-12);
    CHECK(est.value == doctest::Approx(direct.value).epsilon(1e-8));

    // scal = 9/4 + 3r/4 never vanishes above the zero section here, so the
    // rescaled metric also closes up at the simple root r = 3
    const Profile cone = profile_from_local(1, Rat(1), Rat(3));
    REQUIRE(cone.scal_at(Rat(3)) == Rat(9, 2));
    const GrowthEstimate cest = growth_exponent(cone, true);
    CHECK(cest.model == GrowthModel::FiniteTotal);
    const double cq3 = cone.q3.to_double(), cq4 = cone.q4.to_double();
    auto cdensity = [cq3, cq4](double r) {
      const double s = 2.0 * cq3 + cq4 * r;
      return 2.0 * kTwoPiSq * r / (s * s * s * s);
    };
    const QuadResult cdirect = integrate_adaptive(cdensity, 1.0, 3.0, 1e-12);
    CHECK(cest.value == doctest::Approx(cdirect.value).epsilon(1e-8));
  }

  SUBCASE("an irrational p root bounds the total volume") {
    const Profile pr = profile_from_local(5, Rat(2), Rat(-1));
    std::vector<IsolatedRoot> roots = real_roots_above(pr.p_poly(), Rat(2));
    REQUIRE(roots.size() == 1);
    REQUIRE(!roots.front().exact);
    roots.front().refine(Rat(1, 1000000000L));
    const double bd = roots.front().approx();
    const GrowthEstimate est = growth_exponent(pr, false);
    CHECK(est.model == GrowthModel::FiniteTotal);
    CHECK(est.value ==
          doctest::Approx(kTwoPiSq * (bd * bd - 4.0)).epsilon(1e-6));
  }

  SUBCASE("constant scal rescaling multiplies the rate by |scal|") {
    const Profile pr = profile_from_local(3, Rat(1), Rat(-4));
    const GrowthEstimate plain = growth_exponent(pr, false);
    const GrowthEstimate conf = growth_exponent(pr, true);
    CHECK(plain.model == GrowthModel::Exponential);
    CHECK(conf.model == GrowthModel::Exponential);
    // distances shrink by 4 while volumes only shift in log, so the
    // fitted rate grows by exactly 4
    CHECK(conf.value == doctest::Approx(4.0 * plain.value).epsilon(1e-12));
  }

  SUBCASE("tables are monotone and the csv is well formed") {
    const GrowthEstimate est =
        growth_exponent(profile_from_local(2, Rat(1), Rat(0)), false, 24);
    REQUIRE(est.table.size() == 24);
    for (size_t i = 1; i < est.table.size(); ++i) {
      CHECK(est.table[i].ell > est.table[i - 1].ell);
      CHECK(est.table[i].distance > est.table[i - 1].distance);
      CHECK(est.table[i].volume > est.table[i - 1].volume);
    }
    const std::string csv = growth_csv(est);
    CHECK(csv.rfind("R,volume,distance\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);

    // byte-identical across runs
    const GrowthEstimate again =
        growth_exponent(profile_from_local(2, Rat(1), Rat(0)), false, 24);
    CHECK(growth_csv(again) == csv);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_WITH_AS(
        growth_exponent(profile_from_local(2, Rat(1), Rat(0)), false, 19),
        "growth fit needs at least 20 samples", DomainError);

    Profile bad = profile_from_local(2, Rat(1), Rat(0));
    bad.a = Rat(0);
    CHECK_THROWS_WITH_AS(growth_exponent(bad, false),
                         "zero section needs a > 0", DomainError);

    // double root at the zero section: nothing to probe from
    const Profile far = profile_from_p(Poly::from_roots({Rat(1), Rat(1)}));
    CHECK_THROWS_WITH_AS(growth_exponent(far, false),
                         "zero section at infinite distance", DomainError);

    // p < 0 at the zero section
    const Profile neg = profile_from_p(Poly{Rat(-2), Rat(0), Rat(1)});
    CHECK_THROWS_WITH_AS(growth_exponent(neg, false),
                         "p is negative at the zero section", DomainError);

    // scal vanishing exactly at the zero section
    Profile szero = profile_from_p(
        Poly{Rat(0), Rat(0), Rat(1), Rat(-1, 6), Rat(1, 12)});
    REQUIRE(szero.scal_at(szero.a) == Rat(0));
    CHECK_THROWS_WITH_AS(growth_exponent(szero, true),
                         "zero section at infinite conformal distance",
                         DomainError);
  }
}

TEST_CASE("halving the tolerance moves results by less than the error bound") {
  const Profile tb = profile_from_local(1, Rat(1), Rat(6));
  const Profile quartic = profile_from_local(3, Rat(1), Rat(12));

  const RayLength r1 = ray_length(tb, Rat(1), Rat(2), false, 1e-8);
  const RayLength r2 = ray_length(tb, Rat(1), Rat(2), false, 5e-9);
  REQUIRE(r1.finite());
  REQUIRE(r2.finite());
  CHECK(std::fabs(*r1.value - *r2.value) <= r1.error_bound);

  const RayLength s1 = ray_length(quartic, Rat(3, 2), std::nullopt, false, 1e-8);
  const RayLength s2 = ray_length(quartic, Rat(3, 2), std::nullopt, false, 5e-9);
  CHECK(std::fabs(*s1.value - *s2.value) <= s1.error_bound);

  const VolumeResult v1 = volume(tb, Rat(5, 2), true, 1e-8);
  const VolumeResult v2 = volume(tb, Rat(5, 2), true, 5e-9);
  CHECK(std::fabs(v1.value - v2.value) <= v1.error_bound);
}
