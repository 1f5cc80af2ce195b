#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bachflat/identities.hpp"
#include "bachflat/conesolver.hpp"
#include "bachflat/profile.hpp"

using namespace bachflat;

TEST_CASE("every recorded claim lands on its expected status") {
  for (const auto& suite : all_identity_suites()) {
    CAPTURE(suite.name);
    CHECK(!suite.checks.empty());
    CHECK(suite.passed());
    for (const auto& c : suite.checks) {
      CAPTURE(c.name);
      CHECK(c.holds == c.expected);
    }
  }
}

TEST_CASE("suite tokens are stable and each suite refutes at least one variant") {
  auto suites = all_identity_suites();
  REQUIRE(suites.size() == 4);
  CHECK(suites[0].name == "coneDisc");
  CHECK(suites[1].name == "interiorQuadratic");
  CHECK(suites[2].name == "atlasCubics");
  CHECK(suites[3].name == "sFormulas");
  for (const auto& suite : suites) {
    int refuted = 0;
    for (const auto& c : suite.checks)
      if (!c.expected) ++refuted;
    CAPTURE(suite.name);
    CHECK(refuted >= 1);
  }
}

TEST_CASE("identity_check reports the exact difference") {
  Poly a{Rat(1), Rat(2)};
  CHECK(identity_check(a, Poly{Rat(1), Rat(2)}).holds);
  auto r = identity_check(Poly{Rat(3), Rat(2)}, a);
  CHECK_FALSE(r.holds);
  CHECK(identity_check(r.difference, Poly{Rat(2)}).holds);
}

TEST_CASE("independent re-derivations of sampled suite facts") {
  // weight-equation discriminant at m = 3, x = 2, straight from the
  // quadratic's own coefficients: 531^2 - 4 * 476 * 486
  auto cq = cone_quadratic(3, Rat(2));
  CHECK(cq.A == Rat(476));
  CHECK(cq.B == Rat(-531));
  CHECK(cq.C == Rat(486));
  CHECK(cq.disc == Rat(-643383));
  CHECK(discriminant_bracket(3).eval(Rat(2)) == Rat(-423));
  CHECK(cq.disc == Rat(9) * Rat(13).pow(2) * Rat(-423));

  // first cross-product identity at m = 2, x = 7/3 by direct evaluation
  const Rat x(7, 3);
  Rat lhs = (Rat(2) * x * x + Rat(5) * x - Rat(1)) *
                (x * x + Rat(2) * x + Rat(3)) -
            (x * x * x + Rat(3) * x * x + Rat(9) * x - Rat(1)) * (x + Rat(2));
  Rat cubic = x * x * x + Rat(3) * x * x - Rat(3) * x - Rat(1);
  CHECK(lhs == cubic * (x + Rat(1)));

  // closing identity anchor at m = 1, x = 3
  CHECK(Rat(25) * Rat(1936) + Rat(110) * Rat(-440) + Rat(121) * Rat(144) ==
        Rat(17424));
  CHECK(Rat(17424) == Rat(44) * Rat(44) * Rat(9));

  // expansion coefficients of the two branches at m = 3
  auto rep = weight_asymptotics(3, {Rat(100)});
  CHECK(rep.lead_plus == Rat(3, 2));
  CHECK(rep.sub_plus == Rat(-33, 4));
  CHECK(rep.lead_minus == Rat(9));

  // Einstein constant of the smooth family against its cubic in y
  CHECK(einstein_constant(profile_from_local(3, Rat(1), Rat(1))) == Rat(-14));
  CHECK(einstein_constant(profile_from_local(1, Rat(1), Rat(6))).is_zero());
  CHECK(einstein_constant(profile_from_local(3, Rat(1), Rat(-4))) ==
        Rat(-64));
}
