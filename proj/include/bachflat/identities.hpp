#pragma once

#include <string>
#include <vector>

#include "bachflat/poly.hpp"

namespace bachflat {

// Exact two-sided comparison; difference = lhs - rhs.
struct PolyIdentity {
  bool holds = false;
  Poly difference;
};

PolyIdentity identity_check(const Poly& lhs, const Poly& rhs);

// One recorded claim.  `expected` is the status the suite asserts for the
// claim, `holds` is what exact arithmetic found; a formula variant that is
// genuinely wrong is recorded with expected = false.  All claims quantified
// over a parameter range use for-all semantics.
struct IdentityCheck {
  std::string name;
  bool expected = true;
  bool holds = false;
  std::string detail;
  bool ok() const { return holds == expected; }
};

struct IdentitySuite {
  std::string name;
  std::vector<IdentityCheck> checks;
  bool passed() const;
};

// Weight-equation discriminant factorizations, existence brackets, the
// explicit m = 1 branch formulas, and the large-x expansions of the weights
// and scalar thresholds.
IdentitySuite suite_cone_disc();

// Interior-positivity algebra: the threshold cross-product identities with
// their sign resolved, the dip-discriminant packaging, and the closing
// square identity.
IdentitySuite suite_interior_quadratic();

// The one-parameter family cubic in the shifted variable: discriminant
// factorizations, the root atlas rows, boundary double roots, and the sign
// pattern of the Einstein constant across the atlas.
IdentitySuite suite_atlas_cubics();

// Closed forms for the Einstein constant and the scalar curvature
// coefficients of the smooth local family.
IdentitySuite suite_s_formulas();

std::vector<IdentitySuite> all_identity_suites();

}  // namespace bachflat
