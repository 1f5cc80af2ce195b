#pragma once

#include <optional>
#include <vector>

#include "bachflat/poly.hpp"
#include "bachflat/profile.hpp"
#include "bachflat/rational.hpp"
#include "bachflat/roots.hpp"

namespace bachflat {

enum class WeightStatus {
  NoSolution,    // negative discriminant, no real weight
  DoubleWeight,  // discriminant zero, the two branches touch
  TwoWeights,    // two positive weights
  SingleLinear,  // leading coefficient zero, one weight from the linear part
  PlusOnly,      // one positive root, the other root is negative
};

// The weight equation A p^2 + B p + C = 0 cutting out Bach-flat members
// among the two-ended profiles with divisor ratio x.
struct ConeQuadratic {
  int m = 1;
  Rat x;
  Rat A, B, C;
  Rat disc;  // B^2 - 4AC
  WeightStatus status = WeightStatus::NoSolution;
  // Branch labels follow the closed forms: for m = 1 the plus branch is the
  // one extending through x = 3 (the smaller root below 3, the positive root
  // above); for m >= 3 the plus branch is the larger root.
  std::optional<IsolatedRoot> p_plus;
  std::optional<IsolatedRoot> p_minus;

  std::vector<IsolatedRoot> weights() const;
};

ConeQuadratic cone_quadratic(int m, const Rat& x);

// A, B, C of the weight equation as polynomials in x for fixed m.
struct ConeQuadraticPolys {
  Poly A, B, C;
};

ConeQuadraticPolys cone_quadratic_polys(int m);

// Quartic bracket of the discriminant:
// disc = m^2 (x^2+4x+1)^2 * bracket(x).
Poly discriminant_bracket(int m);

// Smallest root of the bracket above 1: weights exist for x beyond it.
// Empty for m = 2 (the bracket is negative on all of (1, oo)).
std::optional<IsolatedRoot> weight_existence_threshold(int m);

// -B/(2A) evaluated at the refined threshold, the weight where the two
// branches meet.
Rat double_weight_at_threshold(int m);

enum class ScalVerdict { NowhereVanishing, ConstantScal, VanishesInside };

// Scalar curvature sign analysis on [a, b] for the two-ended profile with
// parameters (m, x, p).  N1, N2, D are affine in p; scal has a zero in
// [a, b] exactly when N1/D >= 0 and N2/D >= 0, and q4 has the sign of D.
struct Admissibility {
  std::optional<Rat> r1, r2, d;  // roots of N1, N2, D in p; empty when the
                                 // p-coefficient vanishes
  int sign_N1 = 0, sign_N2 = 0, sign_D = 0;
  ScalVerdict verdict = ScalVerdict::NowhereVanishing;
};

Admissibility admissibility(int m, const Rat& x, const Rat& weight);
// Irrational weights enter as isolated roots; signs are decided by exact
// comparison against the rational thresholds (may refine the enclosure).
Admissibility admissibility(int m, const Rat& x, IsolatedRoot& weight);

// Large-x behavior of the two weight branches for m >= 3:
// p_plus = m/2 - (3m^3-8m^2+8m)/((4m-8) x) + O(1/x^2),
// p_minus = 3m/((m-2) x) + O(1/x^2).
// Rows carry the remainders scaled by x^2; the C's are their maxima.
struct AsymptoticsRow {
  Rat x;
  Rat rem_plus_x2;
  Rat rem_minus_x2;
};

struct AsymptoticsReport {
  int m = 3;
  Rat lead_plus;       // m/2
  Rat sub_plus;        // coefficient of 1/x in the plus branch
  Rat lead_minus;      // coefficient of 1/x in the minus branch
  std::vector<AsymptoticsRow> rows;
  Rat C_plus, C_minus;
};

AsymptoticsReport weight_asymptotics(int m, const std::vector<Rat>& xs);

// y = a s(a) of the two-ended profile, independent of a.
Rat matching_y(int m, const Rat& x, const Rat& weight);

// x -> oo members of the two weight branches (m >= 3, a = 1), as exact
// leading-coefficient limits of the two-ended coefficient formulas: the plus
// branch (weight -> m/2) degenerates to the scalar-flat profile, the minus
// branch (weight ~ lead_minus/x) to the constant-curvature one.
struct LimitProfiles {
  Profile plus;   // y = 0 member
  Profile minus;  // y = -4(m-2) member
};

LimitProfiles limit_profiles(int m);

}  // namespace bachflat
