#pragma once

#include "bachflat/poly.hpp"
#include "bachflat/rational.hpp"

namespace bachflat {

// Quartic curvature profile q(r) = q0 + q1 r + (q3/6) r^3 + (q4/24) r^4,
// stored in the factorial convention so that scal(r) = 2 q3 + q4 r is exact.
// The metric lives on r = x1 + x2 > a; the zero section at r = a closes up
// smoothly exactly when p_poly(a) = 0 and p_poly'(a) = a m.
struct Profile {
  int m = 1;   // bundle degree
  Rat a;       // zero-section area parameter, a > 0
  Rat q0, q1, q3, q4;

  Poly q_poly() const;   // {q0, q1, 0, q3/6, q4/24}
  Poly p_poly() const;   // r^2 - q(r)
  // ptilde(t) = p_poly(a t) / a^2; depends only on (m, y), not on a.
  Poly ptilde() const;

  Rat scal_at(const Rat& r) const { return Rat(2) * q3 + q4 * r; }
  Rat s_at_a() const { return scal_at(a); }
  Rat y() const { return a * s_at_a(); }

  // Residuals of the closing conditions at r = a; both zero on every
  // profile built by the constructors below.
  Rat end_residual_value() const;   // p_poly(a)
  Rat end_residual_slope() const;   // p_poly'(a) - a m
  bool ends_smoothly() const;
};

struct ScalarCurvature {
  Rat A0;  // 2 q3
  Rat A1;  // q4
  Rat at(const Rat& r) const { return A0 + A1 * r; }
};

enum class VanishKind {
  IdenticallyZero,   // scal == 0
  ConstantNonzero,   // scal == 2 q3 != 0
  VanishesAt,        // single zero at r_star inside the domain r > a
  NeverVanishes,     // affine zero lies at or below a
};

struct VanishingLocus {
  VanishKind kind = VanishKind::IdenticallyZero;
  Rat r_star;  // meaningful only for VanishesAt
};

// Compactification over [a, b], b = a x: the divisor at infinity closes with
// cone angle 2 pi / weight, i.e. p_poly(b) = 0 and p_poly'(b) = -b m / weight.
struct ConeProfile {
  Profile base;
  Rat b;
  Rat x;       // b / a
  Rat weight;  // the boundary weight p

  Rat angle_over_2pi() const { return weight.inv(); }
  Rat bach_residual() const;  // q3 q1 - q4 q0
};

// The end-condition linear system for fixed (m, a, x) solved once; the
// solution is affine in the reciprocal weight w = 1/p.
struct ConeFamily {
  int m = 1;
  Rat a, x;
  Rat base_q[4];   // q_i at w = 0
  Rat slope_q[4];  // d q_i / d w

  Profile at_weight(const Rat& weight) const;
  // w = 0 member, the one-ended profile the family degenerates to.
  Profile limit() const;
};

// One-ended family on O(-m): q determined by (m, a, s(a)); always Bach-flat.
Profile profile_from_local(int m, const Rat& a, const Rat& s_a);

// Solves the four closing conditions exactly.  Throws DomainError
// "degenerate polytope" when x <= 1.
ConeFamily cone_family(int m, const Rat& a, const Rat& x);
ConeProfile profile_from_cone(int m, const Rat& a, const Rat& x,
                              const Rat& weight);

// Exact test q3 q1 == q4 q0.
bool is_bach_flat(const Profile& pr);

ScalarCurvature scalar_curvature(const Profile& pr);

// Scalar curvature S of the Einstein representative scal^-2 g, from the
// coefficient formula 12 q4^2 q1 + 8 q3^3 + 48 q3 q4.  On Bach-flat profiles
// with smooth ends the closed form -2 y^2 (y + 6(m-2)) / a^3 is evaluated as
// a cross-check; disagreement is a DefectError.  The Einstein constant is
// S / 4.
Rat einstein_constant(const Profile& pr);

VanishingLocus vanishing_locus(const Profile& pr);

}  // namespace bachflat
