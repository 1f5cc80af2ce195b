#pragma once

#include "bachflat/profile.hpp"
#include "bachflat/roots.hpp"

#include <optional>
#include <string>

namespace bachflat {

// Certificate that p_poly > 0 on an open interval (a, b). Hess(u) is positive
// definite exactly where p_poly > 0, so this certifies convexity of the
// symplectic potential over the polytope interior.
struct PositivityCertificate {
  bool positive = false;
  // "root-free-interval" when positivity is certified by the absence of
  // interior roots, "grid-witness" when a violation is exhibited.
  std::string method;
  // distinct roots of p_poly strictly inside (a, b); the ends do not count
  int interior_roots = 0;
  std::optional<IsolatedRoot> violation;
  std::optional<Rat> witness;  // sample point backing the verdict
  Rat witness_value;           // p_poly at the witness
};

// Positivity of pr.p_poly() on the open interval (pr.a, b). The ends may be
// roots of any multiplicity; only interior behavior matters.
PositivityCertificate certify_positive(const Profile& pr, const Rat& b);
PositivityCertificate certify_positive(const ConeProfile& cp);

// Interior quadratic factor of a two-ended profile, computed at a = 1:
//   p_poly = (q4/24)(r - 1)(b - r)(r^2 + alphaQ r + betaQ),  b = x.
// The vertex discriminant packages as
//   alphaQ^2 - 4 betaQ = (scriptA p^2 + 2 m x scriptB p + m^2 x^2 scriptC)/D^2
// with D = m x (x+2) - p (x^2 + 2(m-1) x + m + 1) and p the weight. rho1 <=
// rho2 are the p-roots of that quadratic when real. r1, r2, d are the
// p-values where N1, N2, D below change sign (absent when the denominator
// vanishes). q4 and D always carry the same sign.
struct InteriorQuadratic {
  int m = 0;
  Rat x;
  Rat weight;
  bool degenerate = false;  // q4 == 0, the quartic factorization does not exist
  Rat alphaQ, betaQ;
  Rat scriptA, scriptB, scriptC;
  std::optional<IsolatedRoot> rho1, rho2;
  std::optional<Rat> r1, r2, d;
};

InteriorQuadratic interior_quadratic(int m, const Rat& x, const Rat& weight);

// Signs deciding whether the vertex -alphaQ/2 lies inside (a, b) and whether
// the interior quadratic has real roots:
//   N1 = -3 m x (x+1)        - p (x^3 + (m-3) x^2 - (5m-3) x - (2m+1))
//   N2 = m x (2 x^2 + 5x -1) - p (x^3 + 3(m-1) x^2 + 3(m+1) x - 1)
//   D  = m x (x+2)           - p (x^2 + 2(m-1) x + m + 1)
// The vertex lies in (a, b) iff N1/D > 0 and N2/D > 0; the quadratic dips
// negative only where additionally D * (alphaQ^2 - 4 betaQ) > 0. Signs are
// computed from exact products, so they are meaningful even at D = 0.
struct VertexSigns {
  Rat N1, N2, D;
  Rat disc_quad;  // alphaQ^2 - 4 betaQ, zero when D == 0
  int sign_N1_over_D = 0;
  int sign_N2_over_D = 0;
  int sign_D_disc = 0;
};

VertexSigns vertex_signs(int m, const Rat& x, const Rat& p);

// Hess(u) at a point (x1, x2) of the polytope interior, r = x1 + x2:
//   Hess(u) = (1/2) [[1/x1 + h'', h''], [h'', 1/x2 + h'']],
//   h''(r) = -1/r + r/p_poly(r).
struct HessianData {
  Rat u11, u12, u22;
  Rat det;
  Rat inv11, inv12, inv22;  // inverse from the adjugate, exact
  Rat trace_inv;
  bool positive_definite = false;
};

HessianData hessian_at(const Profile& pr, const Rat& x1, const Rat& x2);

}  // namespace bachflat
