#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bachflat/poly.hpp"

namespace bachflat {

// One real root of a polynomial, either known exactly (lo == hi) or enclosed
// in an open interval (lo, hi) whose endpoints are not roots.  The enclosure
// always contains exactly one root of `factor`, which is squarefree.
struct IsolatedRoot {
  Rat lo, hi;
  int multiplicity = 1;
  bool exact = false;
  Poly factor;   // monic squarefree factor owning this root
  int sign_lo = 0;  // sign of factor at lo when not exact

  Rat value() const;      // throws DomainError unless exact
  Rat midpoint() const;
  double approx() const;

  // Narrow the enclosure to width <= target; upgrades to exact when the root
  // turns out to be rational with modest denominator.
  void refine(const Rat& target_width);

  // -1, 0, +1 comparing the root to v.  Exact: may upgrade exactness.
  int compare(const Rat& v);

  std::string to_decimal(int digits);
};

// All distinct real roots, ascending, with multiplicities.  Enclosures are
// refined to default_refine_width(), or to the requested width.
std::vector<IsolatedRoot> real_roots(const Poly& p);
std::vector<IsolatedRoot> real_roots(const Poly& p, const Rat& width);

// Roots strictly greater than bound.
std::vector<IsolatedRoot> real_roots_above(const Poly& p, const Rat& bound);
std::vector<IsolatedRoot> real_roots_above(const Poly& p, const Rat& bound,
                                           const Rat& width);

// Number of distinct real roots strictly greater than bound.
int count_roots_above(const Poly& p, const Rat& bound);

// Number of distinct real roots in the open interval (lo, hi).
int count_roots_in(const Poly& p, const Rat& lo, const Rat& hi);

// Multiplicity of r as a root of p (0 if not a root).
int multiplicity_at(const Poly& p, const Rat& r);

// The unique rational of smallest denominator in the open interval (lo, hi).
Rat simplest_rational_between(const Rat& lo, const Rat& hi);

// Enclosure width used when none is requested.  10^-30 unless the
// CALABI_PRECISION environment variable overrides the exponent.
Rat default_refine_width();

}  // namespace bachflat
