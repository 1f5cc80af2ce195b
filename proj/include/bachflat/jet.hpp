#pragma once

#include "bachflat/poly.hpp"
#include "bachflat/rational.hpp"

#include <array>

namespace bachflat {

// Truncated bivariate Taylor expansion about a point, exact coefficients.
// coeff(i, j) multiplies dx1^i dx2^j, so partial(i, j) = i! j! coeff(i, j).
// Arithmetic is exact truncated Taylor algebra up to total degree order().
// Each derivative lowers order() by one; coefficients beyond order() carry no
// information and reading them throws. That keeps long curvature pipelines
// honest: a chain that differentiates too often fails loudly instead of
// returning a silently truncated value.
class Jet2 {
 public:
  static constexpr int kMaxOrder = 3;

  Jet2();  // zero jet at full order

  static Jet2 constant(const Rat& v);
  // coordinate seeds: x1 = v + dx1, x2 = v + dx2
  static Jet2 seed1(const Rat& v);
  static Jet2 seed2(const Rat& v);

  int order() const { return ord_; }
  const Rat& value() const { return c_[0][0]; }
  const Rat& coeff(int i, int j) const;
  Rat partial(int i, int j) const;
  bool is_zero() const;  // every coefficient up to order() vanishes

  Jet2 d1() const;  // within-order partial derivative in x1
  Jet2 d2() const;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);

  friend Jet2 operator+(const Jet2& f, const Jet2& g);
  friend Jet2 operator-(const Jet2& f, const Jet2& g);
  friend Jet2 operator*(const Jet2& f, const Jet2& g);
  friend Jet2 operator*(const Rat& s, const Jet2& f);
  friend Jet2 operator*(const Jet2& f, const Rat& s);
  friend Jet2 operator+(const Jet2& f, const Rat& s);
  friend Jet2 operator-(const Jet2& f, const Rat& s);

  // reciprocal; value() must be nonzero
  Jet2 inv() const;
  friend Jet2 operator/(const Jet2& f, const Jet2& g);
  friend Jet2 operator/(const Jet2& f, const Rat& s);

 private:
  void check_read(int i, int j) const;

  int ord_ = kMaxOrder;
  std::array<std::array<Rat, kMaxOrder + 1>, kMaxOrder + 1> c_;
};

// p evaluated on a jet by Horner's rule, exact.
Jet2 eval_on_jet(const Poly& p, const Jet2& x);

}  // namespace bachflat
