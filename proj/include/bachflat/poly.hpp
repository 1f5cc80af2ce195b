#pragma once

#include <string>
#include <vector>

#include "bachflat/rational.hpp"

namespace bachflat {

class Poly;

// quotient + remainder from polynomial division, deg(rem) < deg(divisor)
struct PolyDivMod;

// Dense univariate polynomial over Q.  Coefficients ascending by degree,
// trailing zeros always trimmed, so degree() is exact.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rat> ascending) : c_(ascending) { trim(); }
  explicit Poly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }
  static Poly constant(const Rat& r) { return Poly({r}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }
  // monic product of (x - root) over the given roots
  static Poly from_roots(const std::vector<Rat>& roots);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rat(0);
  }
  Rat lc() const { return is_zero() ? Rat(0) : c_.back(); }

  Rat eval(const Rat& x) const;
  Poly derivative() const;
  Poly monic() const;
  // substitute x -> inner(x)
  Poly compose(const Poly& inner) const;
  // substitute x -> a*x + b (cheaper special case used everywhere)
  Poly scale_shift(const Rat& a, const Rat& b) const;
  // coefficient list reversed: x^n * p(1/x), n = degree
  Poly reversed() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& k);
  Poly& operator/=(const Rat& k);

  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(Poly a, const Poly& b) { a *= b; return a; }
  friend Poly operator*(Poly a, const Rat& k) { a *= k; return a; }
  friend Poly operator*(const Rat& k, Poly a) { a *= k; return a; }
  friend Poly operator/(Poly a, const Rat& k) { a /= k; return a; }
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  PolyDivMod divmod(const Poly& divisor) const;
  // division known to be exact; throws DefectError on nonzero remainder
  Poly div_exact(const Poly& divisor) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

struct PolyDivMod { Poly quot, rem; };

// monic gcd(a, b); gcd(0, 0) = 0
Poly poly_gcd(Poly a, Poly b);

// Yun square-free decomposition: f ~ prod factors[i].first ^ factors[i].second
// with pairwise-coprime square-free factors of positive degree.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

// resultant via the Sylvester matrix, exact
Rat resultant(const Poly& p, const Poly& q);

// (-1)^{n(n-1)/2} res(p, p') / lc(p); requires deg >= 2
Rat discriminant(const Poly& p);

}  // namespace bachflat
