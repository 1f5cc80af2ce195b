#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace bachflat {

// Arbitrary-precision rational, always kept in canonical form
// (gcd(num, den) = 1, den > 0).  Thin value-type wrapper so the rest of
// the library never touches GMP directly.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(static_cast<signed long>(n)) {}
  Rat(int n) : v_(n) {}
  Rat(long num, long den);
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "7", "-3/4", "2.61", "1e-3", "-4.25e2".  Decimal forms are
  // converted exactly (no binary rounding).
  static Rat parse(const std::string& s);

  static Rat pow10(long e);  // 10^e, e may be negative

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat abs() const;
  Rat inv() const;
  Rat pow(long e) const;  // integer exponent, e < 0 requires nonzero

  mpz_class floor() const;
  mpz_class ceil() const;

  double to_double() const { return v_.get_d(); }
  // Canonical serialization: "num" when den == 1, else "num/den".
  std::string to_string() const;
  // Rounded decimal expansion with the given number of fraction digits.
  std::string to_decimal(int digits) const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class v_;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal-consistency failure: two formulas that must agree exactly
// disagreed.  Signals a convention bug, never bad user input.
struct DefectError : std::logic_error {
  using std::logic_error::logic_error;
};

// min/max by value
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace bachflat
