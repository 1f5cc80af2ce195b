#include "bachflat/rational.hpp"

#include <cctype>
#include <ostream>

namespace bachflat {

Rat::Rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(static_cast<signed long>(num), static_cast<signed long>(den));
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::abs() const {
  return sign() < 0 ? Rat(mpq_class(-v_)) : *this;
}

Rat Rat::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rat(mpq_class(1) / v_);
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  Rat base = e < 0 ? inv() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  mpq_class acc;
  mpz_pow_ui(acc.get_num_mpz_t(), base.v_.get_num_mpz_t(), n);
  mpz_pow_ui(acc.get_den_mpz_t(), base.v_.get_den_mpz_t(), n);
  return Rat(acc);
}

mpz_class Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

mpz_class Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rat Rat::pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10u, static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class q;
  if (e < 0)
    q = mpq_class(mpz_class(1), p);
  else
    q = mpq_class(p);
  return Rat(q);
}

Rat Rat::parse(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw DomainError("empty rational literal");

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string ns = t.substr(0, slash), ds = t.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw DomainError("malformed rational: " + s);
    mpz_class n, d;
    if (mpz_set_str(n.get_mpz_t(), ns.c_str(), 10) != 0 ||
        mpz_set_str(d.get_mpz_t(), ds.c_str(), 10) != 0)
      throw DomainError("malformed rational: " + s);
    if (d == 0) throw DomainError("rational with zero denominator: " + s);
    mpq_class q(n, d);
    q.canonicalize();
    return Rat(q);
  }

  // decimal / scientific form, converted exactly
  long exp10 = 0;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = t.substr(epos + 1);
    if (es.empty()) throw DomainError("malformed rational: " + s);
    try {
      exp10 = std::stol(es);
    } catch (...) {
      throw DomainError("malformed rational: " + s);
    }
    t = t.substr(0, epos);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(t.size() - dot - 1);
    t.erase(dot, 1);
  }
  if (t.empty() || t == "-" || t == "+") throw DomainError("malformed rational: " + s);
  mpz_class mant;
  if (mpz_set_str(mant.get_mpz_t(), t.c_str(), 10) != 0)
    throw DomainError("malformed rational: " + s);
  return Rat(mpq_class(mant)) * pow10(exp10);
}

std::string Rat::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::to_decimal(int digits) const {
  if (digits < 0) digits = 0;
  bool neg = sign() < 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10u, static_cast<unsigned long>(digits));
  // round half away from zero
  mpz_class an = ::abs(v_.get_num()), d = v_.get_den();
  mpz_class num = (an * scale * 2 + d) / (d * 2);
  std::string s = num.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = (neg && num != 0 ? "-" : "");
  out += s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

}  // namespace bachflat
