#include "bachflat/poly.hpp"

#include <sstream>

namespace bachflat {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_roots(const std::vector<Rat>& roots) {
  Poly p = constant(Rat(1));
  for (const Rat& r : roots) p *= Poly({-r, Rat(1)});
  return p;
}

Rat Poly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rat(static_cast<long>(k));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly p = *this;
  p /= lc();
  return p;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

Poly Poly::scale_shift(const Rat& a, const Rat& b) const {
  return compose(Poly({b, a}));
}

Poly Poly::reversed() const {
  std::vector<Rat> r(c_.rbegin(), c_.rend());
  return Poly(std::move(r));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> out(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  c_ = std::move(out);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rat& k) {
  if (k.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& ci : c_) ci *= k;
  return *this;
}

Poly& Poly::operator/=(const Rat& k) {
  if (k.is_zero()) throw DomainError("polynomial division by zero scalar");
  for (auto& ci : c_) ci /= k;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly p = a;
  for (auto& ci : p.c_) ci = -ci;
  return p;
}

PolyDivMod Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  Poly rem = *this;
  int dd = divisor.degree();
  if (rem.degree() < dd) return {Poly(), rem};
  std::vector<Rat> quot(rem.degree() - dd + 1, Rat(0));
  const Rat inv_lc = divisor.lc().inv();
  while (!rem.is_zero() && rem.degree() >= dd) {
    int k = rem.degree() - dd;
    Rat q = rem.lc() * inv_lc;
    quot[k] = q;
    // rem -= q * x^k * divisor
    for (int i = 0; i <= dd; ++i) rem.c_[k + i] -= q * divisor.c_[i];
    rem.trim();
  }
  return {Poly(std::move(quot)), rem};
}

Poly Poly::div_exact(const Poly& divisor) const {
  PolyDivMod dm = divmod(divisor);
  if (!dm.rem.is_zero()) throw DefectError("polynomial division expected exact");
  return dm.quot;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rat& ck = c_[k];
    if (ck.is_zero()) continue;
    if (!first) os << (ck.sign() > 0 ? " + " : " - ");
    else if (ck.sign() < 0) os << "-";
    first = false;
    Rat a = ck.abs();
    if (k == 0 || a != Rat(1)) os << a.to_string();
    if (k > 0) {
      if (a != Rat(1)) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() < 1) return out;
  Poly fp = f.derivative();
  Poly g = poly_gcd(f, fp);
  if (g.degree() == 0) {
    out.emplace_back(f.monic(), 1);
    return out;
  }
  Poly w = f.div_exact(g);
  Poly y = fp.div_exact(g);
  Poly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly ai = poly_gcd(w, z);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    w = w.div_exact(ai);
    y = z.div_exact(ai);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

Rat resultant(const Poly& p, const Poly& q) {
  int n = p.degree(), m = q.degree();
  if (n < 0 || m < 0) return Rat(0);
  if (n == 0) return p.lc().pow(m);
  if (m == 0) return q.lc().pow(n);
  const int N = n + m;
  // Sylvester matrix, rows of p coefficients (descending) then rows of q
  std::vector<std::vector<Rat>> M(N, std::vector<Rat>(N, Rat(0)));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[r][r + k] = p.coeff(n - k);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[m + r][r + k] = q.coeff(m - k);
  // exact fraction Gaussian elimination, deterministic pivoting
  Rat det(1);
  for (int col = 0; col < N; ++col) {
    int piv = -1;
    for (int r = col; r < N; ++r)
      if (!M[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(M[piv], M[col]);
      det = -det;
    }
    det *= M[col][col];
    Rat inv = M[col][col].inv();
    for (int r = col + 1; r < N; ++r) {
      if (M[r][col].is_zero()) continue;
      Rat f = M[r][col] * inv;
      for (int c2 = col; c2 < N; ++c2) M[r][c2] -= f * M[col][c2];
    }
  }
  return det;
}

Rat discriminant(const Poly& p) {
  int n = p.degree();
  if (n < 2) throw DomainError("discriminant requires degree >= 2");
  Rat res = resultant(p, p.derivative());
  Rat d = res / p.lc();
  long half = static_cast<long>(n) * (n - 1) / 2;
  return (half % 2 == 1) ? -d : d;
}

}  // namespace bachflat
