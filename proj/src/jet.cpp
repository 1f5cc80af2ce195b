#include "bachflat/jet.hpp"

namespace bachflat {

Jet2::Jet2() = default;

Jet2 Jet2::constant(const Rat& v) {
  Jet2 j;
  j.c_[0][0] = v;
  return j;
}

Jet2 Jet2::seed1(const Rat& v) {
  Jet2 j;
  j.c_[0][0] = v;
  j.c_[1][0] = Rat(1);
  return j;
}

Jet2 Jet2::seed2(const Rat& v) {
  Jet2 j;
  j.c_[0][0] = v;
  j.c_[0][1] = Rat(1);
  return j;
}

void Jet2::check_read(int i, int j) const {
  if (i < 0 || j < 0 || i + j > ord_) {
    throw DefectError("jet coefficient read beyond the valid order");
  }
}

const Rat& Jet2::coeff(int i, int j) const {
  check_read(i, j);
  return c_[i][j];
}

Rat Jet2::partial(int i, int j) const {
  check_read(i, j);
  Rat fac(1);
  for (int k = 2; k <= i; ++k) fac = fac * Rat(k);
  for (int k = 2; k <= j; ++k) fac = fac * Rat(k);
  return fac * c_[i][j];
}

bool Jet2::is_zero() const {
  for (int i = 0; i <= ord_; ++i) {
    for (int j = 0; i + j <= ord_; ++j) {
      if (!c_[i][j].is_zero()) return false;
    }
  }
  return true;
}

Jet2 Jet2::d1() const {
  if (ord_ == 0) {
    throw DefectError("jet derivative would drop below order zero");
  }
  Jet2 out;
  out.ord_ = ord_ - 1;
  for (int i = 0; i <= out.ord_; ++i) {
    for (int j = 0; i + j <= out.ord_; ++j) {
      out.c_[i][j] = Rat(i + 1) * c_[i + 1][j];
    }
  }
  return out;
}

Jet2 Jet2::d2() const {
  if (ord_ == 0) {
    throw DefectError("jet derivative would drop below order zero");
  }
  Jet2 out;
  out.ord_ = ord_ - 1;
  for (int i = 0; i <= out.ord_; ++i) {
    for (int j = 0; i + j <= out.ord_; ++j) {
      out.c_[i][j] = Rat(j + 1) * c_[i][j + 1];
    }
  }
  return out;
}

Jet2 Jet2::operator-() const {
  Jet2 out;
  out.ord_ = ord_;
  for (int i = 0; i <= ord_; ++i) {
    for (int j = 0; i + j <= ord_; ++j) {
      out.c_[i][j] = -c_[i][j];
    }
  }
  return out;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  ord_ = std::min(ord_, o.ord_);
  for (int i = 0; i <= ord_; ++i) {
    for (int j = 0; i + j <= ord_; ++j) {
      c_[i][j] = c_[i][j] + o.c_[i][j];
    }
  }
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  ord_ = std::min(ord_, o.ord_);
  for (int i = 0; i <= ord_; ++i) {
    for (int j = 0; i + j <= ord_; ++j) {
      c_[i][j] = c_[i][j] - o.c_[i][j];
    }
  }
  return *this;
}

Jet2 operator+(const Jet2& f, const Jet2& g) {
  Jet2 out = f;
  out += g;
  return out;
}

Jet2 operator-(const Jet2& f, const Jet2& g) {
  Jet2 out = f;
  out -= g;
  return out;
}

Jet2 operator*(const Jet2& f, const Jet2& g) {
  Jet2 out;
  out.ord_ = std::min(f.ord_, g.ord_);
  for (int i = 0; i <= out.ord_; ++i) {
    for (int j = 0; i + j <= out.ord_; ++j) {
      Rat s(0);
      for (int p = 0; p <= i; ++p) {
        for (int q = 0; q <= j; ++q) {
          if (p + q > f.ord_ || (i - p) + (j - q) > g.ord_) continue;
          s = s + f.c_[p][q] * g.c_[i - p][j - q];
        }
      }
      out.c_[i][j] = s;
    }
  }
  return out;
}

Jet2 operator*(const Rat& s, const Jet2& f) {
  Jet2 out;
  out.ord_ = f.ord_;
  for (int i = 0; i <= f.ord_; ++i) {
    for (int j = 0; i + j <= f.ord_; ++j) {
      out.c_[i][j] = s * f.c_[i][j];
    }
  }
  return out;
}

Jet2 operator*(const Jet2& f, const Rat& s) { return s * f; }

Jet2 operator+(const Jet2& f, const Rat& s) {
  Jet2 out = f;
  out.c_[0][0] = out.c_[0][0] + s;
  return out;
}

Jet2 operator-(const Jet2& f, const Rat& s) {
  Jet2 out = f;
  out.c_[0][0] = out.c_[0][0] - s;
  return out;
}

Jet2 Jet2::inv() const {
  if (c_[0][0].is_zero()) {
    throw DomainError("jet reciprocal at a zero value");
  }
  const Rat v = c_[0][0];
  // f = v (1 + e) with e nilpotent; 1/f = (1/v) sum (-e)^k
  Jet2 e = *this;
  e.c_[0][0] = Rat(0);
  e = e * v.inv();
  Jet2 out = Jet2::constant(Rat(1));
  out.ord_ = ord_;
  Jet2 pw = Jet2::constant(Rat(1));
  pw.ord_ = ord_;
  Rat sign(1);
  for (int k = 1; k <= ord_; ++k) {
    pw = pw * e;
    sign = -sign;
    out += sign * pw;
  }
  return out * v.inv();
}

Jet2 operator/(const Jet2& f, const Jet2& g) { return f * g.inv(); }

Jet2 operator/(const Jet2& f, const Rat& s) { return f * s.inv(); }

Jet2 eval_on_jet(const Poly& p, const Jet2& x) {
  Jet2 acc = Jet2::constant(Rat(0));
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * x + p.coeff(k);
  }
  return acc;
}

}  // namespace bachflat
