#include "bachflat/roots.hpp"

#include <algorithm>
#include <cstdlib>

namespace bachflat {

namespace {

// Sturm chain of a squarefree polynomial, each entry scaled by a positive
// constant so coefficient growth stays tame.
std::vector<Poly> sturm_chain(const Poly& g) {
  std::vector<Poly> chain;
  chain.push_back(g);
  chain.push_back(g.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Poly r = -(chain[chain.size() - 2].divmod(chain.back()).rem);
    if (r.is_zero()) break;
    r /= r.lc().abs();
    chain.push_back(r);
  }
  return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int prev = 0, var = 0;
  for (const Poly& p : chain) {
    int s = p.eval(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// 1 + max |a_i / a_n| bounds the absolute value of every root.
Rat cauchy_bound(const Poly& p) {
  Rat m(0);
  Rat lc_abs = p.lc().abs();
  for (int i = 0; i < p.degree(); ++i) m = rat_max(m, p.coeff(i).abs() / lc_abs);
  return m + Rat(1);
}

Poly squarefree_part(const Poly& p) {
  Poly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p.monic();
  return p.div_exact(g).monic();
}

struct Enclosure {
  Rat lo, hi;
  bool exact = false;
};

struct Isolation {
  std::vector<Enclosure> encl;
  // g with the bound root and every exactly-detected root divided out; the
  // owner of each interval enclosure, so interval endpoints are never roots
  Poly remaining;
};

// Distinct roots of squarefree g strictly above `bound`, as exact points or
// isolating open intervals with non-root endpoints.
Isolation isolate_above(Poly g, const Rat& bound) {
  std::vector<Enclosure> out;
  if (g.degree() < 1) return {out, g};
  while (g.eval(bound).is_zero()) g = g.div_exact(Poly({-bound, Rat(1)}));
  for (;;) {
    if (g.degree() < 1) return {out, g};
    Rat hi0 = rat_max(cauchy_bound(g), bound + Rat(1));
    auto chain = sturm_chain(g);
    struct Seg { Rat lo, hi; int vlo, vhi; };
    std::vector<Seg> work;
    work.push_back({bound, hi0, sign_variations(chain, bound), sign_variations(chain, hi0)});
    bool deflated = false;
    std::vector<Enclosure> found;
    while (!work.empty()) {
      Seg s = work.back();
      work.pop_back();
      int cnt = s.vlo - s.vhi;
      if (cnt <= 0) continue;
      if (cnt == 1) {
        found.push_back({s.lo, s.hi, false});
        continue;
      }
      Rat mid = (s.lo + s.hi) / Rat(2);
      if (g.eval(mid).is_zero()) {
        out.push_back({mid, mid, true});
        g = g.div_exact(Poly({-mid, Rat(1)}));
        deflated = true;
        break;
      }
      int v_mid = sign_variations(chain, mid);
      work.push_back({s.lo, mid, s.vlo, v_mid});
      work.push_back({mid, s.hi, v_mid, s.vhi});
    }
    if (!deflated) {
      out.insert(out.end(), found.begin(), found.end());
      return {out, g};
    }
  }
}

}  // namespace

Rat IsolatedRoot::value() const {
  if (!exact) throw DomainError("root is not known exactly");
  return lo;
}

Rat IsolatedRoot::midpoint() const { return (lo + hi) / Rat(2); }

double IsolatedRoot::approx() const { return midpoint().to_double(); }

void IsolatedRoot::refine(const Rat& target_width) {
  if (exact) return;
  // The rational-candidate probe walks the whole Stern-Brocot path to the
  // enclosure, so running it on every bisection step is quadratic; probing
  // periodically and once at the end still upgrades every rational root
  // once the enclosure is tight enough to make it the simplest inhabitant.
  int steps = 0;
  auto probe = [&]() {
    Rat s = simplest_rational_between(lo, hi);
    if (factor.eval(s).is_zero()) {
      lo = hi = s;
      exact = true;
      return true;
    }
    return false;
  };
  while (hi - lo > target_width) {
    if (steps++ % 16 == 15 && probe()) return;
    Rat mid = (lo + hi) / Rat(2);
    int sm = factor.eval(mid).sign();
    if (sm == 0) {
      lo = hi = mid;
      exact = true;
      return;
    }
    if (sm == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (steps > 0) probe();
}

int IsolatedRoot::compare(const Rat& v) {
  if (exact) {
    if (lo < v) return -1;
    if (lo > v) return 1;
    return 0;
  }
  if (v <= lo) return 1;
  if (v >= hi) return -1;
  int sv = factor.eval(v).sign();
  if (sv == 0) {
    lo = hi = v;
    exact = true;
    return 0;
  }
  return sv == sign_lo ? 1 : -1;
}

std::string IsolatedRoot::to_decimal(int digits) {
  if (!exact) refine(Rat::pow10(-(digits + 2)));
  return (exact ? lo : midpoint()).to_decimal(digits);
}

std::vector<IsolatedRoot> real_roots_above(const Poly& p, const Rat& bound,
                                           const Rat& width) {
  if (p.is_zero()) throw DomainError("zero polynomial has no isolated roots");
  std::vector<IsolatedRoot> out;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    Isolation iso = isolate_above(factor, bound);
    for (const Enclosure& e : iso.encl) {
      IsolatedRoot r;
      r.lo = e.lo;
      r.hi = e.hi;
      r.exact = e.exact;
      r.multiplicity = mult;
      r.factor = iso.remaining.monic();
      if (!r.exact) r.sign_lo = r.factor.eval(r.lo).sign();
      r.refine(width);
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.midpoint() < b.midpoint(); });
  // Enclosures of distinct roots must be disjoint after refinement.
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    int guard = 0;
    while (!(out[i].hi <= out[i + 1].lo)) {
      out[i].refine((out[i].hi - out[i].lo) / Rat(2));
      out[i + 1].refine((out[i + 1].hi - out[i + 1].lo) / Rat(2));
      if (++guard > 512) throw DefectError("could not separate root enclosures");
    }
  }
  return out;
}

std::vector<IsolatedRoot> real_roots_above(const Poly& p, const Rat& bound) {
  return real_roots_above(p, bound, default_refine_width());
}

std::vector<IsolatedRoot> real_roots(const Poly& p, const Rat& width) {
  if (p.is_zero()) throw DomainError("zero polynomial has no isolated roots");
  Poly g = squarefree_part(p);
  Rat b = cauchy_bound(g);
  return real_roots_above(p, -b, width);
}

std::vector<IsolatedRoot> real_roots(const Poly& p) {
  return real_roots(p, default_refine_width());
}

int count_roots_above(const Poly& p, const Rat& bound) {
  Poly g = squarefree_part(p);
  while (g.degree() > 0 && g.eval(bound).is_zero()) g = g.div_exact(Poly({-bound, Rat(1)}));
  if (g.degree() < 1) return 0;
  Rat hi0 = rat_max(cauchy_bound(g), bound + Rat(1));
  auto chain = sturm_chain(g);
  return sign_variations(chain, bound) - sign_variations(chain, hi0);
}

int count_roots_in(const Poly& p, const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw DomainError("empty interval");
  Poly g = squarefree_part(p);
  for (const Rat& end : {lo, hi})
    while (g.degree() > 0 && g.eval(end).is_zero()) g = g.div_exact(Poly({-end, Rat(1)}));
  if (g.degree() < 1) return 0;
  auto chain = sturm_chain(g);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

int multiplicity_at(const Poly& p, const Rat& r) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  int mult = 0;
  Poly q = p;
  Poly lin({-r, Rat(1)});
  while (q.degree() > 0 && q.eval(r).is_zero()) {
    q = q.div_exact(lin);
    ++mult;
  }
  return mult;
}

Rat simplest_rational_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw DomainError("empty interval");
  mpz_class fl = lo.floor();
  Rat next = Rat(mpq_class(fl)) + Rat(1);
  if (next < hi) return next;
  Rat af = lo - Rat(mpq_class(fl));
  Rat bf = hi - Rat(mpq_class(fl));
  if (af.is_zero()) {
    Rat inv_bf = bf.inv();
    Rat y = Rat(mpq_class(inv_bf.floor())) + Rat(1);
    return Rat(mpq_class(fl)) + y.inv();
  }
  Rat y = simplest_rational_between(bf.inv(), af.inv());
  return Rat(mpq_class(fl)) + y.inv();
}

Rat default_refine_width() {
  long exp10 = 30;
  if (const char* env = std::getenv("CALABI_PRECISION")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) exp10 = v;
  }
  return Rat::pow10(-exp10);
}

}  // namespace bachflat
