#include "bachflat/classifier.hpp"

#include <utility>

namespace bachflat {

namespace {

RatBox box_add(const RatBox& u, const RatBox& v) {
  return {u.lo + v.lo, u.hi + v.hi};
}

RatBox box_mul(const RatBox& u, const RatBox& v) {
  Rat c[4] = {u.lo * v.lo, u.lo * v.hi, u.hi * v.lo, u.hi * v.hi};
  RatBox out{c[0], c[0]};
  for (int i = 1; i < 4; ++i) {
    if (c[i] < out.lo) out.lo = c[i];
    if (out.hi < c[i]) out.hi = c[i];
  }
  return out;
}

// requires 0 strictly outside v
RatBox box_div(const RatBox& u, const RatBox& v) {
  if (v.lo.sign() * v.hi.sign() <= 0)
    throw DomainError("interval division through zero");
  Rat c[4] = {u.lo / v.lo, u.lo / v.hi, u.hi / v.lo, u.hi / v.hi};
  RatBox out{c[0], c[0]};
  for (int i = 1; i < 4; ++i) {
    if (c[i] < out.lo) out.lo = c[i];
    if (out.hi < c[i]) out.hi = c[i];
  }
  return out;
}

RatBox enclosure(const IsolatedRoot& rt) {
  return {rt.lo, rt.hi};
}

}  // namespace

RatBox box_eval(const Poly& f, const RatBox& x) {
  if (f.is_zero()) return {Rat(0), Rat(0)};
  RatBox acc{f.lc(), f.lc()};
  for (int k = f.degree() - 1; k >= 0; --k)
    acc = box_add(box_mul(acc, x), RatBox{f.coeff(k), f.coeff(k)});
  return acc;
}

std::string to_string(GlobalKind k) {
  switch (k) {
    case GlobalKind::IncompleteEnd: return "IncompleteEnd";
    case GlobalKind::CompleteQuarticGrowth: return "CompleteQuarticGrowth";
    case GlobalKind::CompleteExponentialGrowth:
      return "CompleteExponentialGrowth";
    case GlobalKind::ConeAngleCompactification:
      return "ConeAngleCompactification";
    case GlobalKind::CompleteFiniteVolume: return "CompleteFiniteVolume";
  }
  return "?";
}

Classification classify(const Profile& pr) {
  const Poly p = pr.p_poly();
  if (p.is_zero())
    throw DomainError("degenerate profile q(r) = r^2: h'' has no finite value");
  if (!pr.ends_smoothly())
    throw DomainError("profile does not close up at r = a");

  Classification c;
  c.p_degree = p.degree();
  // isolation at 10^-12 keeps the decision cheap; the weight loop below
  // narrows the compactifying root as far as certification demands
  c.roots_above_a = real_roots_above(p, pr.a, Rat::pow10(-12));

  if (c.roots_above_a.empty()) {
    c.kind = c.p_degree <= 2   ? GlobalKind::CompleteQuarticGrowth
             : c.p_degree == 3 ? GlobalKind::CompleteExponentialGrowth
                               : GlobalKind::IncompleteEnd;
    return c;
  }

  IsolatedRoot b = c.roots_above_a.front();

  // p(a) = 0, p'(a) = a m > 0 and no zero before b keep p positive on (a, b);
  // one interior sample guards against malformed inputs.
  const Rat probe = (pr.a + b.lo) / Rat(2);
  if (probe > pr.a && p.eval(probe).sign() <= 0)
    throw DomainError("p(r) is not positive at r = " + probe.to_string());

  c.multiplicity = b.multiplicity;
  c.b = enclosure(b);

  if (b.multiplicity >= 2) {
    c.kind = GlobalKind::CompleteFiniteVolume;
    return c;
  }

  c.kind = GlobalKind::ConeAngleCompactification;
  const Poly dp = p.derivative();
  const Rat mneg(-pr.m);

  if (b.exact) {
    const Rat bv = b.value();
    const Rat w = mneg * bv / dp.eval(bv);
    c.b = RatBox{bv, bv};
    c.weight_exact = w;
    c.weight = RatBox{w, w};
    c.angle_over_2pi = RatBox{w.inv(), w.inv()};
    return c;
  }

  // narrow b until the slope has one certified sign over the whole
  // enclosure, then push the enclosure through -m b / p'(b)
  const Rat target = default_refine_width();
  Rat width = b.hi - b.lo;
  for (int round = 0; round < 256; ++round) {
    const RatBox bb = enclosure(b);
    const RatBox slope = box_eval(dp, bb);
    if (slope.hi.sign() < 0) {
      const RatBox w = box_div(box_mul(RatBox{mneg, mneg}, bb), slope);
      if (w.width() <= target || round + 1 == 256) {
        c.b = bb;
        c.weight = w;
        c.angle_over_2pi = box_div(RatBox{Rat(1), Rat(1)}, w);
        return c;
      }
    }
    width = width / Rat(1 << 20);
    b.refine(width);
    if (b.exact) {
      const Rat bv = b.value();
      const Rat w = mneg * bv / dp.eval(bv);
      c.b = RatBox{bv, bv};
      c.weight_exact = w;
      c.weight = RatBox{w, w};
      c.angle_over_2pi = RatBox{w.inv(), w.inv()};
      return c;
    }
  }
  throw DefectError("weight enclosure failed to converge");
}

Poly moduli_cubic(int m) {
  const Rat mr(m);
  return Poly{Rat(256), Rat(72) * mr * (mr - Rat(2)),
              Rat(6) * (Rat(3) * mr - Rat(2)), Rat(1)};
}

AtlasCuts atlas_cuts(int m) {
  if (m < 3)
    throw DomainError("the moduli table needs bundle degree m >= 3");
  AtlasCuts cuts;
  cuts.m = m;
  cuts.minus_12m = Rat(-12 * m);
  cuts.ricci_flat = Rat(-6 * (m - 2));
  cuts.kahler_einstein = Rat(-4 * (m - 2));
  auto rs = real_roots(moduli_cubic(m), Rat(1, 1024));
  if (rs.size() != 3)
    throw DefectError("resolvent cubic lost a real root at m = " +
                      std::to_string(m));
  cuts.y1 = std::move(rs[0]);
  cuts.y2 = std::move(rs[1]);
  cuts.y3 = std::move(rs[2]);
  return cuts;
}

std::string to_string(AtlasSpace s) {
  return s == AtlasSpace::LineBundle ? "O(-m)" : "H_m";
}

std::string to_string(AtlasType t) {
  switch (t) {
    case AtlasType::Incomplete: return "incomplete";
    case AtlasType::ConeAngle: return "cone-angle";
    case AtlasType::FiniteVolume: return "finite-volume";
    case AtlasType::ScalarFlat: return "scalar-flat";
    case AtlasType::KahlerEinstein: return "kahler-einstein";
  }
  return "?";
}

std::string to_string(SignLabel s) {
  switch (s) {
    case SignLabel::Negative: return "negative";
    case SignLabel::Zero: return "zero";
    case SignLabel::Positive: return "positive";
    case SignLabel::NotApplicable: return "not-applicable";
  }
  return "?";
}

namespace {

const char* const kAtlasLabels[15] = {
    "(-inf, y1)",
    "y = y1",
    "(y1, -12m)",
    "y = -12m",
    "(-12m, -6(m-2))",
    "y = -6(m-2) ricci-flat",
    "(-6(m-2), y2)",
    "y = y2",
    "(y2, -4(m-2))",
    "y = -4(m-2) kahler-einstein",
    "(-4(m-2), y3)",
    "y = y3",
    "(y3, 0)",
    "y = 0 scalar-flat",
    "(0, inf)",
};

AtlasType atlas_type_at(int index) {
  switch (index) {
    case 9: return AtlasType::KahlerEinstein;
    case 10:
    case 12: return AtlasType::ConeAngle;
    case 11: return AtlasType::FiniteVolume;
    case 13: return AtlasType::ScalarFlat;
    default: return AtlasType::Incomplete;
  }
}

}  // namespace

AtlasRegion atlas_region(int m, const Rat& y) {
  AtlasCuts cuts = atlas_cuts(m);
  AtlasRegion reg;
  reg.m = m;
  reg.y = y;
  reg.y2_equals_kahler_einstein = (m == 3);

  int idx;
  if (y == cuts.minus_12m) {
    idx = 3;
  } else if (y == cuts.ricci_flat) {
    idx = 5;
  } else if (y == cuts.kahler_einstein) {
    idx = 9;
  } else if (y.is_zero()) {
    idx = 13;
  } else if (moduli_cubic(m).eval(y).is_zero()) {
    idx = y < cuts.minus_12m ? 1 : (y < cuts.kahler_einstein ? 7 : 11);
  } else if (y.sign() > 0) {
    idx = 14;
  } else if (cuts.y3.compare(y) < 0) {
    idx = 12;
  } else if (y > cuts.kahler_einstein) {
    idx = 10;
  } else if (cuts.y2.compare(y) < 0) {
    idx = 8;
  } else if (y > cuts.ricci_flat) {
    idx = 6;
  } else if (y > cuts.minus_12m) {
    idx = 4;
  } else if (cuts.y1.compare(y) < 0) {
    idx = 2;
  } else {
    idx = 0;
  }

  reg.index = idx;
  reg.label = kAtlasLabels[idx];
  reg.on_boundary = (idx % 2 == 1);
  reg.space = (idx >= 10 && idx <= 12) ? AtlasSpace::Hirzebruch
                                       : AtlasSpace::LineBundle;
  reg.type = atlas_type_at(idx);
  if (y.is_zero())
    reg.einstein_scalar_sign = SignLabel::NotApplicable;
  else {
    const int s = -(y + Rat(6 * (m - 2))).sign();
    reg.einstein_scalar_sign = s > 0   ? SignLabel::Positive
                               : s < 0 ? SignLabel::Negative
                                       : SignLabel::Zero;
  }
  return reg;
}

HitchinThorpe hitchin_thorpe(const Rat& beta) {
  if (beta.sign() <= 0)
    throw DomainError("cone angle parameter must be positive");
  HitchinThorpe ht;
  ht.beta = beta;
  const Rat one(1), four(4);
  ht.margin_plus = Rat(8) - (one - beta) * (four + (one + beta));
  ht.margin_minus = Rat(8) - (one - beta) * (four - (one + beta));
  return ht;
}

}  // namespace bachflat
