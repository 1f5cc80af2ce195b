#include "bachflat/conesolver.hpp"

#include "bachflat/profile.hpp"

namespace bachflat {

namespace {

void require_cone_params(int m, const Rat& x) {
  if (m < 1) throw DomainError("bundle degree m must be a positive integer");
  if (x <= Rat(1)) throw DomainError("degenerate polytope");
}

IsolatedRoot exact_root(const Rat& v) {
  IsolatedRoot r;
  r.lo = v;
  r.hi = v;
  r.exact = true;
  r.multiplicity = 1;
  r.factor = Poly::from_roots({v});
  return r;
}

// sign of num - p * den at an isolated (possibly irrational) p
int affine_sign_at(const Rat& num, const Rat& den, IsolatedRoot& p) {
  if (den.is_zero()) return num.sign();
  return -den.sign() * p.compare(num / den);
}

}  // namespace

std::vector<IsolatedRoot> ConeQuadratic::weights() const {
  std::vector<IsolatedRoot> out;
  if (p_plus) out.push_back(*p_plus);
  if (p_minus && status != WeightStatus::DoubleWeight) out.push_back(*p_minus);
  return out;
}

ConeQuadratic cone_quadratic(int m, const Rat& x) {
  require_cone_params(m, x);
  const Rat mr(m);
  ConeQuadratic cq;
  cq.m = m;
  cq.x = x;
  cq.A = (Rat(2) * x.pow(3) + Rat(3) * mr * x * x + Rat(3) * mr * x - Rat(2)) *
         (mr * x + mr - Rat(2) * x + Rat(2));
  cq.B = -mr * ((mr - Rat(2)) * x.pow(4) + (Rat(2) * mr + Rat(4)) * x.pow(3) +
                Rat(6) * mr * x * x + (Rat(2) * mr - Rat(4)) * x + mr + Rat(2));
  cq.C = Rat(3) * mr * mr * x * (x + Rat(1)).pow(2);
  cq.disc = cq.B * cq.B - Rat(4) * cq.A * cq.C;

  if (cq.A.is_zero()) {
    if (cq.B.is_zero()) throw DomainError("degenerate weight equation");
    cq.status = WeightStatus::SingleLinear;
    cq.p_plus = exact_root(-cq.C / cq.B);
    return cq;
  }
  if (cq.disc.sign() < 0) {
    cq.status = WeightStatus::NoSolution;
    return cq;
  }
  if (cq.disc.is_zero()) {
    cq.status = WeightStatus::DoubleWeight;
    IsolatedRoot r = exact_root(-cq.B / (Rat(2) * cq.A));
    r.multiplicity = 2;
    cq.p_plus = r;
    cq.p_minus = r;
    return cq;
  }
  auto roots = real_roots(Poly{cq.C, cq.B, cq.A});
  if (roots.size() != 2) throw DefectError("weight quadratic lost a root");
  IsolatedRoot small = roots[0], large = roots[1];
  const bool small_pos = small.compare(Rat(0)) > 0;
  const bool large_pos = large.compare(Rat(0)) > 0;
  if (small_pos && large_pos) {
    cq.status = WeightStatus::TwoWeights;
    if (m == 1) {
      cq.p_plus = small;
      cq.p_minus = large;
    } else {
      cq.p_plus = large;
      cq.p_minus = small;
    }
  } else if (large_pos) {
    cq.status = WeightStatus::PlusOnly;
    cq.p_plus = large;
  } else {
    cq.status = WeightStatus::NoSolution;
  }
  return cq;
}

ConeQuadraticPolys cone_quadratic_polys(int m) {
  if (m < 1) throw DomainError("bundle degree m must be a positive integer");
  const Rat mr(m);
  ConeQuadraticPolys cp;
  cp.A = Poly{Rat(-2), Rat(3) * mr, Rat(3) * mr, Rat(2)} *
         Poly{mr + Rat(2), mr - Rat(2)};
  cp.B = Poly{mr + Rat(2), Rat(2) * mr - Rat(4), Rat(6) * mr,
              Rat(2) * mr + Rat(4), mr - Rat(2)} *
         Rat(-m);
  cp.C = Poly{Rat(0), Rat(1), Rat(2), Rat(1)} * (Rat(3) * mr * mr);
  return cp;
}

Poly discriminant_bracket(int m) {
  const Rat mr(m);
  return Poly{(mr + Rat(2)).pow(2), Rat(-4) * mr * (mr + Rat(2)),
              Rat(-2) * (Rat(3) * mr * mr + Rat(4)),
              Rat(-4) * mr * (mr - Rat(2)), (mr - Rat(2)).pow(2)};
}

std::optional<IsolatedRoot> weight_existence_threshold(int m) {
  auto roots = real_roots_above(discriminant_bracket(m), Rat(1));
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

Rat double_weight_at_threshold(int m) {
  auto x0 = weight_existence_threshold(m);
  if (!x0) throw DomainError("no weight threshold for this m");
  x0->refine(default_refine_width());
  const Rat xm = x0->midpoint();
  ConeQuadratic cq = cone_quadratic(m, xm);
  if (cq.A.is_zero()) throw DefectError("threshold hit the linear locus");
  return -cq.B / (Rat(2) * cq.A);
}

namespace {

struct Thresholds {
  // N = num - p * den for each of the three quantities
  Rat n1_num, n1_den, n2_num, n2_den, d_num, d_den;
};

Thresholds threshold_data(int m, const Rat& x) {
  const Rat mr(m);
  Thresholds t;
  t.n1_num = mr * x * (x + Rat(1));
  t.n1_den = Rat(2) * x * (x - Rat(1)) + mr * (Rat(3) * x + Rat(1));
  t.n2_num = mr * x * (x + Rat(3));
  t.n2_den = Rat(2) - Rat(2) * x + mr * (x + Rat(1));
  t.d_num = mr * x * (x + Rat(2));
  t.d_den = (x - Rat(1)).pow(2) + mr * (Rat(2) * x + Rat(1));
  return t;
}

Admissibility admissibility_from_signs(int m, const Rat& x, int s1, int s2,
                                       int sd) {
  const Thresholds t = threshold_data(m, x);
  Admissibility out;
  if (!t.n1_den.is_zero()) out.r1 = t.n1_num / t.n1_den;
  if (!t.n2_den.is_zero()) out.r2 = t.n2_num / t.n2_den;
  if (!t.d_den.is_zero()) out.d = t.d_num / t.d_den;
  out.sign_N1 = s1;
  out.sign_N2 = s2;
  out.sign_D = sd;
  if (sd == 0) {
    out.verdict = ScalVerdict::ConstantScal;
  } else if (s1 * sd >= 0 && s2 * sd >= 0) {
    out.verdict = ScalVerdict::VanishesInside;
  } else {
    out.verdict = ScalVerdict::NowhereVanishing;
  }
  return out;
}

}  // namespace

Admissibility admissibility(int m, const Rat& x, const Rat& weight) {
  require_cone_params(m, x);
  if (weight.sign() <= 0) throw DomainError("weight must be positive");
  const Thresholds t = threshold_data(m, x);
  return admissibility_from_signs(m, x, (t.n1_num - weight * t.n1_den).sign(),
                                  (t.n2_num - weight * t.n2_den).sign(),
                                  (t.d_num - weight * t.d_den).sign());
}

Admissibility admissibility(int m, const Rat& x, IsolatedRoot& weight) {
  require_cone_params(m, x);
  const Thresholds t = threshold_data(m, x);
  return admissibility_from_signs(
      m, x, affine_sign_at(t.n1_num, t.n1_den, weight),
      affine_sign_at(t.n2_num, t.n2_den, weight),
      affine_sign_at(t.d_num, t.d_den, weight));
}

AsymptoticsReport weight_asymptotics(int m, const std::vector<Rat>& xs) {
  if (m < 3) throw DomainError("asymptotics need m >= 3");
  const Rat mr(m);
  AsymptoticsReport rep;
  rep.m = m;
  rep.lead_plus = mr / Rat(2);
  rep.sub_plus = -(Rat(3) * mr.pow(3) - Rat(8) * mr * mr + Rat(8) * mr) /
                 (Rat(4) * mr - Rat(8));
  rep.lead_minus = Rat(3) * mr / (mr - Rat(2));
  for (const Rat& x : xs) {
    ConeQuadratic cq = cone_quadratic(m, x);
    if (!cq.p_plus || !cq.p_minus) {
      throw DomainError("grid point below the weight threshold");
    }
    cq.p_plus->refine(default_refine_width());
    cq.p_minus->refine(default_refine_width());
    AsymptoticsRow row;
    row.x = x;
    row.rem_plus_x2 =
        (cq.p_plus->midpoint() - (rep.lead_plus + rep.sub_plus / x)).abs() * x *
        x;
    row.rem_minus_x2 =
        (cq.p_minus->midpoint() - rep.lead_minus / x).abs() * x * x;
    rep.rows.push_back(row);
    rep.C_plus = rat_max(rep.C_plus, row.rem_plus_x2);
    rep.C_minus = rat_max(rep.C_minus, row.rem_minus_x2);
  }
  return rep;
}

namespace {

// Two-ended coefficient numerators split as alpha_i(x) + beta_i(x) * p over
// the common denominator p (x-1)^2 (x^2+4x+1), with a = 1.
struct ConeNumerators {
  Poly alpha[4], beta[4];
};

ConeNumerators cone_numerators(int m) {
  const Rat mr(m);
  ConeNumerators cn;
  cn.alpha[0] = Poly{Rat(0), Rat(0), -mr, Rat(-2) * mr};  // -m x^2 (2x+1)
  cn.beta[0] = Poly{Rat(0), Rat(0), Rat(-1), Rat(2) * mr + Rat(2), mr - Rat(1)};
  cn.alpha[1] = mr * Poly{Rat(0), Rat(1), Rat(2), Rat(3)};
  cn.beta[1] = Poly{Rat(0), Rat(2), -(Rat(3) * mr + Rat(2)),
                    -(Rat(2) * mr + Rat(2)), -(mr - Rat(2))};
  cn.alpha[2] = Poly{Rat(0), Rat(-18) * mr, Rat(-12) * mr, Rat(-6) * mr};
  cn.beta[2] = Poly{Rat(6) * (mr + Rat(2)), Rat(12) * (mr - Rat(1)),
                    Rat(18) * mr - Rat(12), Rat(12)};
  cn.alpha[3] = Poly{Rat(0), Rat(48) * mr, Rat(24) * mr};
  cn.beta[3] = Poly{Rat(-24) * (mr + Rat(1)), Rat(48) * (Rat(1) - mr), Rat(-24)};
  return cn;
}

// lim_{x->oo} num(x)/den(x); zero when num has lower degree
Rat limit_at_infinity(const Poly& num, const Poly& den) {
  if (num.degree() > den.degree()) throw DomainError("limit diverges");
  if (num.degree() < den.degree()) return Rat(0);
  return num.lc() / den.lc();
}

}  // namespace

LimitProfiles limit_profiles(int m) {
  if (m < 3) throw DomainError("branch limits need m >= 3");
  const Rat mr(m);
  const ConeNumerators cn = cone_numerators(m);
  const Poly den = Poly::from_roots({Rat(1), Rat(1)}) * Poly{Rat(1), Rat(4), Rat(1)};
  const Rat p_inf = mr / Rat(2);             // limiting plus weight
  const Rat c = Rat(3) * mr / (mr - Rat(2));  // minus weight ~ c/x
  LimitProfiles out;
  out.plus.m = out.minus.m = m;
  out.plus.a = out.minus.a = Rat(1);
  Rat* plus_q[4] = {&out.plus.q0, &out.plus.q1, &out.plus.q3, &out.plus.q4};
  Rat* minus_q[4] = {&out.minus.q0, &out.minus.q1, &out.minus.q3, &out.minus.q4};
  for (int i = 0; i < 4; ++i) {
    *plus_q[i] = limit_at_infinity(cn.alpha[i] + p_inf * cn.beta[i], p_inf * den);
    // substitute p = c/x and clear the 1/x: numerator x*alpha + c*beta
    *minus_q[i] = limit_at_infinity(Poly{Rat(0), Rat(1)} * cn.alpha[i] + c * cn.beta[i],
                                    c * den);
  }
  return out;
}

Rat matching_y(int m, const Rat& x, const Rat& weight) {
  require_cone_params(m, x);
  if (weight.is_zero()) throw DomainError("weight must be nonzero");
  const Rat mr(m);
  const Rat num = (Rat(2) * weight - mr) * x * x +
                  ((Rat(3) * mr - Rat(2)) * weight - mr) * x + mr * weight;
  const Rat den = (x * x + Rat(4) * x + Rat(1)) * (x - Rat(1)) * weight;
  return Rat(12) * num / den;
}

}  // namespace bachflat
