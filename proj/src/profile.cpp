#include "bachflat/profile.hpp"

#include <array>

namespace bachflat {

namespace {

void require_base_params(int m, const Rat& a) {
  if (m < 1) throw DomainError("bundle degree m must be a positive integer");
  if (a.sign() <= 0) throw DomainError("zero-section parameter a must be positive");
}

// Solves a 4x4 rational linear system with two right-hand sides.
// Throws DomainError when singular.
std::array<std::array<Rat, 2>, 4> solve4(std::array<std::array<Rat, 6>, 4> t) {
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int row = col; row < 4; ++row) {
      if (!t[row][col].is_zero()) { piv = row; break; }
    }
    if (piv < 0) throw DomainError("degenerate polytope");
    std::swap(t[col], t[piv]);
    const Rat inv = t[col][col].inv();
    for (int j = col; j < 6; ++j) t[col][j] *= inv;
    for (int row = 0; row < 4; ++row) {
      if (row == col || t[row][col].is_zero()) continue;
      const Rat f = t[row][col];
      for (int j = col; j < 6; ++j) t[row][j] -= f * t[col][j];
    }
  }
  std::array<std::array<Rat, 2>, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = {t[i][4], t[i][5]};
  return out;
}

}  // namespace

Poly Profile::q_poly() const {
  return Poly({q0, q1, Rat(0), q3 / Rat(6), q4 / Rat(24)});
}

Poly Profile::p_poly() const {
  return Poly({-q0, -q1, Rat(1), -q3 / Rat(6), -q4 / Rat(24)});
}

Poly Profile::ptilde() const {
  return p_poly().scale_shift(a, Rat(0)) / (a * a);
}

Rat Profile::end_residual_value() const { return p_poly().eval(a); }

Rat Profile::end_residual_slope() const {
  return p_poly().derivative().eval(a) - a * Rat(m);
}

bool Profile::ends_smoothly() const {
  return end_residual_value().is_zero() && end_residual_slope().is_zero();
}

Rat ConeProfile::bach_residual() const {
  return base.q3 * base.q1 - base.q4 * base.q0;
}

Profile profile_from_local(int m, const Rat& a, const Rat& s_a) {
  require_base_params(m, a);
  const Rat y = a * s_a;
  const Rat mr(m);
  const Rat u = y + Rat(8) * (mr - Rat(1));  // y + 8(m-1)
  const Rat v = y + Rat(4) * (mr - Rat(2));  // y + 4(m-2)
  const Rat w = y + Rat(12) * mr;            // y + 12m
  Profile pr;
  pr.m = m;
  pr.a = a;
  pr.q0 = a * a * u * w / (Rat(96) * mr);
  pr.q1 = -a * v * w / (Rat(48) * mr);
  pr.q3 = s_a * u / (Rat(8) * mr);
  pr.q4 = -(s_a / a) * v / (Rat(4) * mr);
  return pr;
}

ConeFamily cone_family(int m, const Rat& a, const Rat& x) {
  require_base_params(m, a);
  if (x <= Rat(1)) throw DomainError("degenerate polytope");
  const Rat b = a * x;
  const Rat mr(m);
  // Rows: q(a) = a^2, q'(a) = (2-m) a, q(b) = b^2, q'(b) = (2 + m w) b
  // with w = 1/p.  Column 5 carries the w-linear part of the last row.
  std::array<std::array<Rat, 6>, 4> t = {{
      {Rat(1), a, a.pow(3) / Rat(6), a.pow(4) / Rat(24), a * a, Rat(0)},
      {Rat(0), Rat(1), a * a / Rat(2), a.pow(3) / Rat(6), (Rat(2) - mr) * a,
       Rat(0)},
      {Rat(1), b, b.pow(3) / Rat(6), b.pow(4) / Rat(24), b * b, Rat(0)},
      {Rat(0), Rat(1), b * b / Rat(2), b.pow(3) / Rat(6), Rat(2) * b, mr * b},
  }};
  const auto sol = solve4(t);
  ConeFamily fam;
  fam.m = m;
  fam.a = a;
  fam.x = x;
  for (int i = 0; i < 4; ++i) {
    fam.base_q[i] = sol[i][0];
    fam.slope_q[i] = sol[i][1];
  }
  return fam;
}

Profile ConeFamily::at_weight(const Rat& weight) const {
  if (weight.sign() <= 0) throw DomainError("weight must be positive");
  const Rat w = weight.inv();
  Profile pr;
  pr.m = m;
  pr.a = a;
  pr.q0 = base_q[0] + slope_q[0] * w;
  pr.q1 = base_q[1] + slope_q[1] * w;
  pr.q3 = base_q[2] + slope_q[2] * w;
  pr.q4 = base_q[3] + slope_q[3] * w;
  return pr;
}

Profile ConeFamily::limit() const {
  Profile pr;
  pr.m = m;
  pr.a = a;
  pr.q0 = base_q[0];
  pr.q1 = base_q[1];
  pr.q3 = base_q[2];
  pr.q4 = base_q[3];
  return pr;
}

ConeProfile profile_from_cone(int m, const Rat& a, const Rat& x,
                              const Rat& weight) {
  const ConeFamily fam = cone_family(m, a, x);
  ConeProfile cp;
  cp.base = fam.at_weight(weight);
  cp.b = a * x;
  cp.x = x;
  cp.weight = weight;
  return cp;
}

bool is_bach_flat(const Profile& pr) {
  return pr.q3 * pr.q1 == pr.q4 * pr.q0;
}

ScalarCurvature scalar_curvature(const Profile& pr) {
  return ScalarCurvature{Rat(2) * pr.q3, pr.q4};
}

Rat einstein_constant(const Profile& pr) {
  const Rat S = Rat(12) * pr.q4 * pr.q4 * pr.q1 + Rat(8) * pr.q3.pow(3) +
                Rat(48) * pr.q3 * pr.q4;
  if (is_bach_flat(pr) && pr.ends_smoothly()) {
    const Rat y = pr.y();
    const Rat closed =
        Rat(-2) * y * y * (y + Rat(6) * Rat(pr.m - 2)) / pr.a.pow(3);
    if (S != closed) {
      throw DefectError("einstein scalar: coefficient formula and closed form disagree");
    }
  }
  return S;
}

VanishingLocus vanishing_locus(const Profile& pr) {
  VanishingLocus out;
  if (pr.q4.is_zero()) {
    out.kind = pr.q3.is_zero() ? VanishKind::IdenticallyZero
                               : VanishKind::ConstantNonzero;
    return out;
  }
  const Rat r_star = Rat(-2) * pr.q3 / pr.q4;
  if (r_star > pr.a) {
    out.kind = VanishKind::VanishesAt;
    out.r_star = r_star;
  } else {
    out.kind = VanishKind::NeverVanishes;
  }
  return out;
}

}  // namespace bachflat
