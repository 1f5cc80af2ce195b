#include "bachflat/convexity.hpp"

#include <utility>

namespace bachflat {

namespace {

std::optional<Rat> ratio_or_nullopt(const Rat& num, const Rat& den) {
  if (den.is_zero()) return std::nullopt;
  return num / den;
}

// Denominators of r1, r2, d as polynomials in x for fixed m.
Poly r1_den(int m) {
  return Poly{Rat(-(2 * m + 1)), Rat(-(5 * m - 3)), Rat(m - 3), Rat(1)};
}
Poly r2_den(int m) {
  return Poly{Rat(-1), Rat(3 * (m + 1)), Rat(3 * (m - 1)), Rat(1)};
}
Poly d_den(int m) {
  return Poly{Rat(m + 1), Rat(2 * (m - 1)), Rat(1)};
}

Rat script_a(int m, const Rat& x) {
  Rat inner = r2_den(m).eval(x);
  return inner * inner;
}

Rat script_b(int m, const Rat& x) {
  Rat xm1 = x - Rat(1);
  Rat first = Rat(3) * (x + Rat(1)) * xm1 * xm1 * xm1;
  Rat second = Poly{Rat(2), Rat(7), Rat(18), Rat(7), Rat(2)}.eval(x);
  return first - Rat(m) * second;
}

Rat script_c(const Rat& x) {
  Rat s = x + Rat(1);
  return Rat(9) * s * s;
}

}  // namespace

PositivityCertificate certify_positive(const Profile& pr, const Rat& b) {
  if (!(b > pr.a)) throw DomainError("certify_positive: interval end must exceed a");
  Poly pp = pr.p_poly();
  if (pp.is_zero()) throw DomainError("certify_positive: p_poly vanishes identically");

  PositivityCertificate cert;
  cert.interior_roots = count_roots_in(pp, pr.a, b);
  Rat mid = (pr.a + b) / Rat(2);

  if (cert.interior_roots == 0) {
    Rat v = pp.eval(mid);
    cert.witness = mid;
    cert.witness_value = v;
    if (v > Rat(0)) {
      cert.positive = true;
      cert.method = "root-free-interval";
    } else {
      // no interior root and not positive at the midpoint: p_poly <= 0 on the
      // whole interval
      cert.positive = false;
      cert.method = "grid-witness";
    }
    return cert;
  }

  cert.positive = false;
  cert.method = "grid-witness";
  for (IsolatedRoot& root : real_roots(pp)) {
    if (root.compare(pr.a) > 0 && root.compare(b) < 0) {
      cert.violation = std::move(root);
      break;
    }
  }
  // exhibit a non-positive interior value where a sign change provides one;
  // for an even-order touch the root interval itself is the evidence
  const int kGrid = 256;
  for (int k = 1; k <= kGrid; ++k) {
    Rat pt = pr.a + (b - pr.a) * Rat(k, kGrid + 1);
    Rat v = pp.eval(pt);
    if (v <= Rat(0)) {
      cert.witness = pt;
      cert.witness_value = v;
      break;
    }
  }
  if (!cert.witness && cert.violation && cert.violation->exact) {
    cert.witness = cert.violation->value();
    cert.witness_value = Rat(0);
  }
  return cert;
}

PositivityCertificate certify_positive(const ConeProfile& cp) {
  return certify_positive(cp.base, cp.b);
}

InteriorQuadratic interior_quadratic(int m, const Rat& x, const Rat& weight) {
  ConeProfile cp = profile_from_cone(m, Rat(1), x, weight);
  InteriorQuadratic out;
  out.m = m;
  out.x = x;
  out.weight = weight;

  out.r1 = ratio_or_nullopt(Rat(-3) * (x + Rat(1)) * Rat(m) * x, r1_den(m).eval(x));
  out.r2 = ratio_or_nullopt(Poly{Rat(-1), Rat(5), Rat(2)}.eval(x) * Rat(m) * x,
                            r2_den(m).eval(x));
  out.d = ratio_or_nullopt((x + Rat(2)) * Rat(m) * x, d_den(m).eval(x));

  const Rat q4 = cp.base.q4;
  if (q4.is_zero()) {
    out.degenerate = true;
    return out;
  }

  Poly pp = cp.base.p_poly();
  PolyDivMod d1 = pp.divmod(Poly{-cp.base.a, Rat(1)});
  if (!d1.rem.is_zero()) throw DefectError("interior_quadratic: a is not a root");
  PolyDivMod d2 = d1.quot.divmod(Poly{cp.b, Rat(-1)});
  if (!d2.rem.is_zero()) throw DefectError("interior_quadratic: b is not a root");
  Poly quad = d2.quot;
  quad /= q4 / Rat(24);
  if (quad.degree() != 2 || !(quad.coeff(2) == Rat(1)))
    throw DefectError("interior_quadratic: factor is not a monic quadratic");
  out.alphaQ = quad.coeff(1);
  out.betaQ = quad.coeff(0);

  out.scriptA = script_a(m, x);
  out.scriptB = script_b(m, x);
  out.scriptC = script_c(x);

  // the packaged vertex discriminant must reproduce alphaQ^2 - 4 betaQ
  Rat D = Rat(m) * x * (x + Rat(2)) - weight * d_den(m).eval(x);
  Rat packaged = out.scriptA * weight * weight +
                 Rat(2 * m) * x * out.scriptB * weight +
                 Rat(m) * Rat(m) * x * x * out.scriptC;
  if (!((out.alphaQ * out.alphaQ - Rat(4) * out.betaQ) * D * D == packaged))
    throw DefectError("interior_quadratic: vertex discriminant packaging failed");

  Poly rho_quad{Rat(m) * Rat(m) * x * x * out.scriptC,
                Rat(2 * m) * x * out.scriptB, out.scriptA};
  std::vector<IsolatedRoot> rho = real_roots(rho_quad);
  if (rho.size() == 1) {
    out.rho1 = rho[0];
    out.rho2 = std::move(rho[0]);
  } else if (rho.size() == 2) {
    out.rho1 = std::move(rho[0]);
    out.rho2 = std::move(rho[1]);
  }
  return out;
}

VertexSigns vertex_signs(int m, const Rat& x, const Rat& p) {
  if (m < 1 || !(x > Rat(1))) throw DomainError("vertex_signs: need m >= 1, x > 1");
  VertexSigns vs;
  const Rat mx = Rat(m) * x;
  vs.N1 = Rat(-3) * mx * (x + Rat(1)) - p * r1_den(m).eval(x);
  vs.N2 = mx * Poly{Rat(-1), Rat(5), Rat(2)}.eval(x) - p * r2_den(m).eval(x);
  vs.D = mx * (x + Rat(2)) - p * d_den(m).eval(x);
  Rat packaged = script_a(m, x) * p * p + Rat(2) * mx * script_b(m, x) * p +
                 mx * mx * script_c(x);
  vs.disc_quad = vs.D.is_zero() ? Rat(0) : packaged / (vs.D * vs.D);
  vs.sign_N1_over_D = vs.N1.sign() * vs.D.sign();
  vs.sign_N2_over_D = vs.N2.sign() * vs.D.sign();
  vs.sign_D_disc = packaged.sign() * vs.D.sign();
  return vs;
}

HessianData hessian_at(const Profile& pr, const Rat& x1, const Rat& x2) {
  if (!(x1 > Rat(0)) || !(x2 > Rat(0)))
    throw DomainError("hessian_at: polytope interior needs x1, x2 > 0");
  Rat r = x1 + x2;
  Rat pval = pr.p_poly().eval(r);
  if (pval.is_zero()) throw DomainError("hessian_at: p_poly vanishes at x1 + x2");
  Rat hpp = Rat(-1) / r + r / pval;

  HessianData h;
  h.u11 = (x1.inv() + hpp) / Rat(2);
  h.u12 = hpp / Rat(2);
  h.u22 = (x2.inv() + hpp) / Rat(2);
  h.det = h.u11 * h.u22 - h.u12 * h.u12;
  if (h.det.is_zero()) throw DomainError("hessian_at: Hess(u) is singular");
  h.inv11 = h.u22 / h.det;
  h.inv12 = -h.u12 / h.det;
  h.inv22 = h.u11 / h.det;
  h.trace_inv = h.inv11 + h.inv22;
  h.positive_definite = h.u11 > Rat(0) && h.det > Rat(0);
  return h;
}

}  // namespace bachflat
