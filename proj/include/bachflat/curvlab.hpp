#pragma once

#include "bachflat/jet.hpp"
#include "bachflat/poly.hpp"
#include "bachflat/profile.hpp"

#include <array>
#include <optional>
#include <vector>

namespace bachflat {

// Interior point of the moment polytope in action coordinates. The metrics
// are torus invariant, so every curvature quantity depends on (x1, x2) only
// and the angle coordinates never need values.
struct Point4 {
  Rat x1;
  Rat x2;
  Rat r() const { return x1 + x2; }
};

using Mat2 = std::array<std::array<Rat, 2>, 2>;
using Mat4 = std::array<std::array<Rat, 4>, 4>;
using JetMat2 = std::array<std::array<Jet2, 2>, 2>;

// Metric of the symplectic potential u = (x1 log x1 + x2 log x2 + h(r))/2 in
// coordinates (x1, x2, th1, th2): the x-block is Hess(u), the angle block is
// Hess(u)^{-1}. Entries are order-3 jets about the base point. xx_inv is the
// jet inverse computed by elimination; angle is the closed form
// 2[[x1 - x1^2 f, -x1 x2 f], [-x1 x2 f, x2 - x2^2 f]], f = q/r^3. The two
// agree identically; keeping both makes the identity testable.
struct MetricJets {
  Jet2 x1, x2, r;
  JetMat2 xx;
  JetMat2 angle;
  JetMat2 xx_inv;
  Jet2 det_xx;  // r^2 / (4 x1 x2 p(r))
};

// Throws DomainError off the polytope interior (x1, x2 <= 0 or r <= a) and on
// the singular locus p(r) = 0 where h'' has no finite value.
MetricJets metric_at(const Profile& pr, const Point4& pt);

// Everything curvature_at knows about one point, all entries exact.
struct CurvatureReport {
  Point4 pt;
  Rat r;
  Mat4 metric;
  Mat4 metric_inv;
  Rat scal;        // from the jet pipeline; equals 2 q3 + q4 r
  Rat abreu_scal;  // -(d^2 u^11/dx1^2 + 2 d^2 u^12/dx1 dx2 + d^2 u^22/dx2^2)
  Mat4 ricci;
  Rat lambda;  // S/4 with S = einstein_constant(pr)
  // characteristic polynomial of W+ on the self-dual 2-forms, monic cubic;
  // (t - s/6)(t + s/12)^2 for these metrics
  Poly weyl_plus_charpoly;
  Mat4 bach;  // (1/12)[s (Ric)_0 + 2 (Hess s)_0], valid since the family is extremal
  Rat bach_max_entry;
  bool bach_flat = false;  // q3 q1 == q4 q0
  // max entry of Ric(gt) - (S/4) gt for gt = scal^-2 g; absent when scal = 0
  // at the point
  std::optional<Rat> einstein_residual;
  // (Ric)_0 == -2 s^{-1} (Hess s)_0 entrywise; absent when scal = 0 at the
  // point. Holds exactly iff the profile is Bach-flat.
  std::optional<bool> trace_free_ricci_proportional;
  bool riemann_symmetries_hold = false;  // pair symmetry, antisymmetry, first Bianchi
  bool ricci_j_invariant = false;        // zero cross block and U Ric_tt U = Ric_xx
};

CurvatureReport curvature_at(const Profile& pr, const Point4& pt);

// Residual of the Einstein equation for gt = scal^-2 g across a point set.
struct EinsteinResidualReport {
  Rat S;       // einstein_constant(pr)
  Rat lambda;  // S/4
  Rat max_residual;
  int points = 0;
};

// Throws DomainError when scal vanishes at a sample point, naming the
// hypersurface r = -2 q3/q4.
EinsteinResidualReport conformal_einstein_residual(const Profile& pr,
                                                   const std::vector<Point4>& pts);

// Jet Laplacian of a rotation-invariant function against the closed form
//   -2 [ (2 - q'/r) gamma' + (r - q/r) gamma'' ]
// The closed form is stated for the nonpositive-spectrum Laplacian; the trace
// of the Hessian carries the opposite sign.
struct LaplacianCheck {
  Rat trace_laplacian;  // g^{ij} (Hess gamma)_{ij}
  Rat hodge_laplacian;  // - trace_laplacian
  Rat closed_form;
  Rat residual;  // hodge_laplacian - closed_form, exactly 0
};

LaplacianCheck laplacian_check(const Profile& pr, const Poly& gamma, const Point4& pt);
// gamma = 1/scal as a rational function; requires scal != 0 at the point.
LaplacianCheck laplacian_check_inv_scal(const Profile& pr, const Point4& pt);

// Pointwise values of s^3 + 6 s (trace Laplacian of s) - 12 |ds|^2, which the
// conformal change of scalar curvature makes constant, equal to
// einstein_constant for Bach-flat profiles.
struct ConstancyReport {
  Rat constant;       // value at the first point
  Rat max_deviation;  // exactly 0
  Rat einstein_scalar;
  bool equals_einstein_scalar = false;
  int points = 0;
};

ConstancyReport derdzinski_scalar_identity(const Profile& pr,
                                           const std::vector<Point4>& pts);

// Exact diagonalization of g in the coframe
//   dr, kappa = -x2 dx1 + x1 dx2, eta = (x1 dth1 + x2 dth2)/r,
//   chi = (dth1 - dth2)/r.
// The computed coefficients are r/(2p) dr^2, 1/(2 r x1 x2) kappa^2,
// (2p/r) eta^2, 2 r x1 x2 chi^2. The candidate booleans record how the two
// published radial coefficients and the published eta coefficient compare at
// this point; away from the accidental crossing r = 2 all three are false.
struct DiagonalFrame {
  Rat c_dr, c_kappa, c_eta, c_chi;
  Rat off_diagonal_max;  // exactly 0: the coframe diagonalizes g
  Rat dr_kappa_inner;    // <dr, kappa>_g, exactly 0
  bool candidate_2r_over_p = false;   // c_dr == 2r/p
  bool candidate_2_over_rp = false;   // c_dr == 2/(rp)
  bool eta_coeff_p_over_r = false;    // c_eta == p/r
};

DiagonalFrame diagonal_frame_check(const Profile& pr, const Point4& pt);

// Rescaled conformal limit of the Einstein family as y -> 0: the scalar-flat
// profile carries phi^-2 g with phi^-1 = (8(m-1) - 4(m-2) r/a)/(4m); the
// result is Einstein with S = 12/a (m = 1) and S = -12(m-2)/a (m >= 3). For
// m = 2 the factor is identically 1 and nothing is rescaled.
struct BeyondLimit {
  int m = 0;
  Rat a;
  bool rescaled = false;
  Rat S;
  std::optional<Rat> singular_radius;  // 2(m-1) a/(m-2) for m >= 3
  Rat max_residual;                    // Einstein residual, exactly 0
  int points = 0;
};

// Throws DomainError when the conformal factor is not positive and finite at
// a sample point (m >= 3 beyond the singular radius).
BeyondLimit beyond_limit(int m, const Rat& a, const std::vector<Point4>& pts);

}  // namespace bachflat
