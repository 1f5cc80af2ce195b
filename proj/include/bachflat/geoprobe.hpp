#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bachflat/profile.hpp"
#include "bachflat/rational.hpp"

namespace bachflat {

// Radial geometry probes.  The length element along a ray of increasing
// r is sqrt(r/p(r)) dr, with an extra factor 1/|scal(r)| after the
// conformal rescaling by scal^-2.  Improper endpoints are classified
// analytically from the root multiplicity of p and the affine scal;
// quadrature only ever sees regularized integrands.

// Local behavior of the length integrand at one endpoint of a ray: the
// integrand grows like (distance to the endpoint)^exponent, or like
// r^exponent when the endpoint is at infinity.
struct EndpointExponent {
  Rat exponent;
  int p_multiplicity = 0;  // endpoint's multiplicity as a root of p
  bool scal_zero = false;  // conformal factor blows up there
  bool at_infinity = false;

  bool improper() const {
    return at_infinity || p_multiplicity > 0 || scal_zero;
  }
  // comparison test for the improper integral at this endpoint
  bool divergent() const {
    if (!improper()) return false;
    return at_infinity ? exponent >= Rat(-1) : exponent <= Rat(-1);
  }
};

// endpoint = nullopt probes the end at infinity
EndpointExponent endpoint_exponent(const Profile& pr,
                                   const std::optional<Rat>& endpoint,
                                   bool conformal);

struct RayLength {
  std::optional<double> value;  // set iff the integral converges
  double error_bound = 0.0;
  std::optional<Rat> divergence_exponent;  // integrand exponent at the bad end

  bool finite() const { return value.has_value(); }
};

// Length of the radial ray from r_lo to r_hi (nullopt = infinity).
// Divergent improper endpoints are reported with their exponent, never
// integrated; convergent improper endpoints are removed by substitution.
RayLength ray_length(const Profile& pr, const Rat& r_lo,
                     const std::optional<Rat>& r_hi, bool conformal,
                     double rel_tol = 1e-10);

struct VolumeResult {
  double value = 0.0;
  double error_bound = 0.0;
  // non-conformal volumes are 2 pi^2 times this exact rational
  std::optional<Rat> over_two_pi_sq;
};

// Volume of the sublevel set a <= r <= r_hi: closed form 2 pi^2 (r_hi^2 -
// a^2), or quadrature of 2 pi^2 * 2 r scal^-4 dr for the rescaled metric.
VolumeResult volume(const Profile& pr, const Rat& r_hi, bool conformal,
                    double rel_tol = 1e-10);

enum class GrowthModel { Polynomial, Exponential, FiniteTotal };

struct GrowthSample {
  double ell = 0.0;       // sublevel cutoff r <= ell
  double distance = 0.0;  // distance from the zero section along the ray
  double volume = 0.0;    // volume of the sublevel set
};

struct GrowthEstimate {
  GrowthModel model = GrowthModel::Polynomial;
  double value = 0.0;  // polynomial exponent, exponential rate, or total volume
  double fit_residual = 0.0;
  std::vector<GrowthSample> table;
};

// Pairs distance from the zero section with sublevel volume along the probed
// end and fits the growth law.  The model class is decided exactly (degree
// of p, root multiplicity, scal zeros); only the exponent or rate is fitted,
// by least squares on >= 20 samples.  Refuses metrics that are incomplete in
// the probed direction.
GrowthEstimate growth_exponent(const Profile& pr, bool conformal,
                               int samples = 30, double rel_tol = 1e-10);

const char* growth_model_name(GrowthModel m);

// (R, volume, distance) table for plotting
std::string growth_csv(const GrowthEstimate& est);

// Adaptive Simpson quadrature with Richardson correction; the reported
// error is the accumulated extrapolation defect.  Exposed for the
// self-consistency and oracle-redundancy checks.
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, double rel_tol);

}  // namespace bachflat
