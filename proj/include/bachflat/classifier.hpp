#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bachflat/profile.hpp"
#include "bachflat/roots.hpp"

namespace bachflat {

// Global behaviour of the metric on r > a, decided by the end polynomial
// p_poly alone: its degree, its roots strictly above a, and the multiplicity
// of the smallest such root.
enum class GlobalKind {
  IncompleteEnd,
  CompleteQuarticGrowth,
  CompleteExponentialGrowth,
  ConeAngleCompactification,
  CompleteFiniteVolume,
};

std::string to_string(GlobalKind k);

// Closed rational interval [lo, hi]; lo == hi encodes an exact value.
struct RatBox {
  Rat lo, hi;

  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / Rat(2); }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

// Interval evaluation of f over x by Horner with endpoint products; the
// result encloses f(t) for every t in x.
RatBox box_eval(const Poly& f, const RatBox& x);

struct Classification {
  GlobalKind kind = GlobalKind::IncompleteEnd;
  int p_degree = 0;
  // distinct roots of p_poly strictly above a, ascending, with multiplicity
  std::vector<IsolatedRoot> roots_above_a;

  // set when the metric closes up at a root b > a
  std::optional<RatBox> b;
  int multiplicity = 0;

  // cone case only: weight = -m b / p_poly'(b) > 0, angle 2 pi / weight.
  // The boxes are certified enclosures; weight_exact is set when b is
  // rational, and then weight == [weight_exact, weight_exact].
  std::optional<RatBox> weight;
  std::optional<Rat> weight_exact;
  std::optional<RatBox> angle_over_2pi;
};

// Decision procedure: no root above a -> complete with quartic (deg <= 2) or
// exponential (deg 3) volume growth, incomplete end at deg 4; smallest root
// b > a of multiplicity 1 -> cone angle compactification; multiplicity >= 2
// -> complete finite-volume end.  The weight enclosure is refined until
// p_poly' carries a certified negative sign across it.
Classification classify(const Profile& pr);

// y^3 + 6(3m-2) y^2 + 72 m (m-2) y + 256: the resolvent cubic whose sign
// controls the discriminant of the one-ended profile family at parameter y.
Poly moduli_cubic(int m);

// The seven cuts of the one-ended moduli line for m >= 3: the three roots
// y1 < y2 <= y3 of the resolvent cubic interlaced with the rational markers
// -12m < -6(m-2) <= y2-side <= -4(m-2) < 0.  y2 == -4(m-2) exactly at m = 3.
struct AtlasCuts {
  int m = 3;
  Rat minus_12m, ricci_flat, kahler_einstein;
  IsolatedRoot y1, y2, y3;
};

AtlasCuts atlas_cuts(int m);

enum class AtlasSpace { LineBundle, Hirzebruch };
enum class AtlasType {
  Incomplete,
  ConeAngle,
  FiniteVolume,
  ScalarFlat,
  KahlerEinstein,
};
enum class SignLabel { Negative, Zero, Positive, NotApplicable };

std::string to_string(AtlasSpace s);
std::string to_string(AtlasType t);
std::string to_string(SignLabel s);

// One cell of the moduli table: eight open intervals (even index) and seven
// boundary values (odd index), ordered left to right on the y-line.
struct AtlasRegion {
  int m = 3;
  Rat y;
  int index = 0;           // 0..14
  std::string label;
  AtlasSpace space = AtlasSpace::LineBundle;
  AtlasType type = AtlasType::Incomplete;
  // sign of the conformally related Einstein scalar -y^2 (y + 6(m-2)) / a^3;
  // not-applicable on the scalar-flat locus y = 0
  SignLabel einstein_scalar_sign = SignLabel::NotApplicable;
  bool on_boundary = false;
  // at m = 3 the middle resolvent root collides with the Kahler-Einstein
  // marker, emptying the interval between them
  bool y2_equals_kahler_einstein = false;
};

AtlasRegion atlas_region(int m, const Rat& y);

// Both sign choices of the signature-vs-Euler bound for cone angle 2 pi beta:
// margin = 8 - (1 - beta)(4 +- (1 + beta)), nonnegative iff the bound holds.
struct HitchinThorpe {
  Rat beta;
  Rat margin_plus;
  Rat margin_minus;

  bool satisfied() const {
    return margin_plus.sign() >= 0 && margin_minus.sign() >= 0;
  }
};

HitchinThorpe hitchin_thorpe(const Rat& beta);

}  // namespace bachflat
