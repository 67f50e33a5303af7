#pragma once

#include <chenciner/series.hpp>

#include <complex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace chenciner {

// Dead bands for sign decisions on float-evaluated quantities. The region
// table is stated with exact zeros (points sitting on curves); evaluation in
// floating point needs a band per quantity: a single band cannot zero the
// discriminant at a near-fold point without also zeroing a much smaller beta1.
struct SignTol {
  double delta = 1e-9;  // discriminant Delta = beta2^2 - 4*beta1*L2
  double beta = 1e-9;   // beta1 and beta2 values
  double l0 = 1e-9;     // L0 and L2-at-point (these must stay away from 0)
};

// The truncated normal form on (rho, phi):
//   rho' = rho * (1 + beta1(alpha) + beta2(alpha)*rho^2 + L2(alpha)*rho^4)
//   phi' = phi + theta0  (mod 2*pi)
// beta1, beta2, L2 are truncated series in (alpha1, alpha2). Immutable.
class NormalFormSystem {
 public:
  // Requires 0 < theta0 < pi. The series conditions beta1(0) = beta2(0) = 0
  // and L2(0) != 0 are reported by validate(), not enforced here.
  NormalFormSystem(BivariateSeries beta1, BivariateSeries beta2, BivariateSeries l2,
                   double theta0);

  const BivariateSeries& beta1() const { return beta1_; }
  const BivariateSeries& beta2() const { return beta2_; }
  const BivariateSeries& l2() const { return l2_; }
  double theta0() const { return theta0_; }

 private:
  BivariateSeries beta1_, beta2_, l2_;
  double theta0_;
};

// Converts classical complex normal-form data (modulus r, cubic and quintic
// coefficients b1, b2) at one parameter value into (beta1, beta2, L2):
//   beta1 = r - 1, beta2 = Re b1,
//   L2 = (Im(b1)^2 + 2*(1 + beta1)*Re(b2)) / (2*(beta1 + 1)).
// Throws ConfigError when r <= 0.
std::tuple<double, double, double> from_complex_data(double r, std::complex<double> b1,
                                                     std::complex<double> b2);

struct ValidationReport {
  bool chenciner_ok = false;  // beta1(0) = beta2(0) = 0 and L0 != 0
  bool degenerate = false;    // c1*d2 - c2*d1 = 0, exact rational test
  bool new_regular = false;   // c1*l2 - c2*l1 != 0, exact rational test
  bool c_nonzero = false;     // c1 != 0 and c2 != 0
  bool d_nonzero = false;     // d1 != 0 and d2 != 0
  // Linear data: beta1 = c1*a1 + c2*a2 + ..., beta2 = d1*a1 + d2*a2 + ...,
  // L2 = L0 + l1*a1 + l2*a2 + ...
  Rational l0, c1, c2, d1, d2, l1, l2;
};

// Pure report; never throws on a bad system.
ValidationReport validate(const NormalFormSystem& sys);

// One application of the truncated map. rho must be >= 0; rho' may come back
// negative for large rho (the polynomial left its validity region) and is
// returned as-is so the simulation layer can classify the exit.
std::pair<double, double> map_step(const NormalFormSystem& sys, std::pair<double, double> alpha,
                                   double rho, double phi);

enum class Stability { stable, unstable, semi_stable };

std::string to_string(Stability s);

// Which side of a semi-stable circle attracts. Decided by the sign of the
// quadratic's leading coefficient L2 at the point: the double root of
// q(y) = L2*y^2 + beta2*y + beta1 keeps q's sign on both sides.
enum class SemiStableSide { none, inner_stable_outer_unstable, inner_unstable_outer_stable };

std::string to_string(SemiStableSide s);

struct InvariantCircle {
  double y = 0.0;       // positive root of L2*y^2 + beta2*y + beta1 = 0
  double radius = 0.0;  // sqrt(y)
  double derivative = 0.0;  // g'(sqrt(y)) = 1 + 2*beta2*y + 4*L2*y^2
  Stability stability = Stability::unstable;
  SemiStableSide side = SemiStableSide::none;
};

struct CircleCensus {
  double delta = 0.0;      // beta2^2 - 4*beta1*L2 at the point
  bool collapsed = false;  // |delta| within tol.delta: double root reported once
  // 0, 1, or 2 circles. Two circles are listed in root order
  // (y1 = (sqrt(D)-beta2)/(2 L2) first, y2 = -(sqrt(D)+beta2)/(2 L2) second),
  // which puts the larger root first exactly when L2 > 0.
  std::vector<InvariantCircle> circles;
  std::string note;
};

// Solves the circle quadratic at alpha. Roots with y <= 1e-12 are dropped
// (that band excludes the origin fixed point re-detected when beta1 = 0).
// When |delta| <= tol.delta the two roots are merged into the double root
// y0 = -beta2/(2 L2), classified semi-stable with derivative exactly 1.
// Throws GenericityError when |L2(alpha)| <= tol.l0.
CircleCensus invariant_circles(const NormalFormSystem& sys, std::pair<double, double> alpha,
                               const SignTol& tol = {});

enum class StabilityTier { linear, nonlinear_beta2, nonlinear_l0 };

std::string to_string(StabilityTier t);

struct OriginStability {
  bool stable = false;
  StabilityTier tier = StabilityTier::linear;
};

// Stability of the fixed point rho = 0: sign of beta1 decides linearly; on
// the band beta1 = 0 the sign of beta2 decides; when both sit in the band the
// exact sign of L0 decides.
OriginStability origin_stability(const NormalFormSystem& sys, std::pair<double, double> alpha,
                                 const SignTol& tol = {});

}  // namespace chenciner
