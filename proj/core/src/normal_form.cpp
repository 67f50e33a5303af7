#include <chenciner/normal_form.hpp>

#include <chenciner/errors.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace chenciner {

namespace {

constexpr double kRootTol = 1e-12;   // y below this is the origin, not a circle
constexpr double kDerivTol = 1e-12;  // |g'| this close to 1 counts as tangential

InvariantCircle make_circle(double y, double b2v, double l2v) {
  InvariantCircle c;
  c.y = y;
  c.radius = std::sqrt(y);
  c.derivative = 1.0 + 2.0 * b2v * y + 4.0 * l2v * y * y;
  const double gap = std::abs(c.derivative) - 1.0;
  if (std::abs(gap) <= kDerivTol) {
    c.stability = Stability::semi_stable;
    c.side = l2v > 0 ? SemiStableSide::inner_stable_outer_unstable
                     : SemiStableSide::inner_unstable_outer_stable;
  } else if (gap < 0) {
    c.stability = Stability::stable;
  } else {
    c.stability = Stability::unstable;
  }
  return c;
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::semi_stable: return "semi_stable";
  }
  return "?";
}

std::string to_string(SemiStableSide s) {
  switch (s) {
    case SemiStableSide::none: return "none";
    case SemiStableSide::inner_stable_outer_unstable: return "inner_stable_outer_unstable";
    case SemiStableSide::inner_unstable_outer_stable: return "inner_unstable_outer_stable";
  }
  return "?";
}

std::string to_string(StabilityTier t) {
  switch (t) {
    case StabilityTier::linear: return "linear";
    case StabilityTier::nonlinear_beta2: return "nonlinear_beta2";
    case StabilityTier::nonlinear_l0: return "nonlinear_l0";
  }
  return "?";
}

NormalFormSystem::NormalFormSystem(BivariateSeries beta1, BivariateSeries beta2,
                                   BivariateSeries l2, double theta0)
    : beta1_(std::move(beta1)), beta2_(std::move(beta2)), l2_(std::move(l2)), theta0_(theta0) {
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi))
    throw ConfigError("theta0 must lie strictly between 0 and pi, got " + std::to_string(theta0));
}

std::tuple<double, double, double> from_complex_data(double r, std::complex<double> b1,
                                                     std::complex<double> b2) {
  if (!(r > 0.0))
    throw ConfigError("invalid modulus r = " + std::to_string(r) + "; r > 0 required");
  const double beta1 = r - 1.0;
  const double beta2 = b1.real();
  const double l2 = (b1.imag() * b1.imag() + 2.0 * (1.0 + beta1) * b2.real()) / (2.0 * (beta1 + 1.0));
  return {beta1, beta2, l2};
}

ValidationReport validate(const NormalFormSystem& sys) {
  ValidationReport r;
  r.l0 = sys.l2().coeff(0, 0);
  r.c1 = sys.beta1().coeff(1, 0);
  r.c2 = sys.beta1().coeff(0, 1);
  r.d1 = sys.beta2().coeff(1, 0);
  r.d2 = sys.beta2().coeff(0, 1);
  r.l1 = sys.l2().coeff(1, 0);
  r.l2 = sys.l2().coeff(0, 1);
  r.chenciner_ok =
      sys.beta1().coeff(0, 0) == 0 && sys.beta2().coeff(0, 0) == 0 && r.l0 != 0;
  r.degenerate = r.c1 * r.d2 - r.c2 * r.d1 == 0;
  r.new_regular = r.c1 * r.l2 - r.c2 * r.l1 != 0;
  r.c_nonzero = r.c1 != 0 && r.c2 != 0;
  r.d_nonzero = r.d1 != 0 && r.d2 != 0;
  return r;
}

std::pair<double, double> map_step(const NormalFormSystem& sys, std::pair<double, double> alpha,
                                   double rho, double phi) {
  if (rho < 0.0) throw std::invalid_argument("map_step requires rho >= 0");
  const double b1 = sys.beta1().eval(alpha.first, alpha.second);
  const double b2 = sys.beta2().eval(alpha.first, alpha.second);
  const double l2 = sys.l2().eval(alpha.first, alpha.second);
  const double y = rho * rho;
  const double rho_next = rho * (1.0 + b1 + b2 * y + l2 * y * y);
  double phi_next = std::fmod(phi + sys.theta0(), 2.0 * std::numbers::pi);
  if (phi_next < 0.0) phi_next += 2.0 * std::numbers::pi;
  return {rho_next, phi_next};
}

CircleCensus invariant_circles(const NormalFormSystem& sys, std::pair<double, double> alpha,
                               const SignTol& tol) {
  const double b1v = sys.beta1().eval(alpha.first, alpha.second);
  const double b2v = sys.beta2().eval(alpha.first, alpha.second);
  const double l2v = sys.l2().eval(alpha.first, alpha.second);
  if (std::abs(l2v) <= tol.l0) {
    std::ostringstream msg;
    msg << "invariant circle quadratic degenerates: L2(alpha) = " << l2v
        << " is within tolerance of zero";
    throw GenericityError(msg.str());
  }

  CircleCensus census;
  census.delta = b2v * b2v - 4.0 * b1v * l2v;

  if (std::abs(census.delta) <= tol.delta) {
    // Tangential case: the roots are merged into the double root. g' there is
    // exactly 1 (the derivative of the quadratic vanishes at its vertex), so
    // it is pinned rather than recomputed through rounding.
    const double y0 = -b2v / (2.0 * l2v);
    if (y0 > kRootTol) {
      InvariantCircle c;
      c.y = y0;
      c.radius = std::sqrt(y0);
      c.derivative = 1.0;
      c.stability = Stability::semi_stable;
      c.side = l2v > 0 ? SemiStableSide::inner_stable_outer_unstable
                       : SemiStableSide::inner_unstable_outer_stable;
      census.circles.push_back(c);
      census.collapsed = true;
      census.note = "tangential double circle; the coarse one-sided classification is unstable";
    }
    return census;
  }
  if (census.delta < 0.0) return census;

  const double sq = std::sqrt(census.delta);
  const double y1 = (sq - b2v) / (2.0 * l2v);
  const double y2 = -(sq + b2v) / (2.0 * l2v);
  if (y1 > kRootTol) census.circles.push_back(make_circle(y1, b2v, l2v));
  if (y2 > kRootTol) census.circles.push_back(make_circle(y2, b2v, l2v));
  return census;
}

OriginStability origin_stability(const NormalFormSystem& sys, std::pair<double, double> alpha,
                                 const SignTol& tol) {
  const double b1v = sys.beta1().eval(alpha.first, alpha.second);
  OriginStability out;
  if (std::abs(b1v) > tol.beta) {
    out.tier = StabilityTier::linear;
    out.stable = b1v < 0;
    return out;
  }
  const double b2v = sys.beta2().eval(alpha.first, alpha.second);
  if (std::abs(b2v) > tol.beta) {
    out.tier = StabilityTier::nonlinear_beta2;
    out.stable = b2v < 0;
    return out;
  }
  out.tier = StabilityTier::nonlinear_l0;
  out.stable = sign_of(sys.l2().coeff(0, 0)) < 0;
  return out;
}

}  // namespace chenciner
