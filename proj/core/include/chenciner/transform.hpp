#pragma once

#include <chenciner/normal_form.hpp>

#include <tuple>
#include <utility>
#include <vector>

namespace chenciner {

using SeriesPair = std::pair<BivariateSeries, BivariateSeries>;

// The parameter change S : alpha -> mu and everything derived from it.
//
//   mu1 = beta2^2 - 4*beta1*L2   (the discriminant of the circle quadratic)
//   mu2 = beta2 + L2 - L0
//
// The inverse is the unique series pair with forward(inverse) = identity
// through total degree k; its coefficients above degree k are zero, so hat
// functions computed from it are exact only in the terms the inversion order
// can reach (k = 2 covers every quantity this library reports).
struct ParameterTransform {
  SeriesPair forward;  // (mu1(alpha), mu2(alpha)) at the working order
  SeriesPair inverse;  // (alpha1(mu), alpha2(mu)); see note above
  int k = 2;

  Rational jacobian_det0;  // det of the linear part, equals -4*L0*(c1*l2 - c2*l1)
  Rational l0, c1, c2, d1, d2, l1, l2;

  BivariateSeries hat_beta1, hat_beta2, hat_l2;  // series in (mu1, mu2)
  Rational m2;  // minus the mu2^2 coefficient of hat_l2
  Rational k1;  // 4*L0*(c1/d1)*m2; defined only when d1 != 0
  bool k1_defined = false;

  // The degeneracy condition c1*d2 - c2*d1 = 0 held when this was built. The
  // transform is still usable for exploration without it, but the diagram and
  // region semantics assume it.
  bool degenerate_context = false;

  // Residual checks recorded at build time.
  bool roundtrip_exact = false;       // forward(inverse) - id == 0 through degree k
  bool delta_identity_exact = false;  // hat_beta2^2 - 4*hat_beta1*hat_l2 - mu1 == 0
};

// mu1 = beta2^2 - 4*beta1*L2, mu2 = beta2 + L2 - L0, exact at the working
// order. Pointwise evaluation of mu1 should go through the component series
// (classify_alpha_point does) since the product here is truncated.
SeriesPair build_forward(const NormalFormSystem& sys);

// Inverts a series pair with zero constant terms by undetermined
// coefficients, degree by degree: the linear part is A0^-1, and each degree d
// correction solves an exact-rational linear system fed by the lower-degree
// residual of forward(inverse). Requires 1 <= k <= working order. Throws
// GenericityError when det A0 = 0, which for the bifurcation transform means
// the regularity condition c1*l2 - c2*l1 != 0 fails.
SeriesPair invert_series(const SeriesPair& forward, int k);

// (hat_beta1, hat_beta2, hat_l2) as series in mu:
//   hat_l2    = L2 composed with the inverse,
//   hat_beta2 = mu2 - hat_l2 + L0          (exact from the definition of mu2),
//   hat_beta1 = (hat_beta2^2 - mu1)/(4*hat_l2)  (the discriminant identity,
//               the division done by truncated reciprocal; L2(0) != 0).
std::tuple<BivariateSeries, BivariateSeries, BivariateSeries> hat_functions(
    const NormalFormSystem& sys, const SeriesPair& inverse);

// m2 from the closed form in the quadratic coefficients of beta1, beta2, L2.
// Requires c1 != 0 and d1*l2 - d2*l1 != 0; equals the series-extracted m2
// whenever the degeneracy condition holds.
Rational m2_closed_form(const NormalFormSystem& sys);

// Validates, builds the forward pair, inverts to order k, and derives hat
// functions and constants. Throws GenericityError when the base point is not
// a valid bifurcation point or the transform is not invertible.
ParameterTransform build_transform(const NormalFormSystem& sys, int k = 2);

// Leading-order boundary curves in the mu plane:
//   B1: mu1 = m2^2 * mu2^4   (image of hat_beta1 = 0)
//   B2: mu1 = k1 * mu2^2     (image of hat_beta2 = 0)
// Both are tangent to the mu2 axis at the origin. B1 lies in {mu1 > 0}; B2's
// half plane is the sign of k1, and for k1 > 0 it runs above B1 near the
// origin. Sampled at leading order only, so placements near |mu2| ~ 0.1 are
// approximate.
struct BoundaryCurves {
  std::vector<std::pair<double, double>> b1;  // (mu2, mu1) samples
  std::vector<std::pair<double, double>> b2;
  double k1 = 0.0;
  bool b1_in_upper_half = true;
  int b2_half_plane = 0;           // sign of k1
  bool b2_above_b1_near_origin = false;  // true iff k1 > 0
};

// Throws GenericityError when m2 = 0 (the curves degenerate) or k1 is
// undefined (d1 = 0). samples = 1 uses the midpoint of the range.
BoundaryCurves boundary_curves(const ParameterTransform& t, std::pair<double, double> mu2_range,
                               int samples);

}  // namespace chenciner
