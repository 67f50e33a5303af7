#include <chenciner/transform.hpp>

#include <chenciner/errors.hpp>

#include <algorithm>
#include <cmath>

namespace chenciner {

SeriesPair build_forward(const NormalFormSystem& sys) {
  const BivariateSeries& b1 = sys.beta1();
  const BivariateSeries& b2 = sys.beta2();
  const BivariateSeries& l2 = sys.l2();
  const Rational l0 = l2.coeff(0, 0);
  const int order = std::min({b1.order(), b2.order(), l2.order()});

  BivariateSeries mu1 = b2 * b2 - Rational(4) * (b1 * l2);
  BivariateSeries mu2 = b2 + l2 - BivariateSeries::constant(l0, order);
  return {std::move(mu1), std::move(mu2)};
}

SeriesPair invert_series(const SeriesPair& forward, int k) {
  const BivariateSeries& f1 = forward.first;
  const BivariateSeries& f2 = forward.second;
  const int order = std::min(f1.order(), f2.order());
  if (k < 1) throw ConfigError("inversion order k must be at least 1");
  if (k > order)
    throw ConfigError("inversion order k = " + std::to_string(k) +
                      " exceeds the series working order " + std::to_string(order));
  if (f1.coeff(0, 0) != 0 || f2.coeff(0, 0) != 0)
    throw GenericityError("series inversion requires a map fixing the origin");

  const Rational a = f1.coeff(1, 0), b = f1.coeff(0, 1);
  const Rational c = f2.coeff(1, 0), d = f2.coeff(0, 1);
  const Rational det = a * d - b * c;
  if (det == 0)
    throw GenericityError(
        "series inversion: the linear part is singular (det A0 = 0); for the bifurcation "
        "transform det A0 = -4*L0*(c1*l2 - c2*l1), so the regularity condition "
        "c1*l2 - c2*l1 != 0 is violated");

  // A0^-1 rows.
  const Rational ia = d / det, ib = -b / det;
  const Rational ic = -c / det, id = a / det;

  // The inverse lives at the forward working order so later compositions keep
  // every representable term; coefficients above degree k stay zero.
  BivariateSeries inv1 = BivariateSeries::from_terms(
      order, {SeriesTerm{1, 0, ia}, SeriesTerm{0, 1, ib}});
  BivariateSeries inv2 = BivariateSeries::from_terms(
      order, {SeriesTerm{1, 0, ic}, SeriesTerm{0, 1, id}});

  const BivariateSeries id1 = BivariateSeries::variable(1, order);
  const BivariateSeries id2 = BivariateSeries::variable(2, order);

  for (int deg = 2; deg <= k; ++deg) {
    const BivariateSeries r1 = f1.compose(inv1, inv2) - id1;
    const BivariateSeries r2 = f2.compose(inv1, inv2) - id2;
    std::vector<SeriesTerm> corr1, corr2;
    for (int i = 0; i <= deg; ++i) {
      const int j = deg - i;
      const Rational e1 = r1.coeff(i, j);
      const Rational e2 = r2.coeff(i, j);
      if (e1 == 0 && e2 == 0) continue;
      corr1.push_back({i, j, -(ia * e1 + ib * e2)});
      corr2.push_back({i, j, -(ic * e1 + id * e2)});
    }
    inv1 = inv1 + BivariateSeries::from_terms(order, corr1);
    inv2 = inv2 + BivariateSeries::from_terms(order, corr2);
  }
  return {std::move(inv1), std::move(inv2)};
}

std::tuple<BivariateSeries, BivariateSeries, BivariateSeries> hat_functions(
    const NormalFormSystem& sys, const SeriesPair& inverse) {
  const BivariateSeries hat_l2 = sys.l2().compose(inverse.first, inverse.second);
  const int order = hat_l2.order();
  const Rational l0 = sys.l2().coeff(0, 0);

  const BivariateSeries mu1 = BivariateSeries::variable(1, order);
  const BivariateSeries mu2 = BivariateSeries::variable(2, order);
  const BivariateSeries hat_beta2 = mu2 - hat_l2 + BivariateSeries::constant(l0, order);
  const BivariateSeries hat_beta1 =
      Rational(1, 4) * ((hat_beta2 * hat_beta2 - mu1) * hat_l2.reciprocal());
  return {hat_beta1, hat_beta2, hat_l2};
}

Rational m2_closed_form(const NormalFormSystem& sys) {
  const Rational c1 = sys.beta1().coeff(1, 0);
  const Rational c20 = sys.beta1().coeff(2, 0);
  const Rational c11 = sys.beta1().coeff(1, 1);
  const Rational c02 = sys.beta1().coeff(0, 2);
  const Rational d1 = sys.beta2().coeff(1, 0);
  const Rational d2 = sys.beta2().coeff(0, 1);
  const Rational d20 = sys.beta2().coeff(2, 0);
  const Rational d11 = sys.beta2().coeff(1, 1);
  const Rational d02 = sys.beta2().coeff(0, 2);
  const Rational l1 = sys.l2().coeff(1, 0);
  const Rational l2 = sys.l2().coeff(0, 1);

  if (c1 == 0) throw GenericityError("m2 closed form requires c1 != 0");
  const Rational mix = d1 * l2 - d2 * l1;
  if (mix == 0) throw GenericityError("m2 closed form requires d1*l2 - d2*l1 != 0");

  const Rational num = c02 * d1 * d1 * d1 - c11 * d1 * d1 * d2 - c1 * d02 * d1 * d1 +
                       c20 * d1 * d2 * d2 + c1 * d11 * d1 * d2 - c1 * d20 * d2 * d2;
  return -num / (c1 * mix * mix);
}

ParameterTransform build_transform(const NormalFormSystem& sys, int k) {
  const ValidationReport rep = validate(sys);
  if (!rep.chenciner_ok)
    throw GenericityError(
        "the transform needs a valid base point: beta1(0) = beta2(0) = 0 and L0 != 0");

  ParameterTransform t;
  t.forward = build_forward(sys);
  t.inverse = invert_series(t.forward, k);
  t.k = k;
  t.l0 = rep.l0;
  t.c1 = rep.c1;
  t.c2 = rep.c2;
  t.d1 = rep.d1;
  t.d2 = rep.d2;
  t.l1 = rep.l1;
  t.l2 = rep.l2;
  t.jacobian_det0 = t.forward.first.coeff(1, 0) * t.forward.second.coeff(0, 1) -
                    t.forward.first.coeff(0, 1) * t.forward.second.coeff(1, 0);
  t.degenerate_context = rep.degenerate;

  std::tie(t.hat_beta1, t.hat_beta2, t.hat_l2) = hat_functions(sys, t.inverse);
  t.m2 = -t.hat_l2.coeff(0, 2);
  if (rep.d1 != 0) {
    t.k1 = Rational(4) * t.l0 * (t.c1 / t.d1) * t.m2;
    t.k1_defined = true;
  }

  // Residual checks stored with the transform.
  const BivariateSeries r1 =
      t.forward.first.compose(t.inverse.first, t.inverse.second) -
      BivariateSeries::variable(1, t.forward.first.order());
  const BivariateSeries r2 =
      t.forward.second.compose(t.inverse.first, t.inverse.second) -
      BivariateSeries::variable(2, t.forward.second.order());
  t.roundtrip_exact = r1.truncated(k).is_zero() && r2.truncated(k).is_zero();

  const BivariateSeries delta_residual =
      t.hat_beta2 * t.hat_beta2 - Rational(4) * (t.hat_beta1 * t.hat_l2) -
      BivariateSeries::variable(1, t.hat_l2.order());
  t.delta_identity_exact = delta_residual.is_zero();
  return t;
}

BoundaryCurves boundary_curves(const ParameterTransform& t, std::pair<double, double> mu2_range,
                               int samples) {
  if (t.m2 == 0)
    throw GenericityError("boundary curves degenerate: m2 = 0 (m2 != 0 is a standing assumption)");
  if (!t.k1_defined)
    throw GenericityError("boundary curve for hat_beta2 undefined: d1 = 0 so k1 has no value");
  if (samples < 1) throw ConfigError("boundary_curves needs at least one sample");

  BoundaryCurves out;
  const double m2 = to_double(t.m2);
  out.k1 = to_double(t.k1);
  out.b2_half_plane = out.k1 > 0 ? 1 : (out.k1 < 0 ? -1 : 0);
  out.b2_above_b1_near_origin = out.k1 > 0;

  const auto at = [&](int i) {
    if (samples == 1) return 0.5 * (mu2_range.first + mu2_range.second);
    return mu2_range.first +
           (mu2_range.second - mu2_range.first) * static_cast<double>(i) / (samples - 1);
  };
  out.b1.reserve(samples);
  out.b2.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double mu2 = at(i);
    const double mu2sq = mu2 * mu2;
    out.b1.emplace_back(mu2, m2 * m2 * mu2sq * mu2sq);
    out.b2.emplace_back(mu2, out.k1 * mu2sq);
  }
  return out;
}

}  // namespace chenciner
