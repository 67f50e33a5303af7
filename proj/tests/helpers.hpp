#pragma once

#include <chenciner/config.hpp>
#include <chenciner/normal_form.hpp>
#include <chenciner/series.hpp>
#include <chenciner/transform.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace testutil {

using chenciner::BivariateSeries;
using chenciner::NormalFormSystem;
using chenciner::Rational;
using chenciner::SeriesPair;
using chenciner::SeriesTerm;

// One worked point of the reference system: the parameter value, the rotation
// number and trend step budget its orbits use, the expected region, and the
// mu values it must reproduce. mu1_tol < 0 means |mu1| itself must stay below
// 1e-5 (the point sits on the fold curve to display precision).
struct RefPoint {
  std::pair<double, double> alpha;
  double theta0;
  int trend_steps;
  int region;
  double mu1, mu1_tol;
  double mu2, mu2_tol;
  double delta_band;  // discriminant dead band that resolves the point
  bool origin_stable;
};

inline const std::array<RefPoint, 4>& ref_points() {
  static const std::array<RefPoint, 4> pts = {{
      {{-0.017, 0.015}, 0.05, 800, 1, 4.8579e-3, 1e-7, 1.0782e-2, 1e-6, 1e-9, true},
      {{-0.015, 0.015}, 0.03, 700, 2, -2.7e-3, 1e-4, 1.4778e-2, 1e-6, 1e-9, false},
      {{-0.015719, 0.015}, 0.02, 1000, 6, 0.0, -1.0, 1.3341e-2, 1e-6, 1e-5, false},
      {{-0.5, 0.05}, 0.03, 400, 8, 0.0714, 1e-4, -0.6498, 1e-4, 1e-9, false},
  }};
  return pts;
}

// Census radii the reference points pin down (4-5 significant digits).
inline constexpr double kRadiusUnstable1 = 0.18876;  // point 0, lone unstable circle
inline constexpr double kRadiusTangent = 0.0242;     // point 2, tangential double circle
inline constexpr double kRadiusOuter8 = 0.6718;      // point 3, unstable
inline constexpr double kRadiusInner8 = 0.3699;      // point 3, stable
inline constexpr double kRadiusRelTol = 1e-3;

inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(rng), den(rng));
}

inline BivariateSeries random_series(std::mt19937& rng, int order, double density = 0.6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SeriesTerm> terms;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      if (u(rng) < density) {
        const Rational c = random_rational(rng);
        if (c != 0) terms.push_back({i, j, c});
      }
  return BivariateSeries::from_terms(order, terms);
}

// A random system with the degeneracy built in: beta2's linear part is an
// exact integer multiple t of beta1's, so c1*d2 - c2*d1 = 0 holds by
// construction and d1*l2 - d2*l1 = t*(c1*l2 - c2*l1) != 0 comes for free once
// the regularity determinant is nonzero. Higher-degree terms are noise.
struct RandomDegenerate {
  NormalFormSystem sys;
  int c1, c2, t, l0, l1, l2;
};

inline RandomDegenerate random_degenerate_system(std::mt19937& rng, int order = 4,
                                                 double theta0 = 0.05) {
  auto nonzero = [&rng](int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    int v = 0;
    while (v == 0) v = d(rng);
    return v;
  };
  const int c1 = nonzero(-5, 5), c2 = nonzero(-5, 5);
  const int t = nonzero(-3, 3);
  const int l0 = nonzero(-4, 4);
  std::uniform_int_distribution<int> small(-5, 5);
  int l1 = 0, l2 = 0;
  do {
    l1 = small(rng);
    l2 = small(rng);
  } while (c1 * l2 - c2 * l1 == 0);

  auto noisy = [&rng, order](std::map<std::pair<int, int>, Rational> base) {
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<int> degree(2, order);
    const int n = count(rng);
    for (int q = 0; q < n; ++q) {
      const int d = degree(rng);
      std::uniform_int_distribution<int> split(0, d);
      const int i = split(rng);
      base[{i, d - i}] += random_rational(rng);
    }
    std::vector<SeriesTerm> terms;
    for (const auto& [ij, c] : base)
      if (c != 0) terms.push_back({ij.first, ij.second, c});
    return BivariateSeries::from_terms(order, terms);
  };

  BivariateSeries beta1 = noisy({{{1, 0}, c1}, {{0, 1}, c2}});
  BivariateSeries beta2 = noisy({{{1, 0}, Rational(t) * c1}, {{0, 1}, Rational(t) * c2}});
  BivariateSeries l2s = noisy({{{0, 0}, l0}, {{1, 0}, l1}, {{0, 1}, l2}});
  return {NormalFormSystem(std::move(beta1), std::move(beta2), std::move(l2s), theta0),
          c1, c2, t, l0, l1, l2};
}

// Solves forward(alpha) = mu by damped Newton iteration: an inversion oracle
// sharing nothing with the undetermined-coefficients path.
inline std::optional<std::pair<double, double>> newton_invert(const SeriesPair& fwd,
                                                              std::pair<double, double> mu,
                                                              std::pair<double, double> guess) {
  const BivariateSeries j11 = fwd.first.derivative(1), j12 = fwd.first.derivative(2);
  const BivariateSeries j21 = fwd.second.derivative(1), j22 = fwd.second.derivative(2);
  double a1 = guess.first, a2 = guess.second;
  for (int it = 0; it < 200; ++it) {
    const double r1 = fwd.first.eval(a1, a2) - mu.first;
    const double r2 = fwd.second.eval(a1, a2) - mu.second;
    const double res = std::max(std::abs(r1), std::abs(r2));
    if (res < 1e-14) return std::pair{a1, a2};
    const double m11 = j11.eval(a1, a2), m12 = j12.eval(a1, a2);
    const double m21 = j21.eval(a1, a2), m22 = j22.eval(a1, a2);
    const double det = m11 * m22 - m12 * m21;
    if (det == 0.0) return std::nullopt;
    const double s1 = (r1 * m22 - r2 * m12) / det;
    const double s2 = (m11 * r2 - m21 * r1) / det;
    double step = 1.0;
    bool moved = false;
    for (; step > 1e-6; step *= 0.5) {
      const double t1 = a1 - step * s1, t2 = a2 - step * s2;
      const double n1 = fwd.first.eval(t1, t2) - mu.first;
      const double n2 = fwd.second.eval(t1, t2) - mu.second;
      if (std::max(std::abs(n1), std::abs(n2)) < res) {
        a1 = t1;
        a2 = t2;
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace testutil
