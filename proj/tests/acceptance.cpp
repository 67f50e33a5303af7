// Acceptance gate: one pass/fail line per criterion, exit 0 only if all hold.
// Expected values are exact rationals where the algebra is exact and pinned
// named tolerances where floating point enters.

#include <chenciner/classify.hpp>
#include <chenciner/config.hpp>
#include <chenciner/emit.hpp>
#include <chenciner/normal_form.hpp>
#include <chenciner/rational.hpp>
#include <chenciner/series.hpp>
#include <chenciner/simulate.hpp>
#include <chenciner/transform.hpp>

#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace chenciner;

namespace {

constexpr double kNewtonOracleTol = 1e-6;  // series inverse vs independent Newton solve
constexpr double kFoldMu1Band = 1e-5;      // |mu1| at the point sitting on the fold
constexpr double kTrendMargin = 0.05;      // relative movement a trend run must show

class Gate {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  bool report(int number, const std::string& name) const {
    std::cout << "criterion " << number << " (" << name << "): ";
    if (failures_ == 0) {
      std::cout << "PASS (" << checks_ << " checks)\n";
      return true;
    }
    std::cout << "FAIL (" << failures_ << " of " << checks_ << " checks; first: " << first_
              << ")\n";
    return false;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string first_;
};

bool radius_near(double v, double expect) {
  return std::abs(v - expect) <= testutil::kRadiusRelTol * std::abs(expect);
}

std::string at_point(const testutil::RefPoint& rp) {
  return " at alpha=(" + format_float(rp.alpha.first) + "," + format_float(rp.alpha.second) + ")";
}

void criterion_inverse(Gate& g) {
  const ParameterTransform t = build_transform(reference_system(), 2);
  const BivariateSeries& a1 = t.inverse.first;
  const BivariateSeries& a2 = t.inverse.second;
  g.require(a1.coeff(0, 0) == 0 && a2.coeff(0, 0) == 0, "inverse has no constant term");
  g.require(a1.coeff(1, 0) == Rational(-3, 4), "alpha1: mu1 coefficient -3/4");
  g.require(a1.coeff(0, 1) == -1, "alpha1: mu2 coefficient -1");
  g.require(a1.coeff(2, 0) == Rational(-261, 64), "alpha1: mu1^2 coefficient -261/64");
  g.require(a1.coeff(1, 1) == Rational(-49, 4), "alpha1: mu1*mu2 coefficient -49/4");
  g.require(a1.coeff(0, 2) == -10, "alpha1: mu2^2 coefficient -10");
  g.require(a2.coeff(1, 0) == Rational(1, 2), "alpha2: mu1 coefficient 1/2");
  g.require(a2.coeff(0, 1) == 1, "alpha2: mu2 coefficient 1");
  g.require(a2.coeff(2, 0) == Rational(89, 32), "alpha2: mu1^2 coefficient 89/32");
  g.require(a2.coeff(1, 1) == Rational(17, 2), "alpha2: mu1*mu2 coefficient 17/2");
  g.require(a2.coeff(0, 2) == 7, "alpha2: mu2^2 coefficient 7");
  g.require(t.roundtrip_exact, "forward(inverse) = identity through degree 2");
  g.require(t.jacobian_det0 == -4, "jacobian determinant -4 at the origin");
}

void criterion_m2(Gate& g) {
  const NormalFormSystem sys = reference_system();
  g.require(build_transform(sys, 2).m2 == -5, "series route gives m2 = -5");
  g.require(m2_closed_form(sys) == -5, "closed form gives m2 = -5");

  std::mt19937 rng(20240817);
  for (int i = 0; i < 50; ++i) {
    const testutil::RandomDegenerate rd = testutil::random_degenerate_system(rng);
    const ParameterTransform rt = build_transform(rd.sys, 2);
    g.require(rt.degenerate_context, "random system carries the degeneracy");
    g.require(rt.m2 == m2_closed_form(rd.sys), "both m2 routes agree exactly");
  }
}

void criterion_hat(Gate& g) {
  const ParameterTransform t = build_transform(reference_system(), 2);
  g.require(t.hat_l2.coeff(0, 0) == 1, "hat L2 constant 1");
  g.require(t.hat_l2.coeff(1, 0) == Rational(1, 4), "hat L2: mu1 coefficient 1/4");
  g.require(t.hat_l2.coeff(0, 1) == 1, "hat L2: mu2 coefficient 1");
  g.require(t.hat_l2.coeff(0, 2) == 5, "hat L2: mu2^2 coefficient 5");
  g.require(t.hat_beta2.coeff(0, 0) == 0, "hat beta2 vanishes at 0");
  g.require(t.hat_beta2.coeff(1, 0) == Rational(-1, 4), "hat beta2: mu1 coefficient -1/4");
  g.require(t.hat_beta2.coeff(0, 1) == 0, "hat beta2: no linear mu2 term");
  g.require(t.hat_beta2.coeff(0, 2) == -5, "hat beta2: mu2^2 coefficient -5");
  g.require(t.hat_beta1.coeff(0, 0) == 0, "hat beta1 vanishes at 0");
  g.require(t.hat_beta1.coeff(1, 0) == Rational(-1, 4), "hat beta1: mu1 coefficient -1/4");
  g.require(t.hat_beta1.coeff(0, 1) == 0 && t.hat_beta1.coeff(0, 2) == 0 &&
                t.hat_beta1.coeff(0, 3) == 0,
            "hat beta1: pure mu2 terms vanish through degree 3");
  g.require(t.hat_beta1.coeff(0, 4) == Rational(25, 4), "hat beta1: mu2^4 coefficient 25/4");
  g.require(Rational(4) * t.hat_beta1.coeff(0, 4) == t.m2 * t.m2,
            "the mu2^4 coefficient ties to m2 through 4c = m2^2");
  g.require(t.delta_identity_exact, "hat discriminant equals mu1 exactly");
}

void criterion_mu(Gate& g) {
  const ParameterTransform t = build_transform(reference_system(), 2);
  for (const testutil::RefPoint& rp : testutil::ref_points()) {
    const NormalFormSystem sys = reference_system(4, rp.theta0);
    SignTol tol;
    tol.delta = rp.delta_band;
    const AlphaClassification c = classify_alpha_point(sys, t, rp.alpha, tol);
    if (rp.mu1_tol < 0)
      g.require(std::abs(c.mu.first) < kFoldMu1Band, "mu1 within the fold band" + at_point(rp));
    else
      g.require(std::abs(c.mu.first - rp.mu1) <= rp.mu1_tol, "mu1" + at_point(rp));
    g.require(std::abs(c.mu.second - rp.mu2) <= rp.mu2_tol, "mu2" + at_point(rp));
  }
}

void criterion_census(Gate& g) {
  const auto& pts = testutil::ref_points();

  const CircleCensus c1 = invariant_circles(reference_system(4, pts[0].theta0), pts[0].alpha);
  g.require(c1.circles.size() == 1, "one circle at the first point");
  if (c1.circles.size() == 1) {
    g.require(radius_near(c1.circles[0].radius, testutil::kRadiusUnstable1), "radius 0.18876");
    g.require(c1.circles[0].stability == Stability::unstable, "the circle is unstable");
  }

  SignTol fold_tol;
  fold_tol.delta = pts[2].delta_band;
  const CircleCensus c3 =
      invariant_circles(reference_system(4, pts[2].theta0), pts[2].alpha, fold_tol);
  g.require(c3.collapsed, "the fold point collapses to a double circle");
  g.require(c3.circles.size() == 1, "one tangential circle");
  if (c3.circles.size() == 1) {
    g.require(radius_near(c3.circles[0].radius, testutil::kRadiusTangent), "radius 0.0242");
    g.require(c3.circles[0].stability == Stability::semi_stable, "the circle is semi-stable");
    g.require(c3.circles[0].side == SemiStableSide::inner_stable_outer_unstable,
              "its inner side attracts");
    g.require(c3.circles[0].derivative == 1.0, "tangential multiplier pinned to 1");
  }

  const CircleCensus c4 = invariant_circles(reference_system(4, pts[3].theta0), pts[3].alpha);
  g.require(c4.circles.size() == 2, "two circles at the fourth point");
  if (c4.circles.size() == 2) {
    g.require(radius_near(c4.circles[0].radius, testutil::kRadiusOuter8), "outer radius 0.6718");
    g.require(c4.circles[0].stability == Stability::unstable, "outer circle unstable");
    g.require(radius_near(c4.circles[1].radius, testutil::kRadiusInner8), "inner radius 0.3699");
    g.require(c4.circles[1].stability == Stability::stable, "inner circle stable");
    g.require(c4.circles[1].y < c4.circles[0].y, "the second root lies below the first");
  }
}

void criterion_regions(Gate& g) {
  // Sign-pattern table (sgn L0, sgn Delta, sgn beta1, sgn beta2) -> region;
  // kAny in the beta2 slot matches every sign.
  struct Row {
    int l0, delta, beta1, beta2, region;
  };
  constexpr int kAny = 9;
  const Row rows[] = {
      {-1, -1, -1, kAny, 4}, {-1, +1, -1, -1, 4},   {-1, 0, -1, -1, 4}, {-1, +1, 0, -1, 4},
      {-1, 0, 0, 0, 4},      {-1, +1, +1, kAny, 3}, {-1, +1, 0, +1, 3}, {-1, +1, -1, +1, 7},
      {-1, 0, -1, +1, 5},    {+1, +1, -1, kAny, 1}, {+1, +1, 0, -1, 1}, {+1, -1, +1, kAny, 2},
      {+1, +1, +1, +1, 2},   {+1, 0, +1, +1, 2},    {+1, +1, 0, +1, 2}, {+1, 0, 0, 0, 2},
      {+1, 0, +1, -1, 6},    {+1, +1, +1, -1, 8},
  };
  int rows_checked = 0;
  for (const Row& row : rows) {
    const std::vector<int> b2s =
        row.beta2 == kAny ? std::vector<int>{-1, 0, 1} : std::vector<int>{row.beta2};
    for (int b2 : b2s) {
      const RegionLabel r = region_classify(row.l0 * 2.0, row.delta * 1e-3, row.beta1 * 1e-3,
                                            b2 * 1e-3, SignTol{});
      g.require(r.region == row.region, "table row -> region " + std::to_string(row.region));
    }
    ++rows_checked;
  }
  g.require(rows_checked == 18, "all 18 table rows exercised");
  g.require(region_classify(-2.0, -1e-3, 1e-3, 1e-3, SignTol{}).region == kUnclassified,
            "pattern (-,-,+,+) has no row");
  g.require(region_classify(2.0, -1e-3, -1e-3, 1e-3, SignTol{}).region == kUnclassified,
            "pattern (+,-,-,+) has no row");

  const ParameterTransform t = build_transform(reference_system(), 2);
  for (const testutil::RefPoint& rp : testutil::ref_points()) {
    const NormalFormSystem sys = reference_system(4, rp.theta0);
    SignTol tol;
    tol.delta = rp.delta_band;
    const AlphaClassification c = classify_alpha_point(sys, t, rp.alpha, tol);
    g.require(c.label.region == rp.region,
              "region " + std::to_string(rp.region) + at_point(rp));
  }

  const DiagramLabel d =
      diagram_select(to_double(t.l0), to_double(t.m2), sign_of(t.c1) * sign_of(t.d1));
  g.require(d.diagram == Diagram::D3, "the example selects diagram D3");

  const DiagramRaster raster = diagram_raster(t, MuWindow{}, 41, 41);
  std::set<int> present;
  for (const auto& cell : raster.cells) present.insert(cell.region);
  g.require(present == std::set<int>{1, 2, 6, 8}, "default window shows regions 1, 2, 6, 8");

  bool b1_up = !raster.curves.b1.empty();
  for (const auto& [mu2, mu1] : raster.curves.b1) b1_up = b1_up && mu1 >= 0;
  g.require(b1_up, "B1 lies in the closed upper half plane");
  bool b2_down = !raster.curves.b2.empty();
  for (const auto& [mu2, mu1] : raster.curves.b2) b2_down = b2_down && mu1 <= 0;
  g.require(b2_down && raster.curves.k1 < 0, "B2 lies on the sign(k1) side");
}

void criterion_portraits(Gate& g) {
  const ParameterTransform t = build_transform(reference_system(), 2);
  for (const testutil::RefPoint& rp : testutil::ref_points()) {
    const NormalFormSystem sys = reference_system(4, rp.theta0);
    ProbePlan plan;
    plan.n_max = rp.trend_steps;
    plan.thresholds.sign_tol.delta = rp.delta_band;
    const PortraitReport rep = verify_portrait(sys, t, rp.alpha, plan);
    g.require(rep.status == PortraitStatus::verified, "portrait verified" + at_point(rp));
    g.require(rep.region_census_consistent, "census matches the region" + at_point(rp));
    for (const auto& p : rep.probes)
      g.require(p.verdict != ProbeVerdict::contradicted, "no probe contradicts" + at_point(rp));
  }

  const NormalFormSystem s1 = reference_system(4, 0.05);
  const std::pair<double, double> a1{-0.017, 0.015};
  const OrbitRecord trend_in = iterate_orbit(s1, a1, 0.17, 0.0, 800);
  g.require(trend_in.points.back().rho < (1.0 - kTrendMargin) * 0.17,
            "rho = 0.17 contracts over its trend run");
  g.require(iterate_orbit(s1, a1, 0.17, 0.0, 20000).outcome.kind == OutcomeKind::to_origin,
            "rho = 0.17 reaches the origin");
  const OrbitRecord on_circle = iterate_orbit(s1, a1, 0.18876, 0.0, 400);
  g.require(on_circle.outcome.kind == OutcomeKind::to_circle &&
                radius_near(on_circle.outcome.radius, testutil::kRadiusUnstable1),
            "rho = 0.18876 settles on the circle within 400 steps");
  g.require(iterate_orbit(s1, a1, 0.195, 0.0, 20000).outcome.kind == OutcomeKind::escape,
            "rho = 0.195 escapes");

  const NormalFormSystem s2 = reference_system(4, 0.03);
  const std::pair<double, double> a2{-0.015, 0.015};
  const OrbitRecord trend_out = iterate_orbit(s2, a2, 1e-3, 0.0, 700);
  g.require(trend_out.points.back().rho > (1.0 + kTrendMargin) * 1e-3,
            "rho = 0.001 expands over its trend run");
  g.require(iterate_orbit(s2, a2, 1e-3, 0.0, 20000).outcome.kind == OutcomeKind::escape,
            "rho = 0.001 escapes");
}

void criterion_infrastructure(Gate& g) {
  std::mt19937 rng(987654321);
  const BivariateSeries one = BivariateSeries::constant(1, 4);
  for (int i = 0; i < 200; ++i) {
    const BivariateSeries r = testutil::random_series(rng, 4);
    const BivariateSeries s = testutil::random_series(rng, 4);
    const BivariateSeries u = testutil::random_series(rng, 4);
    g.require((r + s) + u == r + (s + u), "addition associates");
    g.require(r + s == s + r, "addition commutes");
    g.require(r * s == s * r, "multiplication commutes");
    g.require((r * s) * u == r * (s * u), "multiplication associates");
    g.require(r * (s + u) == r * s + r * u, "multiplication distributes");
    g.require(r + BivariateSeries(4) == r && r * one == r, "identities act trivially");
    g.require((r - r).is_zero(), "additive inverses cancel");
  }

  const NormalFormSystem sys = reference_system();
  for (int k = 1; k <= 4; ++k)
    g.require(build_transform(sys, k).roundtrip_exact,
              "round trip exact at inversion order " + std::to_string(k));
  std::mt19937 rng2(13572468);
  for (int i = 0; i < 20; ++i) {
    const ParameterTransform rt = build_transform(testutil::random_degenerate_system(rng2).sys, 2);
    g.require(rt.roundtrip_exact, "random round trip exact");
    g.require(rt.delta_identity_exact, "random hat discriminant identity");
  }

  const ParameterTransform t = build_transform(sys, 2);
  std::mt19937 rng3(24681357);
  std::uniform_real_distribution<double> mu_d(-1e-3, 1e-3);
  int solved = 0;
  for (int i = 0; i < 20; ++i) {
    const std::pair<double, double> mu{mu_d(rng3), mu_d(rng3)};
    const double i1 = t.inverse.first.eval(mu.first, mu.second);
    const double i2 = t.inverse.second.eval(mu.first, mu.second);
    const auto root = testutil::newton_invert(t.forward, mu, {i1, i2});
    if (!root) continue;
    ++solved;
    g.require(std::abs(root->first - i1) <= kNewtonOracleTol &&
                  std::abs(root->second - i2) <= kNewtonOracleTol,
              "series inverse within 1e-6 of the Newton solve");
  }
  g.require(solved == 20, "Newton oracle converged at every sample");

  const std::pair<double, double> a1{-0.017, 0.015};
  const OrbitRecord base = iterate_orbit(reference_system(4, 0.05), a1, 0.17, 0.0, 500);
  const OrbitRecord spun = iterate_orbit(reference_system(4, 1.3), a1, 0.17, 2.5, 500);
  bool same_rho = base.points.size() == spun.points.size();
  for (size_t i = 0; same_rho && i < base.points.size(); ++i)
    same_rho = base.points[i].rho == spun.points[i].rho;
  g.require(same_rho, "radial sequence is bitwise independent of phi1 and theta0");

  const OrbitRecord again = iterate_orbit(reference_system(4, 0.05), a1, 0.17, 0.0, 500);
  bool replay = again.points.size() == base.points.size() &&
                again.outcome.kind == base.outcome.kind && again.n_steps == base.n_steps;
  for (size_t i = 0; replay && i < base.points.size(); ++i)
    replay = again.points[i].rho == base.points[i].rho &&
             again.points[i].phi == base.points[i].phi;
  g.require(replay, "re-running an orbit reproduces it bit for bit");
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    void (*fn)(Gate&);
  };
  const Entry entries[] = {
      {"exact inverse through degree 2", criterion_inverse},
      {"m2 agreement on two routes", criterion_m2},
      {"hat series lowest terms", criterion_hat},
      {"mu values at the reference points", criterion_mu},
      {"invariant circle radii and stability", criterion_census},
      {"region classification", criterion_regions},
      {"portrait verification and orbit outcomes", criterion_portraits},
      {"series algebra and simulation determinism", criterion_infrastructure},
  };
  bool all = true;
  int number = 1;
  for (const Entry& e : entries) {
    Gate g;
    e.fn(g);
    all = g.report(number++, e.name) && all;
  }
  std::cout << (all ? "acceptance: all criteria hold\n" : "acceptance: FAILED\n");
  return all ? 0 : 1;
}
