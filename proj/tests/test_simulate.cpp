#include <chenciner/config.hpp>
#include <chenciner/errors.hpp>
#include <chenciner/simulate.hpp>

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace chenciner;
using doctest::Approx;
using testutil::ref_points;

TEST_CASE("argument checking and the empty run") {
  const auto sys = reference_system();
  CHECK_THROWS_AS(iterate_orbit(sys, {0.0, 0.0}, -0.1, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(iterate_orbit(sys, {0.0, 0.0}, 0.1, 0.0, -1), ConfigError);

  const auto rec = iterate_orbit(sys, {0.0, 0.0}, 0.1, 0.0, 0);
  CHECK(rec.points.size() == 1);
  CHECK(rec.n_steps == 0);
  CHECK(rec.outcome.kind == OutcomeKind::undecided);
  CHECK(rec.points[0].rho == 0.1);
}

TEST_CASE("threshold and plan defaults are the documented contract") {
  const Thresholds th;
  CHECK(th.origin_eps == 1e-6);
  CHECK(th.escape_radius == 10.0);
  CHECK(th.window == 50);
  CHECK(th.circle_eps == 1e-5);
  CHECK(th.circle_match_tol == 1e-3);
  CHECK(ProbePlan{}.n_max == 20000);
  CHECK(ProbePlan{}.undecided_quota == 0);
}

TEST_CASE("orbits inside the lone unstable circle spiral down to the origin") {
  const auto sys = reference_system(4, ref_points()[0].theta0);
  const auto alpha = ref_points()[0].alpha;

  const auto trend = iterate_orbit(sys, alpha, 0.17, 0.0, ref_points()[0].trend_steps);
  CHECK(trend.outcome.kind == OutcomeKind::undecided);
  for (size_t i = 1; i < trend.points.size(); ++i)
    CHECK(trend.points[i].rho < trend.points[i - 1].rho);

  const auto full = iterate_orbit(sys, alpha, 0.17, 0.0, 20000);
  CHECK(full.outcome.kind == OutcomeKind::to_origin);
  CHECK(full.n_steps < 20000);
  CHECK(full.points.back().rho < 1e-6);
  CHECK_FALSE(full.left_validity);
}

TEST_CASE("orbits outside the lone unstable circle escape") {
  const auto sys = reference_system(4, ref_points()[0].theta0);
  const auto rec = iterate_orbit(sys, ref_points()[0].alpha, 0.195, 0.0, 20000);
  CHECK(rec.outcome.kind == OutcomeKind::escape);
  CHECK(rec.points.back().rho > 10.0);
}

TEST_CASE("an orbit started on the circle settles onto it quickly") {
  const auto sys = reference_system(4, ref_points()[0].theta0);
  const auto rec = iterate_orbit(sys, ref_points()[0].alpha, 0.18876, 0.0, 400);
  CHECK(rec.outcome.kind == OutcomeKind::to_circle);
  CHECK(std::abs(rec.outcome.radius - testutil::kRadiusUnstable1) <=
        testutil::kRadiusRelTol * testutil::kRadiusUnstable1);
  CHECK(rec.n_steps <= 100);
}

TEST_CASE("with no circles at all, growth ends in escape") {
  const auto sys = reference_system(4, ref_points()[1].theta0);
  const auto alpha = ref_points()[1].alpha;

  const auto trend = iterate_orbit(sys, alpha, 1e-3, 0.0, ref_points()[1].trend_steps);
  CHECK(trend.outcome.kind == OutcomeKind::undecided);
  for (size_t i = 1; i < trend.points.size(); ++i)
    CHECK(trend.points[i].rho > trend.points[i - 1].rho);

  const auto full = iterate_orbit(sys, alpha, 1e-3, 0.0, 20000);
  CHECK(full.outcome.kind == OutcomeKind::escape);
}

TEST_CASE("two nested circles split the plane into three flows") {
  const auto sys = reference_system(4, ref_points()[3].theta0);
  const auto alpha = ref_points()[3].alpha;
  const double stable = testutil::kRadiusInner8;

  for (double start : {0.3, 0.5}) {
    const auto rec = iterate_orbit(sys, alpha, start, 0.0, 20000);
    CHECK(rec.outcome.kind == OutcomeKind::to_circle);
    CHECK(std::abs(rec.outcome.radius - stable) <= testutil::kRadiusRelTol * stable);
  }
  const auto out = iterate_orbit(sys, alpha, 0.7, 0.0, 20000);
  CHECK(out.outcome.kind == OutcomeKind::escape);
}

TEST_CASE("the tangential circle holds its orbit while nearby starts crawl") {
  const auto sys = reference_system(4, ref_points()[2].theta0);
  const auto alpha = ref_points()[2].alpha;
  Thresholds th;
  th.sign_tol.delta = ref_points()[2].delta_band;

  const auto on = iterate_orbit(sys, alpha, 0.024223, 0.0, 20000, th);
  CHECK(on.outcome.kind == OutcomeKind::to_circle);
  CHECK(std::abs(on.outcome.radius - testutil::kRadiusTangent) <=
        testutil::kRadiusRelTol * testutil::kRadiusTangent);

  // Half and 1.5 times the radius drift by ~2e-7 per step: far too slow to
  // conclude in 20000 steps, but the drift direction is already meaningful.
  const auto inner = iterate_orbit(sys, alpha, 0.012, 0.0, 20000, th);
  CHECK(inner.outcome.kind == OutcomeKind::undecided);
  CHECK(inner.points.back().rho > 0.012);
  const auto outer = iterate_orbit(sys, alpha, 0.036, 0.0, 20000, th);
  CHECK(outer.outcome.kind == OutcomeKind::undecided);
  CHECK(outer.points.back().rho > 0.036);
}

TEST_CASE("a flat window decides alone when the census is unavailable") {
  // L2 crosses zero at this point, so the circle quadratic degenerates and
  // the census throws; the orbit detector then accepts any flat window.
  const NormalFormSystem sys(BivariateSeries::parse("0", 4), BivariateSeries::parse("0", 4),
                             BivariateSeries::parse("a1", 4), 0.05);
  const auto rec = iterate_orbit(sys, {1e-15, 0.0}, 0.3, 0.0, 1000);
  CHECK(rec.outcome.kind == OutcomeKind::to_circle);
  CHECK(rec.outcome.radius == Approx(0.3).epsilon(1e-9));
  CHECK(rec.n_steps <= 60);
}

TEST_CASE("a negative radius marks a validity exit, reported as escape") {
  const NormalFormSystem sys(BivariateSeries::parse("a1", 4), BivariateSeries::parse("a1", 4),
                             BivariateSeries::parse("-1 + a1", 4), 0.05);
  const auto rec = iterate_orbit(sys, {0.01, 0.0}, 2.0, 0.0, 100);
  CHECK(rec.outcome.kind == OutcomeKind::escape);
  CHECK(rec.left_validity);
  CHECK(rec.n_steps == 1);
  CHECK(rec.points.back().rho < 0.0);  // the offending value is kept
}

TEST_CASE("crossing the escape radius ends the run without a validity flag") {
  const NormalFormSystem sys(BivariateSeries::parse("a1", 4), BivariateSeries(4),
                             BivariateSeries::parse("1", 4), 0.05);
  const auto rec = iterate_orbit(sys, {1.0, 0.0}, 1.0, 0.0, 100);
  CHECK(rec.outcome.kind == OutcomeKind::escape);
  CHECK_FALSE(rec.left_validity);
  CHECK(rec.n_steps <= 4);
}

TEST_CASE("dropping below origin_eps ends the run") {
  const NormalFormSystem sys(BivariateSeries::parse("-a1", 4), BivariateSeries(4),
                             BivariateSeries::parse("1", 4), 0.05);
  const auto rec = iterate_orbit(sys, {0.99, 0.0}, 0.1, 0.0, 100);
  CHECK(rec.outcome.kind == OutcomeKind::to_origin);
  CHECK(rec.n_steps == 3);
}

TEST_CASE("orbits in the contracting quadrant shrink monotonically") {
  // L0 < 0 with no circles: every orbit falls to the origin.
  const NormalFormSystem sys(BivariateSeries::parse("-a1", 4), BivariateSeries::parse("a1", 4),
                             BivariateSeries::parse("-1 + a1", 4), 0.05);
  const auto rec = iterate_orbit(sys, {0.01, 0.0}, 0.5, 0.0, 20000);
  CHECK(rec.outcome.kind == OutcomeKind::to_origin);
  for (size_t i = 1; i < rec.points.size(); ++i)
    CHECK(rec.points[i].rho < rec.points[i - 1].rho);
}

TEST_CASE("identical inputs give bit-identical records") {
  const auto sys = reference_system(4, 0.05);
  const auto a = iterate_orbit(sys, ref_points()[0].alpha, 0.17, 0.3, 500);
  const auto b = iterate_orbit(sys, ref_points()[0].alpha, 0.17, 0.3, 500);
  REQUIRE(a.points.size() == b.points.size());
  CHECK(a.n_steps == b.n_steps);
  CHECK(a.outcome.kind == b.outcome.kind);
  for (size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].rho == b.points[i].rho);
    CHECK(a.points[i].phi == b.points[i].phi);
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].y == b.points[i].y);
  }

  // Replaying map_step over the stored sequence reproduces it exactly.
  for (size_t i = 0; i + 1 < a.points.size(); ++i) {
    const auto [rho, phi] = map_step(sys, ref_points()[0].alpha, a.points[i].rho,
                                     a.points[i].phi);
    CHECK(rho == a.points[i + 1].rho);
    CHECK(phi == a.points[i + 1].phi);
  }
  // The cartesian columns come from the stored polar pair. Allow an ulp of
  // slack: the library may evaluate the sin/cos pair as one fused call, which
  // can round the last bit differently from the separate calls made here.
  for (const auto& p : a.points) {
    CHECK(std::abs(p.x - p.rho * std::cos(p.phi)) <= 4e-16 * p.rho);
    CHECK(std::abs(p.y - p.rho * std::sin(p.phi)) <= 4e-16 * p.rho);
  }
}

TEST_CASE("radial outcomes are independent of phase and rotation number") {
  const auto alpha = ref_points()[0].alpha;
  const auto base = iterate_orbit(reference_system(4, 0.05), alpha, 0.17, 0.0, 300);

  const std::pair<double, double> variants[] = {
      {1.0, 0.02}, {2.5, 0.7}, {0.3, 2.0}, {5.9, 3.1}, {4.4, 1.3}};
  for (const auto& [phi1, theta0] : variants) {
    const auto run = iterate_orbit(reference_system(4, theta0), alpha, 0.17, phi1, 300);
    CHECK(run.outcome.kind == base.outcome.kind);
    REQUIRE(run.points.size() == base.points.size());
    for (size_t i = 0; i < run.points.size(); ++i)
      CHECK(run.points[i].rho == base.points[i].rho);
  }
}

TEST_CASE("portraits verify at all four reference points") {
  const auto t = build_transform(reference_system(), 2);
  for (const auto& pt : ref_points()) {
    const auto sys = reference_system(4, pt.theta0);
    ProbePlan plan;
    plan.n_max = pt.trend_steps;
    plan.thresholds.sign_tol.delta = pt.delta_band;
    const auto rep = verify_portrait(sys, t, pt.alpha, plan);
    CHECK(rep.status == PortraitStatus::verified);
    CHECK(rep.classification.label.region == pt.region);
    CHECK(rep.region_census_consistent);
    CHECK(rep.origin.stable == pt.origin_stable);
    for (const auto& p : rep.probes) CHECK(p.verdict != ProbeVerdict::contradicted);
  }
}

TEST_CASE("default probe plans scale with the census") {
  const auto t = build_transform(reference_system(), 2);

  // One unstable circle: hairline probes on both sides plus the far field.
  const auto rep1 = verify_portrait(reference_system(4, 0.05), t, ref_points()[0].alpha);
  CHECK(rep1.probes.size() == 4);

  // No circles: a single small start.
  const auto rep2 = verify_portrait(reference_system(4, 0.03), t, ref_points()[1].alpha);
  REQUIRE(rep2.probes.size() == 1);
  CHECK(rep2.probes[0].rho1 == 1e-3);
  CHECK(rep2.probes[0].expected == OutcomeKind::escape);

  // Two circles: three probes each plus the far field.
  const auto rep4 = verify_portrait(reference_system(4, 0.03), t, ref_points()[3].alpha);
  REQUIRE(rep4.probes.size() == 7);
  const OutcomeKind expected[] = {OutcomeKind::to_circle, OutcomeKind::to_circle,
                                  OutcomeKind::to_circle, OutcomeKind::to_circle,
                                  OutcomeKind::to_circle, OutcomeKind::escape,
                                  OutcomeKind::escape};
  for (size_t i = 0; i < rep4.probes.size(); ++i) CHECK(rep4.probes[i].expected == expected[i]);

  // A semi-stable circle gets one probe on the circle, not hairline pairs.
  ProbePlan plan;
  plan.thresholds.sign_tol.delta = ref_points()[2].delta_band;
  plan.n_max = ref_points()[2].trend_steps;
  const auto rep3 = verify_portrait(reference_system(4, 0.02), t, ref_points()[2].alpha, plan);
  REQUIRE(rep3.probes.size() == 3);
  CHECK(rep3.probes[0].expected == OutcomeKind::to_circle);
  CHECK(rep3.probes[1].expected == OutcomeKind::to_circle);
  CHECK(rep3.probes[2].expected == OutcomeKind::escape);
}

TEST_CASE("starving the probes of steps yields inconclusive, quota permitting") {
  const auto t = build_transform(reference_system(), 2);
  const auto sys = reference_system(4, 0.05);

  // With zero steps no probe can move, so every verdict is unverified.
  ProbePlan plan;
  plan.n_max = 0;
  const auto rep = verify_portrait(sys, t, ref_points()[0].alpha, plan);
  CHECK(rep.status == PortraitStatus::inconclusive);
  REQUIRE(rep.probes.size() == 4);
  for (const auto& p : rep.probes) {
    CHECK(p.verdict == ProbeVerdict::unverified);
    CHECK(p.detail.find("below resolution") != std::string::npos);
  }

  // A quota covering every stuck probe turns the verdict around.
  plan.undecided_quota = 4;
  CHECK(verify_portrait(sys, t, ref_points()[0].alpha, plan).status ==
        PortraitStatus::verified);

  // One step already reveals each probe's drift direction.
  plan.undecided_quota = 0;
  plan.n_max = 1;
  CHECK(verify_portrait(sys, t, ref_points()[0].alpha, plan).status ==
        PortraitStatus::verified);
}

TEST_CASE("caller-chosen probes override the plan") {
  const auto t = build_transform(reference_system(), 2);
  ProbePlan plan;
  plan.starts = {0.5 * testutil::kRadiusInner8};
  const auto rep = verify_portrait(reference_system(4, 0.03), t, ref_points()[3].alpha, plan);
  REQUIRE(rep.probes.size() == 1);
  CHECK(rep.probes[0].observed.kind == OutcomeKind::to_circle);
  CHECK(rep.probes[0].verdict == ProbeVerdict::pass);
  CHECK(rep.status == PortraitStatus::verified);
}

TEST_CASE("outcome names") {
  CHECK(to_string(OutcomeKind::to_origin) == "to_origin");
  CHECK(to_string(OutcomeKind::to_circle) == "to_circle");
  CHECK(to_string(OutcomeKind::escape) == "escape");
  CHECK(to_string(OutcomeKind::undecided) == "undecided");
  CHECK(to_string(PortraitStatus::verified) == "verified");
  CHECK(to_string(PortraitStatus::inconclusive) == "inconclusive");
  CHECK(to_string(PortraitStatus::failed) == "failed");
  CHECK(to_string(ProbeVerdict::pass) == "pass");
  CHECK(to_string(ProbeVerdict::contradicted) == "contradicted");
  CHECK(to_string(ProbeVerdict::unverified) == "unverified");
}
