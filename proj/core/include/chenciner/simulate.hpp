#pragma once

#include <chenciner/classify.hpp>
#include <chenciner/normal_form.hpp>

#include <string>
#include <utility>
#include <vector>

namespace chenciner {

// Detection thresholds for orbit outcomes.
//
// Defaults are sized for the slow dynamics near bifurcation: origin-bound
// orbits at |beta1| ~ 1e-3 need ~1e4 steps to cross origin_eps, and orbits on
// a near-tangential circle drift a few 1e-9 per step, which a 50-step window
// only resolves against circle_eps = 1e-5 relative.
struct Thresholds {
  double origin_eps = 1e-6;        // rho below this is the origin
  double escape_radius = 10.0;     // rho above this escaped
  int window = 50;                 // trailing radii considered for flatness
  double circle_eps = 1e-5;        // relative radius range of a flat window
  double circle_match_tol = 1e-3;  // relative gap between window mean and a census radius
  SignTol sign_tol{};              // passed to the census consulted for labeling
};

enum class OutcomeKind { to_origin, to_circle, escape, undecided };

std::string to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::undecided;
  double radius = 0.0;  // for to_circle: mean radius of the flat window
};

struct OrbitPoint {
  double rho = 0.0, phi = 0.0;
  double x = 0.0, y = 0.0;  // rho*cos(phi), rho*sin(phi)
};

struct OrbitRecord {
  std::pair<double, double> alpha;
  double rho1 = 0.0, phi1 = 0.0;
  // points[0] is the start; replaying map_step over the sequence reproduces
  // it exactly.
  std::vector<OrbitPoint> points;
  int n_steps = 0;  // map applications performed
  Outcome outcome;
  bool left_validity = false;  // a step produced rho' <= 0
};

// Iterates the truncated map at fixed alpha until an outcome triggers or
// n_max steps pass. to_circle additionally requires the flat window to match
// a census radius; when the census is unavailable (degenerate quadratic) a
// flat window alone decides. Deterministic: identical inputs give
// bit-identical records.
OrbitRecord iterate_orbit(const NormalFormSystem& sys, std::pair<double, double> alpha,
                          double rho1, double phi1, int n_max, const Thresholds& thresholds = {});

struct ProbePlan {
  // Empty: derived from the census. One semi-stable circle gets
  // {0.5r, r, 1.5r} (starting on the circle is the only way to observe it;
  // hairline probes just inside drift with the sub-tolerance fold structure).
  // Otherwise each circle r gets {0.5r, 0.99r, 1.01r} plus 1.5 * r_outer, and
  // an empty census gets {1e-3}.
  std::vector<double> starts;
  double phi1 = 0.0;
  int n_max = 20000;
  Thresholds thresholds{};
  int undecided_quota = 0;  // more unverified probes than this -> inconclusive
};

enum class ProbeVerdict { pass, contradicted, unverified };

struct ProbeResult {
  double rho1 = 0.0;
  // Expected flow destination, derived from the sign of
  // q(y) = beta1 + beta2*y + L2*y^2 on the census segment holding the start.
  OutcomeKind expected = OutcomeKind::undecided;
  double expected_radius = 0.0;  // for to_circle
  Outcome observed;
  int n_steps = 0;
  double drift = 0.0;  // rho_final - rho_start; trend witness for undecided runs
  ProbeVerdict verdict = ProbeVerdict::unverified;
  std::string detail;
};

enum class PortraitStatus { verified, inconclusive, failed };

std::string to_string(PortraitStatus s);
std::string to_string(ProbeVerdict v);

struct PortraitReport {
  AlphaClassification classification;
  CircleCensus census;
  OriginStability origin;
  // The census shape (count and stability of circles) matches what the
  // region's phase portrait demands.
  bool region_census_consistent = false;
  std::vector<ProbeResult> probes;
  PortraitStatus status = PortraitStatus::inconclusive;
};

// Classifies alpha, checks the census against the region's expected portrait,
// and launches probe orbits whose observed outcomes (or drift trends, for
// slow undecided runs) are verified against the census flow. Unstable circles
// are verified one-sidedly: probes near them must depart, never converge.
// failed on any contradiction; inconclusive when unverified probes exceed the
// quota.
PortraitReport verify_portrait(const NormalFormSystem& sys, const ParameterTransform& t,
                               std::pair<double, double> alpha, const ProbePlan& plan = {});

}  // namespace chenciner
