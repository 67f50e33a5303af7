#include <chenciner/simulate.hpp>

#include <chenciner/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace chenciner {

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::to_origin: return "to_origin";
    case OutcomeKind::to_circle: return "to_circle";
    case OutcomeKind::escape: return "escape";
    case OutcomeKind::undecided: return "undecided";
  }
  return "?";
}

std::string to_string(PortraitStatus s) {
  switch (s) {
    case PortraitStatus::verified: return "verified";
    case PortraitStatus::inconclusive: return "inconclusive";
    case PortraitStatus::failed: return "failed";
  }
  return "?";
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::pass: return "pass";
    case ProbeVerdict::contradicted: return "contradicted";
    case ProbeVerdict::unverified: return "unverified";
  }
  return "?";
}

OrbitRecord iterate_orbit(const NormalFormSystem& sys, std::pair<double, double> alpha,
                          double rho1, double phi1, int n_max, const Thresholds& th) {
  if (rho1 < 0.0) throw std::invalid_argument("iterate_orbit requires rho1 >= 0");
  if (n_max < 0) throw ConfigError("iterate_orbit: n_max must be nonnegative");

  OrbitRecord rec;
  rec.alpha = alpha;
  rec.rho1 = rho1;
  rec.phi1 = phi1;
  rec.points.reserve(static_cast<size_t>(n_max) + 1);
  const auto push = [&rec](double rho, double phi) {
    rec.points.push_back({rho, phi, rho * std::cos(phi), rho * std::sin(phi)});
  };
  push(rho1, phi1);

  // Census for labeling flat windows. Unavailable exactly when the circle
  // quadratic degenerates; a flat window then decides on its own.
  std::optional<CircleCensus> census;
  try {
    census = invariant_circles(sys, alpha, th.sign_tol);
  } catch (const GenericityError&) {
  }

  double rho = rho1, phi = phi1;
  for (int n = 0; n < n_max; ++n) {
    const auto [rho2, phi2] = map_step(sys, alpha, rho, phi);
    ++rec.n_steps;
    push(rho2, phi2);
    if (rho2 <= 0.0 && rho > 0.0) {
      // The polynomial flipped sign: the orbit left the map's validity region.
      rec.left_validity = true;
      rec.outcome = {OutcomeKind::escape, 0.0};
      return rec;
    }
    if (rho2 > th.escape_radius) {
      rec.outcome = {OutcomeKind::escape, 0.0};
      return rec;
    }
    if (rho2 < th.origin_eps) {
      rec.outcome = {OutcomeKind::to_origin, 0.0};
      return rec;
    }
    rho = rho2;
    phi = phi2;

    if (th.window >= 2 && rec.points.size() >= static_cast<size_t>(th.window)) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo, sum = 0.0;
      for (size_t i = rec.points.size() - th.window; i < rec.points.size(); ++i) {
        const double r = rec.points[i].rho;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        sum += r;
      }
      const double mean = sum / th.window;
      if (mean > 0.0 && hi - lo < th.circle_eps * mean) {
        if (!census) {
          rec.outcome = {OutcomeKind::to_circle, mean};
          return rec;
        }
        for (const auto& c : census->circles) {
          if (std::abs(mean - c.radius) / c.radius < th.circle_match_tol) {
            rec.outcome = {OutcomeKind::to_circle, mean};
            return rec;
          }
        }
        // Flat but matching no circle: a transient plateau, keep iterating.
      }
    }
  }
  rec.outcome = {OutcomeKind::undecided, 0.0};
  return rec;
}

namespace {

std::vector<double> sorted_radii(const CircleCensus& census) {
  std::vector<double> radii;
  for (const auto& c : census.circles) radii.push_back(c.radius);
  std::sort(radii.begin(), radii.end());
  return radii;
}

std::vector<double> default_starts(const CircleCensus& census) {
  if (census.circles.empty()) return {1e-3};
  const bool semi = std::any_of(census.circles.begin(), census.circles.end(), [](const auto& c) {
    return c.stability == Stability::semi_stable;
  });
  const std::vector<double> radii = sorted_radii(census);
  std::vector<double> starts;
  if (semi) {
    // Bracket the tangential circle from well inside and well outside, plus
    // the circle itself; hairline brackets would probe the sub-tolerance fold
    // structure instead of the reported double circle.
    for (double r : radii) {
      starts.push_back(0.5 * r);
      starts.push_back(r);
      starts.push_back(1.5 * r);
    }
  } else {
    for (double r : radii) {
      starts.push_back(0.5 * r);
      starts.push_back(0.99 * r);
      starts.push_back(1.01 * r);
    }
    starts.push_back(1.5 * radii.back());
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-9 * b; }),
               starts.end());
  return starts;
}

// Flow destination for a start in the segment structure cut by the census
// radii: the sign of q(y) = beta1 + beta2*y + L2*y^2 sends the radius toward
// the neighboring circle, the origin, or infinity.
void expected_destination(double rho1, const std::vector<double>& radii, double b1v, double b2v,
                          double l2v, OutcomeKind& kind, double& radius) {
  for (double r : radii) {
    if (std::abs(rho1 - r) <= 1e-12 * r) {
      kind = OutcomeKind::to_circle;
      radius = r;
      return;
    }
  }
  const double y = rho1 * rho1;
  const double q = b1v + b2v * y + l2v * y * y;
  if (q > 0.0) {
    for (double r : radii) {
      if (rho1 < r) {
        kind = OutcomeKind::to_circle;
        radius = r;
        return;
      }
    }
    kind = OutcomeKind::escape;
  } else if (q < 0.0) {
    for (auto it = radii.rbegin(); it != radii.rend(); ++it) {
      if (rho1 > *it) {
        kind = OutcomeKind::to_circle;
        radius = *it;
        return;
      }
    }
    kind = OutcomeKind::to_origin;
  } else {
    kind = OutcomeKind::undecided;
  }
}

bool census_matches_region(int region, const CircleCensus& census) {
  const auto count = census.circles.size();
  const auto n_with = [&](Stability s) {
    return std::count_if(census.circles.begin(), census.circles.end(),
                         [s](const auto& c) { return c.stability == s; });
  };
  switch (region) {
    case 1: return count == 1 && n_with(Stability::unstable) == 1;
    case 2:
    case 4: return count == 0;
    case 3: return count == 1 && n_with(Stability::stable) == 1;
    case 5:
    case 6: return count == 1 && n_with(Stability::semi_stable) == 1;
    case 7:
    case 8: return count == 2 && n_with(Stability::stable) == 1 && n_with(Stability::unstable) == 1;
    default: return true;  // unclassified: no portrait to check against
  }
}

// Per-step rounding perturbs a radius by a few ulps at most; this caps the
// linear accumulation a drift must exceed before its direction is trusted.
constexpr double kTrendNoiseUlps = 16.0;

void judge(ProbeResult& p, const Thresholds& th) {
  std::ostringstream note;
  if (p.expected == OutcomeKind::undecided) {
    p.verdict = ProbeVerdict::unverified;
    p.detail = "start sits on an equilibrium of the radial flow";
    return;
  }
  if (p.observed.kind != OutcomeKind::undecided) {
    if (p.observed.kind != p.expected) {
      p.verdict = ProbeVerdict::contradicted;
      note << "expected " << to_string(p.expected) << ", observed " << to_string(p.observed.kind);
      p.detail = note.str();
      return;
    }
    if (p.expected == OutcomeKind::to_circle &&
        std::abs(p.observed.radius - p.expected_radius) / p.expected_radius >=
            th.circle_match_tol) {
      p.verdict = ProbeVerdict::contradicted;
      note << "converged to radius " << p.observed.radius << " instead of " << p.expected_radius;
      p.detail = note.str();
      return;
    }
    p.verdict = ProbeVerdict::pass;
    p.detail = "observed " + to_string(p.observed.kind);
    return;
  }

  // Undecided run: judge the drift trend. The radial map is monotone between
  // census radii, so even a creeping drift carries its sign reliably; it only
  // has to clear the rounding noise a run of this length can accumulate. A
  // flatness-scaled band would be far too coarse for the fold bottleneck,
  // where orbits move on the order of l2^2*y0^2 per step.
  const double rho_end = p.rho1 + p.drift;
  const double band = kTrendNoiseUlps * (1.0 + p.n_steps) *
                      std::numeric_limits<double>::epsilon() * std::max(p.rho1, rho_end);
  switch (p.expected) {
    case OutcomeKind::to_circle: {
      const double d0 = std::abs(p.rho1 - p.expected_radius);
      const double d1 = std::abs(rho_end - p.expected_radius);
      if (d1 <= th.circle_match_tol * p.expected_radius) {
        p.verdict = ProbeVerdict::pass;
        p.detail = "undecided but ended within match tolerance of the expected circle";
      } else if (d1 <= d0 - band) {
        p.verdict = ProbeVerdict::pass;
        p.detail = "undecided, drifting toward the expected circle";
      } else if (d1 >= d0 + band) {
        p.verdict = ProbeVerdict::contradicted;
        p.detail = "drifting away from the expected circle";
      } else {
        p.verdict = ProbeVerdict::unverified;
        p.detail = "net radial movement below resolution";
      }
      return;
    }
    case OutcomeKind::to_origin:
      if (p.drift <= -band) {
        p.verdict = ProbeVerdict::pass;
        p.detail = "undecided, drifting toward the origin";
      } else if (p.drift >= band) {
        p.verdict = ProbeVerdict::contradicted;
        p.detail = "drifting outward where inward flow was expected";
      } else {
        p.verdict = ProbeVerdict::unverified;
        p.detail = "net radial movement below resolution";
      }
      return;
    case OutcomeKind::escape:
      if (p.drift >= band) {
        p.verdict = ProbeVerdict::pass;
        p.detail = "undecided, drifting outward";
      } else if (p.drift <= -band) {
        p.verdict = ProbeVerdict::contradicted;
        p.detail = "drifting inward where outward flow was expected";
      } else {
        p.verdict = ProbeVerdict::unverified;
        p.detail = "net radial movement below resolution";
      }
      return;
    default:
      p.verdict = ProbeVerdict::unverified;
      return;
  }
}

}  // namespace

PortraitReport verify_portrait(const NormalFormSystem& sys, const ParameterTransform& t,
                               std::pair<double, double> alpha, const ProbePlan& plan) {
  PortraitReport rep;
  rep.classification = classify_alpha_point(sys, t, alpha, plan.thresholds.sign_tol);
  rep.census = invariant_circles(sys, alpha, plan.thresholds.sign_tol);
  rep.origin = origin_stability(sys, alpha, plan.thresholds.sign_tol);
  rep.region_census_consistent = census_matches_region(rep.classification.label.region, rep.census);

  const std::vector<double> starts = plan.starts.empty() ? default_starts(rep.census) : plan.starts;
  const std::vector<double> radii = sorted_radii(rep.census);
  const double b1v = rep.classification.beta1;
  const double b2v = rep.classification.beta2;
  const double l2v = rep.classification.l2;

  int unverified = 0;
  bool contradicted = false;
  for (double rho1 : starts) {
    ProbeResult p;
    p.rho1 = rho1;
    expected_destination(rho1, radii, b1v, b2v, l2v, p.expected, p.expected_radius);
    const OrbitRecord orbit =
        iterate_orbit(sys, alpha, rho1, plan.phi1, plan.n_max, plan.thresholds);
    p.observed = orbit.outcome;
    p.n_steps = orbit.n_steps;
    p.drift = orbit.points.back().rho - rho1;
    judge(p, plan.thresholds);
    contradicted = contradicted || p.verdict == ProbeVerdict::contradicted;
    unverified += p.verdict == ProbeVerdict::unverified ? 1 : 0;
    rep.probes.push_back(std::move(p));
  }

  if (contradicted || !rep.region_census_consistent)
    rep.status = PortraitStatus::failed;
  else if (unverified > plan.undecided_quota)
    rep.status = PortraitStatus::inconclusive;
  else
    rep.status = PortraitStatus::verified;
  return rep;
}

}  // namespace chenciner
