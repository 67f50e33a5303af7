#include <chenciner/cli.hpp>

#include <chenciner/classify.hpp>
#include <chenciner/config.hpp>
#include <chenciner/emit.hpp>
#include <chenciner/errors.hpp>
#include <chenciner/rational.hpp>
#include <chenciner/simulate.hpp>
#include <chenciner/transform.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace chenciner::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  int order = 4;
  bool order_set = false;
  double theta0 = 0.05;
  bool theta0_set = false;
  double sign_tol = 0.0;
  bool sign_tol_set = false;
  std::string out_dir;
  bool out_set = false;
  std::vector<std::string> formats;

  std::string alpha_text;
  std::string start_text;
  std::string window_text;
  std::string resolution_text = "101,101";
  std::string probes_text;
  int steps = 0;
  bool steps_set = false;
  int k = 0;
  bool k_set = false;
  int quota = 0;
};

std::vector<double> parse_doubles(const std::string& text, const char* flag, size_t lo,
                                  size_t hi) {
  std::vector<double> out;
  size_t pos = 0;
  while (true) {
    const size_t comma = text.find(',', pos);
    std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
      throw ConfigError(std::string(flag) + ": cannot parse \"" + tok + "\" as a number");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() < lo || out.size() > hi)
    throw ConfigError(std::string(flag) + ": expected " + std::to_string(lo) +
                      (lo == hi ? "" : " to " + std::to_string(hi)) + " comma-separated values");
  return out;
}

std::vector<int> parse_ints(const std::string& text, const char* flag, size_t lo, size_t hi) {
  const std::vector<double> vals = parse_doubles(text, flag, lo, hi);
  std::vector<int> out;
  for (double v : vals) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw ConfigError(std::string(flag) + ": expected integers");
    out.push_back(i);
  }
  return out;
}

// Scientific notation with 5 significant digits and no exponent padding
// (4.8579e-3, not 4.8579e-03); used for the human-readable classify line.
std::string sci5(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  const std::string s = buf;
  const size_t e = s.find('e');
  return s.substr(0, e) + "e" + std::to_string(std::atoi(s.c_str() + e + 1));
}

char sign_char(int s) { return s > 0 ? '+' : s < 0 ? '-' : '0'; }

void emit_file(const std::string& dir, const std::string& name, const std::string& content) {
  const fs::path d = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(d);
  const fs::path p = d / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << content;
  std::cout << "wrote " << p.string() << "\n";
}

bool wants(const Options& o, const char* fmt, std::initializer_list<const char*> defaults) {
  if (o.formats.empty()) {
    for (const char* d : defaults)
      if (std::string(d) == fmt) return true;
    return false;
  }
  return std::find(o.formats.begin(), o.formats.end(), fmt) != o.formats.end();
}

RunConfig make_run_config(const Options& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig(reference_system(o.order, o.theta0))
                                        : load_config(o.config_path);
  if (!o.config_path.empty()) {
    if (o.order_set) {
      cfg.system = NormalFormSystem(cfg.system.beta1().truncated(o.order),
                                    cfg.system.beta2().truncated(o.order),
                                    cfg.system.l2().truncated(o.order), cfg.system.theta0());
      cfg.order = o.order;
      cfg.k = std::min(cfg.k, cfg.order);
    }
    if (o.theta0_set)
      cfg.system =
          NormalFormSystem(cfg.system.beta1(), cfg.system.beta2(), cfg.system.l2(), o.theta0);
  } else {
    cfg.order = o.order;
  }
  if (o.sign_tol_set) cfg.sign_tol.delta = o.sign_tol;
  cfg.thresholds.sign_tol = cfg.sign_tol;
  return cfg;
}

int cmd_validate(const RunConfig& cfg, const Options& o) {
  const ValidationReport r = validate(cfg.system);
  const std::string doc = json_validation(r, cfg.system.theta0());
  if (o.out_set)
    emit_file(o.out_dir, "validate.json", doc);
  else
    std::cout << doc << "\n";
  if (!r.chenciner_ok) {
    std::cerr << "error: bifurcation-point condition fails: beta1(0) = 0, beta2(0) = 0 and "
                 "L0 != 0 are required\n";
    return 3;
  }
  if (!r.new_regular) {
    std::cerr << "error: regularity condition c1*l2 - c2*l1 != 0 fails\n";
    return 3;
  }
  return 0;
}

int cmd_transform(const RunConfig& cfg, const Options& o) {
  const int k = o.k_set ? o.k : cfg.k;
  const ParameterTransform t = build_transform(cfg.system, k);
  const std::string doc = json_transform(t);
  if (o.out_set)
    emit_file(o.out_dir, "transform.json", doc);
  else
    std::cout << doc << "\n";
  return 0;
}

int cmd_classify(const RunConfig& cfg, const Options& o) {
  const std::vector<double> a = parse_doubles(o.alpha_text, "--alpha", 2, 2);
  const ParameterTransform t = build_transform(cfg.system, cfg.k);
  const AlphaClassification c = classify_alpha_point(cfg.system, t, {a[0], a[1]}, cfg.sign_tol);
  std::cout << "mu=(" << sci5(c.mu.first) << ", " << sci5(c.mu.second) << ") region="
            << c.label.region << "\n";
  std::cout << "signs: L0=" << sign_char(c.label.sign_l0) << " delta="
            << sign_char(c.label.sign_delta) << " beta1=" << sign_char(c.label.sign_beta1)
            << " beta2=" << sign_char(c.label.sign_beta2) << "\n";
  if (o.out_set)
    emit_file(o.out_dir, "classify.json", json_classification(c));
  else if (wants(o, "json", {}))
    std::cout << json_classification(c) << "\n";
  return 0;
}

int cmd_diagram(const RunConfig& cfg, const Options& o) {
  MuWindow window;
  if (!o.window_text.empty()) {
    const std::vector<double> w = parse_doubles(o.window_text, "--window", 4, 4);
    window = {w[0], w[1], w[2], w[3]};
    if (!(window.mu2_min < window.mu2_max) || !(window.mu1_min < window.mu1_max))
      throw ConfigError("--window: expected mu2_min,mu2_max,mu1_min,mu1_max with min < max");
  }
  const std::vector<int> res = parse_ints(o.resolution_text, "--resolution", 2, 2);
  if (res[0] < 1 || res[1] < 1) throw ConfigError("--resolution: counts must be positive");

  const ParameterTransform t = build_transform(cfg.system, cfg.k);
  const DiagramRaster raster = diagram_raster(t, window, res[0], res[1], cfg.sign_tol);
  const DiagramLabel label = diagram_select(to_double(t.l0), to_double(t.m2),
                                            sign_of(t.c1) * sign_of(t.d1));

  std::set<int> present;
  for (const auto& cell : raster.cells) present.insert(cell.region);
  std::cout << "diagram " << to_string(label.diagram) << " (m2 = " << fraction_string(t.m2)
            << ", k1 = " << fraction_string(t.k1) << "), " << res[0] << "x" << res[1]
            << " cells, regions present:";
  for (int r : present) std::cout << ' ' << r;
  std::cout << "\n";

  if (wants(o, "csv", {"csv", "svg"})) {
    emit_file(o.out_dir, "diagram_regions.csv", csv_region_grid(raster));
    emit_file(o.out_dir, "diagram_curves.csv", csv_curves(raster.curves));
  }
  if (wants(o, "svg", {"csv", "svg"})) emit_file(o.out_dir, "diagram.svg", svg_diagram(raster));
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const Options& o) {
  const std::vector<double> a = parse_doubles(o.alpha_text, "--alpha", 2, 2);
  double rho1 = 1e-3, phi1 = 0.0;
  if (!o.start_text.empty()) {
    const std::vector<double> s = parse_doubles(o.start_text, "--start", 1, 2);
    rho1 = s[0];
    if (s.size() == 2) phi1 = s[1];
  }
  if (rho1 < 0) throw ConfigError("--start: rho must be nonnegative");
  const int n_max = o.steps_set ? o.steps : cfg.n_max;
  if (n_max < 0) throw ConfigError("--steps: must be nonnegative");

  const OrbitRecord orbit = iterate_orbit(cfg.system, {a[0], a[1]}, rho1, phi1, n_max,
                                          cfg.thresholds);
  std::cout << "outcome: " << to_string(orbit.outcome.kind);
  if (orbit.outcome.kind == OutcomeKind::to_circle)
    std::cout << " (radius " << format_float(orbit.outcome.radius) << ")";
  std::cout << " after " << orbit.n_steps << " steps";
  if (orbit.left_validity) std::cout << " (left the map's validity region)";
  std::cout << "\n";

  if (wants(o, "csv", {"csv", "svg"})) emit_file(o.out_dir, "orbit.csv", csv_orbit(orbit));
  if (wants(o, "svg", {"csv", "svg"})) emit_file(o.out_dir, "orbit.svg", svg_orbit(orbit));
  if (wants(o, "json", {"csv", "svg"})) emit_file(o.out_dir, "orbit.json", json_orbit(orbit));
  return 0;
}

int cmd_verify(const RunConfig& cfg, const Options& o) {
  const std::vector<double> a = parse_doubles(o.alpha_text, "--alpha", 2, 2);
  const ParameterTransform t = build_transform(cfg.system, cfg.k);
  ProbePlan plan;
  if (!o.probes_text.empty()) {
    for (double r : parse_doubles(o.probes_text, "--probes", 1, 64)) {
      if (r <= 0) throw ConfigError("--probes: radii must be positive");
      plan.starts.push_back(r);
    }
  }
  plan.n_max = o.steps_set ? o.steps : cfg.n_max;
  plan.thresholds = cfg.thresholds;
  plan.undecided_quota = o.quota;

  const PortraitReport rep = verify_portrait(cfg.system, t, {a[0], a[1]}, plan);
  int unverified = 0;
  for (const auto& p : rep.probes)
    if (p.verdict == ProbeVerdict::unverified) ++unverified;
  std::cout << "status: " << to_string(rep.status) << " (region " << rep.classification.label.region
            << ", " << rep.probes.size() << " probes, " << unverified << " unverified)\n";
  const std::string doc = json_portrait(rep);
  if (o.out_set)
    emit_file(o.out_dir, "portrait.json", doc);
  else
    std::cout << doc << "\n";
  return rep.status == PortraitStatus::verified ? 0 : 4;
}

// Built-in regression table: the worked example system at four parameter
// points with known classifications, plus the orbit starts and step counts
// that exercise each outcome.
struct CaseSpec {
  const char* label;
  double a1, a2;
  double theta0;
  int trend_steps;
  double mu1_expect, mu1_tol;  // mu1_tol < 0: assert |mu1| < 1e-5 instead
  double mu2_expect, mu2_tol;
  int region;
  double delta_band;
  bool origin_stable;
};

constexpr CaseSpec kCases[] = {
    {"alpha=(-0.017,0.015)", -0.017, 0.015, 0.05, 800, 4.8579e-3, 1e-7, 1.0782e-2, 1e-6, 1, 1e-9,
     true},
    {"alpha=(-0.015,0.015)", -0.015, 0.015, 0.03, 700, -2.7e-3, 1e-4, 1.4778e-2, 1e-6, 2, 1e-9,
     false},
    {"alpha=(-0.015719,0.015)", -0.015719, 0.015, 0.02, 1000, 0.0, -1.0, 1.3341e-2, 1e-6, 6, 1e-5,
     false},
    {"alpha=(-0.5,0.05)", -0.5, 0.05, 0.03, 400, 0.0714, 1e-4, -0.6498, 1e-4, 8, 1e-9, false},
};

int cmd_reproduce() {
  int passed = 0, failed = 0;
  const auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS  " : "FAIL  ") << name;
    if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    (ok ? passed : failed) += 1;
  };
  const auto near = [](double v, double expect, double tol) {
    return std::abs(v - expect) <= tol;
  };
  const auto rel_near = [](double v, double expect, double tol) {
    return std::abs(v - expect) <= tol * std::abs(expect);
  };

  const NormalFormSystem sys = reference_system();

  {
    const ValidationReport r = validate(sys);
    check("validate: bifurcation point, degeneracy and regularity flags",
          r.chenciner_ok && r.degenerate && r.new_regular && r.c_nonzero && r.d_nonzero);
    check("validate: linear data (L0,c1,c2,d1,d2,l1,l2) = (1,1,1,1,1,1,2)",
          r.l0 == 1 && r.c1 == 1 && r.c2 == 1 && r.d1 == 1 && r.d2 == 1 && r.l1 == 1 &&
              r.l2 == 2);
  }

  {
    const auto [b1, b2, l2] = from_complex_data(1.001, {-0.002, 0.5}, {0.003, 0.25});
    const double l2_expect = (0.5 * 0.5 + 2.0 * 1.001 * 0.003) / (2.0 * 1.001);
    check("complex normal-form data conversion",
          near(b1, 0.001, 1e-15) && near(b2, -0.002, 1e-15) && near(l2, l2_expect, 1e-15));
  }

  {
    const SeriesPair fwd = build_forward(sys);
    check("forward series: mu2 linear part (d1+l1, d2+l2) = (2, 3)",
          fwd.second.coeff(1, 0) == 2 && fwd.second.coeff(0, 1) == 3);
  }

  const ParameterTransform t = build_transform(sys, 2);
  {
    const BivariateSeries& a1s = t.inverse.first;
    const BivariateSeries& a2s = t.inverse.second;
    check("inverse linear part: alpha1 = -(3/4)mu1 - mu2, alpha2 = (1/2)mu1 + mu2",
          a1s.coeff(1, 0) == Rational(-3, 4) && a1s.coeff(0, 1) == -1 &&
              a2s.coeff(1, 0) == Rational(1, 2) && a2s.coeff(0, 1) == 1);
    check("inverse quadratic part: exact rational coefficients",
          a1s.coeff(2, 0) == Rational(-261, 64) && a1s.coeff(1, 1) == Rational(-49, 4) &&
              a1s.coeff(0, 2) == -10 && a2s.coeff(2, 0) == Rational(89, 32) &&
              a2s.coeff(1, 1) == Rational(17, 2) && a2s.coeff(0, 2) == 7);
    check("round trip: forward(inverse) = identity through degree 2", t.roundtrip_exact);
    check("m2 from the hat series equals -5", t.m2 == -5);
    check("m2 closed form equals -5", m2_closed_form(sys) == -5);
    check("k1 = 4*L0*(c1/d1)*m2 equals -20", t.k1_defined && t.k1 == -20);
    check("hat L2 leading terms: mu2 -> 1, mu1 -> 1/4, mu2^2 -> 5",
          t.hat_l2.coeff(0, 1) == 1 && t.hat_l2.coeff(1, 0) == Rational(1, 4) &&
              t.hat_l2.coeff(0, 2) == 5);
    check("hat beta2 leading terms: mu1 -> -1/4, mu2 -> 0, mu2^2 -> -5",
          t.hat_beta2.coeff(1, 0) == Rational(-1, 4) && t.hat_beta2.coeff(0, 1) == 0 &&
              t.hat_beta2.coeff(0, 2) == -5);
    check("hat beta1: mu1 -> -1/4, pure mu2 zero through mu2^3, mu2^4 -> 25/4",
          t.hat_beta1.coeff(1, 0) == Rational(-1, 4) && t.hat_beta1.coeff(0, 1) == 0 &&
              t.hat_beta1.coeff(0, 2) == 0 && t.hat_beta1.coeff(0, 3) == 0 &&
              t.hat_beta1.coeff(0, 4) == Rational(25, 4));
    check("discriminant identity: hat_beta2^2 - 4*hat_beta1*hat_l2 = mu1 exactly",
          t.delta_identity_exact);
  }

  {
    const DiagramLabel d = diagram_select(to_double(t.l0), to_double(t.m2),
                                          sign_of(t.c1) * sign_of(t.d1));
    check("diagram selection: L0 > 0, m2 < 0 -> D3", d.diagram == Diagram::D3);
    const BoundaryCurves bc = boundary_curves(t, {-0.1, 0.1}, 41);
    check("boundary curves: B1 in the upper half plane, B2 below (k1 = -20)",
          bc.b1_in_upper_half && bc.b2_half_plane == -1 && !bc.b2_above_b1_near_origin &&
              near(bc.k1, -20.0, 1e-12));
  }

  {
    const RegionLabel r = region_classify(1.0, 1e-3, -1e-3, -1e-3, SignTol{});
    check("region table: pattern (+,+,-,any) -> region 1", r.region == 1);
  }

  {
    const DiagramRaster raster = diagram_raster(t, MuWindow{}, 41, 41, SignTol{});
    std::set<int> present;
    for (const auto& cell : raster.cells) present.insert(cell.region);
    check("diagram raster over the default window shows regions 1, 2, 6, 8",
          present.count(1) && present.count(2) && present.count(6) && present.count(8));
  }

  {
    RunConfig cfg = parse_config(R"({
      "theta0": 0.05,
      "beta1": "a1 + a2 + 2*a1^2 + a2^2",
      "beta2": [{"i":1,"j":0,"num":1},{"i":0,"j":1,"num":1},{"i":1,"j":1,"num":2}],
      "l2": "1 + a1 + 2*a2 + a1^2 + a2^3"
    })");
    check("config parsing: literal and record series forms agree with the built-in system",
          cfg.system.beta2() == sys.beta2() && cfg.system.beta1() == sys.beta1() &&
              cfg.system.l2() == sys.l2());
  }

  for (const CaseSpec& cs : kCases) {
    const std::string at = std::string(" at ") + cs.label;
    const NormalFormSystem sys_c = reference_system(4, cs.theta0);
    SignTol tol;
    tol.delta = cs.delta_band;

    const AlphaClassification c = classify_alpha_point(sys_c, t, {cs.a1, cs.a2}, tol);
    const bool mu1_ok = cs.mu1_tol < 0 ? std::abs(c.mu.first) < 1e-5
                                       : near(c.mu.first, cs.mu1_expect, cs.mu1_tol);
    check("mu values" + at, mu1_ok && near(c.mu.second, cs.mu2_expect, cs.mu2_tol),
          "mu=(" + format_float(c.mu.first) + "," + format_float(c.mu.second) + ")");
    check("region " + std::to_string(cs.region) + at, c.label.region == cs.region,
          "got region " + std::to_string(c.label.region));

    const OriginStability origin = origin_stability(sys_c, {cs.a1, cs.a2}, tol);
    check(std::string("origin ") + (cs.origin_stable ? "stable" : "unstable") + at,
          origin.stable == cs.origin_stable);

    ProbePlan plan;
    plan.thresholds.sign_tol = tol;
    plan.undecided_quota = 0;
    const PortraitReport rep = verify_portrait(sys_c, t, {cs.a1, cs.a2}, plan);
    check("portrait verified" + at, rep.status == PortraitStatus::verified,
          "status " + to_string(rep.status));
  }

  {
    // Census details per point.
    const NormalFormSystem s1 = reference_system(4, 0.05);
    const CircleCensus c1 = invariant_circles(s1, {-0.017, 0.015}, SignTol{});
    check("census at alpha=(-0.017,0.015): one unstable circle of radius 0.18876",
          c1.circles.size() == 1 && c1.circles[0].stability == Stability::unstable &&
              rel_near(c1.circles[0].radius, 0.18876, 1e-3));

    const CircleCensus c2 = invariant_circles(s1, {-0.015, 0.015}, SignTol{});
    check("census at alpha=(-0.015,0.015): no circles", c2.circles.empty());

    SignTol tol3;
    tol3.delta = 1e-5;
    const CircleCensus c3 = invariant_circles(s1, {-0.015719, 0.015}, tol3);
    check("census at alpha=(-0.015719,0.015): tangential semi-stable circle of radius 0.0242",
          c3.collapsed && c3.circles.size() == 1 &&
              c3.circles[0].stability == Stability::semi_stable &&
              c3.circles[0].side == SemiStableSide::inner_stable_outer_unstable &&
              rel_near(c3.circles[0].radius, 0.0242, 1e-3));

    const CircleCensus c4 = invariant_circles(s1, {-0.5, 0.05}, SignTol{});
    check("census at alpha=(-0.5,0.05): unstable 0.6718 outside stable 0.3699",
          c4.circles.size() == 2 && c4.circles[0].stability == Stability::unstable &&
              rel_near(c4.circles[0].radius, 0.6718, 1e-3) &&
              c4.circles[1].stability == Stability::stable &&
              rel_near(c4.circles[1].radius, 0.3699, 1e-3) &&
              c4.circles[1].y < c4.circles[0].y);

    const auto [rho2, phi2] = map_step(s1, {-0.017, 0.015}, 0.18876, 0.0);
    check("map_step: rho = 0.18876 is fixed to within 1e-4", std::abs(rho2 - 0.18876) <= 1e-4);
  }

  {
    // Headline orbits, using each case's trend step budget and the
    // detection default for the outcome.
    const NormalFormSystem s1 = reference_system(4, 0.05);
    const OrbitRecord trend1 = iterate_orbit(s1, {-0.017, 0.015}, 0.17, 0.0, 800);
    check("orbit from rho=0.17 contracts over 800 steps",
          trend1.outcome.kind == OutcomeKind::to_origin ||
              trend1.points.back().rho < 0.95 * 0.17);
    const OrbitRecord run1 = iterate_orbit(s1, {-0.017, 0.015}, 0.17, 0.0, 20000);
    check("orbit from rho=0.17 reaches the origin", run1.outcome.kind == OutcomeKind::to_origin);
    const OrbitRecord run1b = iterate_orbit(s1, {-0.017, 0.015}, 0.195, 0.0, 20000);
    check("orbit from rho=0.195 escapes", run1b.outcome.kind == OutcomeKind::escape);
    const OrbitRecord run1c = iterate_orbit(s1, {-0.017, 0.015}, 0.18876, 0.0, 400);
    check("orbit from rho=0.18876 lands on the circle within 400 steps",
          run1c.outcome.kind == OutcomeKind::to_circle &&
              rel_near(run1c.outcome.radius, 0.18876, 1e-3));

    const NormalFormSystem s2 = reference_system(4, 0.03);
    const OrbitRecord trend2 = iterate_orbit(s2, {-0.015, 0.015}, 0.001, 0.0, 700);
    check("orbit from rho=0.001 expands over 700 steps",
          trend2.outcome.kind == OutcomeKind::escape ||
              trend2.points.back().rho > 1.05 * 0.001);
    const OrbitRecord run2 = iterate_orbit(s2, {-0.015, 0.015}, 0.001, 0.0, 20000);
    check("orbit from rho=0.001 escapes", run2.outcome.kind == OutcomeKind::escape);
  }

  std::cout << passed << "/" << (passed + failed) << " checks passed\n";
  return failed == 0 ? 0 : 4;
}

int run_impl(int argc, const char* const* argv) {
  CLI::App app{"degenerate Chenciner bifurcation toolkit"};
  app.require_subcommand(1);

  Options o;
  auto* opt_config = app.add_option("--config", o.config_path,
                                    "JSON run configuration (default: built-in example system)");
  auto* opt_order = app.add_option("--order", o.order, "working series order (default 4)");
  auto* opt_theta0 = app.add_option("--theta0", o.theta0, "rotation angle, 0 < theta0 < pi");
  auto* opt_tol =
      app.add_option("--sign-tol", o.sign_tol, "dead band for the discriminant sign (default 1e-9)");
  auto* opt_out = app.add_option("--out", o.out_dir, "directory for artifacts");
  app.add_option("--format", o.formats, "artifact formats")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->delimiter(',');

  auto* sc_validate =
      app.add_subcommand("validate", "report the bifurcation-point and genericity conditions");
  auto* sc_transform =
      app.add_subcommand("transform", "build the parameter change mu(alpha) and its inverse");
  sc_transform->add_option("--k", o.k, "inversion order (default from config, 2)");
  auto* sc_classify = app.add_subcommand("classify", "classify one parameter point");
  sc_classify->add_option("--alpha", o.alpha_text, "parameter point a1,a2")->required();
  auto* sc_diagram =
      app.add_subcommand("diagram", "rasterize the bifurcation diagram in the mu plane");
  sc_diagram->add_option("--window", o.window_text, "mu2_min,mu2_max,mu1_min,mu1_max");
  sc_diagram->add_option("--resolution", o.resolution_text, "nx,ny (default 101,101)");
  auto* sc_simulate = app.add_subcommand("simulate", "iterate one orbit and detect its outcome");
  sc_simulate->add_option("--alpha", o.alpha_text, "parameter point a1,a2")->required();
  sc_simulate->add_option("--start", o.start_text, "initial rho[,phi] (default 1e-3,0)");
  auto* opt_steps_sim = sc_simulate->add_option("--steps", o.steps, "maximum iterations");
  auto* sc_verify =
      app.add_subcommand("verify", "check probe orbits against the classified phase portrait");
  sc_verify->add_option("--alpha", o.alpha_text, "parameter point a1,a2")->required();
  sc_verify->add_option("--probes", o.probes_text, "starting radii r1,r2,...");
  sc_verify->add_option("--quota", o.quota, "tolerated unverified probes (default 0)");
  auto* opt_steps_ver = sc_verify->add_option("--steps", o.steps, "maximum iterations per probe");
  auto* sc_reproduce = app.add_subcommand(
      "reproduce-paper", "run the built-in example through every stage and check known values");

  for (CLI::App* sc : {sc_validate, sc_transform, sc_classify, sc_diagram, sc_simulate, sc_verify,
                       sc_reproduce})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  o.order_set = opt_order->count() > 0;
  o.theta0_set = opt_theta0->count() > 0;
  o.sign_tol_set = opt_tol->count() > 0;
  o.out_set = opt_out->count() > 0;
  o.k_set = sc_transform->count("--k") > 0;
  o.steps_set = opt_steps_sim->count() > 0 || opt_steps_ver->count() > 0;
  if (o.order_set && (o.order < 1 || o.order > 64))
    throw ConfigError("--order: must lie between 1 and 64");
  if (o.sign_tol_set && o.sign_tol < 0) throw ConfigError("--sign-tol: must be nonnegative");
  (void)opt_config;

  if (app.got_subcommand(sc_reproduce)) return cmd_reproduce();

  const RunConfig cfg = make_run_config(o);
  if (app.got_subcommand(sc_validate)) return cmd_validate(cfg, o);
  if (app.got_subcommand(sc_transform)) return cmd_transform(cfg, o);
  if (app.got_subcommand(sc_classify)) return cmd_classify(cfg, o);
  if (app.got_subcommand(sc_diagram)) return cmd_diagram(cfg, o);
  if (app.got_subcommand(sc_simulate)) return cmd_simulate(cfg, o);
  if (app.got_subcommand(sc_verify)) return cmd_verify(cfg, o);
  return 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
  try {
    return run_impl(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GenericityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace chenciner::cli
