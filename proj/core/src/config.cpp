#include <chenciner/config.hpp>

#include <fstream>
#include <sstream>
#include <utility>

#include <chenciner/errors.hpp>
#include <chenciner/rational.hpp>
#include <chenciner/series.hpp>

#include <json.hpp>

namespace chenciner {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field \"" + field + "\": " + what);
}

Rational rational_field(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return rational_from_string(j.get<std::string>());
    } catch (const ConfigError& e) {
      fail(field, e.what());
    }
  }
  fail(field, "must be an integer or a numeric string");
}

BivariateSeries series_field(const json& j, const std::string& field, int order) {
  if (j.is_string()) {
    try {
      return BivariateSeries::parse(j.get<std::string>(), order);
    } catch (const ConfigError& e) {
      fail(field, e.what());
    }
  }
  if (j.is_array()) {
    std::vector<SeriesTerm> terms;
    for (const auto& rec : j) {
      if (!rec.is_object()) fail(field, "each term must be an object {i, j, num[, den]}");
      if (!rec.contains("i") || !rec.contains("j") || !rec.contains("num"))
        fail(field, "each term needs integer exponents i, j and a numerator num");
      if (!rec["i"].is_number_integer() || !rec["j"].is_number_integer())
        fail(field, "exponents i, j must be integers");
      const int i = rec["i"].get<int>();
      const int jj = rec["j"].get<int>();
      if (i < 0 || jj < 0) fail(field, "exponents must be nonnegative");
      if (i + jj > order) fail(field, "term exceeds the working order");
      Rational c = rational_field(rec["num"], field);
      if (rec.contains("den")) {
        const Rational d = rational_field(rec["den"], field);
        if (d == 0) fail(field, "denominator must be nonzero");
        c /= d;
      }
      terms.push_back({i, jj, std::move(c)});
    }
    try {
      return BivariateSeries::from_terms(order, terms);
    } catch (const ConfigError& e) {
      fail(field, e.what());
    }
  }
  fail(field, "must be a series literal string or an array of term records");
}

double double_field(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "must be a number");
  return j.get<double>();
}

int int_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "must be an integer");
  return j.get<int>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: the document must be a JSON object");

  int order = 4;
  if (doc.contains("order")) {
    order = int_field(doc["order"], "order");
    if (order < 1) fail("order", "must be at least 1");
  }

  double theta0 = 0.05;
  if (doc.contains("theta0")) theta0 = double_field(doc["theta0"], "theta0");

  for (const char* field : {"beta1", "beta2", "l2"})
    if (!doc.contains(field))
      throw ConfigError(std::string("config: missing required field \"") + field + "\"");

  BivariateSeries b1 = series_field(doc["beta1"], "beta1", order);
  BivariateSeries b2 = series_field(doc["beta2"], "beta2", order);
  BivariateSeries l2 = series_field(doc["l2"], "l2", order);

  RunConfig cfg(NormalFormSystem(std::move(b1), std::move(b2), std::move(l2), theta0));
  cfg.order = order;

  if (doc.contains("k")) {
    cfg.k = int_field(doc["k"], "k");
    if (cfg.k < 1 || cfg.k > order) fail("k", "must lie between 1 and the working order");
  }

  if (doc.contains("sign_tol")) {
    const auto& st = doc["sign_tol"];
    if (st.is_number()) {
      // A bare number widens the discriminant band, the one a user tunes in
      // practice; the object form names each band.
      cfg.sign_tol.delta = st.get<double>();
    } else if (st.is_object()) {
      if (st.contains("delta")) cfg.sign_tol.delta = double_field(st["delta"], "sign_tol.delta");
      if (st.contains("beta")) cfg.sign_tol.beta = double_field(st["beta"], "sign_tol.beta");
      if (st.contains("l0")) cfg.sign_tol.l0 = double_field(st["l0"], "sign_tol.l0");
    } else {
      fail("sign_tol", "must be a number or an object with delta/beta/l0");
    }
    if (cfg.sign_tol.delta < 0 || cfg.sign_tol.beta < 0 || cfg.sign_tol.l0 < 0)
      fail("sign_tol", "bands must be nonnegative");
  }

  if (doc.contains("simulate")) {
    const auto& sim = doc["simulate"];
    if (!sim.is_object()) fail("simulate", "must be an object");
    if (sim.contains("n_max")) {
      cfg.n_max = int_field(sim["n_max"], "simulate.n_max");
      if (cfg.n_max < 0) fail("simulate.n_max", "must be nonnegative");
    }
    if (sim.contains("origin_eps")) {
      cfg.thresholds.origin_eps = double_field(sim["origin_eps"], "simulate.origin_eps");
      if (cfg.thresholds.origin_eps <= 0) fail("simulate.origin_eps", "must be positive");
    }
    if (sim.contains("escape_radius")) {
      cfg.thresholds.escape_radius = double_field(sim["escape_radius"], "simulate.escape_radius");
      if (cfg.thresholds.escape_radius <= 0) fail("simulate.escape_radius", "must be positive");
    }
    if (sim.contains("window")) {
      cfg.thresholds.window = int_field(sim["window"], "simulate.window");
      if (cfg.thresholds.window < 2) fail("simulate.window", "must be at least 2");
    }
    if (sim.contains("circle_eps")) {
      cfg.thresholds.circle_eps = double_field(sim["circle_eps"], "simulate.circle_eps");
      if (cfg.thresholds.circle_eps <= 0) fail("simulate.circle_eps", "must be positive");
    }
    if (sim.contains("circle_match_tol")) {
      cfg.thresholds.circle_match_tol =
          double_field(sim["circle_match_tol"], "simulate.circle_match_tol");
      if (cfg.thresholds.circle_match_tol <= 0) fail("simulate.circle_match_tol", "must be positive");
    }
  }

  cfg.thresholds.sign_tol = cfg.sign_tol;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

NormalFormSystem reference_system(int order, double theta0) {
  return NormalFormSystem(BivariateSeries::parse("a1 + a2 + 2*a1^2 + a2^2", order),
                          BivariateSeries::parse("a1 + a2 + 2*a1*a2", order),
                          BivariateSeries::parse("1 + a1 + 2*a2 + a1^2 + a2^3", order), theta0);
}

}  // namespace chenciner
