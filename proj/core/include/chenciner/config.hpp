#pragma once

#include <string>

#include <chenciner/normal_form.hpp>
#include <chenciner/simulate.hpp>

namespace chenciner {

// A full run setup: the system under study plus numeric knobs. Parsed from a
// JSON document; every parse failure names the offending field.
struct RunConfig {
  NormalFormSystem system;
  int order = 4;  // working truncation order for the parameter series
  int k = 2;      // inversion order for the parameter transformation
  SignTol sign_tol;
  Thresholds thresholds;
  int n_max = 20000;

  explicit RunConfig(NormalFormSystem sys) : system(std::move(sys)) {}
};

// Accepted document shape:
//   {
//     "theta0": 0.05,
//     "order": 4,
//     "k": 2,
//     "beta1": "a1 + a2 + 2*a1^2 + a2^2",
//     "beta2": [{"i": 1, "j": 0, "num": 1}, {"i": 0, "j": 1, "num": 1, "den": 1}],
//     "l2": "1 + a1 + 2*a2 + a1^2 + a2^3",
//     "sign_tol": 1e-9,  // bare number = delta band; or {"delta", "beta", "l0"}
//     "simulate": {"n_max": 20000, "origin_eps": 1e-6, "escape_radius": 10,
//                  "window": 50, "circle_eps": 1e-5, "circle_match_tol": 1e-3}
//   }
// The three series are required; each is either a literal in the variables
// a1, a2 or an array of {i, j, num[, den]} records with num/den given as
// integers or as decimal strings, kept exact.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// The worked example system used throughout the test suite and as the CLI
// default when no config file is given.
NormalFormSystem reference_system(int order = 4, double theta0 = 0.05);

}  // namespace chenciner
