#pragma once

#include <stdexcept>
#include <string>

namespace chenciner {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: config files, series literals, CLI arguments. The message
// names the offending field or token. Maps to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// A standing assumption of the analysis is violated at this system or point:
// L0 = 0, the regularity determinant c1*l2 - c2*l1 vanishes, m2 = 0, or the
// quadratic for invariant circles degenerates. Maps to exit code 3.
struct GenericityError : Error {
  using Error::Error;
};

}  // namespace chenciner
