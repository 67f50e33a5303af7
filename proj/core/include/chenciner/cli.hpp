#pragma once

namespace chenciner::cli {

// Full command-line surface. Returns the process exit status:
//   0 success, 1 internal error, 2 configuration or usage error,
//   3 genericity failure, 4 verification mismatch.
int run(int argc, const char* const* argv);

}  // namespace chenciner::cli
