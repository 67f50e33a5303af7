#pragma once

#include <chenciner/normal_form.hpp>
#include <chenciner/transform.hpp>

#include <string>
#include <utility>
#include <vector>

namespace chenciner {

inline constexpr int kUnclassified = 0;

// A sign pattern (sgn L0, sgn Delta, sgn beta1, sgn beta2) resolved against
// the region table. region 0 means the pattern has no row: the table is
// deliberately partial and unlisted patterns are never guessed.
struct RegionLabel {
  int region = kUnclassified;  // 1..8, or 0
  int sign_l0 = 0;
  int sign_delta = 0;
  int sign_beta1 = 0;
  int sign_beta2 = 0;
  bool classified() const { return region != kUnclassified; }
};

// Values within the dead band count as zero. The single-tol overload applies
// one band to all four inputs (matching raw table lookups); the SignTol
// overload keeps per-quantity bands so a wide discriminant band does not
// swallow a much smaller beta1. Throws GenericityError when |l0| <= band.
RegionLabel region_classify(double l0, double delta, double beta1, double beta2, double tol);
RegionLabel region_classify(double l0, double delta, double beta1, double beta2,
                            const SignTol& tol);

enum class Diagram { D1, D2, D3, D4 };

std::string to_string(Diagram d);

struct DiagramLabel {
  Diagram diagram = Diagram::D1;
  // Recorded because it moves B2 within the diagram; it does not change which
  // diagram applies.
  int c1d1_sign = 0;
};

// L0 < 0: m2 < 0 -> D1, m2 > 0 -> D2. L0 > 0: m2 < 0 -> D3, m2 > 0 -> D4.
// Throws GenericityError when l0, m2 or c1d1_sign is zero.
DiagramLabel diagram_select(double l0, double m2, int c1d1_sign);

struct AlphaClassification {
  std::pair<double, double> alpha;
  std::pair<double, double> mu;  // mu1 = Delta(alpha), mu2 = beta2 + L2 - L0
  // alpha-space values behind the signs; this route is authoritative (the
  // truncated hat series drift as |mu| grows).
  double beta1 = 0.0, beta2 = 0.0, l2 = 0.0, delta = 0.0;
  double hat_beta1 = 0.0, hat_beta2 = 0.0;  // advisory, from the hat series
  RegionLabel label;
};

// Evaluates the component series at alpha (mu1 combined pointwise, keeping
// the degree the truncated product series would drop) and classifies from the
// alpha-space signs. Hat values are reported for comparison only.
AlphaClassification classify_alpha_point(const NormalFormSystem& sys,
                                         const ParameterTransform& t,
                                         std::pair<double, double> alpha,
                                         const SignTol& tol = {});

struct MuWindow {
  double mu2_min = -0.1, mu2_max = 0.1;
  double mu1_min = -0.01, mu1_max = 0.01;
};

struct RasterCell {
  double mu1 = 0.0, mu2 = 0.0;
  int region = kUnclassified;
};

struct DiagramRaster {
  MuWindow window;
  int nx = 0, ny = 0;  // mu2 and mu1 sample counts
  // Row-major: mu1 from min to max outer, mu2 from min to max inner.
  std::vector<RasterCell> cells;
  BoundaryCurves curves;
};

// Classifies a grid through the truncated hat series (Delta is mu1 itself by
// the discriminant identity). A single sample along an axis lands on the
// window midpoint. Requires m2 != 0 (for the overlaid curves).
DiagramRaster diagram_raster(const ParameterTransform& t, const MuWindow& window, int nx, int ny,
                             const SignTol& tol = {});

}  // namespace chenciner
