#include <chenciner/classify.hpp>

#include <chenciner/errors.hpp>

#include <cmath>
#include <sstream>

namespace chenciner {

namespace {

constexpr int kAny = 2;  // wildcard: matches -1, 0, +1

struct Row {
  int l0, delta, beta1, beta2, region;
};

// Verbatim transcription of the region table over the sign pattern
// (L0, Delta, beta1, beta2). Patterns without a row are unreachable for small
// parameters or deliberately unspecified; they resolve to kUnclassified.
constexpr Row kRegionTable[] = {
    {-1, -1, -1, kAny, 4},
    {-1, +1, -1, -1, 4},
    {-1, 0, -1, -1, 4},
    {-1, +1, 0, -1, 4},
    {-1, 0, 0, 0, 4},
    {-1, +1, +1, kAny, 3},
    {-1, +1, 0, +1, 3},
    {-1, +1, -1, +1, 7},
    {-1, 0, -1, +1, 5},
    {+1, +1, -1, kAny, 1},
    {+1, +1, 0, -1, 1},
    {+1, -1, +1, kAny, 2},
    {+1, +1, +1, +1, 2},
    {+1, 0, +1, +1, 2},
    {+1, +1, 0, +1, 2},
    {+1, 0, 0, 0, 2},
    {+1, 0, +1, -1, 6},
    {+1, +1, +1, -1, 8},
};

}  // namespace

RegionLabel region_classify(double l0, double delta, double beta1, double beta2,
                            const SignTol& tol) {
  if (std::abs(l0) <= tol.l0) {
    std::ostringstream msg;
    msg << "region classification requires L0 != 0, got " << l0;
    throw GenericityError(msg.str());
  }
  RegionLabel out;
  out.sign_l0 = l0 > 0 ? 1 : -1;
  out.sign_delta = sign_with_tol(delta, tol.delta);
  out.sign_beta1 = sign_with_tol(beta1, tol.beta);
  out.sign_beta2 = sign_with_tol(beta2, tol.beta);
  for (const Row& row : kRegionTable) {
    if (row.l0 == out.sign_l0 && row.delta == out.sign_delta && row.beta1 == out.sign_beta1 &&
        (row.beta2 == kAny || row.beta2 == out.sign_beta2)) {
      out.region = row.region;
      break;
    }
  }
  return out;
}

RegionLabel region_classify(double l0, double delta, double beta1, double beta2, double tol) {
  return region_classify(l0, delta, beta1, beta2, SignTol{tol, tol, tol});
}

std::string to_string(Diagram d) {
  switch (d) {
    case Diagram::D1: return "D1";
    case Diagram::D2: return "D2";
    case Diagram::D3: return "D3";
    case Diagram::D4: return "D4";
  }
  return "?";
}

DiagramLabel diagram_select(double l0, double m2, int c1d1_sign) {
  if (l0 == 0.0) throw GenericityError("diagram selection requires L0 != 0");
  if (m2 == 0.0) throw GenericityError("diagram selection requires m2 != 0");
  if (c1d1_sign == 0) throw GenericityError("diagram selection requires c1*d1 != 0");
  DiagramLabel out;
  out.c1d1_sign = c1d1_sign > 0 ? 1 : -1;
  if (l0 < 0)
    out.diagram = m2 < 0 ? Diagram::D1 : Diagram::D2;
  else
    out.diagram = m2 < 0 ? Diagram::D3 : Diagram::D4;
  return out;
}

AlphaClassification classify_alpha_point(const NormalFormSystem& sys, const ParameterTransform& t,
                                         std::pair<double, double> alpha, const SignTol& tol) {
  AlphaClassification out;
  out.alpha = alpha;
  out.beta1 = sys.beta1().eval(alpha.first, alpha.second);
  out.beta2 = sys.beta2().eval(alpha.first, alpha.second);
  out.l2 = sys.l2().eval(alpha.first, alpha.second);
  // Pointwise discriminant: the component polynomials are exact, so no
  // truncation loss enters here.
  out.delta = out.beta2 * out.beta2 - 4.0 * out.beta1 * out.l2;
  const double l0 = to_double(t.l0);
  out.mu = {out.delta, out.beta2 + out.l2 - l0};
  out.hat_beta1 = t.hat_beta1.eval(out.mu.first, out.mu.second);
  out.hat_beta2 = t.hat_beta2.eval(out.mu.first, out.mu.second);
  out.label = region_classify(l0, out.delta, out.beta1, out.beta2, tol);
  return out;
}

DiagramRaster diagram_raster(const ParameterTransform& t, const MuWindow& window, int nx, int ny,
                             const SignTol& tol) {
  if (nx < 1 || ny < 1) throw ConfigError("raster resolution must be at least 1x1");

  DiagramRaster out;
  out.window = window;
  out.nx = nx;
  out.ny = ny;
  // Curves first: a degenerate m2 aborts before any classification work.
  out.curves = boundary_curves(t, {window.mu2_min, window.mu2_max}, std::max(nx, 65));

  const auto lin = [](double lo, double hi, int n, int i) {
    if (n == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  const double l0 = to_double(t.l0);
  out.cells.reserve(static_cast<size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    const double mu1 = lin(window.mu1_min, window.mu1_max, ny, iy);
    for (int ix = 0; ix < nx; ++ix) {
      const double mu2 = lin(window.mu2_min, window.mu2_max, nx, ix);
      const double hb1 = t.hat_beta1.eval(mu1, mu2);
      const double hb2 = t.hat_beta2.eval(mu1, mu2);
      // Delta in mu coordinates is mu1 itself (discriminant identity).
      RasterCell cell{mu1, mu2, region_classify(l0, mu1, hb1, hb2, tol).region};
      out.cells.push_back(cell);
    }
  }
  return out;
}

}  // namespace chenciner
