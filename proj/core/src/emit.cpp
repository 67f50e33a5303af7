#include <chenciner/emit.hpp>

#include <chenciner/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifndef CHENCINER_VERSION
#define CHENCINER_VERSION "dev"
#endif

namespace chenciner {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);  // +0.0 drops the sign of -0
  return buf;
}

namespace {

std::string esc(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

const char* bstr(bool b) { return b ? "true" : "false"; }

void write_series(std::ostream& os, const BivariateSeries& s) {
  os << '[';
  bool first = true;
  for (const auto& [ij, c] : s.terms()) {
    if (!first) os << ',';
    first = false;
    os << "{\"i\":" << ij.first << ",\"j\":" << ij.second << ",\"coeff\":\"" << fraction_string(c)
       << "\"}";
  }
  os << ']';
}

void write_census_body(std::ostream& os, const CircleCensus& census,
                       const OriginStability& origin) {
  os << "{\"delta\":" << format_float(census.delta) << ",\"collapsed\":" << bstr(census.collapsed);
  if (!census.note.empty()) os << ",\"note\":\"" << esc(census.note) << "\"";
  os << ",\"circles\":[";
  bool first = true;
  for (const auto& c : census.circles) {
    if (!first) os << ',';
    first = false;
    os << "{\"y\":" << format_float(c.y) << ",\"radius\":" << format_float(c.radius)
       << ",\"derivative\":" << format_float(c.derivative) << ",\"stability\":\""
       << to_string(c.stability) << "\",\"side\":\"" << to_string(c.side) << "\"}";
  }
  os << "],\"origin\":{\"stable\":" << bstr(origin.stable) << ",\"tier\":\""
     << to_string(origin.tier) << "\"}}";
}

// Region fill colors, indexed 0 (unclassified) through 8.
constexpr const char* kRegionColor[9] = {"#d0d0d0", "#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                         "#b07aa1", "#76b7b2", "#edc948", "#9c755f"};

}  // namespace

std::string csv_region_grid(const DiagramRaster& raster) {
  std::ostringstream os;
  os << "mu1,mu2,region\n";
  for (const auto& cell : raster.cells)
    os << format_float(cell.mu1) << ',' << format_float(cell.mu2) << ',' << cell.region << '\n';
  return os.str();
}

std::string csv_curves(const BoundaryCurves& curves) {
  std::ostringstream os;
  os << "curve,mu2,mu1\n";
  for (const auto& [mu2, mu1] : curves.b1)
    os << "B1," << format_float(mu2) << ',' << format_float(mu1) << '\n';
  for (const auto& [mu2, mu1] : curves.b2)
    os << "B2," << format_float(mu2) << ',' << format_float(mu1) << '\n';
  return os.str();
}

std::string csv_orbit(const OrbitRecord& orbit) {
  std::ostringstream os;
  os << "n,rho,phi,x,y\n";
  for (size_t i = 0; i < orbit.points.size(); ++i) {
    const auto& p = orbit.points[i];
    os << (i + 1) << ',' << format_float(p.rho) << ',' << format_float(p.phi) << ','
       << format_float(p.x) << ',' << format_float(p.y) << '\n';
  }
  return os.str();
}

std::string json_validation(const ValidationReport& r, double theta0) {
  std::ostringstream os;
  os << "{\"chenciner_ok\":" << bstr(r.chenciner_ok) << ",\"degenerate\":" << bstr(r.degenerate)
     << ",\"new_regular\":" << bstr(r.new_regular) << ",\"c_nonzero\":" << bstr(r.c_nonzero)
     << ",\"d_nonzero\":" << bstr(r.d_nonzero) << ",\"theta0\":" << format_float(theta0)
     << ",\"constants\":{\"l0\":\"" << fraction_string(r.l0) << "\",\"c1\":\""
     << fraction_string(r.c1) << "\",\"c2\":\"" << fraction_string(r.c2) << "\",\"d1\":\""
     << fraction_string(r.d1) << "\",\"d2\":\"" << fraction_string(r.d2) << "\",\"l1\":\""
     << fraction_string(r.l1) << "\",\"l2\":\"" << fraction_string(r.l2) << "\"}}";
  return os.str();
}

std::string json_transform(const ParameterTransform& t) {
  std::ostringstream os;
  os << "{\"k\":" << t.k << ",\"order\":" << t.forward.first.order() << ",\"jacobian_det0\":\""
     << fraction_string(t.jacobian_det0) << "\",\"constants\":{\"l0\":\"" << fraction_string(t.l0)
     << "\",\"c1\":\"" << fraction_string(t.c1) << "\",\"c2\":\"" << fraction_string(t.c2)
     << "\",\"d1\":\"" << fraction_string(t.d1) << "\",\"d2\":\"" << fraction_string(t.d2)
     << "\",\"l1\":\"" << fraction_string(t.l1) << "\",\"l2\":\"" << fraction_string(t.l2)
     << "\"},\"forward\":{\"mu1\":";
  write_series(os, t.forward.first);
  os << ",\"mu2\":";
  write_series(os, t.forward.second);
  os << "},\"inverse\":{\"alpha1\":";
  write_series(os, t.inverse.first);
  os << ",\"alpha2\":";
  write_series(os, t.inverse.second);
  os << "},\"hat\":{\"beta1\":";
  write_series(os, t.hat_beta1);
  os << ",\"beta2\":";
  write_series(os, t.hat_beta2);
  os << ",\"l2\":";
  write_series(os, t.hat_l2);
  os << "},\"m2\":\"" << fraction_string(t.m2) << "\"";
  if (t.k1_defined) os << ",\"k1\":\"" << fraction_string(t.k1) << "\"";
  os << ",\"k1_defined\":" << bstr(t.k1_defined)
     << ",\"degenerate_context\":" << bstr(t.degenerate_context)
     << ",\"roundtrip_exact\":" << bstr(t.roundtrip_exact)
     << ",\"delta_identity_exact\":" << bstr(t.delta_identity_exact) << "}";
  return os.str();
}

std::string json_classification(const AlphaClassification& c) {
  std::ostringstream os;
  os << "{\"alpha\":[" << format_float(c.alpha.first) << ',' << format_float(c.alpha.second)
     << "],\"mu\":{\"mu1\":" << format_float(c.mu.first) << ",\"mu2\":"
     << format_float(c.mu.second) << "},\"values\":{\"beta1\":" << format_float(c.beta1)
     << ",\"beta2\":" << format_float(c.beta2) << ",\"l2\":" << format_float(c.l2)
     << ",\"delta\":" << format_float(c.delta) << "},\"hat\":{\"beta1\":"
     << format_float(c.hat_beta1) << ",\"beta2\":" << format_float(c.hat_beta2)
     << "},\"signs\":{\"l0\":" << c.label.sign_l0 << ",\"delta\":" << c.label.sign_delta
     << ",\"beta1\":" << c.label.sign_beta1 << ",\"beta2\":" << c.label.sign_beta2
     << "},\"region\":" << c.label.region << ",\"classified\":" << bstr(c.label.classified())
     << "}";
  return os.str();
}

std::string json_census(const CircleCensus& census, const OriginStability& origin) {
  std::ostringstream os;
  write_census_body(os, census, origin);
  return os.str();
}

std::string json_orbit(const OrbitRecord& orbit) {
  std::ostringstream os;
  os << "{\"alpha\":[" << format_float(orbit.alpha.first) << ','
     << format_float(orbit.alpha.second) << "],\"rho1\":" << format_float(orbit.rho1)
     << ",\"phi1\":" << format_float(orbit.phi1) << ",\"n_steps\":" << orbit.n_steps
     << ",\"outcome\":{\"kind\":\"" << to_string(orbit.outcome.kind) << "\"";
  if (orbit.outcome.kind == OutcomeKind::to_circle)
    os << ",\"radius\":" << format_float(orbit.outcome.radius);
  os << "},\"left_validity\":" << bstr(orbit.left_validity) << ",\"final\":{\"rho\":"
     << format_float(orbit.points.back().rho) << ",\"phi\":"
     << format_float(orbit.points.back().phi) << "}}";
  return os.str();
}

std::string json_portrait(const PortraitReport& rep) {
  std::ostringstream os;
  os << "{\"alpha\":[" << format_float(rep.classification.alpha.first) << ','
     << format_float(rep.classification.alpha.second)
     << "],\"region\":" << rep.classification.label.region << ",\"status\":\""
     << to_string(rep.status) << "\",\"region_census_consistent\":"
     << bstr(rep.region_census_consistent) << ",\"census\":";
  write_census_body(os, rep.census, rep.origin);
  os << ",\"probes\":[";
  bool first = true;
  for (const auto& p : rep.probes) {
    if (!first) os << ',';
    first = false;
    os << "{\"rho1\":" << format_float(p.rho1) << ",\"expected\":\"" << to_string(p.expected)
       << "\"";
    if (p.expected == OutcomeKind::to_circle)
      os << ",\"expected_radius\":" << format_float(p.expected_radius);
    os << ",\"observed\":\"" << to_string(p.observed.kind) << "\"";
    if (p.observed.kind == OutcomeKind::to_circle)
      os << ",\"observed_radius\":" << format_float(p.observed.radius);
    os << ",\"n_steps\":" << p.n_steps << ",\"drift\":" << format_float(p.drift)
       << ",\"verdict\":\"" << to_string(p.verdict) << "\",\"detail\":\"" << esc(p.detail)
       << "\"}";
  }
  os << "]}";
  return os.str();
}

namespace {

// Shared SVG scaffolding. Plot area in pixels; value->pixel maps per axis.
struct PlotFrame {
  double x0 = 80, y0 = 30, w = 480, h = 440;
  double vx_min = 0, vx_max = 1, vy_min = 0, vy_max = 1;
  double px(double vx) const { return x0 + (vx - vx_min) / (vx_max - vx_min) * w; }
  double py(double vy) const { return y0 + h - (vy - vy_min) / (vy_max - vy_min) * h; }
};

void svg_open(std::ostream& os, double width, double height) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<!-- chenciner " << CHENCINER_VERSION << " -->\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

void svg_axes(std::ostream& os, const PlotFrame& f, const std::string& xlabel,
              const std::string& ylabel) {
  os << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << f.w << "\" height=\"" << f.h
     << "\" fill=\"none\" stroke=\"#333\"/>\n";
  const double yb = f.y0 + f.h;
  os << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << yb + 34
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
     << "</text>\n";
  os << "<text x=\"" << f.x0 - 58 << "\" y=\"" << f.y0 + f.h / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 "
     << f.x0 - 58 << ' ' << f.y0 + f.h / 2 << ")\">" << ylabel << "</text>\n";
  os << "<text x=\"" << f.x0 << "\" y=\"" << yb + 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_float(f.vx_min) << "</text>\n";
  os << "<text x=\"" << f.x0 + f.w << "\" y=\"" << yb + 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_float(f.vx_max) << "</text>\n";
  os << "<text x=\"" << f.x0 - 6 << "\" y=\"" << yb + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_float(f.vy_min) << "</text>\n";
  os << "<text x=\"" << f.x0 - 6 << "\" y=\"" << f.y0 + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_float(f.vy_max) << "</text>\n";
}

// Emits polyline runs for the in-window stretches of a sampled curve.
void svg_curve(std::ostream& os, const PlotFrame& f,
               const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
               const std::string& dash) {
  std::ostringstream run;
  int n_in_run = 0;
  const auto flush = [&] {
    if (n_in_run >= 2)
      os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"" << dash
         << " points=\"" << run.str() << "\"/>\n";
    run.str("");
    n_in_run = 0;
  };
  for (const auto& [mu2, mu1] : pts) {
    if (mu2 < f.vx_min || mu2 > f.vx_max || mu1 < f.vy_min || mu1 > f.vy_max) {
      flush();
      continue;
    }
    if (n_in_run) run << ' ';
    run << format_float(f.px(mu2)) << ',' << format_float(f.py(mu1));
    ++n_in_run;
  }
  flush();
}

}  // namespace

std::string svg_diagram(const DiagramRaster& raster) {
  std::ostringstream os;
  svg_open(os, 760, 560);
  PlotFrame f;
  f.vx_min = raster.window.mu2_min;
  f.vx_max = raster.window.mu2_max;
  f.vy_min = raster.window.mu1_min;
  f.vy_max = raster.window.mu1_max;

  const double cw = f.w / raster.nx;
  const double ch = f.h / raster.ny;
  for (int iy = 0; iy < raster.ny; ++iy) {
    for (int ix = 0; ix < raster.nx; ++ix) {
      const auto& cell = raster.cells[static_cast<size_t>(iy) * raster.nx + ix];
      const int region = cell.region >= 0 && cell.region <= 8 ? cell.region : 0;
      os << "<rect x=\"" << format_float(f.x0 + ix * cw) << "\" y=\""
         << format_float(f.y0 + f.h - (iy + 1) * ch) << "\" width=\"" << format_float(cw)
         << "\" height=\"" << format_float(ch) << "\" fill=\"" << kRegionColor[region] << "\"/>\n";
    }
  }

  svg_curve(os, f, raster.curves.b1, "#111111", "");
  svg_curve(os, f, raster.curves.b2, "#111111", " stroke-dasharray=\"6 3\"");
  svg_axes(os, f, "mu2", "mu1");

  double ly = f.y0 + 8;
  const double lx = f.x0 + f.w + 24;
  const auto legend_row = [&](const std::string& color, const std::string& label) {
    os << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\"" << color
       << "\" stroke=\"#333\"/>\n<text x=\"" << lx + 20 << "\" y=\"" << ly + 11.5
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
    ly += 22;
  };
  for (int r = 1; r <= 8; ++r) legend_row(kRegionColor[r], "region " + std::to_string(r));
  legend_row(kRegionColor[0], "unclassified");
  os << "<line x1=\"" << lx << "\" y1=\"" << ly + 7 << "\" x2=\"" << lx + 14 << "\" y2=\""
     << ly + 7 << "\" stroke=\"#111111\" stroke-width=\"1.5\"/>\n<text x=\"" << lx + 20
     << "\" y=\"" << ly + 11.5 << "\" font-family=\"sans-serif\" font-size=\"12\">B1</text>\n";
  ly += 22;
  os << "<line x1=\"" << lx << "\" y1=\"" << ly + 7 << "\" x2=\"" << lx + 14 << "\" y2=\""
     << ly + 7
     << "\" stroke=\"#111111\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n<text x=\""
     << lx + 20 << "\" y=\"" << ly + 11.5
     << "\" font-family=\"sans-serif\" font-size=\"12\">B2</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string svg_orbit(const OrbitRecord& orbit) {
  std::ostringstream os;
  svg_open(os, 600, 600);
  PlotFrame f;
  f.x0 = 60;
  f.y0 = 60;
  f.w = 480;
  f.h = 480;
  double r_max = 1e-12;
  for (const auto& p : orbit.points) r_max = std::max({r_max, std::abs(p.x), std::abs(p.y)});
  r_max *= 1.1;
  f.vx_min = -r_max;
  f.vx_max = r_max;
  f.vy_min = -r_max;
  f.vy_max = r_max;

  os << "<line x1=\"" << f.px(f.vx_min) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(f.vx_max)
     << "\" y2=\"" << f.py(0) << "\" stroke=\"#cccccc\"/>\n";
  os << "<line x1=\"" << f.px(0) << "\" y1=\"" << f.py(f.vy_min) << "\" x2=\"" << f.px(0)
     << "\" y2=\"" << f.py(f.vy_max) << "\" stroke=\"#cccccc\"/>\n";

  // Subsampled path: the full record can hold tens of thousands of points.
  const size_t n = orbit.points.size();
  const size_t stride = std::max<size_t>(1, (n + 1999) / 2000);
  os << "<polyline fill=\"none\" stroke=\"#4e79a7\" stroke-width=\"0.8\" points=\"";
  for (size_t i = 0; i < n; i += stride) {
    if (i) os << ' ';
    os << format_float(f.px(orbit.points[i].x)) << ',' << format_float(f.py(orbit.points[i].y));
  }
  if ((n - 1) % stride != 0)
    os << ' ' << format_float(f.px(orbit.points.back().x)) << ','
       << format_float(f.py(orbit.points.back().y));
  os << "\"/>\n";

  os << "<circle cx=\"" << format_float(f.px(orbit.points.front().x)) << "\" cy=\""
     << format_float(f.py(orbit.points.front().y))
     << "\" r=\"4\" fill=\"#59a14f\"/>\n";
  os << "<circle cx=\"" << format_float(f.px(orbit.points.back().x)) << "\" cy=\""
     << format_float(f.py(orbit.points.back().y)) << "\" r=\"3\" fill=\"#e15759\"/>\n";

  std::ostringstream caption;
  caption << "outcome: " << to_string(orbit.outcome.kind);
  if (orbit.outcome.kind == OutcomeKind::to_circle)
    caption << " (radius " << format_float(orbit.outcome.radius) << ")";
  caption << ", steps: " << orbit.n_steps;
  os << "<text x=\"300\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << caption.str() << "</text>\n";
  os << "<text x=\"300\" y=\"575\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\">alpha = ("
     << format_float(orbit.alpha.first) << ", " << format_float(orbit.alpha.second)
     << "), rho1 = " << format_float(orbit.rho1) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace chenciner
