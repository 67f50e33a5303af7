#pragma once

#include <string>

#include <chenciner/classify.hpp>
#include <chenciner/normal_form.hpp>
#include <chenciner/simulate.hpp>
#include <chenciner/transform.hpp>

namespace chenciner {

// All emitters are byte-deterministic: floats are printed with 6 significant
// digits, exact rationals as "num/den" (or plain integers), and JSON is built
// with fixed key order.

std::string format_float(double v);

// Headers pinned by the output contract.
std::string csv_region_grid(const DiagramRaster& raster);  // mu1,mu2,region
std::string csv_curves(const BoundaryCurves& curves);      // curve,mu2,mu1
std::string csv_orbit(const OrbitRecord& orbit);           // n,rho,phi,x,y (n from 1)

std::string json_validation(const ValidationReport& report, double theta0);
std::string json_transform(const ParameterTransform& t);
std::string json_classification(const AlphaClassification& c);
std::string json_census(const CircleCensus& census, const OriginStability& origin);
std::string json_orbit(const OrbitRecord& orbit);
std::string json_portrait(const PortraitReport& rep);

std::string svg_diagram(const DiagramRaster& raster);
std::string svg_orbit(const OrbitRecord& orbit);

}  // namespace chenciner
