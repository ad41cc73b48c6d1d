#pragma once

// Point estimates from densities on a manifold.
//
//   map_estimate   argmax of a chart density rho; depends on the chart.
//   mapi_estimate  argmax of the intrinsic density p; the same point of the
//                  manifold whichever chart the search runs in.
//
// The numeric search scans 1024 interior points spaced evenly in arc length,
// probes both ends for boundary maxima and divergence, and refines each
// interior local maximum by golden-section search followed by a root solve
// on the finite-difference slope of the log density.

#include <vector>

#include "infogeo/density.hpp"
#include "infogeo/manifold.hpp"

namespace infogeo {

// Coordinate tolerance of the golden-section stage, in the search chart and
// scaled by max(1, |x|).
inline constexpr double kModeCoordinateTolerance = 1e-10;

struct ModeResult {
  double canonical_point = 0.0;
  double chart_point = 0.0;  // canonical_point in the reporting chart
  DensityValue density_value = DensityValue::from_log(-kInf);
  bool at_boundary = false;
  // Every point is a maximizer. all_modes is then empty and canonical_point
  // is the arc-length midpoint of the manifold.
  bool flat = false;
  bool converged = true;
  // Canonical coordinates of all maxima within 1e-9 relative density of the
  // best one, ascending.
  std::vector<double> all_modes;
};

ModeResult map_estimate(const ChartDensity& rho);

// Searches in the arc-length chart when the model has one, else in theta.
ModeResult mapi_estimate(const IntrinsicDensity& p, const Chart& report_chart);
ModeResult mapi_estimate(const IntrinsicDensity& p, const Chart& report_chart, const Chart& search_chart);

// Closed-form modes of Beta(alpha, beta). With intrinsic = false this is
// the mode of the chart density in theta; with intrinsic = true the mode of
// theta^(alpha-1/2) (1-theta)^(beta-1/2) / B(alpha, beta). chart_point is
// reported in theta.
ModeResult beta_mode_analytic(const BetaParams& params, bool intrinsic);

}  // namespace infogeo
