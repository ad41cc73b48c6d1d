#pragma once

// The Bernoulli manifold drawn isometrically in the plane, and tabulation of
// densities for plotting.

#include <string>
#include <vector>

#include "infogeo/density.hpp"
#include "infogeo/manifold.hpp"

namespace infogeo {

struct EmbeddedPoint {
  double x;
  double y;
};

// theta -> (2 sqrt(theta), 2 sqrt(1 - theta)), a quarter circle of radius 2
// from (0, 2) at theta = 0 to (2, 0) at theta = 1. Euclidean arc length
// along it equals the Fisher-Rao distance. Throws DomainError outside [0, 1].
EmbeddedPoint embed_bernoulli(double theta);
EmbeddedPoint embed_bernoulli(const Coord& theta);

// Length of the polyline through embed_bernoulli at `segments` + 1 points
// evenly spaced in theta between theta1 and theta2.
double embedded_polyline_length(double theta1, double theta2, int segments);

struct CurveRow {
  double chart_coord;
  double canonical_coord;
  DensityValue rho;
  DensityValue p;
  // NaN for models without a planar embedding.
  double embed_x;
  double embed_y;
};

struct DensityCurve {
  std::string model;
  std::string chart;
  std::string label;
  std::vector<CurveRow> rows;  // strictly increasing chart_coord
};

// Chart coordinates of an n-point grid over the interior of `domain`.
// Finite domains: uniform over [lo + d, hi - d] with d = (hi - lo) 1e-6.
// [lo, inf): uniform in u = 1/(1 + x - lo) over [1e-6, 1 - 1e-6], which is
// u = 1/x for lo = 1. (-inf, hi] mirrors that; the whole line uses the
// logit of a uniform grid in (0, 1).
std::vector<Coord> sample_grid(const Interval& domain, int n);

// Tabulates rho (in `chart`) and p at n grid points of `chart`. Chart
// densities are pushed into `chart` first. Throws std::invalid_argument for
// n < 2 and ChartMismatchError for a chart of another model.
DensityCurve sample_curve(const ChartDensity& rho, const Chart& chart, int n);
DensityCurve sample_curve(const IntrinsicDensity& p, const Chart& chart, int n);

}  // namespace infogeo
