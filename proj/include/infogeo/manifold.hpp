#pragma once

// One-parameter statistical manifolds with the Fisher metric, and the charts
// (reparametrizations) used to put coordinates on them.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infogeo/coord.hpp"
#include "infogeo/quadrature_config.hpp"

namespace infogeo {

// A coordinate system x' on a manifold, defined relative to the manifold's
// canonical coordinate theta. All maps work on Coord so that distances to
// the domain ends survive the change of coordinates.
class Chart {
 public:
  using CoordMap = std::function<Coord(const Coord&)>;
  using Jacobian = std::function<double(const Coord&)>;

  Chart(std::string name, std::string model_name, Interval domain, Interval canonical_domain,
        CoordMap to_canonical, CoordMap from_canonical, Jacobian d_canonical);

  const std::string& name() const { return name_; }
  const std::string& model_name() const { return model_name_; }
  const Interval& domain() const { return domain_; }
  const Interval& canonical_domain() const { return canonical_domain_; }

  Coord to_canonical(const Coord& x) const { return to_canonical_(x); }
  Coord from_canonical(const Coord& theta) const { return from_canonical_(theta); }
  // Signed d(theta)/d(x').
  double d_canonical(const Coord& x) const { return d_canonical_(x); }

  // Checked scalar forms; throw DomainError outside the closure.
  double to_canonical(double x) const;
  double from_canonical(double theta) const;
  double d_canonical(double x) const;

  Coord locate(double x) const;
  Coord locate_canonical(double theta) const;

 private:
  std::string name_;
  std::string model_name_;
  Interval domain_;
  Interval canonical_domain_;
  CoordMap to_canonical_;
  CoordMap from_canonical_;
  Jacobian d_canonical_;
};

// A one-parameter family of distributions: its canonical coordinate domain,
// its Fisher metric in that coordinate, and the charts registered on it.
//
// Models are immutable and cheap to copy.
class ManifoldModel {
 public:
  using LogMetric = std::function<double(const Coord&)>;

  // `log_metric` returns log G(theta). The "theta" identity chart is always
  // registered; `charts` may add others, including an "arclength" chart in
  // which the metric is identically one.
  ManifoldModel(std::string name, Interval canonical_domain, LogMetric log_metric,
                std::vector<Chart> charts = {});

  const std::string& name() const;
  const Interval& canonical_domain() const;

  double fisher_metric(double theta) const;  // throws DomainError unless interior
  double fisher_metric(const Coord& theta) const;
  double log_fisher_metric(const Coord& theta) const;

  // Signed arc length from the model's origin: the lower end of the domain
  // when that end is at finite distance, otherwise the reference point of
  // the arc-length chart. Closed form when an "arclength" chart exists,
  // quadrature otherwise. Defined on the closure of the domain.
  double arc_length_from_origin(double theta) const;

  const Chart& chart(std::string_view name) const;  // throws std::invalid_argument
  bool has_chart(std::string_view name) const;
  const std::vector<Chart>& charts() const;
  std::vector<std::string> chart_names() const;
  const Chart& canonical_chart() const { return chart("theta"); }
  const Chart* arc_length_chart() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

ManifoldModel bernoulli_model();
// Poisson(lambda): G = 1/lambda on (0, inf), arc length 2 sqrt(lambda).
ManifoldModel poisson_model();
// Exponential with rate lambda: G = 1/lambda^2 on (0, inf), arc length
// log(lambda) measured from lambda = 1.
ManifoldModel exponential_model();

// "bernoulli", "poisson" or "exponential"; throws std::invalid_argument.
ManifoldModel model_by_name(std::string_view name);
std::vector<std::string> model_names();

// Metric of the model expressed in `chart`: G(theta(x')) * (d theta / d x')^2.
double metric_in_chart(const ManifoldModel& model, const Chart& chart, double x);
double log_metric_in_chart(const ManifoldModel& model, const Chart& chart, const Coord& x);

double fisher_rao_distance(const ManifoldModel& model, double theta1, double theta2);

// Riemannian volume, the integral of sqrt(G) over the canonical domain (or
// a region of it). Throws NonFiniteVolumeError when the integral diverges
// or the quadrature cannot certify it.
double volume(const ManifoldModel& model, const QuadratureConfig& cfg = {});
double volume(const ManifoldModel& model, const Interval& region, const QuadratureConfig& cfg = {});
// Same integral with its error estimate; throws like volume().
QuadratureResult volume_estimate(const ManifoldModel& model, const Interval& region,
                                 const QuadratureConfig& cfg = {});

// Throws ChartMismatchError unless `chart` is registered on a model named
// `model.name()`.
void require_same_model(const ManifoldModel& model, const Chart& chart);

}  // namespace infogeo
