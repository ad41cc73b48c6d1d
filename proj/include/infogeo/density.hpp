#pragma once

// Densities over a one-parameter manifold, in the two forms that matter:
//
//   IntrinsicDensity  p(theta), density with respect to the Riemannian volume
//                     measure; the same function whatever chart is used.
//   ChartDensity      rho(x'), density with respect to Lebesgue measure dx'
//                     of one chart; rho = p * sqrt(G_chart).
//
// Both are stored as log-density functions of a Coord. Normalization is
// never enforced, only measured by normalization_check().

#include <functional>
#include <string>

#include "infogeo/coord.hpp"
#include "infogeo/manifold.hpp"
#include "infogeo/quadrature_config.hpp"

namespace infogeo {

// A density value that keeps divergence (+inf at a boundary limit) apart
// from large finite numbers.
class DensityValue {
 public:
  static DensityValue from_log(double log_value) { return DensityValue(log_value); }
  static DensityValue from_value(double value);
  static DensityValue divergent() { return DensityValue(kInf); }

  bool diverges() const { return log_ == kInf; }
  bool is_nan() const { return std::isnan(log_); }
  double log_value() const { return log_; }
  // +inf when divergent.
  double value() const { return diverges() ? kInf : std::exp(log_); }

 private:
  explicit DensityValue(double log_value) : log_(log_value) {}
  double log_;
};

using LogDensityFn = std::function<double(const Coord&)>;

// Limit of a log-density at a boundary, judged from three probes ordered
// nearest to farthest with geometrically growing offsets. Power-law growth
// toward the boundary reads as divergence and power-law decay as a zero
// limit; anything else is a finite limit, linearly extrapolated when
// `extrapolate` is set.
DensityValue classify_boundary(double log_near, double log_mid, double log_far, bool extrapolate);

class IntrinsicDensity {
 public:
  IntrinsicDensity(ManifoldModel model, LogDensityFn log_density, std::string label);

  // Wraps a plain (not log) density function of theta.
  static IntrinsicDensity from_function(ManifoldModel model, std::function<double(double)> density,
                                        std::string label);

  const ManifoldModel& model() const { return model_; }
  const std::string& label() const { return label_; }

  double log_density(const Coord& theta) const { return log_density_(theta); }
  // Value on the closure of the canonical domain; boundary points return
  // the limit, or DensityValue::divergent().
  DensityValue evaluate(double theta) const;
  DensityValue evaluate(const Coord& theta) const;
  double operator()(double theta) const { return evaluate(theta).value(); }

 private:
  ManifoldModel model_;
  LogDensityFn log_density_;
  std::string label_;
};

class ChartDensity {
 public:
  ChartDensity(ManifoldModel model, Chart chart, LogDensityFn log_density, std::string label);

  static ChartDensity from_function(ManifoldModel model, Chart chart,
                                    std::function<double(double)> density, std::string label);

  const ManifoldModel& model() const { return model_; }
  const Chart& chart() const { return chart_; }
  const std::string& label() const { return label_; }

  double log_density(const Coord& x) const { return log_density_(x); }
  DensityValue evaluate(double x) const;
  DensityValue evaluate(const Coord& x) const;
  double operator()(double x) const { return evaluate(x).value(); }

 private:
  ManifoldModel model_;
  Chart chart_;
  LogDensityFn log_density_;
  std::string label_;
};

struct BetaParams {
  double alpha;
  double beta;

  // Throws std::invalid_argument unless both are positive and finite.
  BetaParams(double alpha, double beta);
};

double log_beta_function(double a, double b);

// Beta(alpha, beta) as the chart density in the theta chart of the
// Bernoulli model: theta^(alpha-1) (1-theta)^(beta-1) / B(alpha, beta).
ChartDensity beta_chart_density(const BetaParams& params);

// p(theta) = rho(x'(theta)) / sqrt(G_chart(x'(theta))).
IntrinsicDensity intrinsic_from_chart(const ChartDensity& rho);

// rho(x') = p(theta(x')) * sqrt(G_chart(x')).
ChartDensity chart_from_intrinsic(const IntrinsicDensity& p, const Chart& chart);

// Change of variables into `target`: rho_target(y) = rho(x'(y)) |dx'/dy|.
ChartDensity pushforward(const ChartDensity& rho, const Chart& target);

// Total mass: the integral of p against the volume measure, or of rho
// against dx'. Throws ConvergenceError with the achieved error estimate.
double normalization_check(const IntrinsicDensity& p, const QuadratureConfig& cfg = {});
double normalization_check(const ChartDensity& rho, const QuadratureConfig& cfg = {});

}  // namespace infogeo
