#include "infogeo/density.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "infogeo/errors.hpp"
#include "infogeo/quadrature.hpp"

namespace infogeo {

namespace {

// Below this a log-density change between probes counts as no change.
constexpr double kFlatLogChange = 1e-9;

// Relative probe offsets used for boundary limits in a density's own
// coordinate.
constexpr double kProbeOffset = 1e-7;

// e * log(d), with 0 * log(0) taken as 0.
double power_term(double e, double d) { return e == 0.0 ? 0.0 : e * std::log(d); }

// Three probe points approaching one end of `domain`, nearest first.
std::array<Coord, 3> boundary_probes(const Interval& domain, bool lower) {
  const bool finite_end = lower ? domain.finite_lo() : domain.finite_hi();
  std::array<Coord, 3> probes;
  for (int i = 0; i < 3; ++i) {
    const double scale = std::ldexp(1.0, i);
    if (finite_end) {
      const double d = kProbeOffset * scale * (domain.bounded() ? domain.width() : 1.0);
      probes[i] = lower ? Coord::from_lo_distance(domain, d) : Coord::from_hi_distance(domain, d);
    } else {
      // Infinite end: probes at large magnitude, the largest first.
      const double far = 1.0 / (kProbeOffset * scale);
      probes[i] = lower ? Coord::in(domain, (domain.finite_hi() ? domain.hi : 0.0) - far)
                        : Coord::in(domain, (domain.finite_lo() ? domain.lo : 0.0) + far);
    }
  }
  return probes;
}

DensityValue evaluate_closure(const LogDensityFn& log_density, const Interval& domain, double x) {
  if (!domain.in_closure(x)) {
    throw DomainError(fmt::format("cannot evaluate density at {} outside {}", x, domain.to_string()));
  }
  if (x != domain.lo && x != domain.hi) return DensityValue::from_log(log_density(Coord::in(domain, x)));
  const bool lower = x == domain.lo;
  const double exact = log_density(lower ? Coord::at_lo(domain) : Coord::at_hi(domain));
  if (!std::isnan(exact)) return DensityValue::from_log(exact);
  const auto probes = boundary_probes(domain, lower);
  const bool finite_end = lower ? domain.finite_lo() : domain.finite_hi();
  return classify_boundary(log_density(probes[0]), log_density(probes[1]), log_density(probes[2]), finite_end);
}

}  // namespace

DensityValue DensityValue::from_value(double value) {
  if (value < 0) throw std::invalid_argument(fmt::format("negative density value {}", value));
  return DensityValue(std::log(value));
}

DensityValue classify_boundary(double log_near, double log_mid, double log_far, bool extrapolate) {
  if (log_near == kInf) return DensityValue::divergent();
  if (log_near == -kInf) return DensityValue::from_log(-kInf);
  const double d1 = log_near - log_mid;
  const double d2 = log_mid - log_far;
  // A power law changes the log by the same amount per halving; a smooth
  // finite limit roughly halves the change each time.
  if (d1 > kFlatLogChange && d1 > 0.75 * d2) return DensityValue::divergent();
  if (d1 < -kFlatLogChange && d1 < 0.75 * d2) return DensityValue::from_log(-kInf);
  return DensityValue::from_log(extrapolate ? 2 * log_near - log_mid : log_near);
}

// ---- IntrinsicDensity

IntrinsicDensity::IntrinsicDensity(ManifoldModel model, LogDensityFn log_density, std::string label)
    : model_(std::move(model)), log_density_(std::move(log_density)), label_(std::move(label)) {}

IntrinsicDensity IntrinsicDensity::from_function(ManifoldModel model, std::function<double(double)> density,
                                                 std::string label) {
  auto log_density = [f = std::move(density)](const Coord& t) { return std::log(f(t.value)); };
  return IntrinsicDensity(std::move(model), log_density, std::move(label));
}

DensityValue IntrinsicDensity::evaluate(double theta) const {
  return evaluate_closure(log_density_, model_.canonical_domain(), theta);
}

DensityValue IntrinsicDensity::evaluate(const Coord& theta) const {
  return DensityValue::from_log(log_density_(theta));
}

// ---- ChartDensity

ChartDensity::ChartDensity(ManifoldModel model, Chart chart, LogDensityFn log_density, std::string label)
    : model_(std::move(model)), chart_(std::move(chart)), log_density_(std::move(log_density)),
      label_(std::move(label)) {
  require_same_model(model_, chart_);
}

ChartDensity ChartDensity::from_function(ManifoldModel model, Chart chart, std::function<double(double)> density,
                                         std::string label) {
  auto log_density = [f = std::move(density)](const Coord& x) { return std::log(f(x.value)); };
  return ChartDensity(std::move(model), std::move(chart), log_density, std::move(label));
}

DensityValue ChartDensity::evaluate(double x) const { return evaluate_closure(log_density_, chart_.domain(), x); }

DensityValue ChartDensity::evaluate(const Coord& x) const { return DensityValue::from_log(log_density_(x)); }

// ---- Beta family

BetaParams::BetaParams(double a, double b) : alpha(a), beta(b) {
  if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument(fmt::format("Beta parameters must be positive and finite, got ({}, {})", a, b));
  }
}

double log_beta_function(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

ChartDensity beta_chart_density(const BetaParams& params) {
  const ManifoldModel model = bernoulli_model();
  const double a = params.alpha - 1;
  const double b = params.beta - 1;
  const double log_norm = log_beta_function(params.alpha, params.beta);
  auto log_density = [a, b, log_norm](const Coord& t) {
    return power_term(a, t.from_lo) + power_term(b, t.to_hi) - log_norm;
  };
  return ChartDensity(model, model.canonical_chart(), log_density,
                      fmt::format("Beta({}, {})", params.alpha, params.beta));
}

// ---- Conversions

IntrinsicDensity intrinsic_from_chart(const ChartDensity& rho) {
  const ManifoldModel& model = rho.model();
  auto log_density = [model, chart = rho.chart(), rho](const Coord& theta) {
    const Coord x = chart.from_canonical(theta);
    return rho.log_density(x) - 0.5 * log_metric_in_chart(model, chart, x);
  };
  return IntrinsicDensity(model, log_density, rho.label());
}

ChartDensity chart_from_intrinsic(const IntrinsicDensity& p, const Chart& chart) {
  const ManifoldModel& model = p.model();
  require_same_model(model, chart);
  auto log_density = [model, chart, p](const Coord& x) {
    return p.log_density(chart.to_canonical(x)) + 0.5 * log_metric_in_chart(model, chart, x);
  };
  return ChartDensity(model, chart, log_density, p.label());
}

ChartDensity pushforward(const ChartDensity& rho, const Chart& target) {
  const ManifoldModel& model = rho.model();
  require_same_model(model, target);
  if (target.name() == rho.chart().name()) return rho;
  auto log_density = [source = rho.chart(), target, rho](const Coord& y) {
    const Coord theta = target.to_canonical(y);
    const Coord x = source.from_canonical(theta);
    // dx/dy = (dtheta/dy) / (dtheta/dx)
    const double log_jacobian = std::log(std::abs(target.d_canonical(y))) - std::log(std::abs(source.d_canonical(x)));
    return rho.log_density(x) + log_jacobian;
  };
  return ChartDensity(model, target, log_density, rho.label());
}

double normalization_check(const IntrinsicDensity& p, const QuadratureConfig& cfg) {
  const auto r = interval_probability(p, p.model().canonical_domain(), cfg);
  if (!r.converged) {
    throw ConvergenceError(fmt::format("normalization of '{}' did not converge: {} +/- {}", p.label(), r.value,
                                       r.error_estimate),
                           r.value, r.error_estimate);
  }
  return r.value;
}

double normalization_check(const ChartDensity& rho, const QuadratureConfig& cfg) {
  const auto r = expectation(rho, [](double) { return 1.0; }, cfg);
  if (!r.converged) {
    throw ConvergenceError(fmt::format("normalization of '{}' in chart '{}' did not converge: {} +/- {}",
                                       rho.label(), rho.chart().name(), r.value, r.error_estimate),
                           r.value, r.error_estimate);
  }
  return r.value;
}

}  // namespace infogeo
