#include "infogeo/manifold.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "infogeo/errors.hpp"
#include "infogeo/quadrature.hpp"

namespace infogeo {

namespace {

using std::numbers::pi;

// Builds a Coord from both end distances, taking the value from the nearer
// end of `domain`.
Coord from_distances(const Interval& domain, double from_lo, double to_hi) {
  double value = 0.0;
  if (!domain.finite_hi() || (domain.finite_lo() && from_lo <= to_hi)) {
    value = domain.lo + from_lo;
  } else {
    value = domain.hi - to_hi;
  }
  return {value, from_lo, to_hi};
}

void check_closure(const Interval& domain, double x, const char* what) {
  if (!domain.in_closure(x)) {
    throw DomainError(fmt::format("{} {} lies outside {}", what, x, domain.to_string()));
  }
}

Chart identity_chart(const std::string& model, const Interval& domain) {
  auto same = [](const Coord& c) { return c; };
  return Chart("theta", model, domain, domain, same, same, [](const Coord&) { return 1.0; });
}

// ---- Bernoulli charts. Canonical domain (0, 1).

const Interval kUnit = Interval::open(0.0, 1.0);

// y = arcsin(theta) on (0, pi/2).
Chart bernoulli_arcsin() {
  const Interval domain = Interval::open(0.0, pi / 2);
  auto to = [](const Coord& y) {
    const double s = std::sin(y.to_hi / 2);
    return from_distances(kUnit, std::sin(y.from_lo), 2 * s * s);
  };
  auto from = [domain](const Coord& t) {
    return from_distances(domain, std::asin(t.from_lo), 2 * std::asin(std::sqrt(t.to_hi / 2)));
  };
  auto d = [](const Coord& y) { return std::sin(y.to_hi); };  // cos(y)
  return Chart("arcsin", "bernoulli", domain, kUnit, to, from, d);
}

// y = 1/theta on (1, inf).
Chart bernoulli_reciprocal() {
  const Interval domain = Interval::open(1.0, kInf);
  auto to = [](const Coord& y) -> Coord {
    if (y.value == kInf) return {0.0, 0.0, 1.0};
    return from_distances(kUnit, 1.0 / y.value, y.from_lo / y.value);
  };
  auto from = [](const Coord& t) -> Coord {
    if (t.from_lo == 0.0) return {kInf, kInf, 0.0};
    return {1.0 / t.from_lo, t.to_hi / t.from_lo, kInf};
  };
  auto d = [](const Coord& y) { return -1.0 / (y.value * y.value); };
  return Chart("reciprocal", "bernoulli", domain, kUnit, to, from, d);
}

// s = 2 arcsin(sqrt(theta)) on (0, pi); the metric is 1 here.
Chart bernoulli_arclength() {
  const Interval domain = Interval::open(0.0, pi);
  auto to = [](const Coord& s) {
    const double a = std::sin(s.from_lo / 2);
    const double b = std::sin(s.to_hi / 2);
    return from_distances(kUnit, a * a, b * b);
  };
  auto from = [domain](const Coord& t) {
    return from_distances(domain, 2 * std::asin(std::sqrt(t.from_lo)), 2 * std::asin(std::sqrt(t.to_hi)));
  };
  // sin(s/2) cos(s/2), with cos(s/2) = sin((pi - s)/2)
  auto d = [](const Coord& s) { return std::sin(s.from_lo / 2) * std::sin(s.to_hi / 2); };
  return Chart("arclength", "bernoulli", domain, kUnit, to, from, d);
}

// ---- Charts on (0, inf), shared by the Poisson and exponential models.

const Interval kPositive = Interval::open(0.0, kInf);

Chart positive_reciprocal(const std::string& model) {
  auto flip = [](const Coord& c) -> Coord {
    if (c.from_lo == 0.0) return {kInf, kInf, 0.0};
    const double v = 1.0 / c.from_lo;
    return {v, v, kInf};
  };
  auto d = [](const Coord& y) { return -1.0 / (y.value * y.value); };
  return Chart("reciprocal", model, kPositive, kPositive, flip, flip, d);
}

// s = 2 sqrt(lambda) on (0, inf).
Chart poisson_arclength() {
  auto to = [](const Coord& s) -> Coord {
    const double v = s.from_lo * s.from_lo / 4;
    return {v, v, kInf};
  };
  auto from = [](const Coord& l) -> Coord {
    const double v = 2 * std::sqrt(l.from_lo);
    return {v, v, kInf};
  };
  auto d = [](const Coord& s) { return s.value / 2; };
  return Chart("arclength", "poisson", kPositive, kPositive, to, from, d);
}

// s = log(lambda) on (-inf, inf).
Chart exponential_arclength() {
  const Interval line = Interval::open(-kInf, kInf);
  auto to = [](const Coord& s) -> Coord {
    const double v = std::exp(s.value);
    return {v, v, kInf};
  };
  auto from = [](const Coord& l) -> Coord { return {std::log(l.from_lo), kInf, kInf}; };
  auto d = [](const Coord& s) { return std::exp(s.value); };
  return Chart("arclength", "exponential", line, kPositive, to, from, d);
}

}  // namespace

// ---- Chart

Chart::Chart(std::string name, std::string model_name, Interval domain, Interval canonical_domain,
             CoordMap to_canonical, CoordMap from_canonical, Jacobian d_canonical)
    : name_(std::move(name)),
      model_name_(std::move(model_name)),
      domain_(domain),
      canonical_domain_(canonical_domain),
      to_canonical_(std::move(to_canonical)),
      from_canonical_(std::move(from_canonical)),
      d_canonical_(std::move(d_canonical)) {}

Coord Chart::locate(double x) const {
  check_closure(domain_, x, "chart coordinate");
  if (x == domain_.lo) return Coord::at_lo(domain_);
  if (x == domain_.hi) return Coord::at_hi(domain_);
  return Coord::in(domain_, x);
}

Coord Chart::locate_canonical(double theta) const {
  check_closure(canonical_domain_, theta, "canonical coordinate");
  if (theta == canonical_domain_.lo) return Coord::at_lo(canonical_domain_);
  if (theta == canonical_domain_.hi) return Coord::at_hi(canonical_domain_);
  return Coord::in(canonical_domain_, theta);
}

double Chart::to_canonical(double x) const { return to_canonical_(locate(x)).value; }

double Chart::from_canonical(double theta) const { return from_canonical_(locate_canonical(theta)).value; }

double Chart::d_canonical(double x) const { return d_canonical_(locate(x)); }

// ---- ManifoldModel

struct ManifoldModel::Data {
  std::string name;
  Interval domain;
  LogMetric log_metric;
  std::vector<Chart> charts;
};

ManifoldModel::ManifoldModel(std::string name, Interval canonical_domain, LogMetric log_metric,
                             std::vector<Chart> charts) {
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->domain = canonical_domain;
  data->log_metric = std::move(log_metric);
  data->charts.push_back(identity_chart(data->name, canonical_domain));
  for (auto& c : charts) {
    if (c.model_name() != data->name) {
      throw ChartMismatchError(fmt::format("chart '{}' belongs to '{}', not '{}'", c.name(), c.model_name(),
                                           data->name));
    }
    if (c.name() == "theta") continue;
    data->charts.push_back(std::move(c));
  }
  data_ = std::move(data);
}

const std::string& ManifoldModel::name() const { return data_->name; }

const Interval& ManifoldModel::canonical_domain() const { return data_->domain; }

double ManifoldModel::log_fisher_metric(const Coord& theta) const { return data_->log_metric(theta); }

double ManifoldModel::fisher_metric(const Coord& theta) const { return std::exp(log_fisher_metric(theta)); }

double ManifoldModel::fisher_metric(double theta) const {
  if (!data_->domain.in_interior(theta)) {
    throw DomainError(fmt::format("Fisher metric of '{}' is undefined at {} (domain {})", name(), theta,
                                  data_->domain.to_string()));
  }
  return fisher_metric(Coord::in(data_->domain, theta));
}

double ManifoldModel::arc_length_from_origin(double theta) const {
  check_closure(data_->domain, theta, "canonical coordinate");
  if (const Chart* arc = arc_length_chart()) return arc->from_canonical(theta);

  // No closed form: integrate sqrt(G) from the lower end.
  const Interval& d = data_->domain;
  if (theta == d.lo) return 0.0;
  const Interval region(d.lo, theta, d.open_lo, false);
  return volume(*this, region);
}

const Chart& ManifoldModel::chart(std::string_view name) const {
  for (const auto& c : data_->charts) {
    if (c.name() == name) return c;
  }
  throw std::invalid_argument(fmt::format("model '{}' has no chart '{}'", data_->name, name));
}

bool ManifoldModel::has_chart(std::string_view name) const {
  return std::any_of(data_->charts.begin(), data_->charts.end(), [&](const Chart& c) { return c.name() == name; });
}

const std::vector<Chart>& ManifoldModel::charts() const { return data_->charts; }

std::vector<std::string> ManifoldModel::chart_names() const {
  std::vector<std::string> names;
  for (const auto& c : data_->charts) names.push_back(c.name());
  return names;
}

const Chart* ManifoldModel::arc_length_chart() const {
  for (const auto& c : data_->charts) {
    if (c.name() == "arclength") return &c;
  }
  return nullptr;
}

// ---- Registry

ManifoldModel bernoulli_model() {
  // G = 1 / (theta (1 - theta))
  auto log_metric = [](const Coord& t) { return -std::log(t.from_lo) - std::log(t.to_hi); };
  return ManifoldModel("bernoulli", kUnit, log_metric,
                       {bernoulli_arcsin(), bernoulli_reciprocal(), bernoulli_arclength()});
}

ManifoldModel poisson_model() {
  auto log_metric = [](const Coord& l) { return -std::log(l.from_lo); };
  return ManifoldModel("poisson", kPositive, log_metric, {positive_reciprocal("poisson"), poisson_arclength()});
}

ManifoldModel exponential_model() {
  auto log_metric = [](const Coord& l) { return -2 * std::log(l.from_lo); };
  return ManifoldModel("exponential", kPositive, log_metric,
                       {positive_reciprocal("exponential"), exponential_arclength()});
}

ManifoldModel model_by_name(std::string_view name) {
  if (name == "bernoulli") return bernoulli_model();
  if (name == "poisson") return poisson_model();
  if (name == "exponential") return exponential_model();
  throw std::invalid_argument(fmt::format("unknown model '{}'", name));
}

std::vector<std::string> model_names() { return {"bernoulli", "poisson", "exponential"}; }

// ---- Operations

void require_same_model(const ManifoldModel& model, const Chart& chart) {
  if (chart.model_name() != model.name() || !model.has_chart(chart.name())) {
    throw ChartMismatchError(
        fmt::format("chart '{}' of '{}' used with model '{}'", chart.name(), chart.model_name(), model.name()));
  }
}

double log_metric_in_chart(const ManifoldModel& model, const Chart& chart, const Coord& x) {
  const Coord theta = chart.to_canonical(x);
  return model.log_fisher_metric(theta) + 2 * std::log(std::abs(chart.d_canonical(x)));
}

double metric_in_chart(const ManifoldModel& model, const Chart& chart, double x) {
  require_same_model(model, chart);
  if (!chart.domain().in_interior(x)) {
    throw DomainError(fmt::format("chart coordinate {} is not inside {} of chart '{}'", x,
                                  chart.domain().to_string(), chart.name()));
  }
  const Coord c = Coord::in(chart.domain(), x);
  const Coord theta = chart.to_canonical(c);
  const double d = chart.d_canonical(c);
  return model.fisher_metric(theta) * d * d;
}

double fisher_rao_distance(const ManifoldModel& model, double theta1, double theta2) {
  const Interval& d = model.canonical_domain();
  check_closure(d, theta1, "canonical coordinate");
  check_closure(d, theta2, "canonical coordinate");
  if (theta1 == theta2) return 0.0;
  if (model.arc_length_chart() != nullptr) {
    return std::abs(model.arc_length_from_origin(theta2) - model.arc_length_from_origin(theta1));
  }
  const auto [a, b] = std::minmax(theta1, theta2);
  return volume(model, Interval(a, b, a == d.lo && d.open_lo, b == d.hi && d.open_hi));
}

QuadratureResult volume_estimate(const ManifoldModel& model, const Interval& region, const QuadratureConfig& cfg) {
  const Interval& d = model.canonical_domain();
  if (!d.covers(region)) {
    throw DomainError(fmt::format("region {} is not inside {}", region.to_string(), d.to_string()));
  }
  auto root_metric = [&](const Coord& c) {
    return std::exp(0.5 * model.log_fisher_metric(rebase(c, region, d)));
  };
  QuadratureResult r = integrate_chart(CoordIntegrand(root_metric), region, cfg);
  if (!r.converged || !std::isfinite(r.value)) {
    throw NonFiniteVolumeError(fmt::format("volume of '{}' over {} does not converge (estimate {}, error {})",
                                           model.name(), region.to_string(), r.value, r.error_estimate));
  }
  return r;
}

double volume(const ManifoldModel& model, const Interval& region, const QuadratureConfig& cfg) {
  return volume_estimate(model, region, cfg).value;
}

double volume(const ManifoldModel& model, const QuadratureConfig& cfg) {
  return volume(model, model.canonical_domain(), cfg);
}

}  // namespace infogeo
