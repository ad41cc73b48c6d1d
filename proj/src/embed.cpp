#include "infogeo/embed.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "infogeo/errors.hpp"

namespace infogeo {

namespace {

constexpr double kGridMargin = 1e-6;

DensityCurve tabulate(const ManifoldModel& model, const Chart& chart, const ChartDensity& rho,
                      const IntrinsicDensity& p, int n) {
  if (n < 2) throw std::invalid_argument(fmt::format("a density curve needs at least 2 samples, got {}", n));
  const bool planar = model.name() == "bernoulli";
  DensityCurve curve{model.name(), chart.name(), rho.label(), {}};
  curve.rows.reserve(n);
  for (const Coord& x : sample_grid(chart.domain(), n)) {
    const Coord theta = chart.to_canonical(x);
    CurveRow row{x.value,
                 theta.value,
                 rho.evaluate(x),
                 p.evaluate(theta),
                 std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::quiet_NaN()};
    if (planar) {
      const EmbeddedPoint e = embed_bernoulli(theta);
      row.embed_x = e.x;
      row.embed_y = e.y;
    }
    curve.rows.push_back(row);
  }
  return curve;
}

}  // namespace

EmbeddedPoint embed_bernoulli(const Coord& theta) {
  return {2 * std::sqrt(theta.from_lo), 2 * std::sqrt(theta.to_hi)};
}

EmbeddedPoint embed_bernoulli(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError(fmt::format("Bernoulli parameter {} is outside [0, 1]", theta));
  }
  return embed_bernoulli(Coord{theta, theta, 1.0 - theta});
}

double embedded_polyline_length(double theta1, double theta2, int segments) {
  if (segments < 1) throw std::invalid_argument("polyline needs at least one segment");
  const double step = (theta2 - theta1) / segments;
  EmbeddedPoint prev = embed_bernoulli(theta1);
  double length = 0.0;
  for (int i = 1; i <= segments; ++i) {
    const EmbeddedPoint next = embed_bernoulli(i == segments ? theta2 : theta1 + i * step);
    length += std::hypot(next.x - prev.x, next.y - prev.y);
    prev = next;
  }
  return length;
}

std::vector<Coord> sample_grid(const Interval& domain, int n) {
  if (n < 2) throw std::invalid_argument(fmt::format("a grid needs at least 2 points, got {}", n));
  std::vector<Coord> grid;
  grid.reserve(n);
  const double last = n - 1;
  if (domain.bounded()) {
    const double margin = domain.width() * kGridMargin;
    const double step = (domain.width() - 2 * margin) / last;
    for (int k = 0; k < n; ++k) {
      const double from_lo = margin + k * step;
      const double to_hi = margin + (last - k) * step;
      grid.push_back({from_lo <= to_hi ? domain.lo + from_lo : domain.hi - to_hi, from_lo, to_hi});
    }
    return grid;
  }
  // u runs over [margin, 1 - margin]; u_k and 1 - u_k are both formed from
  // the ends so neither loses precision.
  const double step = (1 - 2 * kGridMargin) / last;
  auto u_at = [&](int k) { return kGridMargin + k * step; };
  auto one_minus_u_at = [&](int k) { return kGridMargin + (last - k) * step; };
  for (int i = 0; i < n; ++i) {
    if (domain.finite_lo()) {
      // x - lo = 1/u - 1, increasing as u decreases.
      const int k = n - 1 - i;
      const double d = one_minus_u_at(k) / u_at(k);
      grid.push_back({domain.lo + d, d, kInf});
    } else if (domain.finite_hi()) {
      const double d = one_minus_u_at(i) / u_at(i);
      grid.push_back({domain.hi - d, kInf, d});
    } else {
      grid.push_back({std::log(u_at(i)) - std::log(one_minus_u_at(i)), kInf, kInf});
    }
  }
  return grid;
}

DensityCurve sample_curve(const ChartDensity& rho, const Chart& chart, int n) {
  const ChartDensity pushed = pushforward(rho, chart);
  return tabulate(rho.model(), chart, pushed, intrinsic_from_chart(rho), n);
}

DensityCurve sample_curve(const IntrinsicDensity& p, const Chart& chart, int n) {
  return tabulate(p.model(), chart, chart_from_intrinsic(p, chart), p, n);
}

}  // namespace infogeo
