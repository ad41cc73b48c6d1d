#include "infogeo/quadrature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "infogeo/errors.hpp"

namespace infogeo {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0) || max_refinement_levels < 1) {
    throw std::invalid_argument(fmt::format("invalid quadrature config (abs_tol {}, rel_tol {}, levels {})",
                                            abs_tol, rel_tol, max_refinement_levels));
  }
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Truncation of the transformed variable t. Beyond these the node distances
// to the interval ends leave the normal double range.
constexpr double kTanhSinhTMax = 6.0;
constexpr double kExpSinhTMax = 6.7;

// Terms this close to the truncation ends are watched for lack of decay.
constexpr double kTailBand = 1.0;

// Convergence is not declared before this many halvings.
constexpr int kMinLevels = 3;

struct Node {
  Coord at;  // relative to the caller's interval
  double weight;
};

// One transformed sub-range of the caller's interval.
class Piece {
 public:
  enum class Kind { kTanhSinh, kExpSinhUp, kExpSinhDown };

  // [a, b] is the sub-range; offsets are the distances from its ends to the
  // ends of the full interval.
  Piece(Kind kind, double a, double b, double offset_lo, double offset_hi)
      : kind_(kind), a_(a), b_(b), offset_lo_(offset_lo), offset_hi_(offset_hi) {}

  double t_max() const { return kind_ == Kind::kTanhSinh ? kTanhSinhTMax : kExpSinhTMax; }

  Node node(double t) const {
    const double u = kHalfPi * std::sinh(t);
    const double dudt = kHalfPi * std::cosh(t);
    switch (kind_) {
      case Kind::kTanhSinh: {
        const double half = (b_ - a_) / 2;
        const double e = std::exp(-2 * std::abs(u));
        const double near = 2 * half * e / (1 + e);
        const double far = 2 * half / (1 + e);
        const double from_a = u < 0 ? near : far;
        const double to_b = u < 0 ? far : near;
        const double value = from_a <= to_b ? a_ + from_a : b_ - to_b;
        const double weight = half * dudt * 4 * e / ((1 + e) * (1 + e));
        return {{value, offset_lo_ + from_a, offset_hi_ + to_b}, weight};
      }
      case Kind::kExpSinhUp: {
        const double d = std::exp(u);
        return {{a_ + d, offset_lo_ + d, kInf}, dudt * d};
      }
      case Kind::kExpSinhDown: {
        const double d = std::exp(u);
        return {{b_ - d, kInf, offset_hi_ + d}, dudt * d};
      }
    }
    return {{}, 0.0};
  }

 private:
  Kind kind_;
  double a_;
  double b_;
  double offset_lo_;
  double offset_hi_;
};

std::vector<Piece> split(const Interval& iv) {
  using K = Piece::Kind;
  if (iv.bounded()) {
    const double mid = iv.lo + (iv.hi - iv.lo) / 2;
    return {Piece(K::kTanhSinh, iv.lo, mid, 0.0, iv.hi - mid), Piece(K::kTanhSinh, mid, iv.hi, mid - iv.lo, 0.0)};
  }
  if (iv.finite_lo()) return {Piece(K::kExpSinhUp, iv.lo, kInf, 0.0, kInf)};
  if (iv.finite_hi()) return {Piece(K::kExpSinhDown, -kInf, iv.hi, kInf, 0.0)};
  return {Piece(K::kExpSinhDown, -kInf, 0.0, kInf, kInf), Piece(K::kExpSinhUp, 0.0, kInf, kInf, kInf)};
}

// Runs the level loop over all pieces at once.
QuadratureResult integrate_pieces(const CoordIntegrand& f, const std::vector<Piece>& pieces,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureResult result;
  double raw_sum = 0.0;  // sum of weight * f over all nodes so far
  double tail = 0.0;     // largest |weight * f| near the truncation points
  double previous = std::numeric_limits<double>::quiet_NaN();

  auto accumulate = [&](const Piece& piece, double t) {
    const Node n = piece.node(t);
    if (n.weight == 0.0 || n.at.from_lo == 0.0 || n.at.to_hi == 0.0) return;
    const double fx = f(n.at);
    ++result.evaluations;
    const double term = n.weight * fx;
    if (!std::isfinite(term)) return;
    raw_sum += term;
    if (std::abs(t) >= piece.t_max() - kTailBand) tail = std::max(tail, std::abs(term));
  };

  for (int level = 0; level <= cfg.max_refinement_levels; ++level) {
    const double step = std::ldexp(1.0, -level);
    for (const auto& piece : pieces) {
      const long count = static_cast<long>(std::floor(piece.t_max() / step));
      // Level 0 takes every integer node; later levels only the odd multiples.
      const long stride = level == 0 ? 1 : 2;
      const long first = level == 0 ? 0 : 1;
      for (long k = first; k <= count; k += stride) {
        const double t = k * step;
        accumulate(piece, t);
        if (k != 0) accumulate(piece, -t);
      }
    }
    const double estimate = step * raw_sum;
    result.value = estimate;
    if (level > 0) {
      result.error_estimate = std::abs(estimate - previous) + tail;
      const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(estimate));
      if (level >= std::min(kMinLevels, cfg.max_refinement_levels) && result.error_estimate <= target &&
          std::isfinite(estimate)) {
        result.converged = true;
        return result;
      }
    }
    previous = estimate;
  }
  return result;
}

Interval arc_length_region(const Chart& arc, const Interval& region, const Interval& domain) {
  const double lo = region.lo == domain.lo ? arc.domain().lo : arc.from_canonical(region.lo);
  const double hi = region.hi == domain.hi ? arc.domain().hi : arc.from_canonical(region.hi);
  return Interval(lo, hi, region.open_lo, region.open_hi);
}

void check_region(const ManifoldModel& model, const Interval& region) {
  if (!model.canonical_domain().covers(region)) {
    throw DomainError(fmt::format("region {} is not inside the domain {} of '{}'", region.to_string(),
                                  model.canonical_domain().to_string(), model.name()));
  }
}

}  // namespace

QuadratureResult integrate_chart(const CoordIntegrand& f, const Interval& interval, const QuadratureConfig& cfg) {
  return integrate_pieces(f, split(interval), cfg);
}

QuadratureResult integrate_chart(const ScalarIntegrand& f, const Interval& interval, const QuadratureConfig& cfg) {
  auto inside = [&](const Coord& c) {
    if (!(c.value > interval.lo && c.value < interval.hi)) return 0.0;
    return f(c.value);
  };
  return integrate_pieces(inside, split(interval), cfg);
}

QuadratureResult integrate_manifold(const CoordIntegrand& f, const ManifoldModel& model, const Interval& region,
                                    const QuadratureConfig& cfg) {
  check_region(model, region);
  const Interval& domain = model.canonical_domain();
  if (const Chart* arc = model.arc_length_chart()) {
    const Interval s_region = arc_length_region(*arc, region, domain);
    auto in_arc = [&](const Coord& s) { return f(arc->to_canonical(rebase(s, s_region, arc->domain()))); };
    return integrate_chart(CoordIntegrand(in_arc), s_region, cfg);
  }
  auto weighted = [&](const Coord& c) {
    const Coord theta = rebase(c, region, domain);
    return f(theta) * std::exp(0.5 * model.log_fisher_metric(theta));
  };
  return integrate_chart(CoordIntegrand(weighted), region, cfg);
}

QuadratureResult integrate_manifold(const ScalarIntegrand& f, const ManifoldModel& model, const Interval& region,
                                    const QuadratureConfig& cfg) {
  return integrate_manifold(CoordIntegrand([&](const Coord& c) { return f(c.value); }), model, region, cfg);
}

QuadratureResult expectation(const IntrinsicDensity& p, const ScalarIntegrand& f, const QuadratureConfig& cfg) {
  auto integrand = [&](const Coord& theta) {
    const double density = std::exp(p.log_density(theta));
    return density == 0.0 ? 0.0 : f(theta.value) * density;
  };
  return integrate_manifold(CoordIntegrand(integrand), p.model(), p.model().canonical_domain(), cfg);
}

QuadratureResult expectation(const ChartDensity& rho, const ScalarIntegrand& f, const QuadratureConfig& cfg) {
  const Chart& chart = rho.chart();
  auto integrand = [&](const Coord& x) {
    const double density = std::exp(rho.log_density(x));
    return density == 0.0 ? 0.0 : f(chart.to_canonical(x).value) * density;
  };
  return integrate_chart(CoordIntegrand(integrand), chart.domain(), cfg);
}

QuadratureResult interval_probability(const IntrinsicDensity& p, const Interval& region,
                                      const QuadratureConfig& cfg) {
  auto integrand = [&](const Coord& theta) { return std::exp(p.log_density(theta)); };
  return integrate_manifold(CoordIntegrand(integrand), p.model(), region, cfg);
}

}  // namespace infogeo
