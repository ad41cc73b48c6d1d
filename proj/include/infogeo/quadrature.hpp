#pragma once

// Double-exponential quadrature for integrands with integrable endpoint
// singularities and for half-infinite ranges.
//
// Finite intervals are split at the midpoint and each half is integrated
// with the tanh-sinh rule; half-infinite intervals use the exp-sinh rule and
// doubly infinite ones are split at zero. The step is halved level by level
// and the error estimate is the difference between consecutive levels plus
// the size of the terms at the truncation points of the transformed range.
//
// Integrands taking a Coord see exact distances to the interval ends, which
// is what makes integrals like the one of theta^-1/2 (1-theta)^-1/2 reach
// full precision. Integrands taking a double are only sampled at points that
// round strictly inside the interval.

#include <functional>

#include "infogeo/coord.hpp"
#include "infogeo/density.hpp"
#include "infogeo/manifold.hpp"
#include "infogeo/quadrature_config.hpp"

namespace infogeo {

using CoordIntegrand = std::function<double(const Coord&)>;
using ScalarIntegrand = std::function<double(double)>;

// Integral with respect to dx over `interval`. The Coord passed to `f` is
// relative to `interval`.
QuadratureResult integrate_chart(const CoordIntegrand& f, const Interval& interval,
                                 const QuadratureConfig& cfg = {});
QuadratureResult integrate_chart(const ScalarIntegrand& f, const Interval& interval,
                                 const QuadratureConfig& cfg = {});

// Integral with respect to the Riemannian measure over a region of the
// canonical domain. Runs in the arc-length chart when the model has one
// and as the integral of f sqrt(G) in theta otherwise. The Coord passed to
// `f` is relative to the canonical domain.
QuadratureResult integrate_manifold(const CoordIntegrand& f, const ManifoldModel& model,
                                    const Interval& region, const QuadratureConfig& cfg = {});
QuadratureResult integrate_manifold(const ScalarIntegrand& f, const ManifoldModel& model,
                                    const Interval& region, const QuadratureConfig& cfg = {});

// E[f] = integral of f p over the manifold.
QuadratureResult expectation(const IntrinsicDensity& p, const ScalarIntegrand& f,
                             const QuadratureConfig& cfg = {});
// The same expectation computed from a chart density: integral of
// f(theta(x')) rho(x') dx'.
QuadratureResult expectation(const ChartDensity& rho, const ScalarIntegrand& f,
                             const QuadratureConfig& cfg = {});

// P(theta in region); region in canonical coordinates.
QuadratureResult interval_probability(const IntrinsicDensity& p, const Interval& region,
                                      const QuadratureConfig& cfg = {});

}  // namespace infogeo
