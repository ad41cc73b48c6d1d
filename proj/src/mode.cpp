#include "infogeo/mode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace infogeo {

namespace {

constexpr int kScanPoints = 1024;
constexpr double kBoundaryProbe = 1e-6;   // in arc length
constexpr double kGoldenTol = kModeCoordinateTolerance;
constexpr double kModeRelTol = 1e-9;      // ties between maxima
constexpr double kFlatLogTol = 1e-9;
constexpr double kSameModeTol = 1e-8;

// A point of the search, carried in the search chart.
struct Sample {
  Coord x;       // search chart coordinate
  double log_value;
};

// Maps t in [0, 1] onto the scan chart's domain, compactifying infinite ends.
class ScanMap {
 public:
  explicit ScanMap(const Interval& domain) : domain_(domain) {}

  Coord operator()(const Coord& t) const {
    const Interval& d = domain_;
    if (d.bounded()) {
      const double w = d.width();
      const double lo = t.from_lo * w;
      const double hi = t.to_hi * w;
      return {lo <= hi ? d.lo + lo : d.hi - hi, lo, hi};
    }
    if (d.finite_lo()) {
      const double v = t.to_hi == 0.0 ? kInf : t.from_lo / t.to_hi;
      return {d.lo + v, v, kInf};
    }
    if (d.finite_hi()) {
      const double v = t.from_lo == 0.0 ? kInf : t.to_hi / t.from_lo;
      return {d.hi - v, kInf, v};
    }
    return {std::log(t.from_lo) - std::log(t.to_hi), kInf, kInf};
  }

  // Offset in t corresponding to `arc` units of scan coordinate near an end.
  double t_offset(double arc) const { return domain_.bounded() ? arc / domain_.width() : arc; }
  bool finite_end(bool lower) const { return lower ? domain_.finite_lo() : domain_.finite_hi(); }

 private:
  Interval domain_;
};

double safe_log(double v) { return std::isnan(v) ? -kInf : v; }

class Search {
 public:
  Search(const ManifoldModel& model, const Chart& chart, LogDensityFn objective)
      : chart_(chart),
        scan_chart_(model.arc_length_chart() ? *model.arc_length_chart() : model.canonical_chart()),
        scan_(scan_chart_.domain()),
        objective_(std::move(objective)) {}

  Coord chart_coord(const Coord& t) const { return chart_.from_canonical(scan_chart_.to_canonical(scan_(t))); }
  double canonical(const Coord& x) const { return chart_.to_canonical(x).value; }
  double eval(const Coord& x) const { return safe_log(objective_(x)); }

  ModeResult run() {
    std::vector<Sample> samples;
    samples.reserve(kScanPoints + 2);
    samples.push_back(boundary(true));
    for (int i = 0; i < kScanPoints; ++i) {
      const Coord t{(i + 1.0) / (kScanPoints + 1), (i + 1.0) / (kScanPoints + 1),
                    (kScanPoints - i) / double(kScanPoints + 1)};
      const Coord x = chart_coord(t);
      samples.push_back({x, eval(x)});
    }
    samples.push_back(boundary(false));
    const std::size_t last = samples.size() - 1;

    ModeResult result;
    const bool lo_div = samples.front().log_value == kInf;
    const bool hi_div = samples.back().log_value == kInf;
    if (lo_div || hi_div) {
      result.at_boundary = true;
      result.density_value = DensityValue::divergent();
      if (lo_div) result.all_modes.push_back(canonical(samples.front().x));
      if (hi_div) result.all_modes.push_back(canonical(samples.back().x));
      std::sort(result.all_modes.begin(), result.all_modes.end());
      const Sample& best = lo_div ? samples.front() : samples.back();
      set_point(result, best.x);
      return result;
    }

    double lo = kInf;
    double hi = -kInf;
    for (const auto& s : samples) {
      lo = std::min(lo, s.log_value);
      hi = std::max(hi, s.log_value);
    }
    if (hi - lo <= kFlatLogTol) {
      const Coord mid = chart_coord({0.5, 0.5, 0.5});
      result.flat = true;
      result.converged = false;
      set_point(result, mid);
      result.density_value = DensityValue::from_log(eval(mid));
      return result;
    }

    // Local maxima of the scan, then refinement of the interior ones.
    std::vector<std::pair<Sample, bool>> candidates;  // (point, is boundary)
    if (samples[0].log_value >= samples[1].log_value) candidates.emplace_back(samples[0], true);
    if (samples[last].log_value >= samples[last - 1].log_value) candidates.emplace_back(samples[last], true);
    for (std::size_t j = 1; j < last; ++j) {
      const double v = samples[j].log_value;
      const double before = samples[j - 1].log_value;
      const double after = samples[j + 1].log_value;
      if (v >= before && v >= after && (v > before || v > after)) {
        candidates.emplace_back(refine(samples[j - 1].x, samples[j], samples[j + 1].x), false);
      }
    }

    if (candidates.empty()) {
      const auto top = std::max_element(samples.begin(), samples.end(),
                                        [](const Sample& x, const Sample& y) { return x.log_value < y.log_value; });
      candidates.emplace_back(*top, top == samples.begin() || top == samples.end() - 1);
    }

    auto better = [](const std::pair<Sample, bool>& a, const std::pair<Sample, bool>& b) {
      return a.first.log_value < b.first.log_value;
    };
    const auto best = *std::max_element(candidates.begin(), candidates.end(), better);
    const double cutoff = best.first.log_value + std::log1p(-kModeRelTol);
    for (const auto& [s, boundary] : candidates) {
      if (s.log_value < cutoff) continue;
      const double c = canonical(s.x);
      const bool seen = std::any_of(result.all_modes.begin(), result.all_modes.end(),
                                    [&](double m) { return std::abs(m - c) <= kSameModeTol * std::max(1.0, std::abs(c)); });
      if (!seen) result.all_modes.push_back(c);
    }
    std::sort(result.all_modes.begin(), result.all_modes.end());

    set_point(result, best.first.x);
    result.at_boundary = best.second;
    result.density_value = DensityValue::from_log(best.first.log_value);
    result.converged = converged_;
    return result;
  }

 private:
  void set_point(ModeResult& r, const Coord& x) const {
    r.canonical_point = canonical(x);
    r.chart_point = x.value;
  }

  // Limit of the objective at one end of the scan range.
  Sample boundary(bool lower) const {
    const Coord t_end = lower ? Coord{0.0, 0.0, 1.0} : Coord{1.0, 1.0, 0.0};
    const Coord x_end = chart_coord(t_end);
    const double exact = objective_(x_end);
    if (!std::isnan(exact)) return {x_end, exact};
    std::array<double, 3> logs{};
    for (int i = 0; i < 3; ++i) {
      const double dt = scan_.t_offset(kBoundaryProbe * std::ldexp(1.0, i));
      const Coord t = lower ? Coord{dt, dt, 1.0 - dt} : Coord{1.0 - dt, 1.0 - dt, dt};
      logs[i] = eval(chart_coord(t));
    }
    const DensityValue v = classify_boundary(logs[0], logs[1], logs[2], scan_.finite_end(lower));
    return {x_end, v.log_value()};
  }

  // Coordinate at chart value v between the bracket ends a < b, keeping
  // the exact end distances of a and b.
  static Coord between(const Coord& a, const Coord& b, double v) {
    return {v, a.from_lo + (v - a.value), b.to_hi + (b.value - v)};
  }

  Sample refine(Coord a, const Sample& mid, Coord b) {
    if (a.value > b.value) std::swap(a, b);
    if (!std::isfinite(a.value) || !std::isfinite(b.value)) return mid;
    auto f = [&](double v) { return eval(between(a, b, v)); };

    // Golden-section search for the maximum.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = a.value;
    double hi = b.value;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    int iterations = 0;
    while (hi - lo > kGoldenTol * std::max(1.0, std::abs(lo)) && iterations < 200) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = f(x1);
      }
      ++iterations;
    }
    if (iterations >= 200) converged_ = false;
    double x = f1 >= f2 ? x1 : x2;
    double fx = std::max(f1, f2);
    if (mid.log_value > fx) {
      x = mid.x.value;
      fx = mid.log_value;
    }

    // Comparing values stalls about sqrt(eps) away from the true maximum;
    // the slope of the log density still has a clean sign change there.
    if (const auto polished = polish(a, b, x)) {
      const double fp = f(*polished);
      if (fp >= fx - 1e-12) {
        x = *polished;
        fx = fp;
      }
    }
    return {between(a, b, x), fx};
  }

  std::optional<double> polish(const Coord& a, const Coord& b, double x) const {
    const double h = 1e-3 * (b.value - a.value) / 2;
    if (!(h > 0)) return std::nullopt;
    auto slope = [&](double v) {
      return (eval(between(a, b, v + h)) - eval(between(a, b, v - h))) / (2 * h);
    };
    double step = h;
    double lo = x - step;
    double hi = x + step;
    auto inside = [&](double v) { return v - h > a.value && v + h < b.value; };
    while (!(slope(lo) > 0 && slope(hi) < 0)) {
      step *= 2;
      lo = x - step;
      hi = x + step;
      if (!inside(lo) || !inside(hi)) return std::nullopt;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(x)); ++i) {
      const double m = lo + (hi - lo) / 2;
      if (slope(m) > 0) {
        lo = m;
      } else {
        hi = m;
      }
    }
    return lo + (hi - lo) / 2;
  }

  const Chart& chart_;
  const Chart& scan_chart_;
  ScanMap scan_;
  LogDensityFn objective_;
  bool converged_ = true;
};

ModeResult report_in(ModeResult r, const Chart& report_chart) {
  r.chart_point = report_chart.from_canonical(r.canonical_point);
  return r;
}

}  // namespace

ModeResult map_estimate(const ChartDensity& rho) {
  Search search(rho.model(), rho.chart(), [&rho](const Coord& x) { return rho.log_density(x); });
  return search.run();
}

ModeResult mapi_estimate(const IntrinsicDensity& p, const Chart& report_chart, const Chart& search_chart) {
  require_same_model(p.model(), report_chart);
  require_same_model(p.model(), search_chart);
  auto objective = [&p, &search_chart](const Coord& x) { return p.log_density(search_chart.to_canonical(x)); };
  Search search(p.model(), search_chart, objective);
  return report_in(search.run(), report_chart);
}

ModeResult mapi_estimate(const IntrinsicDensity& p, const Chart& report_chart) {
  const ManifoldModel& model = p.model();
  const Chart& search_chart = model.arc_length_chart() ? *model.arc_length_chart() : model.canonical_chart();
  return mapi_estimate(p, report_chart, search_chart);
}

ModeResult beta_mode_analytic(const BetaParams& params, bool intrinsic) {
  const double shift = intrinsic ? 0.5 : 1.0;
  const double a = params.alpha - shift;
  const double b = params.beta - shift;
  const double log_norm = log_beta_function(params.alpha, params.beta);

  ModeResult r;
  auto boundary = [&](std::vector<double> modes, DensityValue value) {
    r.all_modes = std::move(modes);
    r.canonical_point = r.all_modes.front();
    r.at_boundary = true;
    r.density_value = value;
  };

  if (a > 0 && b > 0) {
    const double theta = a / (a + b);
    r.canonical_point = theta;
    r.all_modes = {theta};
    r.density_value = DensityValue::from_log(a * std::log(theta) + b * std::log1p(-theta) - log_norm);
  } else if (a == 0 && b == 0) {
    r.flat = true;
    r.converged = false;
    r.canonical_point = 0.5;
    r.density_value = DensityValue::from_log(-log_norm);
  } else if (a < 0 && b < 0) {
    boundary({0.0, 1.0}, DensityValue::divergent());
  } else if (a < 0) {
    boundary({0.0}, DensityValue::divergent());
  } else if (b < 0) {
    boundary({1.0}, DensityValue::divergent());
  } else if (a == 0) {
    boundary({0.0}, DensityValue::from_log(-log_norm));
  } else {
    boundary({1.0}, DensityValue::from_log(-log_norm));
  }
  r.chart_point = r.canonical_point;
  return r;
}

}  // namespace infogeo
