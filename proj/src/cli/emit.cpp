#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "infogeo/cli.hpp"

namespace infogeo::cli {

const char* version() { return INFOGEO_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string format_density(const DensityValue& v) {
  if (v.diverges()) return "inf";
  return format_number(v.value());
}

std::string curve_csv(const DensityCurve& curve) {
  std::string out;
  out += fmt::format("# infogeo {}\n", version());
  out += fmt::format("# model: {}\n", curve.model);
  out += fmt::format("# chart: {}\n", curve.chart);
  out += fmt::format("# density: {}\n", curve.label);
  out += fmt::format("# samples: {}\n", curve.rows.size());
  out += "chart_coord,canonical_coord,rho,p,embed_x,embed_y\n";
  for (const auto& r : curve.rows) {
    out += fmt::format("{},{},{},{},{},{}\n", format_number(r.chart_coord), format_number(r.canonical_coord),
                       format_density(r.rho), format_density(r.p), format_number(r.embed_x),
                       format_number(r.embed_y));
  }
  return out;
}

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kMargin = 50;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string curve_svg(const DensityCurve& curve, const std::string& series, double x_max) {
  struct Pt {
    double x;
    double y;  // +inf for divergent
  };
  std::vector<Pt> pts;
  for (const auto& r : curve.rows) {
    if (!std::isnan(x_max) && r.chart_coord > x_max) continue;
    const DensityValue& v = series == "rho" ? r.rho : r.p;
    pts.push_back({r.chart_coord, v.value()});
  }

  std::vector<double> finite;
  for (const auto& p : pts) {
    if (std::isfinite(p.y)) finite.push_back(p.y);
  }
  double y_top = 1.0;
  if (!finite.empty()) {
    std::sort(finite.begin(), finite.end());
    const auto idx = static_cast<std::size_t>(0.98 * static_cast<double>(finite.size() - 1));
    y_top = 1.1 * finite[idx];
    if (!(y_top > 0)) y_top = 1.0;
  }
  const double x_lo = pts.empty() ? 0.0 : pts.front().x;
  const double x_hi = pts.empty() ? 1.0 : pts.back().x;
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - x_lo) / x_span * plot_w; };
  auto sy = [&](double y) { return kHeight - kMargin - std::min(y, y_top) / y_top * plot_h; };

  std::string out;
  out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     kWidth, kHeight, kWidth, kHeight);
  out += fmt::format("<!-- infogeo {} -->\n", version());
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kMargin,
                     kHeight - kMargin, kWidth - kMargin);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kMargin, kMargin,
                     kHeight - kMargin);
  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const auto& p : pts) {
    if (std::isnan(p.y)) continue;
    out += fmt::format("{}{:.3f},{:.3f}", first ? "" : " ", sx(p.x), sy(p.y));
    first = false;
  }
  out += "\"/>\n";
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{} ({}, chart {})</text>\n",
                     kWidth / 2, kMargin / 2, escape(curve.label), series, escape(curve.chart));
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n", kWidth / 2,
                     kHeight - kMargin / 4, escape(curve.chart));
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", kMargin, kHeight - kMargin + 15,
                     format_number(x_lo));
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n", kWidth - kMargin,
                     kHeight - kMargin + 15, format_number(x_hi));
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{:.4g}</text>\n", kMargin - 4,
                     kMargin + 4, y_top);
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">0</text>\n", kMargin - 4,
                     kHeight - kMargin);
  out += "</svg>\n";
  return out;
}

}  // namespace infogeo::cli
