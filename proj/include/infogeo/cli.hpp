#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "infogeo/embed.hpp"
#include "infogeo/mode.hpp"

namespace infogeo::cli {

enum class ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsage = 2 };

// Runs one command line. `args` includes the program name. Artifacts go to
// `out` (or the --output file), diagnostics to `err`. Nothing is written
// to the artifact destination when the run fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

// Writers shared by the subcommands. Every format starts with a version
// line (CSV comment, JSON "version" field, SVG comment); the rest is a pure
// function of the inputs.
std::string format_number(double v);  // 17 significant digits, "inf", "-inf", "nan"
std::string format_density(const DensityValue& v);

std::string curve_csv(const DensityCurve& curve);
// `series` is "rho" or "p". The y range stops at 1.1 times the 98th
// percentile of finite values and larger values are drawn at the top edge;
// rows beyond x_max (no limit when NaN) are dropped.
std::string curve_svg(const DensityCurve& curve, const std::string& series, double x_max = std::nan(""));

}  // namespace infogeo::cli
