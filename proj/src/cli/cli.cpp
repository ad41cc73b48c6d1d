#include "infogeo/cli.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infogeo/density.hpp"
#include "infogeo/embed.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/manifold.hpp"
#include "infogeo/mode.hpp"
#include "infogeo/quadrature.hpp"

namespace infogeo::cli {

namespace {

using nlohmann::ordered_json;

// Invalid request detected after parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that ran but did not meet its tolerance; exit code 1.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Request {
  std::string subcommand;
  std::string model = "bernoulli";
  std::string chart = "theta";
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> from;
  std::optional<double> to;
  int samples = 1001;
  std::string format = "csv";
  std::string output;
  std::string kind = "mapi";
  std::string search_chart;
  bool analytic = false;
  std::string of = "theta";
  std::string series = "p";
  std::optional<double> x_max;
};


ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

ordered_json request_json(const Request& r) {
  ordered_json j;
  j["subcommand"] = r.subcommand;
  j["model"] = r.model;
  j["chart"] = r.chart;
  if (r.alpha) j["alpha"] = *r.alpha;
  if (r.beta) j["beta"] = *r.beta;
  if (r.from) j["from"] = *r.from;
  if (r.to) j["to"] = *r.to;
  j["format"] = r.format;
  if (r.subcommand == "density" || r.subcommand == "embed") j["samples"] = r.samples;
  if (r.subcommand == "mode") {
    j["kind"] = r.kind;
    j["analytic"] = r.analytic;
    if (!r.search_chart.empty()) j["search_chart"] = r.search_chart;
  }
  if (r.subcommand == "expect") j["of"] = r.of;
  return j;
}

std::string envelope(const Request& req, ordered_json result, double error_estimate) {
  ordered_json j;
  j["request"] = request_json(req);
  j["result"] = std::move(result);
  j["error_estimate"] = json_number(error_estimate);
  j["version"] = version();
  return j.dump(2) + "\n";
}

std::string csv_preamble(const Request& req) {
  return fmt::format("# infogeo {}\n# subcommand: {}\n# model: {}\n", version(), req.subcommand, req.model);
}

// ---- validation

ManifoldModel checked_model(const Request& req) {
  try {
    return model_by_name(req.model);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

const Chart& checked_chart(const ManifoldModel& model, const std::string& name) {
  if (!model.has_chart(name)) {
    throw UsageError(fmt::format("model '{}' has no chart '{}' (available: {})", model.name(), name,
                                 fmt::join(model.chart_names(), ", ")));
  }
  return model.chart(name);
}

BetaParams checked_beta(const Request& req) {
  if (req.model != "bernoulli") {
    throw UsageError(fmt::format("Beta densities live on the bernoulli model, not '{}'", req.model));
  }
  if (!req.alpha || !req.beta) throw UsageError("--alpha and --beta are required");
  try {
    return BetaParams(*req.alpha, *req.beta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Interval checked_region(const ManifoldModel& model, const Request& req) {
  const Interval& d = model.canonical_domain();
  if (!req.from && !req.to) return d;
  if (!req.from || !req.to) throw UsageError("--from and --to must be given together");
  const double a = *req.from;
  const double b = *req.to;
  if (!(a < b)) throw UsageError(fmt::format("--from {} must be less than --to {}", a, b));
  if (!d.in_closure(a) || !d.in_closure(b)) {
    throw UsageError(fmt::format("range [{}, {}] is outside the domain {}", a, b, d.to_string()));
  }
  return Interval(a, b, a == d.lo && d.open_lo, b == d.hi && d.open_hi);
}

void require_format(const Request& req, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (req.format == f) return;
  }
  throw UsageError(fmt::format("format '{}' is not available for '{}'", req.format, req.subcommand));
}

QuadratureResult require_converged(const QuadratureResult& r, const std::string& what) {
  if (!r.converged) {
    throw NumericalFailure(fmt::format("{} did not converge: estimate {}, error estimate {}", what,
                                       format_number(r.value), format_number(r.error_estimate)));
  }
  return r;
}

// ---- subcommands

std::string render_scalar(const Request& req, const std::string& quantity, double value, double error_estimate,
                          std::optional<QuadratureResult> q) {
  if (req.format == "json") {
    ordered_json result;
    result["quantity"] = quantity;
    result["value"] = json_number(value);
    if (q) {
      result["converged"] = q->converged;
      result["evaluations"] = q->evaluations;
    }
    return envelope(req, result, error_estimate);
  }
  return csv_preamble(req) + "quantity,value,error_estimate\n" +
         fmt::format("{},{},{}\n", quantity, format_number(value), format_number(error_estimate));
}

std::string run_volume(const Request& req) {
  require_format(req, {"csv", "json"});
  const ManifoldModel model = checked_model(req);
  const Interval region = checked_region(model, req);
  QuadratureResult r;
  try {
    r = volume_estimate(model, region);
  } catch (const NonFiniteVolumeError& e) {
    throw NumericalFailure(e.what());
  }
  return render_scalar(req, "volume", r.value, r.error_estimate, r);
}

std::string run_distance(const Request& req) {
  require_format(req, {"csv", "json"});
  const ManifoldModel model = checked_model(req);
  if (!req.from || !req.to) throw UsageError("--from and --to are required");
  const Interval& d = model.canonical_domain();
  if (!d.in_closure(*req.from) || !d.in_closure(*req.to)) {
    throw UsageError(fmt::format("points must lie in {}", d.to_string()));
  }
  return render_scalar(req, "fisher_rao_distance", fisher_rao_distance(model, *req.from, *req.to), 0.0,
                       std::nullopt);
}

std::string run_prob(const Request& req) {
  require_format(req, {"csv", "json"});
  const BetaParams params = checked_beta(req);
  const ManifoldModel model = bernoulli_model();
  if (!req.from || !req.to) throw UsageError("--from and --to are required");
  const Interval region = checked_region(model, req);
  const IntrinsicDensity p = intrinsic_from_chart(beta_chart_density(params));
  const auto r = require_converged(interval_probability(p, region), "interval probability");
  return render_scalar(req, "probability", r.value, r.error_estimate, r);
}

std::string run_expect(const Request& req) {
  require_format(req, {"csv", "json"});
  const BetaParams params = checked_beta(req);
  const ManifoldModel model = bernoulli_model();
  const IntrinsicDensity p = intrinsic_from_chart(beta_chart_density(params));
  ScalarIntegrand f;
  if (req.of == "one") {
    f = [](double) { return 1.0; };
  } else if (req.of == "theta") {
    f = [](double t) { return t; };
  } else if (req.of == "theta2") {
    f = [](double t) { return t * t; };
  } else if (req.of == "arclength") {
    f = [model](double t) { return model.arc_length_from_origin(t); };
  } else {
    throw UsageError(fmt::format("unknown function '{}'", req.of));
  }
  const auto r = require_converged(expectation(p, f), "expectation");
  return render_scalar(req, "expectation_of_" + req.of, r.value, r.error_estimate, r);
}

std::string run_mode(const Request& req) {
  require_format(req, {"csv", "json"});
  const BetaParams params = checked_beta(req);
  const ManifoldModel model = bernoulli_model();
  const Chart& chart = checked_chart(model, req.chart);
  if (req.kind != "map" && req.kind != "mapi") throw UsageError(fmt::format("unknown mode kind '{}'", req.kind));
  const bool intrinsic = req.kind == "mapi";

  ModeResult m;
  if (req.analytic) {
    if (!intrinsic && chart.name() != "theta") {
      throw UsageError("the analytic MAP is only available in the theta chart");
    }
    m = beta_mode_analytic(params, intrinsic);
    m.chart_point = chart.from_canonical(m.canonical_point);
  } else if (intrinsic) {
    const IntrinsicDensity p = intrinsic_from_chart(beta_chart_density(params));
    const std::string search = req.search_chart.empty() ? "arclength" : req.search_chart;
    m = mapi_estimate(p, chart, checked_chart(model, search));
  } else {
    m = map_estimate(pushforward(beta_chart_density(params), chart));
  }
  if (!m.converged && !m.flat) {
    throw NumericalFailure(fmt::format("mode search did not converge; best point {}", format_number(m.canonical_point)));
  }

  const double tolerance = req.analytic ? 0.0 : kModeCoordinateTolerance;
  if (req.format == "json") {
    ordered_json result;
    result["kind"] = req.kind;
    result["chart"] = chart.name();
    result["canonical_point"] = json_number(m.canonical_point);
    result["chart_point"] = json_number(m.chart_point);
    result["density_value"] = m.density_value.diverges() ? ordered_json("inf") : json_number(m.density_value.value());
    result["at_boundary"] = m.at_boundary;
    result["flat"] = m.flat;
    result["converged"] = m.converged;
    result["all_modes"] = ordered_json::array();
    for (double c : m.all_modes) result["all_modes"].push_back(c);
    return envelope(req, result, tolerance);
  }
  std::vector<std::string> modes;
  for (double c : m.all_modes) modes.push_back(format_number(c));
  return csv_preamble(req) + fmt::format("# chart: {}\n", chart.name()) +
         "canonical_point,chart_point,density_value,at_boundary,flat,converged,all_modes\n" +
         fmt::format("{},{},{},{},{},{},{}\n", format_number(m.canonical_point), format_number(m.chart_point),
                     format_density(m.density_value), m.at_boundary, m.flat, m.converged, fmt::join(modes, ";"));
}

std::string render_curve(const Request& req, const DensityCurve& curve) {
  if (req.format == "csv") return curve_csv(curve);
  if (req.format == "svg") {
    if (req.series != "rho" && req.series != "p") throw UsageError(fmt::format("unknown series '{}'", req.series));
    return curve_svg(curve, req.series, req.x_max.value_or(std::nan("")));
  }
  ordered_json result;
  result["model"] = curve.model;
  result["chart"] = curve.chart;
  result["density"] = curve.label;
  result["columns"] = {"chart_coord", "canonical_coord", "rho", "p", "embed_x", "embed_y"};
  result["rows"] = ordered_json::array();
  for (const auto& r : curve.rows) {
    auto dv = [](const DensityValue& v) { return v.diverges() ? ordered_json("inf") : json_number(v.value()); };
    result["rows"].push_back({json_number(r.chart_coord), json_number(r.canonical_coord), dv(r.rho), dv(r.p),
                              json_number(r.embed_x), json_number(r.embed_y)});
  }
  return envelope(req, result, 0.0);
}

std::string run_density(const Request& req) {
  const BetaParams params = checked_beta(req);
  const ManifoldModel model = bernoulli_model();
  const Chart& chart = checked_chart(model, req.chart);
  if (req.samples < 2) throw UsageError("--samples must be at least 2");
  return render_curve(req, sample_curve(beta_chart_density(params), chart, req.samples));
}

std::string run_embed(const Request& req) {
  if (req.model != "bernoulli") throw UsageError("only the bernoulli model has a planar embedding");
  Request r = req;
  if (!r.alpha) r.alpha = 0.5;
  if (!r.beta) r.beta = 0.5;
  return run_density(r);
}

std::string dispatch(const Request& req) {
  if (req.subcommand == "volume") return run_volume(req);
  if (req.subcommand == "distance") return run_distance(req);
  if (req.subcommand == "prob") return run_prob(req);
  if (req.subcommand == "expect") return run_expect(req);
  if (req.subcommand == "mode") return run_mode(req);
  if (req.subcommand == "density") return run_density(req);
  if (req.subcommand == "embed") return run_embed(req);
  throw UsageError(fmt::format("unknown subcommand '{}'", req.subcommand));
}

void add_common(CLI::App* sub, Request& req) {
  sub->add_option("--model", req.model, "Statistical model (bernoulli, poisson, exponential)")
      ->capture_default_str();
  sub->add_option("--format", req.format, "Output format: csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  sub->add_option("-o,--output", req.output, "Write to this file instead of standard output");
}

void add_beta(CLI::App* sub, Request& req) {
  sub->add_option("--alpha", req.alpha, "Beta alpha parameter");
  sub->add_option("--beta", req.beta, "Beta beta parameter");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Request req;
  CLI::App app{"Densities, modes and distances on one-parameter statistical manifolds", "infogeo"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  auto* volume_cmd = app.add_subcommand("volume", "Riemannian volume of a model (or of --from/--to)");
  add_common(volume_cmd, req);
  volume_cmd->add_option("--from", req.from, "Lower end of the region (canonical coordinate)");
  volume_cmd->add_option("--to", req.to, "Upper end of the region (canonical coordinate)");

  auto* density_cmd = app.add_subcommand("density", "Tabulate rho and p of a Beta density in a chart");
  add_common(density_cmd, req);
  add_beta(density_cmd, req);
  density_cmd->add_option("--chart", req.chart, "Chart: theta, arcsin, reciprocal, arclength")->capture_default_str();
  density_cmd->add_option("--samples", req.samples, "Number of grid points")->capture_default_str();
  density_cmd->add_option("--series", req.series, "Series drawn in SVG output: rho or p")->capture_default_str();
  density_cmd->add_option("--x-max", req.x_max, "Drop SVG points beyond this chart coordinate");

  auto* mode_cmd = app.add_subcommand("mode", "MAP (chart-dependent) or MAPI (intrinsic) estimate of a Beta density");
  add_common(mode_cmd, req);
  add_beta(mode_cmd, req);
  mode_cmd->add_option("--kind", req.kind, "map or mapi")->capture_default_str();
  mode_cmd->add_option("--chart", req.chart, "Chart of the MAP search / MAPI report")->capture_default_str();
  mode_cmd->add_option("--search-chart", req.search_chart, "Chart the MAPI search runs in (default arclength)");
  mode_cmd->add_flag("--analytic", req.analytic, "Use the closed-form Beta mode");

  auto* expect_cmd = app.add_subcommand("expect", "Expectation under the intrinsic density of a Beta");
  add_common(expect_cmd, req);
  add_beta(expect_cmd, req);
  expect_cmd->add_option("--of", req.of, "Function: one, theta, theta2, arclength")->capture_default_str();

  auto* prob_cmd = app.add_subcommand("prob", "Probability of a canonical-coordinate range under a Beta");
  add_common(prob_cmd, req);
  add_beta(prob_cmd, req);
  prob_cmd->add_option("--from", req.from, "Lower end (canonical coordinate)");
  prob_cmd->add_option("--to", req.to, "Upper end (canonical coordinate)");

  auto* distance_cmd = app.add_subcommand("distance", "Fisher-Rao distance between two canonical points");
  add_common(distance_cmd, req);
  distance_cmd->add_option("--from", req.from, "First point");
  distance_cmd->add_option("--to", req.to, "Second point");

  auto* embed_cmd = app.add_subcommand("embed", "Bernoulli manifold in the plane with density heights");
  add_common(embed_cmd, req);
  add_beta(embed_cmd, req);
  embed_cmd->add_option("--chart", req.chart, "Chart used for the sample grid")->capture_default_str();
  embed_cmd->add_option("--samples", req.samples, "Number of grid points")->capture_default_str();
  embed_cmd->add_option("--series", req.series, "Series drawn in SVG output: rho or p")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::kOk);
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::kOk);
  } catch (const CLI::CallForVersion& e) {
    out << version() << "\n";
    return static_cast<int>(ExitCode::kOk);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::kUsage);
  }
  req.subcommand = app.get_subcommands().front()->get_name();

  std::string text;
  try {
    text = dispatch(req);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const ChartMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kNumericalFailure);
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (error estimate " << format_number(e.error_estimate()) << ")\n";
    return static_cast<int>(ExitCode::kNumericalFailure);
  }

  if (req.output.empty()) {
    out << text;
  } else {
    std::ofstream file(req.output, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write " << req.output << "\n";
      return static_cast<int>(ExitCode::kNumericalFailure);
    }
  }
  return static_cast<int>(ExitCode::kOk);
}

}  // namespace infogeo::cli
