#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <numbers>

#include "figures.hpp"
#include "oracles.hpp"

using figures::run;
using nlohmann::json;
using std::numbers::pi;

namespace {

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const figures::Run r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

// Everything after the first line, which carries the version.
std::string data_section(const std::string& s) { return s.substr(s.find('\n') + 1); }

}  // namespace

TEST(Cli, ModeExample) {
  const json j = run_json({"mode", "--model", "bernoulli", "--alpha", "1.05", "--beta", "2.05", "--kind", "mapi"});
  for (const char* key : {"request", "result", "error_estimate", "version"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_NEAR(j["result"]["canonical_point"].get<double>(), 11.0 / 42, 1e-8);
  EXPECT_EQ(j["request"]["alpha"].get<double>(), 1.05);
}

TEST(Cli, VolumeExample) {
  const json j = run_json({"volume", "--model", "bernoulli"});
  EXPECT_NEAR(j["result"]["value"].get<double>(), pi, 1e-9);
  EXPECT_LE(j["error_estimate"].get<double>(), 1e-9);
}

TEST(Cli, ProbExample) {
  const json j =
      run_json({"prob", "--model", "bernoulli", "--alpha", "0.5", "--beta", "0.5", "--from", "0", "--to", "0.1"});
  EXPECT_NEAR(j["result"]["value"].get<double>(), 2 / pi * std::asin(std::sqrt(0.1)), 1e-10);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_NEAR(run_json({"distance", "--from", "0.5", "--to", "0.6"})["result"]["value"].get<double>(),
              0.201357920790331, 1e-12);
  EXPECT_NEAR(run_json({"expect", "--alpha", "1.05", "--beta", "2.05", "--of", "theta"})["result"]["value"].get<double>(),
              1.05 / 3.1, 1e-10);
  EXPECT_NEAR(run_json({"volume", "--from", "0", "--to", "0.1"})["result"]["value"].get<double>(),
              oracle::bernoulli_arc(0.1), 1e-10);
  EXPECT_NEAR(run_json({"volume", "--model", "poisson", "--from", "0", "--to", "4"})["result"]["value"].get<double>(),
              4.0, 1e-9);
  const json map = run_json({"mode", "--alpha", "1.05", "--beta", "2.05", "--kind", "map"});
  EXPECT_NEAR(map["result"]["canonical_point"].get<double>(), 1.0 / 22, 1e-8);
  const json analytic = run_json({"mode", "--alpha", "1.05", "--beta", "2.05", "--analytic"});
  EXPECT_NEAR(analytic["result"]["canonical_point"].get<double>(), 11.0 / 42, 1e-15);
}

TEST(Cli, DivergentModeUsesMarker) {
  const json j = run_json({"mode", "--alpha", "0.5", "--beta", "0.5", "--kind", "map", "--chart", "arcsin"});
  EXPECT_EQ(j["result"]["density_value"], "inf");
  EXPECT_EQ(j["result"]["all_modes"], json::array({0.0}));
  EXPECT_TRUE(j["result"]["at_boundary"].get<bool>());
}

TEST(Cli, DensityJsonRoundTrips) {
  const json j = run_json({"density", "--alpha", "0.5", "--beta", "0.5", "--samples", "5"});
  ASSERT_EQ(j["result"]["rows"].size(), 5u);
  for (const auto& row : j["result"]["rows"]) EXPECT_NEAR(row[3].get<double>(), 1 / pi, 1e-12);
}

TEST(Cli, CsvLayout) {
  const figures::Run r = run({"density", "--alpha", "2", "--beta", "3", "--samples", "11"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# infogeo ", 0), 0u);
  const figures::Csv csv = figures::parse_csv(r.out);
  EXPECT_EQ(csv.meta.at("model"), "bernoulli");
  EXPECT_EQ(csv.meta.at("chart"), "theta");
  EXPECT_EQ(csv.meta.at("samples"), "11");
  EXPECT_EQ(csv.columns, (std::vector<std::string>{"chart_coord", "canonical_coord", "rho", "p", "embed_x", "embed_y"}));
  EXPECT_EQ(csv.rows.size(), 11u);
}

TEST(Cli, SvgIsSelfContained) {
  const figures::Run r = run({"density", "--alpha", "0.5", "--beta", "0.5", "--format", "svg", "--series", "rho"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("<svg"), std::string::npos);
  EXPECT_NE(r.out.find("<polyline"), std::string::npos);
  EXPECT_NE(r.out.find("</svg>"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwoAndWriteNothing) {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"frobnicate"},
      {"prob", "--alpha", "0.5", "--beta", "0.5"},
      {"prob", "--alpha", "0.5", "--beta", "0.5", "--from", "0.5", "--to", "0.1"},
      {"prob", "--alpha", "0.5", "--beta", "0.5", "--from", "0", "--to", "1.5"},
      {"mode", "--alpha", "-1", "--beta", "2"},
      {"mode", "--alpha", "1", "--beta", "2", "--kind", "median"},
      {"mode", "--alpha", "1", "--beta", "2", "--kind", "map", "--chart", "arcsin", "--analytic"},
      {"density", "--alpha", "1", "--beta", "2", "--chart", "polar"},
      {"density", "--alpha", "1", "--beta", "2", "--samples", "1"},
      {"density", "--alpha", "1", "--beta", "2", "--format", "xml"},
      {"density", "--alpha", "abc", "--beta", "2"},
      {"density", "--model", "poisson", "--alpha", "1", "--beta", "2"},
      {"distance", "--from", "-1", "--to", "0.5"},
      {"embed", "--model", "poisson"},
      {"volume", "--model", "gaussian"},
  };
  for (const auto& args : bad) {
    const figures::Run r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, 2) << joined;
    EXPECT_TRUE(r.out.empty()) << joined;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(Cli, NumericalFailureExitsOneWithErrorEstimate) {
  const figures::Run r = run({"volume", "--model", "poisson"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, FailedRunLeavesNoFile) {
  const auto path = std::filesystem::temp_directory_path() / "infogeo_cli_test_fail.json";
  std::filesystem::remove(path);
  EXPECT_EQ(run({"volume", "--model", "exponential", "-o", path.string()}).code, 1);
  EXPECT_FALSE(std::filesystem::exists(path));
  EXPECT_EQ(run({"volume", "-o", path.string(), "--format", "json"}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_NEAR(json::parse(figures::read_file(path.string()))["result"]["value"].get<double>(), pi, 1e-9);
  std::filesystem::remove(path);
}

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"density", "--help"}).code, 0);
  const figures::Run v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, std::string(infogeo::cli::version()) + "\n");
}

TEST(Cli, Deterministic) {
  for (const auto& fig : figures::all()) {
    const figures::Run a = run(fig.args);
    const figures::Run b = run(fig.args);
    ASSERT_EQ(a.code, 0) << fig.file;
    EXPECT_EQ(data_section(a.out), data_section(b.out)) << fig.file;
  }
  const std::vector<std::string> mode{"mode", "--alpha", "0.7", "--beta", "3", "--format", "json"};
  EXPECT_EQ(run(mode).out, run(mode).out);
}

TEST(Cli, MatchesGoldenFigures) {
  for (const auto& fig : figures::all()) {
    const std::string golden = figures::read_file(figures::golden_path(fig.file));
    ASSERT_FALSE(golden.empty()) << fig.file;
    const figures::Run r = run(fig.args);
    ASSERT_EQ(r.code, 0) << fig.file;
    EXPECT_EQ(figures::compare(figures::parse_csv(golden), figures::parse_csv(r.out)), "") << fig.file;
  }
}

TEST(Cli, GoldenComparisonDetectsChanges) {
  const figures::Csv golden = figures::parse_csv(figures::read_file(figures::golden_path("fig6_theta.csv")));
  figures::Csv changed = golden;
  changed.rows[500][3] = "0.5";
  EXPECT_NE(figures::compare(golden, changed), "");
  changed = golden;
  changed.rows.pop_back();
  EXPECT_NE(figures::compare(golden, changed), "");
  changed = golden;
  changed.meta["chart"] = "arcsin";
  EXPECT_NE(figures::compare(golden, changed), "");
}
