#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace picard::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "picardfa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST(Cli, PredictReference) {
  const Result r = invoke({"predict", "--config", PICARD_REFERENCE_CONF});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rho_fa: 1.042"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("omega_opt: 0.656"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("argmax_mode: 1 "), std::string::npos) << r.out;
}

TEST(Cli, PredictShortCore) {
  const fs::path conf = temp_path("picard_cli_short.conf");
  std::ofstream(conf) << "core_height_L = 50\nn_cells = 100\n";
  const Result r = invoke({"predict", "--config", conf.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rho_fa: 0.1205"), std::string::npos) << r.out;
}

TEST(Cli, HeightSweepCrossesOneNearCriticalHeight) {
  const SweepSpec spec{SweepKind::kHeight, 50.0, 300.0, 50.0};
  const auto rows = cmd_sweep({}, spec);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].rho_fa, rows[i - 1].rho_fa);
  EXPECT_LT(rows[1].rho_fa, 1.0);  // 100 cm
  EXPECT_GT(rows[2].rho_fa, 1.0);  // 150 cm
  for (const auto& r : rows) EXPECT_EQ(r.status, "predicted");
}

TEST(Cli, OmegaSweepIsVShaped) {
  const auto rows = cmd_sweep({}, {SweepKind::kOmega, 0.1, 1.0, 0.05});
  ASSERT_EQ(rows.size(), 19u);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].rho_fa < rows[best].rho_fa) best = i;
  }
  EXPECT_NEAR(rows[best].sweep_value, 0.65, 0.025 + 1e-12);
  for (std::size_t i = 1; i <= best; ++i) EXPECT_LT(rows[i].rho_fa, rows[i - 1].rho_fa);
  for (std::size_t i = best + 1; i < rows.size(); ++i) EXPECT_GT(rows[i].rho_fa, rows[i - 1].rho_fa);
}

TEST(Cli, OmegaOptSweepDecreases) {
  const auto rows = cmd_sweep({}, {SweepKind::kOmegaOpt, 50.0, 300.0, 10.0});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_TRUE(rows[i].omega_opt_fa && rows[i - 1].omega_opt_fa);
    EXPECT_LT(*rows[i].omega_opt_fa, *rows[i - 1].omega_opt_fa);
  }
}

TEST(Cli, SweepCsvIsDeterministicAcrossThreadCounts) {
  const fs::path a = temp_path("picard_cli_a.csv");
  const fs::path b = temp_path("picard_cli_b.csv");
  const std::vector<std::string> base{"sweep",  "--sweep", "height", "--min", "50", "--max",
                                      "300",    "--step",  "25",     "--config",
                                      PICARD_REFERENCE_CONF};
  auto with = [&](const fs::path& out, const char* threads) {
    auto args = base;
    args.insert(args.end(), {"--out", out.string(), "--threads", threads});
    return invoke(args);
  };
  ASSERT_EQ(with(a, "1").code, 0);
  ASSERT_EQ(with(b, "4").code, 0);
  const std::string ta = slurp(a);
  EXPECT_EQ(ta, slurp(b));
  const auto rows = csv_rows(ta);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(ta.substr(0, ta.find('\n')), kSweepHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 8u) << i;
    EXPECT_EQ(rows[i][1], "L");
    EXPECT_EQ(rows[i][4], "");
    EXPECT_EQ(rows[i][7], "predicted");
    if (i > 1) EXPECT_GT(std::stod(rows[i][2]), std::stod(rows[i - 1][2]));
  }
}

TEST(Cli, NumericalSweepPointsMatchPrediction) {
  picard::CaseConfig c;
  c.reactor.core_height_L = 50.0;
  c.reactor.n_cells = 100;
  SweepSpec spec{SweepKind::kOmega, 0.6, 1.0, 0.2};
  spec.numerical = true;
  const auto rows = cmd_sweep(c, spec);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.rho_num.has_value()) << r.status;
    EXPECT_NEAR(*r.rho_num, r.rho_fa, 0.02) << r.sweep_value;
    EXPECT_EQ(r.status, "converged");
    EXPECT_TRUE(r.iterations.has_value());
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, kConfigError);
  EXPECT_EQ(invoke({"predict", "--omega", "1.5"}).code, kConfigError);
  EXPECT_EQ(invoke({"predict", "--config", "/no/such/file.conf"}).code, kConfigError);
  const fs::path bad = temp_path("picard_cli_bad.conf");
  std::ofstream(bad) << "c0 = 1.5\n";
  EXPECT_EQ(invoke({"predict", "--config", bad.string()}).code, kConfigError);
  EXPECT_EQ(invoke({"sweep", "--sweep", "height", "--min", "300", "--max", "50", "--step", "50"}).code,
            kConfigError);
  EXPECT_EQ(invoke({"sweep", "--sweep", "height", "--min", "50", "--max", "300", "--step", "50",
                    "--out", "/no/such/dir/out.csv"})
                .code,
            kRuntimeError);
  EXPECT_EQ(invoke({"predict"}).code, kOk);
}

TEST(Cli, SimulateReportsDivergenceAsData) {
  const Result r = invoke({"simulate", "--omega", "1"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("status: diverged"), std::string::npos) << r.out;
}

TEST(Cli, SimulateAa1WritesTrace) {
  const fs::path trace = temp_path("picard_cli_trace.csv");
  const Result r = invoke({"simulate", "--aa1", "--trace", trace.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("status: converged"), std::string::npos) << r.out;
  const auto rows = csv_rows(slurp(trace));
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "iteration");
}

TEST(Cli, GridAndHeightHelpers) {
  const auto g = sweep_grid(0.1, 1.0, 0.05);
  EXPECT_EQ(g.size(), 19u);
  EXPECT_NEAR(g.back(), 1.0, 1e-12);
  EXPECT_THROW(sweep_grid(1.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(sweep_grid(0.0, 1.0, 0.0), std::invalid_argument);
  const picard::CaseConfig c = with_height({}, 250.0);
  EXPECT_EQ(c.reactor.n_cells, 500);
  EXPECT_DOUBLE_EQ(c.reactor.cell_width(), 0.5);
}
