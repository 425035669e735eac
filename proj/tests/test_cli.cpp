#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hopial/cli.hpp"

using namespace hopial;
namespace fs = std::filesystem;

namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run_config(const cli::RunConfig& c) {
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hopial_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Captured run_binary(const std::string& args) {
  const std::string cmd = std::string(HOPIAL_CLI_PATH) + " " + args + " 2>&1";
  Captured c{0, {}, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}, {}};
  std::array<char, 512> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) c.out += buf.data();
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

}  // namespace

TEST(Parse, FunctionShorthands) {
  EXPECT_DOUBLE_EQ(evaluate(io::parse_function("const:2.5", "r"), 0.3, Interval(0, 1)), 2.5);
  EXPECT_DOUBLE_EQ(evaluate(io::parse_function("pow:2", "f"), 0.5, Interval(0, 1)), 0.25);
  EXPECT_DOUBLE_EQ(evaluate(io::parse_function("pow:3,2", "f"), 0.5, Interval(0, 1)), 0.75);
  EXPECT_DOUBLE_EQ(evaluate(io::parse_function("rpow:1", "f"), 0.25, Interval(0, 1)), 0.75);
  EXPECT_NEAR(evaluate(io::parse_function("exp:1", "f"), 1.0, Interval(0, 2)), std::exp(1.0), 1e-15);
  EXPECT_DOUBLE_EQ(evaluate(io::parse_function("pwl:0,0;0.5,1;1,0", "f"), 0.25, Interval(0, 1)), 0.5);
  const auto j = io::parse_function(R"({"variant":"power","c":1,"alpha":2})", "f");
  EXPECT_DOUBLE_EQ(evaluate(j, 0.5, Interval(0, 1)), 0.25);
}

TEST(Parse, ErrorsNameTheField) {
  try {
    io::parse_function("bogus:1", "weights.r");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("weights.r"), std::string::npos);
  }
  EXPECT_THROW(io::parse_function("pow:", "f"), UsageError);
  EXPECT_THROW(io::parse_interval("1"), UsageError);
  EXPECT_THROW(io::parse_interval("1,0"), UsageError);
  EXPECT_THROW(io::parse_interval("a,b"), UsageError);
  const Interval iv = io::parse_interval("-1,2.5");
  EXPECT_EQ(iv.a(), -1.0);
  EXPECT_EQ(iv.b(), 2.5);
}

TEST(FunctionJson, RoundTrip) {
  const std::vector<FunctionSpec> specs = {
      FunctionSpec::constant(2.0), FunctionSpec::power(1.5, -0.3), FunctionSpec::exponential(0.5, -2.0),
      FunctionSpec::piecewise_linear({{0, 0}, {0.4, 1}, {1, 0.2}}),
      FunctionSpec::product({FunctionSpec::power(1, 1), FunctionSpec::exponential(1, 1)}),
      FunctionSpec::sum({FunctionSpec::constant(1), FunctionSpec::power(2, 0.5)})};
  for (const auto& f : specs) {
    const auto back = io::function_from_json(io::to_json(f));
    EXPECT_EQ(io::to_json(back), io::to_json(f));
  }
}

TEST(RunConfig, JsonRoundTrip) {
  cli::RunConfig c;
  c.command = "sweep";
  c.theorem = "T2.16";
  c.mode = "both";
  c.r = FunctionSpec::power(2.0, 1.0);
  c.p = 3.0;
  c.q = 1.5;
  c.a = 1.0;
  c.b = 4.0;
  c.count = 17;
  c.seed = 99;
  c.json_out = "x.json";
  const auto back = cli::config_from_json(cli::to_json(c));
  EXPECT_TRUE(back == c);
}

TEST(RunConfig, UnknownKeyRejected) {
  auto j = cli::to_json(cli::RunConfig{});
  j["colour"] = "blue";
  try {
    cli::config_from_json(j);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(Run, ExitZeroOnHolds) {
  cli::RunConfig c;
  c.theorem = "HARDY";
  c.p = 2.0;
  c.f = FunctionSpec::power(1.0, -0.49);
  const auto r = run_config(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Holds"), std::string::npos);
  EXPECT_NE(r.out.find("0.961"), std::string::npos);
}

TEST(Run, ExitOneNamesField) {
  cli::RunConfig c;
  c.theorem = "T2.99";
  auto r = run_config(c);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("theorem"), std::string::npos);

  c = cli::RunConfig{};
  c.tol = 1.0;
  r = run_config(c);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("tol"), std::string::npos);

  c = cli::RunConfig{};
  c.command = "launch";
  EXPECT_EQ(run_config(c).code, 1);
}

TEST(Run, ExitTwoOnViolation) {
  cli::RunConfig c;
  c.command = "lemma";
  c.variant = "BW1";
  c.mode = "as_printed";
  c.s = FunctionSpec::power(1.0, 1.0);
  c.path = "linear";
  const auto r = run_config(c);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("Violated"), std::string::npos);
}

TEST(Run, ExitThreeOnInconclusive) {
  cli::RunConfig c;
  c.command = "sweep";
  c.theorem = "T2.30";
  c.mode = "as_printed";
  c.count = 3;
  EXPECT_EQ(run_config(c).code, 3);
}

TEST(Run, ConstantPrintsFactorTable) {
  cli::RunConfig c;
  c.command = "constant";
  const auto r = run_config(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.333333333"), std::string::npos);
}

TEST(Outputs, JsonCsvSvg) {
  const auto dir = scratch("outputs");
  cli::RunConfig c;
  c.command = "sweep";
  c.theorem = "T2.3";
  c.count = 12;
  c.json_out = (dir / "r.json").string();
  c.csv_out = (dir / "r.csv").string();
  c.svg_out = (dir / "r.svg").string();
  ASSERT_EQ(run_config(c).code, 0);

  const auto doc = io::json::parse(slurp(c.json_out));
  for (const char* key : {"command", "theorem", "mode", "instances", "max_ratio", "seed", "timestamp"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  ASSERT_EQ(doc["instances"].size(), 12u);
  for (const char* key : {"lhs", "rhs", "constant", "ratio", "status", "budget"}) {
    EXPECT_TRUE(doc["instances"][0].contains(key)) << key;
  }

  const auto csv = slurp(c.csv_out);
  EXPECT_EQ(csv.rfind("theorem,mode,lhs,rhs,constant,ratio,status,budget\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);

  const auto svg = slurp(c.svg_out);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg.find("<script"), std::string::npos);

  const std::string first = svg;
  ASSERT_EQ(run_config(c).code, 0);
  EXPECT_EQ(slurp(c.svg_out), first);
  EXPECT_EQ(slurp(c.csv_out), csv);
}

TEST(Svg, SinglePointAndEmpty) {
  const auto one = io::svg_plot({{"only", {{0.0, 0.5}}}}, "t", "x");
  EXPECT_NE(one.find("<circle"), std::string::npos);
  EXPECT_THROW(io::svg_plot({{"nan", {{0.0, std::nan("")}}}}, "t", "x"), DomainError);
}

TEST(Outputs, UnwritablePathNamed) {
  const auto dir = scratch("unwritable");
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  cli::RunConfig c;
  c.json_out = (blocker / "out.json").string();
  const auto r = run_config(c);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find(c.json_out), std::string::npos);
}

TEST(Binary, HelpAndVerify) {
  EXPECT_EQ(run_binary("--help").code, 0);
  const auto v = run_binary("verify --theorem HARDY --p 2 --f pow:-0.49 --interval 0,1");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("Holds"), std::string::npos);
  const auto bad = run_binary("verify --theorem T2.99");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("theorem"), std::string::npos);
  EXPECT_EQ(run_binary("verify --bogus-flag").code, 1);
}

TEST(Binary, RunFromConfigFile) {
  const auto dir = scratch("config");
  cli::RunConfig c;
  c.command = "constant";
  c.theorem = "T2.3";
  const auto path = dir / "c.json";
  std::ofstream(path) << cli::to_json(c).dump(2);
  const auto r = run_binary("run " + path.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run_binary("run " + (dir / "missing.json").string()).code, 1);
}
