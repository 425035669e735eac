#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hopial/cli.hpp"

namespace {

using hopial::cli::RunConfig;

struct Flags {
  std::string theorem, variant, mode, r, s, f, w, path, interval, family, json, csv, svg, out_dir;
  double p = 0, q = 0, k = 0, nu = 0, eta = 0, tol = 0, lo = 0, hi = 0;
  std::uint64_t seed = 0;
  int count = 0, budget = 0;
  bool no_conjugate_check = false;
};

void add_common(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--mode", fl.mode, "default | as_printed | as_derived | both");
  cmd->add_option("--r", fl.r, "weight r (const:C, pow:A, rpow:A, exp:B, pwl:x,y;..., or JSON)");
  cmd->add_option("--s", fl.s, "weight s");
  cmd->add_option("--interval", fl.interval, "a,b");
  cmd->add_option("--p", fl.p);
  cmd->add_option("--q", fl.q);
  cmd->add_option("--k", fl.k);
  cmd->add_option("--tol", fl.tol, "quadrature tolerance");
  cmd->add_option("--json", fl.json, "write the JSON report here");
  cmd->add_option("--csv", fl.csv, "write the CSV table here");
  cmd->add_option("--svg", fl.svg, "write the ratio plot here");
  cmd->add_flag("--no-conjugate-check", fl.no_conjugate_check, "skip the 1/p + 1/q = 1 check");
}

RunConfig to_config(const std::string& command, CLI::App* cmd, const Flags& fl) {
  RunConfig c;
  c.command = command;
  auto given = [&](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--theorem")) c.theorem = fl.theorem;
  if (given("--variant")) c.variant = fl.variant;
  if (given("--mode")) c.mode = fl.mode;
  if (given("--r")) c.r = hopial::io::parse_function(fl.r, "r");
  if (given("--s")) c.s = hopial::io::parse_function(fl.s, "s");
  if (given("--f")) c.f = hopial::io::parse_function(fl.f, "f");
  if (given("--w")) c.w = hopial::io::parse_function(fl.w, "w");
  if (given("--path")) c.path = fl.path;
  if (given("--interval")) {
    const auto iv = hopial::io::parse_interval(fl.interval);
    c.a = iv.a();
    c.b = iv.b();
  }
  if (given("--p")) c.p = fl.p;
  if (given("--q")) c.q = fl.q;
  if (given("--k")) c.k = fl.k;
  if (given("--nu")) c.nu = fl.nu;
  if (given("--eta")) c.eta = fl.eta;
  if (fl.no_conjugate_check) c.conjugate_check = false;
  if (given("--tol")) c.tol = fl.tol;
  if (given("--seed")) c.seed = fl.seed;
  if (given("--count")) c.count = fl.count;
  if (given("--family")) c.family = fl.family;
  if (given("--lo")) c.lo = fl.lo;
  if (given("--hi")) c.hi = fl.hi;
  if (given("--budget")) c.budget = fl.budget;
  if (given("--json")) c.json_out = fl.json;
  if (given("--csv")) c.csv_out = fl.csv;
  if (given("--svg")) c.svg_out = fl.svg;
  if (given("--out-dir")) c.out_dir = fl.out_dir;
  if (command == "sharpness" && !given("--family")) c.family = c.variant.empty() ? "pow" : "hat";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopial: constants, verification and sharpness probes for weighted Hardy and Opial inequalities"};
  app.require_subcommand(1);
  Flags fl;

  auto* constant = app.add_subcommand("constant", "compute a theorem constant and its factors");
  auto* verify = app.add_subcommand("verify", "verify one theorem instance");
  auto* sweep = app.add_subcommand("sweep", "verify a random family of instances");
  auto* sharpness = app.add_subcommand("sharpness", "search for the worst-case ratio");
  auto* lemma = app.add_subcommand("lemma", "check an Opial-type lemma on a path");
  auto* suite = app.add_subcommand("suite", "run the bundled acceptance corpus");
  auto* from_file = app.add_subcommand("run", "execute a JSON run configuration");

  for (auto* cmd : {constant, verify, sweep, sharpness}) {
    cmd->add_option("--theorem", fl.theorem, "theorem id, e.g. T2.1, C2.1a, HARDY")->required(cmd != sharpness);
    add_common(cmd, fl);
  }
  for (auto* cmd : {verify, sharpness}) cmd->add_option("--f", fl.f, "the function f");
  for (auto* cmd : {sweep, suite, lemma}) {
    cmd->add_option("--seed", fl.seed);
    cmd->add_option("--count", fl.count);
  }
  sweep->add_option("--family", fl.family, "soundness | pwl");
  sharpness->add_option("--family", fl.family, "pow (theorems) | hat (lemmas)");
  sharpness->add_option("--variant", fl.variant, "search over a lemma instead of a theorem");
  sharpness->add_option("--w", fl.w);
  sharpness->add_option("--nu", fl.nu);
  sharpness->add_option("--eta", fl.eta);
  sharpness->add_option("--lo", fl.lo);
  sharpness->add_option("--hi", fl.hi);
  sharpness->add_option("--budget", fl.budget);

  lemma->add_option("--variant", fl.variant, "OPIAL, B1, B2, M1, Y, H1, BW1, AG, Y1, Y2, BOYD, L0, Z1, Z4, BS1, BS2")
      ->required();
  lemma->add_option("--path", fl.path, "hat, hat:C, linear, linear:right, power:A[:right], pwl:..., random");
  lemma->add_option("--w", fl.w, "Yang's weight q");
  lemma->add_option("--nu", fl.nu);
  lemma->add_option("--eta", fl.eta);
  add_common(lemma, fl);

  suite->add_option("--out-dir", fl.out_dir, "directory for suite.json, suite.csv, suite.svg");
  suite->add_option("--tol", fl.tol);

  std::string config_path;
  from_file->add_option("config", config_path, "path to a RunConfig JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  RunConfig config;
  try {
    if (from_file->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw hopial::UsageError("config", "cannot read " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      hopial::io::json j;
      try {
        j = hopial::io::json::parse(buf.str());
      } catch (const hopial::io::json::exception& e) {
        throw hopial::UsageError("config", config_path + ": " + e.what());
      }
      config = hopial::cli::config_from_json(j);
    } else {
      for (auto* cmd : app.get_subcommands()) config = to_config(cmd->get_name(), cmd, fl);
    }
  } catch (const hopial::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const hopial::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return hopial::cli::run(config, std::cout, std::cerr);
}
