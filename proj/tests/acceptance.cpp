#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hopial/cli.hpp"

using namespace hopial;
namespace fs = std::filesystem;

namespace {

const Interval unit(0.0, 1.0);

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x, const char* f = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double t = seconds_since(t0);
  if (limit_s > 0.0 && t >= limit_s) v.require(false, "runtime " + num(t, "%.2f") + " s over " + num(limit_s, "%.0f") + " s");
  if (!v.pass) ++failures;
  std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << num(t, "%.2f") << " s)";
  if (!v.detail.empty()) std::cout << " | " << v.detail;
  std::cout << std::endl;
}

Verdict classical_hardy() {
  Verdict v;
  TheoremInstance inst;
  inst.id = TheoremId::HARDY;
  inst.exponents.p = 2.0;
  inst.f = FunctionSpec::power(1.0, -0.49);
  const auto rep = verify(inst);
  v.require(std::abs(rep.ratio - 0.9611) <= 0.002, "ratio(-0.49) = " + num(rep.ratio));
  v.require(rep.status == Status::holds, "ratio(-0.49) not Holds");

  const FunctionSpec one = FunctionSpec::constant(1.0);
  auto family = [](const std::vector<double>& x) { return FunctionSpec::power(1.0, x.at(0)); };
  const auto res = sharpness_search(TheoremId::HARDY, family, {-0.5}, {-0.05}, one, one, inst.exponents, unit,
                                    default_mode(TheoremId::HARDY), 60);
  v.require(res.best_ratio >= 0.96, "best_ratio = " + num(res.best_ratio));

  double prev = -1.0;
  std::string grid;
  for (double a : {-0.1, -0.2, -0.3, -0.4, -0.49}) {
    inst.f = FunctionSpec::power(1.0, a);
    const double r = verify(inst).ratio;
    grid += (grid.empty() ? "" : ", ") + num(r, "%.4f");
    v.require(r > prev, "ratio not increasing at alpha = " + num(a));
    prev = r;
  }
  v.detail = v.detail.empty() ? "ratio " + num(rep.ratio, "%.6f") + ", best " + num(res.best_ratio, "%.6f") +
                                    " at alpha " + num(res.best_params.at(0), "%.4f") + ", grid " + grid
                              : v.detail;
  return v;
}

Verdict opial_witnesses() {
  Verdict v;
  LemmaParams h;
  h.p = 2.0;
  const double r1 = verify_variant(OpialVariant::OPIAL, hat_path(unit)).ratio;
  const double r2 = verify_variant(OpialVariant::B1, linear_path(unit)).ratio;
  const double r3 = verify_variant(OpialVariant::H1, linear_path(unit), {}, h).ratio;
  v.require(std::abs(r1 - 1.0) <= 1e-8, "OPIAL/hat " + num(r1, "%.17g"));
  v.require(std::abs(r2 - 1.0) <= 1e-8, "B1/linear " + num(r2, "%.17g"));
  v.require(std::abs(r3 - 1.0) <= 1e-8, "H1/linear " + num(r3, "%.17g"));
  if (v.pass) {
    v.detail = "max |ratio - 1| = " +
               num(std::max({std::abs(r1 - 1.0), std::abs(r2 - 1.0), std::abs(r3 - 1.0)}), "%.2e");
  }
  return v;
}

Verdict boyd_overlap() {
  Verdict v;
  const double n = boyd_N({1.0, 1.0, 2.0}).value;
  const double l = boyd_L(1.0, 1.0);
  const double l2 = boyd_L(2.0, 1.0);
  v.require(std::abs(n - 0.5) <= 1e-9, "N(1,1,2) = " + num(n, "%.17g"));
  v.require(std::abs(l - 0.5) <= 1e-12, "L(1,1) = " + num(l, "%.17g"));
  v.require(std::abs(l2 - 1.0 / 6.0) <= 1e-12, "L(2,1) = " + num(l2, "%.17g"));
  if (v.pass) v.detail = "N = " + num(n, "%.15g") + ", L(1,1) = " + num(l, "%.15g") + ", L(2,1) = " + num(l2, "%.15g");
  return v;
}

Verdict soundness() {
  Verdict v;
  int total = 0, inconclusive = 0, violated = 0;
  for (TheoremId id : all_theorems()) {
    const auto sw = soundness_sweep(id, default_mode(id));
    total += static_cast<int>(sw.reports.size());
    inconclusive += sw.inconclusive;
    violated += static_cast<int>(sw.violated.size());
    if (!sw.violated.empty()) {
      const auto& w = sw.reports[static_cast<std::size_t>(sw.violated.front())];
      v.require(false, to_string(id) + ": " + std::to_string(sw.violated.size()) + " Violated, first ratio " +
                           num(w.ratio));
    }
    if (sw.inconclusive * 50 > static_cast<int>(sw.reports.size())) {
      v.require(false, to_string(id) + ": " + std::to_string(sw.inconclusive) + " Inconclusive");
    }
  }
  if (v.pass) {
    v.detail = std::to_string(all_theorems().size()) + " theorems, " + std::to_string(total) + " instances, " +
               std::to_string(violated) + " Violated, " + std::to_string(inconclusive) + " Inconclusive";
  }
  return v;
}

Verdict typo_ledger() {
  Verdict v;
  const auto printed = soundness_sweep(TheoremId::T2_16, Mode::as_printed);
  const auto derived = soundness_sweep(TheoremId::T2_16, Mode::as_derived);
  v.require(printed.reports.size() == 200 && derived.reports.size() == 200, "dual report incomplete");
  v.require(printed.violated.empty(), "as_printed has " + std::to_string(printed.violated.size()) + " Violated");
  for (int i : derived.violated) {
    const auto& r = derived.reports[static_cast<std::size_t>(i)];
    std::cout << "  T2.16 as_derived violation: instance " << i << " ratio " << num(r.ratio) << " f "
              << io::to_json(r.instance.f).dump() << " r " << io::to_json(r.instance.r).dump() << " s "
              << io::to_json(r.instance.s).dump() << "\n";
  }
  if (v.pass) {
    v.detail = "as_printed max " + num(printed.max_ratio, "%.4f") + " (0 Violated), as_derived max " +
               num(derived.max_ratio, "%.4f") + " (" + std::to_string(derived.violated.size()) + " Violated)";
  }
  return v;
}

Verdict eigen_agreement() {
  Verdict v;
  auto problem = [](const FunctionSpec& P, const FunctionSpec& m) {
    EigenProblem prob;
    prob.P = coefficient_of(P, unit);
    prob.m = coefficient_of(m, unit);
    prob.p = 1.0;
    prob.interval = unit;
    return prob;
  };
  const auto c = [](double x) { return FunctionSpec::constant(x); };
  const auto pw = [](double k, double a) { return FunctionSpec::power(k, a); };
  const std::vector<std::pair<FunctionSpec, FunctionSpec>> grid = {
      {c(1), c(1)},
      {c(2), c(1)},
      {c(1), c(3)},
      {FunctionSpec::sum({c(1), pw(1, 1)}), c(1)},
      {c(1), FunctionSpec::sum({c(1), pw(1, 2)})},
      {FunctionSpec::exponential(1, 1), c(1)},
      {c(1), FunctionSpec::exponential(1, -1)},
      {FunctionSpec::sum({c(0.5), FunctionSpec::power_from_right(1, 1)}), c(2)},
      {FunctionSpec::sum({c(1), pw(2, 3)}), pw(1, 1)},
      {c(4), FunctionSpec::sum({c(0.2), pw(1, 2)})},
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ev = smallest_eigenvalue(problem(grid[i].first, grid[i].second));
    const double gap = std::abs(ev.shooting - ev.finite_difference) / std::max(1.0, ev.value);
    worst = std::max(worst, gap);
    v.require(gap <= 1e-6, "case " + std::to_string(i) + " gap " + num(gap, "%.2e"));
  }
  const double lin = smallest_eigenvalue(problem(c(1), c(1))).value;
  v.require(std::abs(lin - M_PI * M_PI) <= 1e-6, "linear case " + num(lin, "%.15g"));
  if (v.pass) v.detail = "worst relative gap " + num(worst, "%.2e") + ", linear " + num(lin, "%.12f");
  return v;
}

Verdict beesack_das() {
  Verdict v;
  const FunctionSpec one = FunctionSpec::constant(1.0);
  const auto b = beesack_das_balance(ExponentSet{1.0, 1.0, 2.0, false}, one, one, unit);
  v.require(std::abs(b.h - 0.5) <= 1e-8, "h = " + num(b.h, "%.17g"));
  v.require(std::abs(b.K - 0.25) <= 1e-6, "K = " + num(b.K, "%.17g"));
  if (v.pass) v.detail = "h = " + num(b.h, "%.15g") + ", K = " + num(b.K, "%.15g");
  return v;
}

Verdict mirror_symmetry() {
  Verdict v;
  std::mt19937_64 eng(20240);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto weight = [&] {
    const double c0 = 0.5 + U(eng), c1 = U(eng), alpha = 2.0 * U(eng);
    return FunctionSpec::sum({FunctionSpec::constant(c0), FunctionSpec::power(c1, alpha),
                              FunctionSpec::power_from_right(c1, alpha)});
  };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto r = weight();
    const auto s = weight();
    const double c1 = hardy_constant(TheoremId::T2_1, r, s, {}, unit).value;
    const double c2 = hardy_constant(TheoremId::T2_2, r, s, {}, unit).value;
    worst = std::max(worst, std::abs(c1 - c2));
    v.require(std::abs(c1 - c2) <= 1e-8, "case " + std::to_string(i) + ": " + num(c1) + " vs " + num(c2));
  }
  if (v.pass) v.detail = "20 cases, worst |C1 - C2| = " + num(worst, "%.2e");
  return v;
}

Verdict singular_quadrature() {
  Verdict v;
  double worst = 0.0;
  for (double a : {-0.9, -0.5, -0.1}) {
    const double got = integrate(integrand_of(FunctionSpec::power(1.0, a), unit), unit).value;
    const double err = std::abs(got - 1.0 / (a + 1.0));
    worst = std::max(worst, err);
    v.require(err <= 1e-7, "alpha " + num(a) + ": " + num(got, "%.15g"));
  }
  if (v.pass) v.detail = "worst error " + num(worst, "%.2e");
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "hopial_acceptance_suite";
  fs::remove_all(root);
  std::string json[2], svg[2], csv[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = root / ("run" + std::to_string(i));
    const std::string cmd = std::string(HOPIAL_CLI_PATH) + " suite --out-dir " + dir.string() + " > " +
                            (root / ("log" + std::to_string(i))).string() + " 2>&1";
    fs::create_directories(root);
    const int status = std::system(cmd.c_str());
    v.require(status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0,
              "suite run " + std::to_string(i) + " exit " + std::to_string(WEXITSTATUS(status)));
    auto doc = io::json::parse(slurp(dir / "suite.json"));
    v.require(doc.contains("timestamp"), "no timestamp field");
    doc.erase("timestamp");
    json[i] = doc.dump();
    svg[i] = slurp(dir / "suite.svg");
    csv[i] = slurp(dir / "suite.csv");
  }
  v.require(!svg[0].empty(), "empty SVG");
  v.require(json[0] == json[1], "JSON differs");
  v.require(svg[0] == svg[1], "SVG differs");
  v.require(csv[0] == csv[1], "CSV differs");
  if (v.pass) {
    v.detail = "JSON " + std::to_string(json[0].size()) + " B, SVG " + std::to_string(svg[0].size()) + " B identical";
    fs::remove_all(root);
  }
  return v;
}

}  // namespace

int main() {
  criterion(1, "classical Hardy sanity and sharpness", 5.0, classical_hardy);
  criterion(2, "Opial equality witnesses", 1.0, opial_witnesses);
  criterion(3, "Boyd overlap identity", 0.0, boyd_overlap);
  criterion(4, "theorem soundness sweeps", 60.0, soundness);
  criterion(5, "T2.16 dual-mode audit", 0.0, typo_ledger);
  criterion(6, "eigenvalue oracle agreement", 0.0, eigen_agreement);
  criterion(7, "Beesack-Das balance", 0.0, beesack_das);
  criterion(8, "T2.1/T2.2 mirror symmetry", 0.0, mirror_symmetry);
  criterion(9, "singular quadrature", 0.0, singular_quadrature);
  criterion(10, "suite determinism", 0.0, determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
