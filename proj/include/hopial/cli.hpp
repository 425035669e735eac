#pragma once

// Command-line front end: a RunConfig describes one command; run() executes it, prints a short
// summary, writes the requested artifacts and returns the exit status.
//
// Exit status: 0 all Holds, 2 any Violated, 3 any Inconclusive and none Violated, 1 usage error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hopial/constants.hpp"
#include "hopial/io.hpp"
#include "hopial/opial.hpp"
#include "hopial/status.hpp"
#include "hopial/verify.hpp"

namespace hopial::cli {

using io::json;

struct RunConfig {
  std::string command = "verify";  // constant | verify | sweep | sharpness | lemma | suite
  std::string theorem = "T2.1";
  std::string variant;              // Opial variant for lemma, and for sharpness over lemmas
  std::string mode = "default";     // default | as_printed | as_derived | both
  FunctionSpec r = FunctionSpec::constant(1.0);
  FunctionSpec s = FunctionSpec::constant(1.0);
  FunctionSpec f = FunctionSpec::constant(1.0);
  FunctionSpec w = FunctionSpec::constant(1.0);
  std::string path = "hat";         // hat | hat:C | linear | linear:right | power:A | power:A:right | pwl:... | random
  std::optional<double> p, q, k, nu, eta;
  bool conjugate_check = true;
  double a = 0.0;
  double b = 1.0;
  double tol = kSmoothTolerance;
  std::uint64_t seed = 2024;
  int count = 200;
  std::string family = "soundness";  // sweep: soundness | pwl; sharpness: pow | hat
  double lo = -0.5;
  double hi = -0.05;
  int budget = 200;
  std::string json_out, csv_out, svg_out;
  std::string out_dir = "suite-out";
};

// ---------------------------------------------------------------------------------------------
// RunConfig <-> JSON

inline json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["theorem"] = c.theorem;
  j["variant"] = c.variant;
  j["mode"] = c.mode;
  j["r"] = io::to_json(c.r);
  j["s"] = io::to_json(c.s);
  j["f"] = io::to_json(c.f);
  j["w"] = io::to_json(c.w);
  j["path"] = c.path;
  json ex = json::object();
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) ex[key] = *v;
  };
  opt("p", c.p);
  opt("q", c.q);
  opt("k", c.k);
  opt("nu", c.nu);
  opt("eta", c.eta);
  ex["conjugate_check"] = c.conjugate_check;
  j["exponents"] = ex;
  j["interval"] = json::array({c.a, c.b});
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["count"] = c.count;
  j["family"] = c.family;
  j["lo"] = c.lo;
  j["hi"] = c.hi;
  j["budget"] = c.budget;
  j["outputs"] = {{"json", c.json_out}, {"csv", c.csv_out}, {"svg", c.svg_out}, {"dir", c.out_dir}};
  return j;
}

namespace detail {

inline std::string get_string(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw UsageError(key, "expected a string");
  return j.at(key).get<std::string>();
}

inline double get_number(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw UsageError(where + key, "expected a number");
  return j.at(key).get<double>();
}

inline std::int64_t get_integer(const json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw UsageError(key, "expected an integer");
  return j.at(key).get<std::int64_t>();
}

inline FunctionSpec get_function(const json& j, const char* key, const FunctionSpec& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string()) return io::parse_function(v.get<std::string>(), key);
  return io::function_from_json(v, key);
}

}  // namespace detail

inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config", "expected a JSON object");
  static const std::vector<std::string> known = {
      "command", "theorem", "variant", "mode", "r",  "s",     "f",      "w",      "path", "exponents",
      "interval", "tol",   "seed",    "count", "family", "lo", "hi", "budget", "outputs"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError(key, "unknown configuration field");
    }
  }
  RunConfig c;
  c.command = detail::get_string(j, "command", c.command);
  c.theorem = detail::get_string(j, "theorem", c.theorem);
  c.variant = detail::get_string(j, "variant", c.variant);
  c.mode = detail::get_string(j, "mode", c.mode);
  c.r = detail::get_function(j, "r", c.r);
  c.s = detail::get_function(j, "s", c.s);
  c.f = detail::get_function(j, "f", c.f);
  c.w = detail::get_function(j, "w", c.w);
  c.path = detail::get_string(j, "path", c.path);
  if (j.contains("exponents")) {
    const json& ex = j.at("exponents");
    if (!ex.is_object()) throw UsageError("exponents", "expected an object");
    auto opt = [&](const char* key) -> std::optional<double> {
      if (!ex.contains(key)) return std::nullopt;
      return detail::get_number(ex, key, 0.0, "exponents.");
    };
    c.p = opt("p");
    c.q = opt("q");
    c.k = opt("k");
    c.nu = opt("nu");
    c.eta = opt("eta");
    if (ex.contains("conjugate_check")) {
      if (!ex.at("conjugate_check").is_boolean()) {
        throw UsageError("exponents.conjugate_check", "expected a boolean");
      }
      c.conjugate_check = ex.at("conjugate_check").get<bool>();
    }
  }
  if (j.contains("interval")) {
    const json& iv = j.at("interval");
    if (iv.is_string()) {
      const Interval parsed = io::parse_interval(iv.get<std::string>());
      c.a = parsed.a();
      c.b = parsed.b();
    } else if (iv.is_array() && iv.size() == 2 && iv[0].is_number() && iv[1].is_number()) {
      c.a = iv[0].get<double>();
      c.b = iv[1].get<double>();
    } else {
      throw UsageError("interval", "expected [a, b] or \"a,b\"");
    }
  }
  c.tol = detail::get_number(j, "tol", c.tol, "");
  const auto seed = detail::get_integer(j, "seed", static_cast<std::int64_t>(c.seed));
  if (seed < 0) throw UsageError("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.count = static_cast<int>(detail::get_integer(j, "count", c.count));
  c.family = detail::get_string(j, "family", c.family);
  c.lo = detail::get_number(j, "lo", c.lo, "");
  c.hi = detail::get_number(j, "hi", c.hi, "");
  c.budget = static_cast<int>(detail::get_integer(j, "budget", c.budget));
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    if (!o.is_object()) throw UsageError("outputs", "expected an object");
    c.json_out = detail::get_string(o, "json", c.json_out);
    c.csv_out = detail::get_string(o, "csv", c.csv_out);
    c.svg_out = detail::get_string(o, "svg", c.svg_out);
    c.out_dir = detail::get_string(o, "dir", c.out_dir);
  }
  return c;
}

inline bool operator==(const RunConfig& x, const RunConfig& y) { return to_json(x) == to_json(y); }

/// Checks everything that can be checked before any computation; throws UsageError.
inline void validate(const RunConfig& c) {
  static const std::vector<std::string> commands = {"constant", "verify", "sweep", "sharpness", "lemma", "suite"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) {
    throw UsageError("command", "unknown command '" + c.command + "'");
  }
  if (c.mode != "default" && c.mode != "both") mode_from_string(c.mode);
  const bool lemma = c.command == "lemma" || (c.command == "sharpness" && !c.variant.empty());
  if (lemma) {
    if (c.variant.empty()) throw UsageError("variant", "required for lemma");
    variant_from_string(c.variant);
  } else if (c.command != "suite") {
    theorem_from_string(c.theorem);
  }
  if (!(c.a < c.b) || !std::isfinite(c.a) || !std::isfinite(c.b)) {
    throw UsageError("interval", "expected finite a < b");
  }
  if (!(c.tol >= 1e-14 && c.tol <= 1e-4)) throw UsageError("tol", "must lie in [1e-14, 1e-4]");
  if (c.count < 1) throw UsageError("count", "must be >= 1");
  if (c.command == "sweep" && c.family != "soundness" && c.family != "pwl") {
    throw UsageError("family", "sweep families are soundness and pwl");
  }
  if (c.command == "sharpness") {
    if (lemma && c.family != "hat") throw UsageError("family", "lemma sharpness family is hat");
    if (!lemma && c.family != "pow") throw UsageError("family", "theorem sharpness family is pow");
    if (!(c.lo < c.hi)) throw UsageError("lo", "expected lo < hi");
    if (c.budget < 50) throw UsageError("budget", "must be >= 50");
  }
}

// ---------------------------------------------------------------------------------------------
// Execution

namespace detail {

inline ExponentSet exponents(const RunConfig& c) {
  ExponentSet e;
  e.p = c.p.value_or(e.p);
  e.q = c.q.value_or(e.q);
  e.k = c.k.value_or(e.k);
  e.conjugate_check = c.conjugate_check;
  return e;
}

inline LemmaParams lemma_params(const RunConfig& c) {
  LemmaParams e;
  e.p = c.p.value_or(e.p);
  e.q = c.q.value_or(e.q);
  e.k = c.k.value_or(e.k);
  e.nu = c.nu.value_or(e.nu);
  e.eta = c.eta.value_or(e.eta);
  return e;
}

inline std::vector<Mode> modes(const RunConfig& c, std::optional<TheoremId> id) {
  if (c.mode == "both") return {Mode::as_printed, Mode::as_derived};
  if (c.mode == "default") return {id ? default_mode(*id) : Mode::as_derived};
  return {mode_from_string(c.mode)};
}

inline TestPath parse_path(const std::string& text, const Interval& iv) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "hat") {
      if (rest.empty()) return hat_path(iv);
      return hat_path(iv, std::stod(rest));
    }
    if (kind == "linear") {
      if (rest.empty() || rest == "left") return linear_path(iv, Side::left);
      if (rest == "right") return linear_path(iv, Side::right);
    }
    if (kind == "power" && !rest.empty()) {
      const auto c2 = rest.find(':');
      const double alpha = std::stod(rest.substr(0, c2));
      const std::string side = c2 == std::string::npos ? "left" : rest.substr(c2 + 1);
      if (side == "left" || side == "right") {
        return power_path(iv, alpha, side == "left" ? Side::left : Side::right);
      }
    }
    if (kind == "pwl") {
      const FunctionSpec y = io::parse_function(text, "path");
      return pwl_path(y.as<PiecewiseLinear>()->knots, iv, "pwl");
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("path", e.what());
  }
  throw UsageError("path", "unknown path '" + text + "'");
}

inline std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects runs and statuses while a command executes.
struct Outcome {
  json runs = json::array();
  std::vector<io::CsvRow> rows;
  std::vector<io::PlotSeries> plots;
  std::string plot_title;
  std::string plot_x = "instance index";
  bool violated = false;
  bool inconclusive = false;

  void count(Status s) {
    if (s == Status::violated) violated = true;
    if (s == Status::inconclusive) inconclusive = true;
  }
  int exit_code() const { return violated ? 2 : inconclusive ? 3 : 0; }
};

inline json run_header(const std::string& command, const std::string& theorem, const std::string& mode) {
  return json{{"schema_version", 1}, {"command", command}, {"theorem", theorem}, {"mode", mode}};
}

inline double max_ratio_of(const json& instances) {
  double m = -hopial::detail::kInf;
  for (const auto& inst : instances) {
    if (inst.contains("ratio") && inst["ratio"].is_number()) m = std::max(m, inst["ratio"].get<double>());
  }
  return m;
}

inline void finish_run(json& run, json instances, std::uint64_t seed) {
  const double m = max_ratio_of(instances);
  run["instances"] = std::move(instances);
  run["max_ratio"] = io::finite_or_null(m);
  run["seed"] = seed;
}

inline io::CsvRow row_of(const std::string& theorem, Mode mode, const VerificationReport& r) {
  return {theorem, to_string(mode), r.lhs, r.rhs, r.constant, r.ratio, r.status, r.budget};
}

inline io::CsvRow row_of(const std::string& variant, Mode mode, const VerificationRecord& r) {
  return {variant, to_string(mode), r.lhs, r.rhs, r.constant, r.ratio, r.status, r.budget};
}

inline std::string fmt(double x, int digits = 10) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << x;
  return ss.str();
}

// ------------------------------------------------------------------ commands

inline void do_constant(const RunConfig& c, Outcome& o, std::ostream& out) {
  const TheoremId id = theorem_from_string(c.theorem);
  const Interval iv(c.a, c.b);
  ConstantOptions co;
  co.tol = c.tol;
  for (Mode mode : modes(c, id)) {
    const ConstantBreakdown C = hardy_constant(id, c.r, c.s, exponents(c), iv, mode, co);
    out << to_string(id) << " [" << to_string(mode) << "] constant = " << fmt(C.value, 15) << "\n";
    for (const auto& fct : C.factors) out << "  " << std::left << std::setw(28) << fct.name << " " << fmt(fct.value, 15) << "\n";
    if (!C.note.empty()) out << "  note: " << C.note << "\n";
    json run = run_header("constant", to_string(id), to_string(mode));
    run["constant"] = io::to_json(C);
    finish_run(run, json::array(), c.seed);
    o.runs.push_back(std::move(run));
  }
}

inline void report_verification(const std::string& theorem, Mode mode, const VerificationReport& rep,
                                std::ostream& out) {
  out << theorem << " [" << to_string(mode) << "] lhs = " << fmt(rep.lhs) << "  C*rhs = "
      << fmt(rep.constant * rep.rhs) << "  ratio = " << fmt(rep.ratio) << "  " << to_string(rep.status) << "\n";
  if (!rep.reason.empty()) out << "  " << rep.reason << "\n";
}

inline void do_verify(const RunConfig& c, Outcome& o, std::ostream& out) {
  const TheoremId id = theorem_from_string(c.theorem);
  const Interval iv(c.a, c.b);
  VerifyOptions vo;
  vo.tol = c.tol;
  for (Mode mode : modes(c, id)) {
    const TheoremInstance inst{id, c.r, c.s, c.f, exponents(c), iv, mode};
    const VerificationReport rep = verify(inst, vo);
    report_verification(to_string(id), mode, rep, out);
    o.count(rep.status);
    o.rows.push_back(row_of(to_string(id), mode, rep));
    json run = run_header("verify", to_string(id), to_string(mode));
    run["constant"] = io::to_json(rep.breakdown);
    finish_run(run, json::array({io::to_json(rep)}), c.seed);
    o.runs.push_back(std::move(run));
    o.plots.push_back({to_string(id) + " " + to_string(mode), {{0.0, rep.ratio}}});
  }
  o.plot_title = to_string(id) + " verification";
}

inline json sweep_json(const SweepReport& sw, const std::string& command) {
  json run = run_header(command, to_string(sw.id), to_string(sw.mode));
  const auto first = std::find_if(sw.reports.begin(), sw.reports.end(),
                                  [](const VerificationReport& r) { return !r.failed; });
  if (first != sw.reports.end()) run["constant"] = io::to_json(first->breakdown);
  json instances = json::array();
  for (const auto& r : sw.reports) instances.push_back(io::to_json(r));
  finish_run(run, std::move(instances), sw.seed);
  run["summary"] = {{"holds", sw.holds},
                    {"violated", static_cast<int>(sw.violated.size())},
                    {"inconclusive", sw.inconclusive},
                    {"failed", sw.failed},
                    {"argmax", sw.argmax}};
  return run;
}

inline void summarize_sweep(const SweepReport& sw, std::ostream& out) {
  out << to_string(sw.id) << " [" << to_string(sw.mode) << "] " << sw.reports.size() << " instances: "
      << sw.holds << " Holds, " << sw.violated.size() << " Violated, " << sw.inconclusive
      << " Inconclusive; max ratio " << fmt(sw.max_ratio, 8) << "\n";
  for (int i : sw.violated) {
    const auto& r = sw.reports[static_cast<std::size_t>(i)];
    std::string f = "<raw>";
    try {
      f = io::to_json(r.instance.f).dump();
    } catch (const Error&) {
    }
    out << "  violated #" << i << " ratio " << fmt(r.ratio) << " f = " << f << "\n";
    if (!r.reason.empty()) out << "    " << r.reason << "\n";
  }
}

inline void add_sweep(const SweepReport& sw, Outcome& o, bool counted) {
  io::PlotSeries series{to_string(sw.id) + " " + to_string(sw.mode), {}};
  for (std::size_t i = 0; i < sw.reports.size(); ++i) {
    const auto& r = sw.reports[i];
    if (counted) o.count(r.status);
    o.rows.push_back(row_of(to_string(sw.id), sw.mode, r));
    series.points.emplace_back(static_cast<double>(i), r.ratio);
  }
  o.plots.push_back(std::move(series));
}

inline SweepReport run_sweep(const RunConfig& c, TheoremId id, Mode mode) {
  VerifyOptions vo;
  vo.tol = c.tol;
  if (c.family == "soundness") {
    SoundnessSettings st;
    st.count = c.count;
    st.seed = c.seed;
    st.exponents = exponents(c);
    st.interval = Interval(c.a, c.b);
    return soundness_sweep(id, mode, st, vo);
  }
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{6, 0.0, 1.0, false, false};
  fam.seed = c.seed;
  fam.interval = Interval(c.a, c.b);
  return sweep(id, fam, c.r, c.s, exponents(c), c.count, mode, vo);
}

inline void do_sweep(const RunConfig& c, Outcome& o, std::ostream& out) {
  const TheoremId id = theorem_from_string(c.theorem);
  for (Mode mode : modes(c, id)) {
    const SweepReport sw = run_sweep(c, id, mode);
    summarize_sweep(sw, out);
    add_sweep(sw, o, true);
    o.runs.push_back(sweep_json(sw, "sweep"));
  }
  o.plot_title = to_string(id) + " sweep";
}

inline json history_json(const SharpnessResult& res) {
  json h = json::array();
  for (const auto& [params, ratio] : res.history) {
    h.push_back({{"params", params}, {"ratio", io::finite_or_null(ratio)}});
  }
  return h;
}

inline io::PlotSeries history_series(const std::string& label, const SharpnessResult& res) {
  io::PlotSeries series{label, {}};
  for (const auto& [params, ratio] : res.history) series.points.emplace_back(params.at(0), ratio);
  std::sort(series.points.begin(), series.points.end());
  return series;
}

inline void do_theorem_sharpness(const RunConfig& c, Outcome& o, std::ostream& out) {
  const TheoremId id = theorem_from_string(c.theorem);
  const Interval iv(c.a, c.b);
  VerifyOptions vo;
  vo.tol = c.tol;
  auto family = [](const std::vector<double>& x) { return FunctionSpec::power(1.0, x.at(0)); };
  for (Mode mode : modes(c, id)) {
    const ExponentSet e = exponents(c);
    const SharpnessResult res = sharpness_search(id, family, {c.lo}, {c.hi}, c.r, c.s, e, iv, mode, c.budget, vo);
    const TheoremInstance best{id, c.r, c.s, family(res.best_params), e, iv, mode};
    const VerificationReport rep = verify(best, vo);
    out << to_string(id) << " [" << to_string(mode) << "] sharpness over alpha in [" << c.lo << ", " << c.hi
        << "]: best ratio " << fmt(res.best_ratio) << " at alpha = " << fmt(res.best_params.at(0))
        << " after " << res.evaluations << " evaluations\n";
    report_verification(to_string(id), mode, rep, out);
    o.count(rep.status);
    o.rows.push_back(row_of(to_string(id), mode, rep));
    json run = run_header("sharpness", to_string(id), to_string(mode));
    run["constant"] = io::to_json(rep.breakdown);
    finish_run(run, json::array({io::to_json(rep)}), c.seed);
    run["best_ratio"] = io::finite_or_null(res.best_ratio);
    run["best_params"] = res.best_params;
    run["evaluations"] = res.evaluations;
    run["history"] = history_json(res);
    o.runs.push_back(std::move(run));
    o.plots.push_back(history_series(to_string(id) + " " + to_string(mode), res));
  }
  o.plot_title = to_string(id) + " sharpness";
  o.plot_x = "alpha";
}

inline void do_lemma(const RunConfig& c, Outcome& o, std::ostream& out) {
  const OpialVariant v = variant_from_string(c.variant);
  const Interval iv(c.a, c.b);
  const LemmaWeights wts{c.r, c.s, c.w};
  std::vector<TestPath> paths;
  if (c.path == "random") {
    paths = random_paths(c.count, c.seed, required_vanishing(v), iv);
  } else {
    paths.push_back(parse_path(c.path, iv));
  }
  for (Mode mode : modes(c, std::nullopt)) {
    json instances = json::array();
    io::PlotSeries series{to_string(v) + " " + to_string(mode), {}};
    int holds = 0;
    double worst = -hopial::detail::kInf;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const VerificationRecord rec = verify_variant(v, paths[i], wts, lemma_params(c), mode);
      o.count(rec.status);
      if (rec.status == Status::holds) ++holds;
      worst = std::max(worst, rec.ratio);
      o.rows.push_back(row_of(to_string(v), mode, rec));
      instances.push_back(io::to_json(rec));
      series.points.emplace_back(static_cast<double>(i), rec.ratio);
      if (paths.size() == 1) {
        out << to_string(v) << " [" << to_string(mode) << "] on " << paths[i].label << ": lhs = " << fmt(rec.lhs)
            << "  C*rhs = " << fmt(rec.constant * rec.rhs) << "  ratio = " << fmt(rec.ratio) << "  "
            << to_string(rec.status) << "\n";
        if (!rec.note.empty()) out << "  " << rec.note << "\n";
      }
    }
    if (paths.size() > 1) {
      out << to_string(v) << " [" << to_string(mode) << "] " << paths.size() << " paths: " << holds
          << " Holds; max ratio " << fmt(worst, 8) << "\n";
    }
    json run = run_header("lemma", to_string(v), to_string(mode));
    run["path"] = c.path;
    finish_run(run, std::move(instances), c.seed);
    o.runs.push_back(std::move(run));
    o.plots.push_back(std::move(series));
  }
  o.plot_title = to_string(v) + " lemma";
}

inline void do_lemma_sharpness(const RunConfig& c, Outcome& o, std::ostream& out) {
  const OpialVariant v = variant_from_string(c.variant);
  const Interval iv(c.a, c.b);
  const double lo = iv.a() + std::clamp(c.lo, 0.0, 1.0) * iv.length();
  const double hi = iv.a() + std::clamp(c.hi, 0.0, 1.0) * iv.length();
  if (!(lo > iv.a() && hi < iv.b() && lo < hi)) {
    throw UsageError("lo", "hat peak range is a fraction of the interval strictly inside (0, 1)");
  }
  const LemmaWeights wts{c.r, c.s, c.w};
  auto family = [&](const std::vector<double>& x) { return hat_path(iv, x.at(0)); };
  for (Mode mode : modes(c, std::nullopt)) {
    const SharpnessResult res =
        lemma_sharpness_search(v, family, {lo}, {hi}, wts, lemma_params(c), mode, c.budget);
    const VerificationRecord rec = verify_variant(v, family(res.best_params), wts, lemma_params(c), mode);
    out << to_string(v) << " [" << to_string(mode) << "] hat sharpness: best ratio " << fmt(rec.ratio)
        << " at peak " << fmt(res.best_params.at(0)) << " after " << res.evaluations << " evaluations  "
        << to_string(rec.status) << "\n";
    o.count(rec.status);
    o.rows.push_back(row_of(to_string(v), mode, rec));
    json run = run_header("sharpness", to_string(v), to_string(mode));
    finish_run(run, json::array({io::to_json(rec)}), c.seed);
    run["best_ratio"] = io::finite_or_null(res.best_ratio);
    run["best_params"] = res.best_params;
    run["evaluations"] = res.evaluations;
    run["history"] = history_json(res);
    o.runs.push_back(std::move(run));
    o.plots.push_back(history_series(to_string(v) + " " + to_string(mode), res));
  }
  o.plot_title = to_string(v) + " sharpness";
  o.plot_x = "peak";
}

// The bundled acceptance corpus.
inline void do_suite(const RunConfig& c, Outcome& o, std::ostream& out) {
  const Interval unit(0.0, 1.0);
  VerifyOptions vo;
  vo.tol = c.tol;

  // classical Hardy: one instance and the alpha search
  {
    RunConfig h;
    h.theorem = "HARDY";
    h.p = 2.0;
    h.f = FunctionSpec::power(1.0, -0.49);
    h.tol = c.tol;
    do_verify(h, o, out);
    h.lo = -0.5;
    h.hi = -0.05;
    h.budget = 60;
    h.family = "pow";
    Outcome search;
    do_theorem_sharpness(h, search, out);
    for (auto& run : search.runs) o.runs.push_back(std::move(run));
    o.violated = o.violated || search.violated;
    o.inconclusive = o.inconclusive || search.inconclusive;
  }
  // Opial equality witnesses
  struct Witness {
    const char* variant;
    const char* path;
    double p;
  };
  for (const Witness& wt : {Witness{"OPIAL", "hat", 1.0}, Witness{"B1", "linear", 1.0}, Witness{"H1", "linear", 2.0}}) {
    RunConfig l;
    l.command = "lemma";
    l.variant = wt.variant;
    l.path = wt.path;
    l.p = wt.p;
    Outcome lem;
    do_lemma(l, lem, out);
    for (auto& run : lem.runs) o.runs.push_back(std::move(run));
    o.rows.insert(o.rows.end(), lem.rows.begin(), lem.rows.end());
    o.violated = o.violated || lem.violated;
    o.inconclusive = o.inconclusive || lem.inconclusive;
  }
  o.plots.clear();
  // soundness sweeps in the default mode
  io::PlotSeries maxima{"max ratio per theorem (default mode)", {}};
  for (TheoremId id : all_theorems()) {
    RunConfig sc = c;
    sc.theorem = to_string(id);
    sc.family = "soundness";
    const SweepReport sw = run_sweep(sc, id, default_mode(id));
    summarize_sweep(sw, out);
    Outcome tmp;
    add_sweep(sw, tmp, true);
    o.rows.insert(o.rows.end(), tmp.rows.begin(), tmp.rows.end());
    o.violated = o.violated || tmp.violated;
    o.inconclusive = o.inconclusive || tmp.inconclusive;
    maxima.points.emplace_back(static_cast<double>(maxima.points.size()), sw.max_ratio);
    o.runs.push_back(sweep_json(sw, "sweep"));
  }
  o.plots.push_back(std::move(maxima));
  // dual-mode audit of the T2.16 constant; reported, not counted
  out << "T2.16 dual-mode audit (not counted in the exit status):\n";
  for (Mode mode : {Mode::as_printed, Mode::as_derived}) {
    RunConfig ac = c;
    ac.family = "soundness";
    const SweepReport sw = run_sweep(ac, TheoremId::T2_16, mode);
    summarize_sweep(sw, out);
    json run = sweep_json(sw, "audit");
    o.runs.push_back(std::move(run));
  }
  o.plot_title = "soundness sweeps";
  o.plot_x = "theorem index";
}

inline void write_outputs(const RunConfig& c, const Outcome& o, std::ostream& out) {
  std::string json_path = c.json_out, csv_path = c.csv_out, svg_path = c.svg_out;
  if (c.command == "suite") {
    const std::filesystem::path dir(c.out_dir);
    if (json_path.empty()) json_path = (dir / "suite.json").string();
    if (csv_path.empty()) csv_path = (dir / "suite.csv").string();
    if (svg_path.empty()) svg_path = (dir / "suite.svg").string();
  }
  if (!json_path.empty()) {
    json doc;
    if (o.runs.size() == 1) {
      doc = o.runs.front();
    } else {
      doc = {{"schema_version", 1}, {"command", c.command}, {"runs", o.runs}};
    }
    doc["timestamp"] = timestamp();
    io::write_atomic(json_path, doc.dump(2) + "\n");
    out << "wrote " << json_path << "\n";
  }
  if (!csv_path.empty()) {
    io::write_atomic(csv_path, io::to_csv(o.rows));
    out << "wrote " << csv_path << "\n";
  }
  if (!svg_path.empty()) {
    bool any = false;
    for (const auto& s : o.plots) {
      for (const auto& pt : s.points) any = any || std::isfinite(pt.second);
    }
    if (any) {
      io::write_atomic(svg_path, io::svg_plot(o.plots, o.plot_title, o.plot_x));
      out << "wrote " << svg_path << "\n";
    } else {
      out << "no finite ratios to plot; " << svg_path << " not written\n";
    }
  }
}

}  // namespace detail

/// Executes the configuration; returns the exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    detail::Outcome o;
    if (c.command == "constant") {
      detail::do_constant(c, o, out);
    } else if (c.command == "verify") {
      detail::do_verify(c, o, out);
    } else if (c.command == "sweep") {
      detail::do_sweep(c, o, out);
    } else if (c.command == "sharpness") {
      if (c.variant.empty()) {
        detail::do_theorem_sharpness(c, o, out);
      } else {
        detail::do_lemma_sharpness(c, o, out);
      }
    } else if (c.command == "lemma") {
      detail::do_lemma(c, o, out);
    } else {
      detail::do_suite(c, o, out);
    }
    detail::write_outputs(c, o, out);
    return o.exit_code();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionFailed& e) {
    err << "error: " << (c.command == "lemma" ? "variant" : "theorem") << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hopial::cli
