#pragma once

// End-to-end verification of the Hardy-type theorems: left and right sides assembled per
// theorem, ratio against the constant, random sweeps and a derivative-free sharpness search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hopial/constants.hpp"
#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"
#include "hopial/mode.hpp"
#include "hopial/optimize.hpp"
#include "hopial/primitive.hpp"
#include "hopial/quad.hpp"
#include "hopial/status.hpp"

namespace hopial {

struct TheoremInstance {
  TheoremId id = TheoremId::T2_1;
  FunctionSpec r = FunctionSpec::constant(1.0);
  FunctionSpec s = FunctionSpec::constant(1.0);
  FunctionSpec f = FunctionSpec::constant(1.0);
  ExponentSet exponents{};
  Interval interval{0.0, 1.0};
  Mode mode = Mode::as_derived;
};

struct VerificationReport {
  TheoremInstance instance;
  double lhs = 0.0;
  double rhs = 0.0;  // rhs_core: the right-hand integral with its displayed outer power
  double constant = 0.0;
  double ratio = 0.0;
  Status status = Status::inconclusive;
  double budget = kBudgetFloor;
  ConstantBreakdown breakdown;
  std::string reason;  // why a report is Inconclusive, or the triage outcome of a violation
  bool failed = false;  // no numbers: a precondition or the constant itself failed
};

struct VerifyOptions {
  double tol = kSmoothTolerance;
  int grid = 256;
  bool triage = true;
};

namespace detail {

struct Shape {
  double lhs_power = 1.0;    // power of F inside the left integral
  double lhs_outer = 1.0;    // power applied to the whole left integral
  double f_power = 2.0;      // power of f on the right
  double rhs_outer = 1.0;
  bool rhs_s = false;        // s multiplies the right integrand
  bool rhs_R = false;        // R multiplies the right integrand
};

inline Shape shape_of(TheoremId id, const ExponentSet& e, Mode mode) {
  const double p = e.p;
  Shape sh;
  switch (id) {
    case TheoremId::T2_1: case TheoremId::T2_2:
      sh.lhs_outer = 2.0;
      sh.rhs_s = true;
      break;
    case TheoremId::T2_3: case TheoremId::T2_4:
      sh.lhs_power = 2.0;
      break;
    case TheoremId::T2_5: case TheoremId::T2_6:
      sh.lhs_power = 2.0;
      sh.rhs_s = true;
      break;
    case TheoremId::T2_7: case TheoremId::T2_8:
      sh.lhs_power = 2.0;
      sh.rhs_s = true;
      sh.f_power = e.q;
      sh.rhs_outer = 2.0 / e.q;
      break;
    case TheoremId::T2_9: case TheoremId::T2_10:
      sh.lhs_power = 2.0;
      sh.rhs_s = true;
      sh.rhs_R = true;
      break;
    case TheoremId::T2_11: case TheoremId::T2_12:
      sh.lhs_power = p + 1.0;
      sh.f_power = p + 1.0;
      break;
    case TheoremId::T2_13: case TheoremId::T2_14: case TheoremId::T2_15:
      sh.lhs_power = p + 1.0;
      sh.f_power = p + 1.0;
      sh.rhs_s = true;
      break;
    case TheoremId::T2_16: case TheoremId::T2_17:
      sh.lhs_power = p + 1.0;
      sh.f_power = p * (p + 1.0) / (p - 1.0);
      sh.rhs_outer = (p - 1.0) / p;
      break;
    case TheoremId::C2_1a: case TheoremId::C2_1b: case TheoremId::C2_2a: case TheoremId::C2_2b:
      sh.lhs_power = p + 1.0;
      sh.lhs_outer = 1.0 / (p + 1.0);
      sh.f_power = p * (p + 1.0) / (p - 1.0);
      sh.rhs_outer = (p - 1.0) / (p * (p + 1.0));
      break;
    case TheoremId::T2_18: case TheoremId::T2_19:
      sh.lhs_power = p + 1.0;
      sh.f_power = p + 1.0;
      sh.rhs_R = true;
      break;
    case TheoremId::T2_20: case TheoremId::T2_21:
      sh.lhs_power = p + 1.0;
      sh.f_power = e.k;
      sh.rhs_outer = (p + 1.0) / e.k;
      break;
    case TheoremId::T2_22: case TheoremId::T2_23:
      sh.lhs_power = p + 1.0;
      sh.f_power = e.q;
      sh.rhs_outer = mode == Mode::as_printed ? p + 1.0 : (p + 1.0) / e.q;
      break;
    case TheoremId::T2_27: case TheoremId::T2_28:
      sh.lhs_power = p + 1.0;
      sh.f_power = p * e.q + e.q;
      sh.rhs_outer = 1.0 / e.q;
      sh.rhs_s = true;
      break;
    case TheoremId::T2_30: case TheoremId::T2_31:
      sh.lhs_power = p + 1.0;
      sh.f_power = e.k;
      sh.rhs_outer = (p + 1.0) / e.k;
      sh.rhs_s = true;
      break;
    case TheoremId::HARDY:
      sh.lhs_power = p;
      sh.f_power = p;
      break;
  }
  return sh;
}

inline void check_instance(const TheoremInstance& inst) {
  const Interval& iv = inst.interval;
  validate(inst.f, iv);
  for (int i = 1; i < 256; ++i) {
    const double v = evaluate_unchecked(inst.f, iv.a() + iv.length() * i / 256.0, iv);
    if (v < 0.0) throw PreconditionFailed("f >= 0");
  }
  if (inst.id == TheoremId::HARDY) {
    require(inst.exponents.p > 1.0, "p > 1");
  }
}

inline std::shared_ptr<const Primitive> running_integral(const TheoremInstance& inst, double tol,
                                                         int grid) {
  const Anchor anchor = direction(inst.id) == Side::left ? Anchor::left : Anchor::right;
  return std::make_shared<const Primitive>(inst.f, inst.interval, anchor, grid,
                                           QuadOptions{tol, 0.0, 10000});
}

inline QuadResult powered(QuadResult r, double outer) {
  if (outer == 1.0) return r;
  const double rel_err = r.rel_error();
  r.value = std::pow(r.value, outer);
  r.abs_error_estimate = std::abs(outer) * rel_err * r.value;
  return r;
}

inline QuadResult lhs_impl(const TheoremInstance& inst, double tol, int grid) {
  const Interval& iv = inst.interval;
  const Shape sh = shape_of(inst.id, inst.exponents, inst.mode);
  const auto F = running_integral(inst, tol, grid);
  Integrand g;
  if (inst.id == TheoremId::HARDY) {
    g = pow(integrand_of(F) * integrand_of(FunctionSpec::power(1.0, -1.0), iv), sh.lhs_power);
  } else {
    g = integrand_of(inst.r, iv) * pow(integrand_of(F), sh.lhs_power);
  }
  QuadResult r = robust_integrate(g, iv, tol);
  r.abs_error_estimate += sh.lhs_power * F->rel_error() * std::abs(r.value);
  return powered(r, sh.lhs_outer);
}

inline QuadResult rhs_impl(const TheoremInstance& inst, double tol, int grid) {
  const Interval& iv = inst.interval;
  const Shape sh = shape_of(inst.id, inst.exponents, inst.mode);
  Integrand g = pow(integrand_of(inst.f, iv), sh.f_power);
  double extra_rel = 0.0;
  if (sh.rhs_s) g = integrand_of(inst.s, iv) * g;
  if (sh.rhs_R) {
    ConstantOptions co;
    co.tol = tol;
    co.grid = grid;
    const auto R = weight_primitive(inst.r, iv, direction(inst.id), co);
    extra_rel = R->rel_error();
    g = integrand_of(R) * g;
  }
  QuadResult r = robust_integrate(g, iv, tol);
  r.abs_error_estimate += extra_rel * std::abs(r.value);
  return powered(r, sh.rhs_outer);
}

}  // namespace detail

/// The theorem's left side, with its displayed outer power.
inline QuadResult assemble_lhs(const TheoremInstance& inst, const VerifyOptions& opts = {}) {
  detail::check_instance(inst);
  return detail::lhs_impl(inst, opts.tol, opts.grid);
}

/// The right-hand integral (weights folded in) with its displayed outer power; no constant.
inline QuadResult assemble_rhs(const TheoremInstance& inst, const VerifyOptions& opts = {}) {
  detail::check_instance(inst);
  return detail::rhs_impl(inst, opts.tol, opts.grid);
}

namespace detail {

inline VerificationReport verify_once(const TheoremInstance& inst, const ConstantBreakdown& C,
                                      const VerifyOptions& opts) {
  VerificationReport rep;
  rep.instance = inst;
  rep.breakdown = C;
  rep.constant = C.value;
  try {
    const QuadResult lhs = lhs_impl(inst, opts.tol, opts.grid);
    const QuadResult rhs = rhs_impl(inst, opts.tol, opts.grid);
    rep.lhs = lhs.value;
    rep.rhs = rhs.value;
    rep.budget = std::max(kBudgetFloor, rel(lhs) + rel(rhs) + C.error_estimate);
    const double bound = rep.constant * rep.rhs;
    if (!std::isfinite(rep.lhs) || !std::isfinite(bound)) {
      rep.ratio = std::numeric_limits<double>::quiet_NaN();
      rep.status = Status::inconclusive;
      rep.reason = "non-finite side";
      return rep;
    }
    rep.ratio = rep.lhs == 0.0 ? 0.0 : bound > 0.0 ? rep.lhs / bound : kInf;
    rep.status = classify(rep.ratio, rep.budget);
  } catch (const PreconditionFailed&) {
    throw;
  } catch (const Error& e) {
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    rep.status = Status::inconclusive;
    rep.reason = e.what();
  }
  return rep;
}

}  // namespace detail

/// Verify one instance against a precomputed constant (the sweep path).
inline VerificationReport verify_with(const TheoremInstance& inst, const ConstantBreakdown& C,
                                      const VerifyOptions& opts = {}) {
  detail::check_instance(inst);
  VerificationReport rep = detail::verify_once(inst, C, opts);
  if (rep.status != Status::violated || !opts.triage) return rep;

  // triage: 10x tighter quadrature, then the alternate reading of the constant
  VerifyOptions tight = opts;
  tight.tol = std::max(opts.tol / 10.0, 1e-13);
  tight.grid = opts.grid * 2;
  tight.triage = false;
  ConstantOptions co;
  co.tol = tight.tol;
  co.grid = tight.grid;
  const ConstantBreakdown Ct = hardy_constant(inst.id, inst.r, inst.s, inst.exponents,
                                              inst.interval, inst.mode, co);
  VerificationReport again = detail::verify_once(inst, Ct, tight);
  std::string note = "triage: ratio at tol " + std::to_string(tight.tol) + " = " +
                     std::to_string(again.ratio) + " (" + to_string(again.status) + ")";
  try {
    TheoremInstance alt = inst;
    alt.mode = other(inst.mode);
    const ConstantBreakdown Ca = hardy_constant(alt.id, alt.r, alt.s, alt.exponents, alt.interval,
                                                alt.mode, co);
    const VerificationReport ra = detail::verify_once(alt, Ca, tight);
    note += "; " + to_string(alt.mode) + " ratio = " + std::to_string(ra.ratio) + " (" +
            to_string(ra.status) + ")";
  } catch (const Error& e) {
    note += "; " + to_string(other(inst.mode)) + " unavailable: " + e.what();
  }
  again.reason = note;
  return again;
}

inline VerificationReport verify(const TheoremInstance& inst, const VerifyOptions& opts = {}) {
  detail::check_instance(inst);
  ConstantOptions co;
  co.tol = opts.tol;
  co.grid = opts.grid;
  const ConstantBreakdown C =
      hardy_constant(inst.id, inst.r, inst.s, inst.exponents, inst.interval, inst.mode, co);
  return verify_with(inst, C, opts);
}

// ---------------------------------------------------------------------------------------------
// Sweeps

/// Worker count: HOPIAL_THREADS if set and positive, else the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("HOPIAL_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on a strided worker pool. Results must be written by index.
inline void parallel_for(int n, const std::function<void(int)>& body) {
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max(n, 1)));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SweepReport {
  TheoremId id = TheoremId::T2_1;
  Mode mode = Mode::as_derived;
  std::uint64_t seed = 0;
  std::vector<VerificationReport> reports;
  double max_ratio = 0.0;
  int argmax = -1;
  std::vector<int> violated;
  int holds = 0;
  int inconclusive = 0;
  int failed = 0;  // precondition failures, reason in the report
};

namespace detail {

inline void summarize(SweepReport& sw) {
  sw.max_ratio = 0.0;
  sw.argmax = -1;
  sw.violated.clear();
  sw.holds = sw.inconclusive = sw.failed = 0;
  for (int i = 0; i < static_cast<int>(sw.reports.size()); ++i) {
    const auto& r = sw.reports[static_cast<std::size_t>(i)];
    if (std::isfinite(r.ratio) && (sw.argmax < 0 || r.ratio > sw.max_ratio)) {
      sw.max_ratio = r.ratio;
      sw.argmax = i;
    }
    if (r.failed) ++sw.failed;
    switch (r.status) {
      case Status::holds: ++sw.holds; break;
      case Status::violated: sw.violated.push_back(i); break;
      case Status::inconclusive: ++sw.inconclusive; break;
    }
  }
}

inline VerificationReport failed_report(const TheoremInstance& inst, const std::string& why) {
  VerificationReport rep;
  rep.instance = inst;
  rep.ratio = std::numeric_limits<double>::quiet_NaN();
  rep.status = Status::inconclusive;
  rep.reason = why;
  rep.failed = true;
  return rep;
}

}  // namespace detail

/// count members of the f family against fixed weights r, s; the constant is computed once.
inline SweepReport sweep(TheoremId id, const FamilySpec& family, const FunctionSpec& r,
                         const FunctionSpec& s, const ExponentSet& e, int count, Mode mode,
                         const VerifyOptions& opts = {}) {
  if (count < 1) throw DomainError("sweep: count must be >= 1");
  SweepReport sw;
  sw.id = id;
  sw.mode = mode;
  sw.seed = family.seed;
  ConstantOptions co;
  co.tol = opts.tol;
  co.grid = opts.grid;
  const ConstantBreakdown C = hardy_constant(id, r, s, e, family.interval, mode, co);
  const auto fs = sample_family(family, count);
  sw.reports.resize(static_cast<std::size_t>(count));
  parallel_for(count, [&](int i) {
    TheoremInstance inst{id, r, s, fs[static_cast<std::size_t>(i)], e, family.interval, mode};
    try {
      sw.reports[static_cast<std::size_t>(i)] = verify_with(inst, C, opts);
    } catch (const Error& ex) {
      sw.reports[static_cast<std::size_t>(i)] = detail::failed_report(inst, ex.what());
    }
  });
  detail::summarize(sw);
  return sw;
}

/// Settings of the soundness sweep: f piecewise linear, weights c0 + c1 (x - a)^alpha drawn
/// from `weight_configs` fixed configurations (alpha in [0, 2], c0 in [0.5, 1.5], c1 in [0, 1]).
struct SoundnessSettings {
  int count = 200;
  std::uint64_t seed = 2024;
  int weight_configs = 10;
  int f_knots = 6;
  ExponentSet exponents{2.0, 2.0, 3.0, true};
  Interval interval{0.0, 1.0};
};

inline FunctionSpec random_weight(std::uint64_t seed, std::uint64_t index) {
  auto eng = detail::member_engine(seed ^ 0x9e3779b97f4a7c15ULL, index);
  const double c0 = detail::uniform(eng, 0.5, 1.5);
  const double c1 = detail::uniform(eng, 0.0, 1.0);
  const double alpha = detail::uniform(eng, 0.0, 2.0);
  return FunctionSpec::sum({FunctionSpec::constant(c0), FunctionSpec::power(c1, alpha)});
}

/// Random instances of one theorem: instance i uses weight configuration i mod weight_configs
/// and the i-th piecewise-linear f. Constants are computed once per configuration.
inline SweepReport soundness_sweep(TheoremId id, Mode mode, const SoundnessSettings& st = {},
                                   const VerifyOptions& opts = {}) {
  SweepReport sw;
  sw.id = id;
  sw.mode = mode;
  sw.seed = st.seed;
  const int nw = std::max(1, std::min(st.weight_configs, st.count));
  std::vector<FunctionSpec> rs, ss;
  for (int j = 0; j < nw; ++j) {
    rs.push_back(random_weight(st.seed, 2 * static_cast<std::uint64_t>(j)));
    ss.push_back(random_weight(st.seed, 2 * static_cast<std::uint64_t>(j) + 1));
  }
  std::vector<std::optional<ConstantBreakdown>> constants(static_cast<std::size_t>(nw));
  std::vector<std::string> constant_errors(static_cast<std::size_t>(nw));
  ConstantOptions co;
  co.tol = opts.tol;
  co.grid = opts.grid;
  parallel_for(nw, [&](int j) {
    const auto J = static_cast<std::size_t>(j);
    try {
      constants[J] = hardy_constant(id, rs[J], ss[J], st.exponents, st.interval, mode, co);
    } catch (const Error& ex) {
      constant_errors[J] = ex.what();
    }
  });
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{st.f_knots, 0.0, 1.0, false, false};
  fam.seed = st.seed;
  fam.interval = st.interval;
  const auto fs = sample_family(fam, st.count);
  sw.reports.resize(static_cast<std::size_t>(st.count));
  parallel_for(st.count, [&](int i) {
    const auto I = static_cast<std::size_t>(i);
    const auto J = static_cast<std::size_t>(i % nw);
    TheoremInstance inst{id, rs[J], ss[J], fs[I], st.exponents, st.interval, mode};
    if (!constants[J]) {
      sw.reports[I] = detail::failed_report(inst, constant_errors[J]);
      return;
    }
    try {
      sw.reports[I] = verify_with(inst, *constants[J], opts);
    } catch (const Error& ex) {
      sw.reports[I] = detail::failed_report(inst, ex.what());
    }
  });
  detail::summarize(sw);
  return sw;
}

// ---------------------------------------------------------------------------------------------
// Sharpness search

/// Worst-case ratio of theorem id over f = family(params), params in [lo, hi].
/// Ratios above 1 + budget are re-verified at 10x tighter tolerance before being kept.
inline SharpnessResult sharpness_search(TheoremId id,
                                        const std::function<FunctionSpec(const std::vector<double>&)>& family,
                                        const std::vector<double>& lo, const std::vector<double>& hi,
                                        const FunctionSpec& r, const FunctionSpec& s,
                                        const ExponentSet& e, const Interval& iv, Mode mode,
                                        int budget = 200, const VerifyOptions& opts = {}) {
  if (budget < 50) throw DomainError("sharpness_search: budget must be >= 50");
  ConstantOptions co;
  co.tol = opts.tol;
  co.grid = opts.grid;
  const ConstantBreakdown C = hardy_constant(id, r, s, e, iv, mode, co);
  VerifyOptions quiet = opts;
  quiet.triage = false;
  auto objective = [&](const std::vector<double>& x) {
    TheoremInstance inst{id, r, s, family(x), e, iv, mode};
    VerificationReport rep = verify_with(inst, C, quiet);
    if (rep.status == Status::holds || !std::isfinite(rep.ratio)) return rep.ratio;
    VerifyOptions tight = quiet;
    tight.tol = std::max(opts.tol / 10.0, 1e-13);
    rep = verify_with(inst, C, tight);
    return rep.status == Status::inconclusive ? std::numeric_limits<double>::quiet_NaN() : rep.ratio;
  };
  return maximize_in_box(objective, lo, hi, budget);
}

}  // namespace hopial
