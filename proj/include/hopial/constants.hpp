#pragma once

// Constants of the weighted Hardy-type inequalities, with a factor-level breakdown.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopial/eigen.hpp"
#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"
#include "hopial/mode.hpp"
#include "hopial/primitive.hpp"
#include "hopial/quad.hpp"
#include "hopial/special.hpp"

namespace hopial {

enum class TheoremId {
  T2_1, T2_2, T2_3, T2_4, T2_5, T2_6, T2_7, T2_8, T2_9, T2_10, T2_11, T2_12,
  T2_13, T2_14, T2_15, T2_16, T2_17, T2_18, T2_19, T2_20, T2_21, T2_22, T2_23,
  T2_27, T2_28, T2_30, T2_31, C2_1a, C2_1b, C2_2a, C2_2b, HARDY
};

inline const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = {
      TheoremId::T2_1,  TheoremId::T2_2,  TheoremId::T2_3,  TheoremId::T2_4,  TheoremId::T2_5,
      TheoremId::T2_6,  TheoremId::T2_7,  TheoremId::T2_8,  TheoremId::T2_9,  TheoremId::T2_10,
      TheoremId::T2_11, TheoremId::T2_12, TheoremId::T2_13, TheoremId::T2_14, TheoremId::T2_15,
      TheoremId::T2_16, TheoremId::T2_17, TheoremId::T2_18, TheoremId::T2_19, TheoremId::T2_20,
      TheoremId::T2_21, TheoremId::T2_22, TheoremId::T2_23, TheoremId::T2_27, TheoremId::T2_28,
      TheoremId::T2_30, TheoremId::T2_31, TheoremId::C2_1a, TheoremId::C2_1b, TheoremId::C2_2a,
      TheoremId::C2_2b, TheoremId::HARDY};
  return ids;
}

inline std::string to_string(TheoremId id) {
  static const std::array<const char*, 32> names = {
      "T2.1",  "T2.2",  "T2.3",  "T2.4",  "T2.5",  "T2.6",  "T2.7",  "T2.8",
      "T2.9",  "T2.10", "T2.11", "T2.12", "T2.13", "T2.14", "T2.15", "T2.16",
      "T2.17", "T2.18", "T2.19", "T2.20", "T2.21", "T2.22", "T2.23", "T2.27",
      "T2.28", "T2.30", "T2.31", "C2.1a", "C2.1b", "C2.2a", "C2.2b", "HARDY"};
  return names[static_cast<std::size_t>(id)];
}

/// Accepts "T2.1", "T2_1", "C2.1a", "HARDY" and "HARDY_CLASSICAL".
inline TheoremId theorem_from_string(std::string s) {
  std::replace(s.begin(), s.end(), '_', '.');
  if (s == "HARDY.CLASSICAL") s = "HARDY";
  for (TheoremId id : all_theorems()) {
    if (to_string(id) == s) return id;
  }
  throw UsageError("theorem", "unknown theorem id '" + s + "'");
}

/// Which end F is anchored at: F(x) = int_a^x f (left) or int_x^b f (right).
inline Side direction(TheoremId id) {
  switch (id) {
    case TheoremId::T2_2: case TheoremId::T2_4: case TheoremId::T2_6: case TheoremId::T2_8:
    case TheoremId::T2_10: case TheoremId::T2_12: case TheoremId::T2_15: case TheoremId::T2_17:
    case TheoremId::T2_19: case TheoremId::T2_21: case TheoremId::T2_23: case TheoremId::T2_28:
    case TheoremId::T2_31: case TheoremId::C2_1b: case TheoremId::C2_2b:
      return Side::right;
    default:
      return Side::left;
  }
}

/// The same inequality anchored at the other end, when the catalog has it.
inline std::optional<TheoremId> mirror(TheoremId id) {
  static const std::array<std::pair<TheoremId, TheoremId>, 15> pairs = {{
      {TheoremId::T2_1, TheoremId::T2_2},   {TheoremId::T2_3, TheoremId::T2_4},
      {TheoremId::T2_5, TheoremId::T2_6},   {TheoremId::T2_7, TheoremId::T2_8},
      {TheoremId::T2_9, TheoremId::T2_10},  {TheoremId::T2_11, TheoremId::T2_12},
      {TheoremId::T2_14, TheoremId::T2_15}, {TheoremId::T2_16, TheoremId::T2_17},
      {TheoremId::T2_18, TheoremId::T2_19}, {TheoremId::T2_20, TheoremId::T2_21},
      {TheoremId::T2_22, TheoremId::T2_23}, {TheoremId::T2_27, TheoremId::T2_28},
      {TheoremId::T2_30, TheoremId::T2_31}, {TheoremId::C2_1a, TheoremId::C2_1b},
      {TheoremId::C2_2a, TheoremId::C2_2b},
  }};
  for (const auto& [l, r] : pairs) {
    if (l == id) return r;
    if (r == id) return l;
  }
  return std::nullopt;
}

/// Theorems whose printed constant or right-hand side differs from what the argument supports.
inline bool has_ledger_entry(TheoremId id) {
  switch (id) {
    case TheoremId::T2_13: case TheoremId::T2_16: case TheoremId::T2_17:
    case TheoremId::T2_20: case TheoremId::T2_21: case TheoremId::T2_22: case TheoremId::T2_23:
    case TheoremId::T2_27: case TheoremId::T2_28: case TheoremId::T2_30: case TheoremId::T2_31:
    case TheoremId::C2_1a: case TheoremId::C2_1b: case TheoremId::C2_2a: case TheoremId::C2_2b:
      return true;
    default:
      return false;
  }
}

/// as_printed where the printed constant is the larger, safe one; as_derived elsewhere.
inline Mode default_mode(TheoremId id) {
  switch (id) {
    case TheoremId::T2_16: case TheoremId::T2_17: case TheoremId::C2_1a: case TheoremId::C2_1b:
    case TheoremId::C2_2a: case TheoremId::C2_2b:
      return Mode::as_printed;
    default:
      return Mode::as_derived;
  }
}

/// Whether the theorem takes a second weight s.
inline bool uses_s(TheoremId id) {
  switch (id) {
    case TheoremId::T2_1: case TheoremId::T2_2: case TheoremId::T2_5: case TheoremId::T2_6:
    case TheoremId::T2_7: case TheoremId::T2_8: case TheoremId::T2_9: case TheoremId::T2_10:
    case TheoremId::T2_13: case TheoremId::T2_14: case TheoremId::T2_15: case TheoremId::T2_27:
    case TheoremId::T2_28: case TheoremId::T2_30: case TheoremId::T2_31:
      return true;
    default:
      return false;
  }
}

inline bool uses_r(TheoremId id) { return id != TheoremId::HARDY; }

struct ExponentSet {
  double p = 2.0;
  double q = 2.0;
  double k = 3.0;  // Beesack/Boyd exponent, only read by the theorems that have one
  bool conjugate_check = true;
};

struct Factor {
  std::string name;
  double value = 0.0;
};

struct ConstantBreakdown {
  double value = 0.0;
  std::vector<Factor> factors;
  Mode mode = Mode::as_derived;
  double error_estimate = 0.0;  // relative, first order: sum of the factors' relative errors
  std::string rhs_weight;       // weight folded into the right-hand integrand, empty if none
  std::string note;
};

struct ConstantOptions {
  double tol = kSmoothTolerance;
  int grid = 256;
  EigenOptions eigen{};
};

// ---------------------------------------------------------------------------------------------

namespace detail {

/// Adaptive integration at tol, retried at the singular tolerance when the panel cap is hit.
inline QuadResult robust_integrate(const Integrand& g, const Interval& iv, double tol) {
  try {
    return integrate(g, iv, QuadOptions{tol, 0.0, 10000});
  } catch (const BudgetExceeded&) {
    if (tol >= kSingularTolerance) throw;
    return integrate(g, iv, QuadOptions{kSingularTolerance, 0.0, 10000});
  }
}

inline double rel(const QuadResult& r) { return std::max(r.rel_error(), 1e-15); }

inline bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

inline void require(bool ok, const std::string& condition) {
  if (!ok) throw PreconditionFailed(condition);
}

inline void require_positive(const FunctionSpec& w, const char* name, const Interval& iv) {
  validate(w, iv);
  if (has_interior_zero(w, iv)) throw PreconditionFailed(std::string(name) + " > 0 on (a, b)");
  for (int i = 1; i < 64; ++i) {
    const double v = detail::evaluate_unchecked(w, iv.a() + iv.length() * i / 64.0, iv);
    if (!(v > 0.0)) throw PreconditionFailed(std::string(name) + " > 0 on (a, b)");
  }
}

// int_a^b w^gamma is finite, judged from the structural endpoint exponents.
inline bool power_integrable(const FunctionSpec& w, double gamma, const Interval& iv) {
  for (Side side : {Side::left, Side::right}) {
    const double e = endpoint_exponent(w, side, iv);
    if (!std::isfinite(e)) return gamma >= 0.0;
    if (e * gamma <= -1.0) return false;
  }
  return true;
}

struct Accumulator {
  ConstantBreakdown out;
  void add(std::string name, double value, double rel_err = 1e-15) {
    out.factors.push_back({std::move(name), value});
    out.error_estimate += rel_err;
  }
  ConstantBreakdown finish(Mode mode) {
    out.mode = mode;
    out.value = 1.0;
    for (const auto& f : out.factors) out.value *= f.value;
    return out;
  }
};

inline std::shared_ptr<const Primitive> weight_primitive(const FunctionSpec& r, const Interval& iv,
                                                         Side side, const ConstantOptions& opts) {
  return std::make_shared<const Primitive>(r, iv, side == Side::left ? Anchor::right : Anchor::left,
                                           opts.grid, QuadOptions{opts.tol, 0.0, 10000});
}

inline std::string R_name(Side side) { return side == Side::left ? "R(x,b)" : "R(a,x)"; }

inline SupResult sup_of(const Primitive& R, const Interval& iv) {
  return sup_on_interval([&R](double x) { return R(x); }, iv);
}

// (int w^gamma)^outer; w^gamma keeps structural exponents.
inline std::pair<double, double> weight_power_integral(const FunctionSpec& w, double gamma,
                                                       double outer, const Interval& iv,
                                                       double tol) {
  const auto r = robust_integrate(pow(integrand_of(w, iv), gamma), iv, tol);
  return {std::pow(r.value, outer), std::abs(outer) * rel(r)};
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------

/// R(x,b) = int_x^b r.
inline double r_tail(const FunctionSpec& r, double x, const Interval& iv) {
  if (!iv.contains(x)) throw DomainError("r_tail: x outside the interval");
  return Primitive(r, iv, Anchor::right)(x);
}

/// R(a,x) = int_a^x r.
inline double r_head(const FunctionSpec& r, double x, const Interval& iv) {
  if (!iv.contains(x)) throw DomainError("r_head: x outside the interval");
  return Primitive(r, iv, Anchor::left)(x);
}

namespace detail {

// Beesack-Das type constant on [lo, hi] (a subinterval of full where r, s live):
// (q/(p+q))^{q/(p+q)} (int r^{rexp} s^{-q/p} S^{p+q-1})^{p/(p+q)},
// S = int s^{-1/(p+q-1)} from lo (Side::left) or to hi (Side::right).
inline Estimate bd_K(double p, double q, double rexp, const FunctionSpec& r, const FunctionSpec& s,
                     double lo, double hi, const Interval& full, Side side, double tol, int grid) {
  if (hi <= lo) return {0.0, 0.0};
  const Interval sub(lo, hi);
  auto restrict = [&](const FunctionSpec& w) {
    Integrand g = integrand_of(w, full);
    if (lo > full.a()) g.left_exponent = 0.0;
    if (hi < full.b()) g.right_exponent = 0.0;
    std::erase_if(g.breakpoints, [&](double x) { return x <= lo || x >= hi; });
    return g;
  };
  const double m = p + q - 1.0;
  const Integrand sinv = pow(restrict(s), -1.0 / m);
  auto S = std::make_shared<const Primitive>(sinv, sub, side == Side::left ? Anchor::left : Anchor::right,
                                             grid, QuadOptions{tol, 0.0, 10000});
  const Integrand outer = pow(restrict(r), rexp) * pow(restrict(s), -q / p) * pow(integrand_of(S), m);
  const auto I = robust_integrate(outer, sub, tol);
  const double value = std::pow(q / (p + q), q / (p + q)) * std::pow(I.value, p / (p + q));
  const double relerr = p / (p + q) * (rel(I) + m * S->rel_error());
  return {value, value * relerr};
}

// Beesack constant K(p,q,k) on iv.
inline Estimate beesack_raw(double p, double q, double k, const FunctionSpec& r,
                            const FunctionSpec& s, const Interval& iv, Side side, double tol,
                            int grid) {
  require(k > 1.0, "k > 1");
  require(p > 0.0, "p > 0");
  require(q > 0.0 && q < k, "0 < q < k");
  const Integrand sinv = pow(integrand_of(s, iv), -1.0 / (k - 1.0));
  auto S = std::make_shared<const Primitive>(sinv, iv, side == Side::left ? Anchor::left : Anchor::right,
                                             grid, QuadOptions{tol, 0.0, 10000});
  const double sexp = p * (k - 1.0) / (k - q);
  const Integrand outer = pow(integrand_of(r, iv), k / (k - q)) *
                          pow(integrand_of(s, iv), -q / (k - q)) * pow(integrand_of(S), sexp);
  const auto I = robust_integrate(outer, iv, tol);
  const double value = std::pow(q / (q + p), q / k) * std::pow(I.value, (k - q) / k);
  const double relerr = (k - q) / k * (rel(I) + sexp * S->rel_error());
  return {value, value * relerr};
}

}  // namespace detail

/// K1(sub, p, q): Beesack-Das constant for y(sub.a) = 0 on sub, with r, s given on full.
inline double beesack_das_K1(const ExponentSet& e, const FunctionSpec& r, const FunctionSpec& s,
                             const Interval& sub, const Interval& full,
                             double tol = kSmoothTolerance) {
  detail::require(e.p > 0.0 && e.q > 0.0, "p, q > 0");
  detail::require(e.p + e.q > 1.0, "p + q > 1");
  if (sub.a() < full.a() || sub.b() > full.b()) throw DomainError("beesack_das_K1: sub not inside full");
  return detail::bd_K(e.p, e.q, (e.p + e.q) / e.p, r, s, sub.a(), sub.b(), full, Side::left, tol, 256)
      .value;
}

/// K2(sub, p, q): the mirror of K1 for y(sub.b) = 0.
inline double beesack_das_K2(const ExponentSet& e, const FunctionSpec& r, const FunctionSpec& s,
                             const Interval& sub, const Interval& full,
                             double tol = kSmoothTolerance) {
  detail::require(e.p > 0.0 && e.q > 0.0, "p, q > 0");
  detail::require(e.p + e.q > 1.0, "p + q > 1");
  if (sub.a() < full.a() || sub.b() > full.b()) throw DomainError("beesack_das_K2: sub not inside full");
  return detail::bd_K(e.p, e.q, (e.p + e.q) / e.p, r, s, sub.a(), sub.b(), full, Side::right, tol, 256)
      .value;
}

/// Endpoint forms; an empty range [lo, lo] gives 0.
inline double beesack_das_K1(const ExponentSet& e, const FunctionSpec& r, const FunctionSpec& s,
                             double lo, double hi, const Interval& full,
                             double tol = kSmoothTolerance) {
  if (hi <= lo) return 0.0;
  return beesack_das_K1(e, r, s, Interval(lo, hi), full, tol);
}

inline double beesack_das_K2(const ExponentSet& e, const FunctionSpec& r, const FunctionSpec& s,
                             double lo, double hi, const Interval& full,
                             double tol = kSmoothTolerance) {
  if (hi <= lo) return 0.0;
  return beesack_das_K2(e, r, s, Interval(lo, hi), full, tol);
}

struct Balance {
  double h = 0.0;
  double K = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
};

/// The point h where K1(a, h) = K2(h, b), by bisection, and the common value.
inline Balance beesack_das_balance(const ExponentSet& e, const FunctionSpec& r,
                                   const FunctionSpec& s, const Interval& iv, double tol = 1e-10) {
  auto k1 = [&](double h) { return beesack_das_K1(e, r, s, iv.a(), h, iv); };
  auto k2 = [&](double h) { return beesack_das_K2(e, r, s, h, iv.b(), iv); };
  double prev1 = 0.0;
  double prev2 = detail::kInf;
  for (int i = 1; i < 8; ++i) {
    const double h = iv.a() + iv.length() * i / 8.0;
    const double v1 = k1(h);
    const double v2 = k2(h);
    if (v1 < prev1 * (1.0 - 1e-12) || v2 > prev2 * (1.0 + 1e-12)) {
      throw NoCrossing("beesack_das_balance: K1 not increasing or K2 not decreasing");
    }
    prev1 = v1;
    prev2 = v2;
  }
  double lo = iv.a();
  double hi = iv.b();
  Balance out;
  for (int it = 0; it < 200; ++it) {
    const double h = 0.5 * (lo + hi);
    const double v1 = k1(h);
    const double v2 = k2(h);
    out = {h, 0.5 * (v1 + v2), v1, v2};
    if (std::abs(v1 - v2) <= tol * std::max(v1, v2) || hi - lo < 1e-15 * iv.length()) return out;
    if (v1 < v2) {
      lo = h;
    } else {
      hi = h;
    }
  }
  throw NoCrossing("beesack_das_balance: bisection did not converge");
}

/// Beesack's K1(p,q,k) (Side::left, y(a) = 0) or K2(p,q,k) (Side::right, y(b) = 0).
/// substituted = true evaluates the (pq, q, k) form used by the Hardy-type theorems.
inline double beesack_K(const ExponentSet& e, const FunctionSpec& r, const FunctionSpec& s,
                        const Interval& iv, Side side, bool substituted = false,
                        double tol = kSmoothTolerance) {
  const double p = substituted ? e.p * e.q : e.p;
  return detail::beesack_raw(p, e.q, e.k, r, s, iv, side, tol, 256).value;
}

inline double hardy_classical_constant(double p) {
  if (!(p > 1.0)) throw PreconditionFailed("p > 1");
  return std::pow(p / (p - 1.0), p);
}

// ---------------------------------------------------------------------------------------------

/// Constant of theorem id for weights r, s and exponents e on iv.
inline ConstantBreakdown hardy_constant(TheoremId id, const FunctionSpec& r, const FunctionSpec& s,
                                        const ExponentSet& e, const Interval& iv, Mode mode,
                                        const ConstantOptions& opts = {}) {
  using detail::require;
  const Side side = direction(id);
  const double L = iv.length();
  const double p = e.p;
  const double tol = opts.tol;
  detail::Accumulator acc;

  if (id == TheoremId::HARDY) {
    acc.add("(p/(p-1))^p", hardy_classical_constant(p));
    return acc.finish(mode);
  }

  detail::require_positive(r, "r", iv);
  if (uses_s(id)) detail::require_positive(s, "s", iv);
  const auto R = detail::weight_primitive(r, iv, side, opts);
  const std::string Rn = detail::R_name(side);
  const double Rrel = R->rel_error();
  auto conjugate = [&](double pp, double qq) {
    if (e.conjugate_check) {
      require(std::abs(1.0 / pp + 1.0 / qq - 1.0) <= 1e-12, "1/p + 1/q = 1");
    }
  };
  auto sup_R = [&]() { acc.add("sup " + Rn, detail::sup_of(*R, iv).value, Rrel); };
  auto int_R_power = [&](double power, double outer, const Integrand& extra, const std::string& name) {
    const auto I = detail::robust_integrate(pow(integrand_of(R), power) * extra, iv, tol);
    acc.add(name, std::pow(I.value, outer), std::abs(outer) * (detail::rel(I) + power * Rrel));
  };

  switch (id) {
    case TheoremId::T2_1:
    case TheoremId::T2_2: {
      const auto I = detail::robust_integrate(pow(integrand_of(R), 2.0) * pow(integrand_of(s, iv), -1.0), iv, tol);
      acc.add("int " + Rn + "^2/s", I.value, detail::rel(I) + 2 * Rrel);
      break;
    }
    case TheoremId::T2_3:
    case TheoremId::T2_4:
      acc.add("(b-a)", L);
      sup_R();
      break;
    case TheoremId::T2_5:
    case TheoremId::T2_6: {
      require(detail::power_integrable(s, -1.0, iv), "int 1/s < inf");
      sup_R();
      const auto [v, re] = detail::weight_power_integral(s, -1.0, 1.0, iv, tol);
      acc.add("int 1/s", v, re);
      break;
    }
    case TheoremId::T2_7:
    case TheoremId::T2_8: {
      require(p > 1.0, "p > 1");
      conjugate(p, e.q);
      require(detail::power_integrable(s, 1.0 - p, iv), "int s^(1-p) < inf");
      sup_R();
      const auto [v, re] = detail::weight_power_integral(s, 1.0 - p, 2.0 / p, iv, tol);
      acc.add("(int s^(1-p))^(2/p)", v, re);
      break;
    }
    case TheoremId::T2_9:
    case TheoremId::T2_10: {
      require(detail::power_integrable(s, -1.0, iv), "int 1/s < inf");
      const auto [v, re] = detail::weight_power_integral(s, -1.0, 1.0, iv, tol);
      acc.add("int 1/s", v, re);
      acc.out.rhs_weight = Rn + "*s(x)";
      break;
    }
    case TheoremId::T2_11:
    case TheoremId::T2_12:
      require(p >= 1.0 && detail::is_integer(p), "p positive integer");
      acc.add("(b-a)^p", std::pow(L, p));
      sup_R();
      break;
    case TheoremId::T2_13: {
      require(p >= 1.0 && detail::is_integer(p), "p positive integer");
      const Estimate c = t2_13_constant(r, s, p, iv, mode, opts.eigen);
      acc.add(mode == Mode::as_derived ? "1/lambda0 [-(s u'^p)' = lambda r u^p]"
                                       : "1/lambda0 [-(R(x,b) u'^p)' = lambda s' u^p]",
              c.value, c.rel_error());
      break;
    }
    case TheoremId::T2_14:
    case TheoremId::T2_15: {
      require(p >= 1.0 && detail::is_integer(p), "p positive integer");
      require(detail::power_integrable(s, -1.0 / p, iv), "int s^(-1/p) < inf");
      sup_R();
      const auto [v, re] = detail::weight_power_integral(s, -1.0 / p, p, iv, tol);
      acc.add("(int s^(-1/p))^p", v, re);
      break;
    }
    case TheoremId::T2_16:
    case TheoremId::T2_17:
    case TheoremId::C2_1a:
    case TheoremId::C2_1b:
    case TheoremId::C2_2a:
    case TheoremId::C2_2b: {
      require(p > 1.0 && detail::is_integer(p), "p > 1 integer");
      const double q = p / (p - 1.0);
      const bool root = id != TheoremId::T2_16 && id != TheoremId::T2_17;
      const double outer = root ? 1.0 / (p + 1.0) : 1.0;
      if (mode == Mode::as_printed) {
        acc.add(root ? "(p+1)^(1/(p(p+1)))" : "(p+1)^(1/p)", std::pow(p + 1.0, outer / p));
      } else {
        acc.add(root ? "(1/(p+1))^(1/(q(p+1)))" : "(1/(p+1))^(1/q)",
                std::pow(1.0 / (p + 1.0), outer / q));
      }
      acc.add(root ? "(b-a)^(p/(p+1))" : "(b-a)^p", std::pow(L, p * outer));
      int_R_power(p, outer / p, constant_integrand(1.0),
                  root ? "(int " + Rn + "^p)^(1/(p(p+1)))" : "(int " + Rn + "^p)^(1/p)");
      break;
    }
    case TheoremId::T2_18:
    case TheoremId::T2_19:
      require(p >= 0.0 && detail::is_integer(p), "p >= 0 integer");
      acc.add("(b-a)^p", std::pow(L, p));
      acc.out.rhs_weight = Rn;
      break;
    case TheoremId::T2_20:
    case TheoremId::T2_21: {
      const double q = e.q;
      const double k = e.k;
      if (id == TheoremId::T2_20) {
        require(p > 0.0, "p > 0");
        require(k > 1.0, "s > 1");
        require(q >= 0.0 && q < k, "0 <= q < s");
      } else {
        require(p > 1.0, "p > 1");
        require(q > 1.0 && q < k, "1 < q < s");
      }
      conjugate(p, q);
      const BoydParams bp{p * q, q, k};
      const Estimate N = boyd_N(bp, std::min(tol, 1e-12));
      acc.add("p+1", p + 1.0);
      acc.add("N^(1/q)(pq,q,s)", std::pow(N.value, 1.0 / q), N.rel_error() / q);
      if (mode == Mode::as_printed) {
        acc.add("(b-a)^p", std::pow(L, p));
      } else {
        acc.add("(b-a)^(e/q), e = (nu(s-1)+s-eta)/s", std::pow(L, boyd_length_exponent(bp) / q));
      }
      int_R_power(p, 1.0 / p, constant_integrand(1.0), "(int " + Rn + "^p)^(1/p)");
      break;
    }
    case TheoremId::T2_22:
    case TheoremId::T2_23: {
      const double q = e.q;
      require(p > 1.0 && q > 1.0, "p, q > 1");
      conjugate(p, q);
      acc.add("p+1", p + 1.0);
      if (mode == Mode::as_printed) {
        acc.add("L^(1/q)(pq,q) [printed]", std::pow(boyd_Lq(p, q, Mode::as_printed), 1.0 / q));
        acc.add("(b-a)^p", std::pow(L, p));
      } else {
        acc.add("L^(1/q)(pq,q) [eta -> s limit of N]", std::pow(boyd_L_limit(p * q, q), 1.0 / q));
        acc.add("(b-a)^(nu(eta-1)/(eta q))", std::pow(L, p * (q - 1.0) / q));
      }
      int_R_power(p, 1.0 / p, constant_integrand(1.0), "(int " + Rn + "^p)^(1/p)");
      break;
    }
    case TheoremId::T2_27:
    case TheoremId::T2_28: {
      const double q = e.q;
      require(p > 1.0 && q > 1.0, "p, q > 1");
      if (id == TheoremId::T2_28 || mode == Mode::as_derived) conjugate(p, q);
      const double P = p * q;
      const double sing = mode == Mode::as_printed ? p + q - 1.0 : P + q - 1.0;
      require(detail::power_integrable(s, -1.0 / sing, iv),
              mode == Mode::as_printed ? "int s^(-1/(p+q-1)) < inf" : "int s^(-1/(pq+q-1)) < inf");
      const double rexp = (mode == Mode::as_printed && id == TheoremId::T2_27) ? (P + q) / p : (P + q) / P;
      const Estimate K = detail::bd_K(P, q, rexp, r, s, iv.a(), iv.b(), iv, side, tol, opts.grid);
      acc.add("p+1", p + 1.0);
      acc.add(std::string(side == Side::left ? "K1" : "K2") + "^(1/q)(pq,q)",
              std::pow(K.value, 1.0 / q), K.rel_error() / q);
      const double w = mode == Mode::as_printed ? 1.0 / q : p / q;
      int_R_power(p, 1.0 / p, pow(integrand_of(r, iv), -w),
                  mode == Mode::as_printed ? "(int " + Rn + "^p/r^(1/q))^(1/p)"
                                           : "(int " + Rn + "^p/r^(p/q))^(1/p)");
      break;
    }
    case TheoremId::T2_30:
    case TheoremId::T2_31: {
      const double q = e.q;
      require(p > 1.0 && q > 1.0, "p, q > 1");
      double k = e.k;
      if (mode == Mode::as_printed) {
        k = q;
        require(q < k, "q < k (the constant is printed as K(pq,q,q), which forces k = q)");
      }
      conjugate(p, q);
      const Estimate K = detail::beesack_raw(p * q, q, k, r, s, iv, side, tol, opts.grid);
      acc.add("p+1", p + 1.0);
      acc.add(std::string(side == Side::left ? "K1" : "K2") + "^(1/q)(pq,q,k)",
              std::pow(K.value, 1.0 / q), K.rel_error() / q);
      int_R_power(p, 1.0 / p, pow(integrand_of(r, iv), -p / q), "(int " + Rn + "^p/r^(p/q))^(1/p)");
      break;
    }
    case TheoremId::HARDY:
      break;
  }
  return acc.finish(mode);
}

inline ConstantBreakdown hardy_constant(TheoremId id, const FunctionSpec& r, const FunctionSpec& s,
                                        const ExponentSet& e, const Interval& iv) {
  return hardy_constant(id, r, s, e, iv, default_mode(id));
}

}  // namespace hopial
