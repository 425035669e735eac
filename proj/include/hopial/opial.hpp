#pragma once

// Opial-type lemmas checked directly on absolutely continuous test paths y with exact
// derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopial/constants.hpp"
#include "hopial/eigen.hpp"
#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"
#include "hopial/mode.hpp"
#include "hopial/optimize.hpp"
#include "hopial/primitive.hpp"
#include "hopial/quad.hpp"
#include "hopial/special.hpp"
#include "hopial/status.hpp"

namespace hopial {

enum class OpialVariant { OPIAL, B1, B2, M1, Y, H1, BW1, AG, Y1, Y2, BOYD, L0, Z1, Z4, BS1, BS2 };

inline const std::vector<OpialVariant>& all_variants() {
  static const std::vector<OpialVariant> v = {
      OpialVariant::OPIAL, OpialVariant::B1,  OpialVariant::B2,   OpialVariant::M1,
      OpialVariant::Y,     OpialVariant::H1,  OpialVariant::BW1,  OpialVariant::AG,
      OpialVariant::Y1,    OpialVariant::Y2,  OpialVariant::BOYD, OpialVariant::L0,
      OpialVariant::Z1,    OpialVariant::Z4,  OpialVariant::BS1,  OpialVariant::BS2};
  return v;
}

inline std::string to_string(OpialVariant v) {
  static const std::array<const char*, 16> names = {"OPIAL", "B1",  "B2",   "M1", "Y",  "H1",
                                                    "BW1",   "AG",  "Y1",   "Y2", "BOYD", "L0",
                                                    "Z1",    "Z4",  "BS1",  "BS2"};
  return names[static_cast<std::size_t>(v)];
}

inline OpialVariant variant_from_string(const std::string& s) {
  for (OpialVariant v : all_variants()) {
    if (to_string(v) == s) return v;
  }
  throw UsageError("variant", "unknown lemma variant '" + s + "'");
}

/// Endpoints at which a path vanishes.
enum class Vanishing { left, right, both };

inline std::string to_string(Vanishing v) {
  return v == Vanishing::left ? "y(a)=0" : v == Vanishing::right ? "y(b)=0" : "both";
}

/// What each variant requires of the path.
inline Vanishing required_vanishing(OpialVariant v) {
  switch (v) {
    case OpialVariant::OPIAL:
      return Vanishing::both;
    case OpialVariant::Z4:
    case OpialVariant::BS2:
      return Vanishing::right;
    default:
      return Vanishing::left;  // the variants stated for "y(a)=0 (or y(b)=0)" also accept right
  }
}

inline bool accepts_either_end(OpialVariant v) {
  switch (v) {
    case OpialVariant::OPIAL: case OpialVariant::B1: case OpialVariant::Z1: case OpialVariant::Z4:
    case OpialVariant::BS1: case OpialVariant::BS2:
      return false;
    default:
      return true;
  }
}

/// A test function y on an interval together with its exact a.e. derivative. kinks lists the
/// interior points where the derivative jumps.
struct TestPath {
  FunctionSpec y;
  FunctionSpec derivative;
  Interval interval{0.0, 1.0};
  Vanishing vanishing = Vanishing::left;
  std::vector<double> kinks;
  std::string label;
};

namespace detail {

inline FunctionSpec slope_function(const std::vector<std::pair<double, double>>& knots) {
  return FunctionSpec::raw(
      [knots](double x) {
        auto it = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double v, const auto& k) { return v < k.first; });
        std::size_t j = static_cast<std::size_t>(it - knots.begin());
        j = std::clamp<std::size_t>(j, 1, knots.size() - 1);
        const auto& [x0, y0] = knots[j - 1];
        const auto& [x1, y1] = knots[j];
        return (y1 - y0) / (x1 - x0);
      },
      "pwl slope");
}

}  // namespace detail

/// Path through the given knots; the derivative is the exact piecewise-constant slope.
inline TestPath pwl_path(std::vector<std::pair<double, double>> knots, const Interval& iv,
                         std::string label = "pwl") {
  if (knots.size() < 2) throw InvalidSpec("pwl_path: need at least two knots");
  if (knots.front().first != iv.a() || knots.back().first != iv.b()) {
    throw InvalidSpec("pwl_path: knots must span the interval");
  }
  TestPath path;
  path.interval = iv;
  const bool l = knots.front().second == 0.0;
  const bool r = knots.back().second == 0.0;
  if (!l && !r) throw InvalidSpec("pwl_path: path must vanish at an endpoint");
  path.vanishing = l && r ? Vanishing::both : l ? Vanishing::left : Vanishing::right;
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) path.kinks.push_back(knots[i].first);
  path.derivative = detail::slope_function(knots);
  path.y = FunctionSpec::piecewise_linear(std::move(knots));
  path.label = std::move(label);
  return path;
}

/// Tent with unit slopes peaking at `peak` (the midpoint by default).
inline TestPath hat_path(const Interval& iv, std::optional<double> peak = std::nullopt) {
  const double c = peak.value_or(iv.midpoint());
  if (!(c > iv.a() && c < iv.b())) throw DomainError("hat_path: peak must be interior");
  const double h = std::min(c - iv.a(), iv.b() - c);
  return pwl_path({{iv.a(), 0.0}, {c, h}, {iv.b(), 0.0}}, iv, "hat");
}

/// y = x - a (vanishing at a) or y = b - x (vanishing at b).
inline TestPath linear_path(const Interval& iv, Side vanish = Side::left) {
  TestPath path;
  path.interval = iv;
  if (vanish == Side::left) {
    path.y = FunctionSpec::power(1.0, 1.0);
    path.derivative = FunctionSpec::constant(1.0);
    path.vanishing = Vanishing::left;
  } else {
    path.y = FunctionSpec::power_from_right(1.0, 1.0);
    path.derivative = FunctionSpec::constant(-1.0);
    path.vanishing = Vanishing::right;
  }
  path.label = "linear";
  return path;
}

/// y = (x - a)^alpha or (b - x)^alpha, alpha > 0.
inline TestPath power_path(const Interval& iv, double alpha, Side vanish = Side::left) {
  if (!(alpha > 0.0)) throw DomainError("power_path: alpha must be positive");
  TestPath path;
  path.interval = iv;
  if (vanish == Side::left) {
    path.y = FunctionSpec::power(1.0, alpha);
    path.derivative = FunctionSpec::power(alpha, alpha - 1.0);
    path.vanishing = Vanishing::left;
  } else {
    path.y = FunctionSpec::power_from_right(1.0, alpha);
    path.derivative = FunctionSpec::power_from_right(-alpha, alpha - 1.0);
    path.vanishing = Vanishing::right;
  }
  path.label = "power";
  return path;
}

inline TestPath zero_path(const Interval& iv) {
  TestPath path;
  path.interval = iv;
  path.y = FunctionSpec::constant(0.0);
  path.derivative = FunctionSpec::constant(0.0);
  path.vanishing = Vanishing::both;
  path.label = "zero";
  return path;
}

/// Random piecewise-linear paths from a fixed seed; member i depends only on (seed, i).
inline std::vector<TestPath> random_paths(int count, std::uint64_t seed, Vanishing vanishing,
                                          const Interval& iv = {0.0, 1.0}, int n_knots = 5) {
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{n_knots, 0.0, 1.0, vanishing != Vanishing::right,
                                   vanishing != Vanishing::left};
  fam.seed = seed;
  fam.interval = iv;
  std::vector<TestPath> out;
  out.reserve(static_cast<std::size_t>(count));
  for (const auto& f : sample_family(fam, count)) {
    out.push_back(pwl_path(f.as<PiecewiseLinear>()->knots, iv, "random pwl"));
  }
  return out;
}

/// y(a) = 0 and/or y(b) = 0 to 1e-14, and y(x) = y(end) + int y' to 1e-9 at 17 points.
inline void validate_path(const TestPath& path) {
  const Interval& iv = path.interval;
  const double scale = std::max(1.0, std::abs(evaluate(path.y, iv.midpoint(), iv)));
  if (path.vanishing != Vanishing::right && std::abs(evaluate(path.y, iv.a(), iv)) > 1e-14 * scale) {
    throw InvalidSpec("test path: y(a) != 0");
  }
  if (path.vanishing != Vanishing::left && std::abs(evaluate(path.y, iv.b(), iv)) > 1e-14 * scale) {
    throw InvalidSpec("test path: y(b) != 0");
  }
  Integrand dy = integrand_of(path.derivative, iv);
  dy.breakpoints.insert(dy.breakpoints.end(), path.kinks.begin(), path.kinks.end());
  std::sort(dy.breakpoints.begin(), dy.breakpoints.end());
  const Primitive Y(dy, iv, Anchor::left, 64);
  const double y0 = evaluate(path.y, iv.a(), iv);
  for (int i = 1; i <= 16; ++i) {
    const double x = iv.a() + iv.length() * i / 16.0;
    const double want = evaluate(path.y, x, iv);
    if (std::abs(y0 + Y(x) - want) > 1e-9 * std::max(1.0, std::abs(want))) {
      throw InvalidSpec("test path: derivative inconsistent with y");
    }
  }
}

/// Weights of the lemma layer: r and s as in the Hardy theorems, w is Yang's multiplier q(t).
struct LemmaWeights {
  FunctionSpec r = FunctionSpec::constant(1.0);
  FunctionSpec s = FunctionSpec::constant(1.0);
  FunctionSpec w = FunctionSpec::constant(1.0);
};

/// p, q: powers of |y| and |y'|; k: the power on the right (Beesack k, Boyd s); nu, eta: Boyd.
struct LemmaParams {
  double p = 1.0;
  double q = 1.0;
  double k = 2.0;
  double nu = 1.0;
  double eta = 1.0;
};

struct VerificationRecord {
  double lhs = 0.0;
  double rhs = 0.0;       // integral part, outer power applied
  double constant = 0.0;
  double ratio = 0.0;
  Status status = Status::inconclusive;
  double budget = kBudgetFloor;
  std::string note;
};

namespace detail {

struct LemmaShape {
  FunctionSpec lhs_weight = FunctionSpec::constant(1.0);
  double y_power = 1.0;
  double dy_power = 1.0;
  FunctionSpec rhs_weight = FunctionSpec::constant(1.0);
  double rhs_dy_power = 2.0;
  double rhs_outer = 1.0;
  double constant = 1.0;
  double constant_rel = 1e-15;
  std::string note;
};

inline Integrand abs_integrand(Integrand f) {
  f.fn = [g = std::move(f.fn)](double x) { return std::abs(g(x)); };
  if (f.at) f.at = [g = std::move(f.at)](double x, double dl, double dr) { return std::abs(g(x, dl, dr)); };
  return f;
}

inline Integrand derivative_integrand(const TestPath& path) {
  Integrand dy = abs_integrand(integrand_of(path.derivative, path.interval));
  dy.breakpoints.insert(dy.breakpoints.end(), path.kinks.begin(), path.kinks.end());
  std::sort(dy.breakpoints.begin(), dy.breakpoints.end());
  dy.breakpoints.erase(std::unique(dy.breakpoints.begin(), dy.breakpoints.end()), dy.breakpoints.end());
  dy.structural = true;  // exact slopes between the listed kinks
  return dy;
}

inline bool monotone(const FunctionSpec& f, const Interval& iv, bool nonincreasing) {
  double prev = evaluate(f, iv.a(), iv);
  for (int i = 1; i <= 512; ++i) {
    const double v = evaluate(f, iv.a() + iv.length() * i / 512.0, iv);
    const double tol = 1e-12 * std::max(1.0, std::abs(v));
    if (nonincreasing ? v > prev + tol : v < prev - tol) return false;
    prev = v;
  }
  return true;
}

inline void require_monotone_for(const FunctionSpec& f, const char* name, const TestPath& path) {
  const bool dec = monotone(f, path.interval, true);
  const bool inc = monotone(f, path.interval, false);
  const bool ok = path.vanishing == Vanishing::left    ? dec
                  : path.vanishing == Vanishing::right ? inc
                                                       : dec || inc;
  if (!ok) {
    throw PreconditionFailed(std::string(name) + (path.vanishing == Vanishing::right
                                                      ? " nondecreasing (y(b) = 0)"
                                                      : " nonincreasing (y(a) = 0)"));
  }
}

inline double integral_of_power(const FunctionSpec& w, double gamma, const Interval& iv, double& rel_err) {
  const auto r = robust_integrate(pow(integrand_of(w, iv), gamma), iv, kSmoothTolerance);
  rel_err += detail::rel(r);
  return r.value;
}

inline FunctionSpec derivative_of(const FunctionSpec& s, const Interval& iv) {
  if (auto d = closed_derivative(s, iv)) return *d;
  if (s.as<PiecewiseLinear>()) throw NonDifferentiableWeight("s is piecewise linear with an interior kink");
  const double h = 1e-6 * iv.length();
  return FunctionSpec::raw(
      [s, iv, h](double x) {
        const double lo = std::max(iv.a(), x - h);
        const double hi = std::min(iv.b(), x + h);
        return (evaluate(s, hi, iv) - evaluate(s, lo, iv)) / (hi - lo);
      },
      "s'");
}

inline LemmaShape lemma_shape(OpialVariant v, const TestPath& path, const LemmaWeights& wts,
                              const LemmaParams& e, Mode mode) {
  const Interval& iv = path.interval;
  const double L = iv.length();
  LemmaShape sh;
  double rel_err = 1e-15;
  auto conj = [&](double p, double q) {
    require(std::abs(1.0 / p + 1.0 / q - 1.0) <= 1e-12, "1/p + 1/q = 1");
  };
  switch (v) {
    case OpialVariant::OPIAL:
      sh.constant = L / 4.0;
      break;
    case OpialVariant::B1:
      sh.constant = mode == Mode::as_printed ? iv.b() / 2.0 : L / 2.0;
      break;
    case OpialVariant::B2:
      require_positive(wts.r, "r", iv);
      sh.constant = 0.5 * integral_of_power(wts.r, -1.0, iv, rel_err);
      sh.rhs_weight = wts.r;
      break;
    case OpialVariant::M1: {
      require(e.p > 1.0, "p > 1");
      conj(e.p, e.q);
      require_positive(wts.r, "r", iv);
      const double I = integral_of_power(wts.r, 1.0 - e.p, iv, rel_err);
      sh.constant = 0.5 * std::pow(I, 2.0 / e.p);
      rel_err *= 2.0 / e.p;
      sh.rhs_weight = wts.r;
      sh.rhs_dy_power = e.q;
      sh.rhs_outer = 2.0 / e.q;
      break;
    }
    case OpialVariant::Y:
      require_positive(wts.r, "r", iv);
      require_positive(wts.w, "q(t)", iv);
      if (mode == Mode::as_derived) require_monotone_for(wts.w, "q(t)", path);
      sh.constant = 0.5 * integral_of_power(wts.r, -1.0, iv, rel_err);
      sh.lhs_weight = wts.w;
      sh.rhs_weight = FunctionSpec::product({wts.r, wts.w});
      break;
    case OpialVariant::H1:
      require(e.p > 0.0, "p > 0");
      sh.y_power = e.p;
      sh.constant = std::pow(L, e.p) / (e.p + 1.0);
      sh.rhs_dy_power = e.p + 1.0;
      break;
    case OpialVariant::BW1: {
      require(e.p > 0.0, "p > 0");
      require_positive(wts.r, "r", iv);
      double lambda = 0.0;
      double lrel = 0.0;
      if (mode == Mode::as_derived) {
        const auto ev = boyd_wong_eigenvalue(wts.r, wts.s, e.p, iv);
        lambda = ev.value;
        lrel = ev.error_estimate / ev.value;
      } else {
        EigenProblem prob;
        prob.P = coefficient_of(wts.r, iv);
        prob.m = coefficient_of(derivative_of(wts.s, iv), iv);
        prob.p = e.p;
        prob.interval = iv;
        const auto ev = smallest_eigenvalue(prob);
        lambda = ev.value;
        lrel = ev.error_estimate / ev.value;
        sh.note = ev.boundary_note;
      }
      sh.lhs_weight = wts.s;
      sh.y_power = e.p;
      sh.constant = 1.0 / (lambda * (e.p + 1.0));
      rel_err += lrel;
      sh.rhs_weight = wts.r;
      sh.rhs_dy_power = e.p + 1.0;
      break;
    }
    case OpialVariant::AG: {
      require(e.p > 0.0, "p > 0");
      require_positive(wts.s, "s", iv);
      require(power_integrable(wts.s, -1.0 / e.p, iv), "int s^(-1/p) < inf");
      const double I = integral_of_power(wts.s, -1.0 / e.p, iv, rel_err);
      rel_err *= e.p;
      sh.y_power = e.p;
      sh.constant = std::pow(I, e.p) / (e.p + 1.0);
      sh.rhs_weight = wts.s;
      sh.rhs_dy_power = e.p + 1.0;
      break;
    }
    case OpialVariant::Y1:
    case OpialVariant::Y2:
      require(e.p >= 0.0, "p >= 0");
      require(e.q >= 1.0, "q >= 1");
      if (v == OpialVariant::Y2) {
        require_positive(wts.r, "r", iv);
        if (mode == Mode::as_derived) require_monotone_for(wts.r, "r", path);
        sh.lhs_weight = wts.r;
        sh.rhs_weight = wts.r;
      }
      sh.y_power = e.p;
      sh.dy_power = e.q;
      sh.constant = e.q / (e.p + e.q) * std::pow(L, e.p);
      sh.rhs_dy_power = e.p + e.q;
      break;
    case OpialVariant::BOYD: {
      const BoydParams bp{e.nu, e.eta, e.k};
      const Estimate N = boyd_N(bp);
      rel_err += N.rel_error();
      const double ex = mode == Mode::as_printed ? e.nu : boyd_length_exponent(bp);
      sh.y_power = e.nu;
      sh.dy_power = e.eta;
      sh.constant = N.value * std::pow(L, ex);
      sh.rhs_dy_power = e.k;
      sh.rhs_outer = (e.nu + e.eta) / e.k;
      break;
    }
    case OpialVariant::L0: {
      const double Lc = mode == Mode::as_printed ? boyd_L(e.nu, e.eta) : boyd_L_limit(e.nu, e.eta);
      const double ex = mode == Mode::as_printed ? e.nu : e.nu * (e.eta - 1.0) / e.eta;
      sh.y_power = e.nu;
      sh.dy_power = e.eta;
      sh.constant = Lc * std::pow(L, ex);
      sh.rhs_dy_power = e.eta;
      sh.rhs_outer = (e.nu + e.eta) / e.eta;
      break;
    }
    case OpialVariant::Z1:
    case OpialVariant::Z4: {
      require(e.p > 0.0 && e.q > 0.0, "p, q > 0");
      require(e.p + e.q > 1.0, "p + q > 1");
      require_positive(wts.r, "r", iv);
      require_positive(wts.s, "s", iv);
      require(power_integrable(wts.s, -1.0 / (e.p + e.q - 1.0), iv), "int s^(-1/(p+q-1)) < inf");
      const Estimate K = bd_K(e.p, e.q, (e.p + e.q) / e.p, wts.r, wts.s, iv.a(), iv.b(), iv,
                              v == OpialVariant::Z1 ? Side::left : Side::right, kSmoothTolerance, 256);
      rel_err += K.rel_error();
      sh.lhs_weight = wts.r;
      sh.y_power = e.p;
      sh.dy_power = e.q;
      sh.constant = K.value;
      sh.rhs_weight = wts.s;
      sh.rhs_dy_power = e.p + e.q;
      break;
    }
    case OpialVariant::BS1:
    case OpialVariant::BS2: {
      require_positive(wts.r, "r", iv);
      require_positive(wts.s, "s", iv);
      const Estimate K = beesack_raw(e.p, e.q, e.k, wts.r, wts.s, iv,
                                     v == OpialVariant::BS1 ? Side::left : Side::right,
                                     kSmoothTolerance, 256);
      rel_err += K.rel_error();
      sh.lhs_weight = wts.r;
      sh.y_power = e.p;
      sh.dy_power = e.q;
      sh.constant = K.value;
      sh.rhs_weight = wts.s;
      sh.rhs_dy_power = e.k;
      sh.rhs_outer = (e.p + e.q) / e.k;
      break;
    }
  }
  sh.constant_rel = rel_err;
  return sh;
}

inline TestPath reflected(const TestPath& path) {
  TestPath out = path;
  const Interval& iv = path.interval;
  out.y = reflect(path.y, iv);
  out.derivative = reflect(path.derivative, iv);
  for (double& k : out.kinks) k = iv.a() + iv.b() - k;
  std::reverse(out.kinks.begin(), out.kinks.end());
  out.vanishing = path.vanishing == Vanishing::left    ? Vanishing::right
                  : path.vanishing == Vanishing::right ? Vanishing::left
                                                       : Vanishing::both;
  return out;
}

inline void check_boundary(OpialVariant v, const TestPath& path) {
  const Vanishing need = required_vanishing(v);
  if (path.vanishing == Vanishing::both || path.vanishing == need) return;
  if (accepts_either_end(v) && need != Vanishing::both) return;
  throw PreconditionFailed(to_string(v) + " needs a path with " + to_string(need));
}

}  // namespace detail

/// Left side of the variant: int w |y|^a |y'|^b over the path's interval.
inline QuadResult opial_lhs(OpialVariant v, const TestPath& path, const LemmaWeights& wts = {},
                            const LemmaParams& e = {}, Mode mode = Mode::as_derived) {
  detail::check_boundary(v, path);
  const auto sh = detail::lemma_shape(v, path, wts, e, mode);
  const Interval& iv = path.interval;
  const Integrand g = integrand_of(sh.lhs_weight, iv) *
                      pow(detail::abs_integrand(integrand_of(path.y, iv)), sh.y_power) *
                      pow(detail::derivative_integrand(path), sh.dy_power);
  return detail::robust_integrate(g, iv, kSmoothTolerance);
}

/// Check one lemma on one path.
inline VerificationRecord verify_variant(OpialVariant v, const TestPath& path_in,
                                         const LemmaWeights& wts_in = {}, const LemmaParams& e = {},
                                         Mode mode = Mode::as_derived) {
  detail::check_boundary(v, path_in);
  TestPath path = path_in;
  LemmaWeights wts = wts_in;
  if (v == OpialVariant::BW1 && path.vanishing == Vanishing::right) {
    path = detail::reflected(path);
    wts.r = reflect(wts.r, path.interval);
    wts.s = reflect(wts.s, path.interval);
  }
  const Interval& iv = path.interval;
  const auto sh = detail::lemma_shape(v, path, wts, e, mode);
  const Integrand lhs_g = integrand_of(sh.lhs_weight, iv) *
                          pow(detail::abs_integrand(integrand_of(path.y, iv)), sh.y_power) *
                          pow(detail::derivative_integrand(path), sh.dy_power);
  const Integrand rhs_g = integrand_of(sh.rhs_weight, iv) *
                          pow(detail::derivative_integrand(path), sh.rhs_dy_power);
  const auto lhs = detail::robust_integrate(lhs_g, iv, kSmoothTolerance);
  const auto rhs = detail::robust_integrate(rhs_g, iv, kSmoothTolerance);

  VerificationRecord rec;
  rec.lhs = lhs.value;
  rec.rhs = std::pow(rhs.value, sh.rhs_outer);
  rec.constant = sh.constant;
  rec.note = sh.note;
  rec.budget = std::max(kBudgetFloor, detail::rel(lhs) + sh.rhs_outer * detail::rel(rhs) + sh.constant_rel);
  const double bound = rec.constant * rec.rhs;
  if (rec.lhs == 0.0) {
    rec.ratio = 0.0;
  } else if (bound > 0.0) {
    rec.ratio = rec.lhs / bound;
  } else {
    rec.ratio = detail::kInf;
  }
  rec.status = classify(rec.ratio, rec.budget);
  return rec;
}

/// Worst-case ratio of a lemma over paths path_family(params), params in [lo, hi].
inline SharpnessResult lemma_sharpness_search(
    OpialVariant v, const std::function<TestPath(const std::vector<double>&)>& path_family,
    const std::vector<double>& lo, const std::vector<double>& hi, const LemmaWeights& wts = {},
    const LemmaParams& e = {}, Mode mode = Mode::as_derived, int budget = 100) {
  if (budget < 50) throw DomainError("sharpness_search: budget must be >= 50");
  auto objective = [&](const std::vector<double>& x) {
    const VerificationRecord rec = verify_variant(v, path_family(x), wts, e, mode);
    return rec.status == Status::inconclusive ? std::numeric_limits<double>::quiet_NaN() : rec.ratio;
  };
  return maximize_in_box(objective, lo, hi, budget);
}

}  // namespace hopial
