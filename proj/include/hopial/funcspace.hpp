#pragma once

// Nonnegative functions on a finite interval: weights r, s and test functions f, y.
//
// A FunctionSpec is a small closed catalog (power laws anchored at either endpoint,
// exponentials, constants, piecewise-linear interpolants, sums and products);
// antiderivatives and endpoint behaviour are read off structurally. Raw callables are
// accepted as an escape hatch but opt out of every closed-form fast path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hopial/errors.hpp"

namespace hopial {

class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw DomainError("interval requires finite a < b, got (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }
  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

enum class Side { left, right };

class FunctionSpec;

/// c * (x - a)^alpha
struct PowerLaw {
  double c = 1.0;
  double alpha = 0.0;
};

/// c * (b - x)^alpha, or c * (x - a)^alpha when from_right is false.
struct ShiftedPowerLaw {
  double c = 1.0;
  double alpha = 0.0;
  bool from_right = true;
};

/// c * exp(beta * x)
struct Exponential {
  double c = 1.0;
  double beta = 0.0;
};

struct Constant {
  double c = 1.0;
};

/// Linear interpolation through (x, value) knots; the knots must cover the interval.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
};

struct Product {
  std::vector<FunctionSpec> factors;
};

struct Sum {
  std::vector<FunctionSpec> terms;
};

/// Arbitrary callable. Disables closed forms and structural singularity detection.
struct RawFunction {
  std::function<double(double)> fn;
  std::string label = "raw";
};

class FunctionSpec {
 public:
  using Node = std::variant<PowerLaw, ShiftedPowerLaw, Exponential, Constant, PiecewiseLinear,
                            Product, Sum, RawFunction>;

  FunctionSpec() : FunctionSpec(Constant{1.0}) {}
  template <typename T>
    requires std::is_constructible_v<Node, T>
  FunctionSpec(T node) : node_(std::make_shared<const Node>(std::move(node))) {}  // NOLINT

  const Node& node() const noexcept { return *node_; }

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(node_.get());
  }

  static FunctionSpec constant(double c) { return Constant{c}; }
  static FunctionSpec power(double c, double alpha) { return PowerLaw{c, alpha}; }
  static FunctionSpec power_from_right(double c, double alpha) {
    return ShiftedPowerLaw{c, alpha, true};
  }
  static FunctionSpec exponential(double c, double beta) { return Exponential{c, beta}; }
  static FunctionSpec piecewise_linear(std::vector<std::pair<double, double>> knots) {
    return PiecewiseLinear{std::move(knots)};
  }
  static FunctionSpec product(std::vector<FunctionSpec> factors) {
    return Product{std::move(factors)};
  }
  static FunctionSpec sum(std::vector<FunctionSpec> terms) { return Sum{std::move(terms)}; }
  static FunctionSpec raw(std::function<double(double)> fn, std::string label = "raw") {
    return RawFunction{std::move(fn), std::move(label)};
  }

 private:
  std::shared_ptr<const Node> node_;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// c * d^alpha with the conventions 0^0 = 1 and c = 0 => 0.
inline double power_term(double c, double d, double alpha) {
  if (c == 0.0) return 0.0;
  if (d <= 0.0) {
    if (alpha > 0.0) return 0.0;
    if (alpha == 0.0) return c;
    return kInf;
  }
  return c * std::pow(d, alpha);
}

inline double interpolate_knots(const std::vector<std::pair<double, double>>& knots, double x) {
  auto it = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const auto& k) { return v < k.first; });
  if (it == knots.begin()) return knots.front().second;
  if (it == knots.end()) return knots.back().second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double t = (x - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

}  // namespace detail

double endpoint_exponent(const FunctionSpec& spec, Side side, const Interval& iv);

namespace detail {

// Value at x given the exact distances dl = x - a and dr = b - x. Power laws use the distances,
// which stay accurate where x itself cannot resolve the endpoint.
inline double evaluate_at(const FunctionSpec& spec, double x, double dl, double dr, const Interval& iv) {
  return std::visit(
      overloaded{
          [&](const PowerLaw& n) { return power_term(n.c, dl, n.alpha); },
          [&](const ShiftedPowerLaw& n) { return power_term(n.c, n.from_right ? dr : dl, n.alpha); },
          [&](const Exponential& n) { return n.c * std::exp(n.beta * x); },
          [&](const Constant& n) { return n.c; },
          [&](const PiecewiseLinear& n) { return interpolate_knots(n.knots, x); },
          [&](const Product& n) {
            double v = 1.0;
            for (const auto& f : n.factors) v *= evaluate_at(f, x, dl, dr, iv);
            if (std::isnan(v) && (dl <= 0.0 || dr <= 0.0)) {
              const double rho = endpoint_exponent(spec, dl <= 0.0 ? Side::left : Side::right, iv);
              return rho > 0.0 ? 0.0 : kInf;
            }
            return v;
          },
          [&](const Sum& n) {
            double v = 0.0;
            for (const auto& f : n.terms) v += evaluate_at(f, x, dl, dr, iv);
            return v;
          },
          [&](const RawFunction& n) { return n.fn(x); },
      },
      spec.node());
}

inline double evaluate_unchecked(const FunctionSpec& spec, double x, const Interval& iv) {
  return std::visit(
      overloaded{
          [&](const PowerLaw& n) { return power_term(n.c, x - iv.a(), n.alpha); },
          [&](const ShiftedPowerLaw& n) {
            return power_term(n.c, n.from_right ? iv.b() - x : x - iv.a(), n.alpha);
          },
          [&](const Exponential& n) { return n.c * std::exp(n.beta * x); },
          [&](const Constant& n) { return n.c; },
          [&](const PiecewiseLinear& n) { return interpolate_knots(n.knots, x); },
          [&](const Product& n) {
            double v = 1.0;
            for (const auto& f : n.factors) v *= evaluate_unchecked(f, x, iv);
            if (std::isnan(v) && (x == iv.a() || x == iv.b())) {
              const double rho = endpoint_exponent(spec, x == iv.a() ? Side::left : Side::right, iv);
              return rho > 0.0 ? 0.0 : kInf;
            }
            return v;
          },
          [&](const Sum& n) {
            double v = 0.0;
            for (const auto& f : n.terms) v += evaluate_unchecked(f, x, iv);
            return v;
          },
          [&](const RawFunction& n) { return n.fn(x); },
      },
      spec.node());
}

}  // namespace detail

/// Value of spec at x in [a, b]. A negative-exponent power law at its anchor returns +inf.
inline double evaluate(const FunctionSpec& spec, double x, const Interval& iv) {
  if (!iv.contains(x)) {
    throw DomainError("evaluate: x = " + std::to_string(x) + " outside [" + std::to_string(iv.a()) +
                      ", " + std::to_string(iv.b()) + "]");
  }
  const double v = detail::evaluate_unchecked(spec, x, iv);
  if (std::isnan(v)) throw InvalidSpec("evaluate: NaN at x = " + std::to_string(x));
  return v;
}

/// Leading power rho with spec(x) ~ C * dist(x, endpoint)^rho, C > 0.
/// Returns +inf when the function vanishes identically near that endpoint.
inline double endpoint_exponent(const FunctionSpec& spec, Side side, const Interval& iv) {
  using detail::kInf;
  return std::visit(
      detail::overloaded{
          [&](const PowerLaw& n) {
            if (n.c == 0.0) return kInf;
            return side == Side::left ? n.alpha : 0.0;
          },
          [&](const ShiftedPowerLaw& n) {
            if (n.c == 0.0) return kInf;
            const Side anchor = n.from_right ? Side::right : Side::left;
            return side == anchor ? n.alpha : 0.0;
          },
          [&](const Exponential& n) { return n.c == 0.0 ? kInf : 0.0; },
          [&](const Constant& n) { return n.c == 0.0 ? kInf : 0.0; },
          [&](const PiecewiseLinear& n) {
            const double x0 = side == Side::left ? iv.a() : iv.b();
            if (detail::interpolate_knots(n.knots, x0) > 0.0) return 0.0;
            // zero at the endpoint: linear if the neighbouring knot inside is positive
            if (side == Side::left) {
              for (const auto& [x, v] : n.knots) {
                if (x > x0) return v > 0.0 ? 1.0 : kInf;
              }
            } else {
              for (auto it = n.knots.rbegin(); it != n.knots.rend(); ++it) {
                if (it->first < x0) return it->second > 0.0 ? 1.0 : kInf;
              }
            }
            return kInf;
          },
          [&](const Product& n) {
            double rho = 0.0;
            for (const auto& f : n.factors) rho += endpoint_exponent(f, side, iv);
            return rho;
          },
          [&](const Sum& n) {
            double rho = kInf;
            for (const auto& f : n.terms) rho = std::min(rho, endpoint_exponent(f, side, iv));
            return rho;
          },
          [&](const RawFunction&) { return 0.0; },
      },
      spec.node());
}

/// True when the function has a zero strictly inside (a, b).
inline bool has_interior_zero(const FunctionSpec& spec, const Interval& iv) {
  return std::visit(
      detail::overloaded{
          [&](const PowerLaw& n) { return n.c == 0.0; },
          [&](const ShiftedPowerLaw& n) { return n.c == 0.0; },
          [&](const Exponential& n) { return n.c == 0.0; },
          [&](const Constant& n) { return n.c == 0.0; },
          [&](const PiecewiseLinear& n) {
            return std::any_of(n.knots.begin(), n.knots.end(), [&](const auto& k) {
              return k.first > iv.a() && k.first < iv.b() && k.second == 0.0;
            });
          },
          [&](const Product& n) {
            return std::any_of(n.factors.begin(), n.factors.end(),
                               [&](const auto& f) { return has_interior_zero(f, iv); });
          },
          [&](const Sum& n) {
            return std::all_of(n.terms.begin(), n.terms.end(),
                               [&](const auto& f) { return has_interior_zero(f, iv); });
          },
          [&](const RawFunction&) { return false; },
      },
      spec.node());
}

inline bool is_structural(const FunctionSpec& spec) {
  return std::visit(detail::overloaded{
                        [](const RawFunction&) { return false; },
                        [](const Product& n) {
                          return std::all_of(n.factors.begin(), n.factors.end(),
                                             [](const auto& f) { return is_structural(f); });
                        },
                        [](const Sum& n) {
                          return std::all_of(n.terms.begin(), n.terms.end(),
                                             [](const auto& f) { return is_structural(f); });
                        },
                        [](const auto&) { return true; },
                    },
                    spec.node());
}

/// Interior points where the function is not smooth (piecewise-linear knots).
inline std::vector<double> breakpoints(const FunctionSpec& spec, const Interval& iv) {
  std::vector<double> out;
  std::visit(detail::overloaded{
                 [&](const PiecewiseLinear& n) {
                   for (const auto& k : n.knots) {
                     if (k.first > iv.a() && k.first < iv.b()) out.push_back(k.first);
                   }
                 },
                 [&](const Product& n) {
                   for (const auto& f : n.factors) {
                     auto b = breakpoints(f, iv);
                     out.insert(out.end(), b.begin(), b.end());
                   }
                 },
                 [&](const Sum& n) {
                   for (const auto& f : n.terms) {
                     auto b = breakpoints(f, iv);
                     out.insert(out.end(), b.begin(), b.end());
                   }
                 },
                 [](const auto&) {},
             },
             spec.node());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Checks the catalog invariants on iv; throws InvalidSpec naming the first violation.
inline void validate(const FunctionSpec& spec, const Interval& iv) {
  auto finite_nonneg = [](double c, const char* what) {
    if (!std::isfinite(c) || c < 0.0) {
      throw InvalidSpec(std::string(what) + ": coefficient must be finite and >= 0");
    }
  };
  std::visit(
      detail::overloaded{
          [&](const PowerLaw& n) {
            finite_nonneg(n.c, "PowerLaw");
            if (!std::isfinite(n.alpha)) throw InvalidSpec("PowerLaw: alpha must be finite");
          },
          [&](const ShiftedPowerLaw& n) {
            finite_nonneg(n.c, "ShiftedPowerLaw");
            if (!std::isfinite(n.alpha)) throw InvalidSpec("ShiftedPowerLaw: alpha must be finite");
          },
          [&](const Exponential& n) {
            finite_nonneg(n.c, "Exponential");
            if (!std::isfinite(n.beta)) throw InvalidSpec("Exponential: beta must be finite");
          },
          [&](const Constant& n) { finite_nonneg(n.c, "Constant"); },
          [&](const PiecewiseLinear& n) {
            if (n.knots.size() < 2) throw InvalidSpec("PiecewiseLinear: needs at least 2 knots");
            for (std::size_t i = 0; i < n.knots.size(); ++i) {
              const auto& [x, v] = n.knots[i];
              if (!std::isfinite(x)) throw InvalidSpec("PiecewiseLinear: knot x must be finite");
              finite_nonneg(v, "PiecewiseLinear knot value");
              if (i > 0 && !(x > n.knots[i - 1].first)) {
                throw InvalidSpec("PiecewiseLinear: knots must be strictly increasing in x");
              }
            }
            if (n.knots.front().first > iv.a() || n.knots.back().first < iv.b()) {
              throw InvalidSpec("PiecewiseLinear: knots must cover the interval");
            }
          },
          [&](const Product& n) {
            if (n.factors.empty()) throw InvalidSpec("Product: needs at least one factor");
            for (const auto& f : n.factors) validate(f, iv);
          },
          [&](const Sum& n) {
            if (n.terms.empty()) throw InvalidSpec("Sum: needs at least one term");
            for (const auto& f : n.terms) validate(f, iv);
          },
          [&](const RawFunction& n) {
            if (!n.fn) throw InvalidSpec("RawFunction: empty callable");
            for (int i = 1; i < 64; ++i) {
              const double v = n.fn(iv.a() + iv.length() * i / 64.0);
              if (!(v >= 0.0)) throw InvalidSpec("RawFunction: negative or NaN sample");
            }
          },
      },
      spec.node());
}

/// G with G(a) = 0 and G' = spec, when the catalog can express it.
/// Absent for products, piecewise-linear specs (use a cumulative table), raw callables and
/// power laws with exponent <= -1. The result may contain negative coefficients.
inline std::optional<FunctionSpec> closed_antiderivative(const FunctionSpec& spec,
                                                         const Interval& iv) {
  using Opt = std::optional<FunctionSpec>;
  return std::visit(
      detail::overloaded{
          [&](const Constant& n) -> Opt { return FunctionSpec::power(n.c, 1.0); },
          [&](const PowerLaw& n) -> Opt {
            if (n.alpha <= -1.0) return std::nullopt;
            return FunctionSpec::power(n.c / (n.alpha + 1.0), n.alpha + 1.0);
          },
          [&](const ShiftedPowerLaw& n) -> Opt {
            if (n.alpha <= -1.0) return std::nullopt;
            const double e = n.alpha + 1.0;
            if (!n.from_right) return FunctionSpec::power(n.c / e, e);
            return FunctionSpec::sum({FunctionSpec::constant(n.c * std::pow(iv.length(), e) / e),
                                      ShiftedPowerLaw{-n.c / e, e, true}});
          },
          [&](const Exponential& n) -> Opt {
            if (n.beta == 0.0) return FunctionSpec::power(n.c, 1.0);
            return FunctionSpec::sum({FunctionSpec::exponential(n.c / n.beta, n.beta),
                                      FunctionSpec::constant(-n.c / n.beta *
                                                             std::exp(n.beta * iv.a()))});
          },
          [&](const Sum& n) -> Opt {
            std::vector<FunctionSpec> parts;
            for (const auto& t : n.terms) {
              auto g = closed_antiderivative(t, iv);
              if (!g) return std::nullopt;
              parts.push_back(*g);
            }
            return FunctionSpec::sum(std::move(parts));
          },
          [&](const auto&) -> Opt { return std::nullopt; },
      },
      spec.node());
}

/// Exact derivative when the catalog can express it. Piecewise-linear specs with an interior
/// slope change and raw callables have none.
inline std::optional<FunctionSpec> closed_derivative(const FunctionSpec& spec, const Interval& iv) {
  using Opt = std::optional<FunctionSpec>;
  return std::visit(
      detail::overloaded{
          [&](const Constant&) -> Opt { return FunctionSpec::constant(0.0); },
          [&](const PowerLaw& n) -> Opt {
            if (n.alpha == 0.0) return FunctionSpec::constant(0.0);
            return FunctionSpec::power(n.c * n.alpha, n.alpha - 1.0);
          },
          [&](const ShiftedPowerLaw& n) -> Opt {
            if (n.alpha == 0.0) return FunctionSpec::constant(0.0);
            const double sign = n.from_right ? -1.0 : 1.0;
            return ShiftedPowerLaw{sign * n.c * n.alpha, n.alpha - 1.0, n.from_right};
          },
          [&](const Exponential& n) -> Opt {
            return FunctionSpec::exponential(n.c * n.beta, n.beta);
          },
          [&](const PiecewiseLinear& n) -> Opt {
            std::optional<double> slope;
            for (std::size_t i = 1; i < n.knots.size(); ++i) {
              const auto& [x0, y0] = n.knots[i - 1];
              const auto& [x1, y1] = n.knots[i];
              if (x1 <= iv.a() || x0 >= iv.b()) continue;
              const double m = (y1 - y0) / (x1 - x0);
              if (slope && std::abs(*slope - m) > 1e-14 * (1.0 + std::abs(m))) return std::nullopt;
              slope = m;
            }
            return FunctionSpec::constant(slope.value_or(0.0));
          },
          [&](const Sum& n) -> Opt {
            std::vector<FunctionSpec> parts;
            for (const auto& t : n.terms) {
              auto d = closed_derivative(t, iv);
              if (!d) return std::nullopt;
              parts.push_back(*d);
            }
            return FunctionSpec::sum(std::move(parts));
          },
          [&](const Product& n) -> Opt {
            std::vector<FunctionSpec> parts;
            for (std::size_t i = 0; i < n.factors.size(); ++i) {
              auto d = closed_derivative(n.factors[i], iv);
              if (!d) return std::nullopt;
              std::vector<FunctionSpec> term = n.factors;
              term[i] = *d;
              parts.push_back(FunctionSpec::product(std::move(term)));
            }
            return FunctionSpec::sum(std::move(parts));
          },
          [&](const RawFunction&) -> Opt { return std::nullopt; },
      },
      spec.node());
}

/// The function x -> spec(a + b - x), expressed in the catalog.
inline FunctionSpec reflect(const FunctionSpec& spec, const Interval& iv) {
  return std::visit(
      detail::overloaded{
          [&](const Constant& n) -> FunctionSpec { return n; },
          [&](const PowerLaw& n) -> FunctionSpec { return ShiftedPowerLaw{n.c, n.alpha, true}; },
          [&](const ShiftedPowerLaw& n) -> FunctionSpec {
            if (n.from_right) return PowerLaw{n.c, n.alpha};
            return ShiftedPowerLaw{n.c, n.alpha, true};
          },
          [&](const Exponential& n) -> FunctionSpec {
            return Exponential{n.c * std::exp(n.beta * (iv.a() + iv.b())), -n.beta};
          },
          [&](const PiecewiseLinear& n) -> FunctionSpec {
            PiecewiseLinear out;
            for (auto it = n.knots.rbegin(); it != n.knots.rend(); ++it) {
              out.knots.emplace_back(iv.a() + iv.b() - it->first, it->second);
            }
            return out;
          },
          [&](const Product& n) -> FunctionSpec {
            Product out;
            for (const auto& f : n.factors) out.factors.push_back(reflect(f, iv));
            return out;
          },
          [&](const Sum& n) -> FunctionSpec {
            Sum out;
            for (const auto& f : n.terms) out.terms.push_back(reflect(f, iv));
            return out;
          },
          [&](const RawFunction& n) -> FunctionSpec {
            const double s = iv.a() + iv.b();
            auto fn = n.fn;
            return RawFunction{[fn, s](double x) { return fn(s - x); }, n.label + "~reflected"};
          },
      },
      spec.node());
}

inline FunctionSpec scaled(const FunctionSpec& spec, double c) {
  return FunctionSpec::product({FunctionSpec::constant(c), spec});
}

// ---------------------------------------------------------------------------------------------
// Random families

/// Piecewise-linear members with n_knots knots (both endpoints included) and values drawn
/// uniformly from [value_lo, value_hi].
struct RandomPiecewiseLinear {
  int n_knots = 4;
  double value_lo = 0.0;
  double value_hi = 1.0;
  bool vanish_left = false;
  bool vanish_right = false;
};

/// c * (x - a)^alpha with alpha and c drawn uniformly from their ranges.
struct RandomPowerLaw {
  double alpha_lo = 0.0;
  double alpha_hi = 1.0;
  double c_lo = 1.0;
  double c_hi = 1.0;
};

/// (x - a)^alpha for each alpha of the list, cycling when more members are requested.
struct GridPowerLaw {
  std::vector<double> alphas;
};

struct FamilySpec {
  std::variant<RandomPiecewiseLinear, RandomPowerLaw, GridPowerLaw> kind;
  std::uint64_t seed = 0;
  Interval interval{0.0, 1.0};
};

namespace detail {

// Member i draws from its own stream, so sample(n) is a prefix of sample(n + k).
inline std::mt19937_64 member_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Uniform on [0, 1) from the top 53 bits; independent of the standard library's distributions.
inline double unit(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * unit(eng);
}

}  // namespace detail

inline std::vector<FunctionSpec> sample_family(const FamilySpec& family, int count) {
  if (count < 1) throw InvalidSpec("sample_family: count must be >= 1");
  const Interval& iv = family.interval;
  std::vector<FunctionSpec> out;
  out.reserve(static_cast<std::size_t>(count));
  std::visit(
      detail::overloaded{
          [&](const RandomPiecewiseLinear& k) {
            if (k.n_knots < 2) throw InvalidSpec("RandomPiecewiseLinear: n_knots must be >= 2");
            if (!(k.value_lo <= k.value_hi) || k.value_lo < 0.0 || !std::isfinite(k.value_hi)) {
              throw InvalidSpec("RandomPiecewiseLinear: empty or negative value range");
            }
            for (int i = 0; i < count; ++i) {
              auto eng = detail::member_engine(family.seed, static_cast<std::uint64_t>(i));
              std::vector<double> xs{iv.a(), iv.b()};
              for (int j = 0; j < k.n_knots - 2; ++j) {
                xs.push_back(detail::uniform(eng, iv.a(), iv.b()));
              }
              std::sort(xs.begin(), xs.end());
              PiecewiseLinear pwl;
              for (double x : xs) {
                if (!pwl.knots.empty() && !(x > pwl.knots.back().first)) continue;
                pwl.knots.emplace_back(x, detail::uniform(eng, k.value_lo, k.value_hi));
              }
              if (pwl.knots.back().first < iv.b()) pwl.knots.back().first = iv.b();
              if (k.vanish_left) pwl.knots.front().second = 0.0;
              if (k.vanish_right) pwl.knots.back().second = 0.0;
              out.emplace_back(std::move(pwl));
            }
          },
          [&](const RandomPowerLaw& k) {
            if (!(k.alpha_lo <= k.alpha_hi) || !(k.c_lo <= k.c_hi) || k.c_lo < 0.0) {
              throw InvalidSpec("RandomPowerLaw: empty range");
            }
            for (int i = 0; i < count; ++i) {
              auto eng = detail::member_engine(family.seed, static_cast<std::uint64_t>(i));
              const double alpha = detail::uniform(eng, k.alpha_lo, k.alpha_hi);
              const double c = detail::uniform(eng, k.c_lo, k.c_hi);
              out.push_back(FunctionSpec::power(c, alpha));
            }
          },
          [&](const GridPowerLaw& k) {
            if (k.alphas.empty()) throw InvalidSpec("GridPowerLaw: empty alpha list");
            for (int i = 0; i < count; ++i) {
              out.push_back(FunctionSpec::power(1.0, k.alphas[static_cast<std::size_t>(i) %
                                                              k.alphas.size()]));
            }
          },
      },
      family.kind);
  for (const auto& f : out) validate(f, iv);
  return out;
}

}  // namespace hopial
