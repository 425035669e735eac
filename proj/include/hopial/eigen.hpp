#pragma once

// Smallest eigenvalue of -(P |u'|^{p-1} u')' = lambda m |u|^{p-1} u on (a, b).
//
// p = 1: piecewise-linear finite elements with lumped mass, Sturm-sequence bisection on the
// resulting symmetric tridiagonal matrix, Richardson over n and 2n; cross-checked by shooting.
// p > 1: shooting with RK4 and bisection on the number of zeros.
// Coefficients that vanish or blow up at an endpoint are handled by truncating that end by
// delta and extrapolating delta -> 0.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"
#include "hopial/mode.hpp"
#include "hopial/primitive.hpp"
#include "hopial/quad.hpp"
#include "hopial/special.hpp"

namespace hopial {

enum class Boundary { dirichlet, natural };

/// Evaluable coefficient with its leading endpoint powers.
struct Coefficient {
  std::function<double(double)> fn;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

inline Coefficient coefficient_of(const FunctionSpec& spec, const Interval& iv) {
  auto finite_or_zero = [](double e) { return std::isfinite(e) ? e : 0.0; };
  return {[spec, iv](double x) { return detail::evaluate_unchecked(spec, x, iv); },
          finite_or_zero(endpoint_exponent(spec, Side::left, iv)),
          finite_or_zero(endpoint_exponent(spec, Side::right, iv))};
}

struct EigenProblem {
  Coefficient P;  // coefficient of the derivative term
  Coefficient m;  // density on the right-hand side
  double p = 1.0;
  Interval interval{0.0, 1.0};
  Boundary left = Boundary::dirichlet;
  Boundary right = Boundary::dirichlet;
};

struct EigenOptions {
  double tol = 1e-8;
  double lambda_lo = 1e-8;
  double lambda_hi = 1e8;
  int fd_points = 2048;
  int shooting_steps = 4096;
};

struct EigenResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double finite_difference = std::numeric_limits<double>::quiet_NaN();
  double shooting = std::numeric_limits<double>::quiet_NaN();
  bool truncated = false;  // a singular endpoint was handled by delta-extrapolation
  std::string boundary_note;
};

namespace detail {

inline double phi(double t, double p) { return p == 1.0 ? t : std::copysign(std::pow(std::abs(t), p), t); }
inline double phi_inv(double t, double p) {
  return p == 1.0 ? t : std::copysign(std::pow(std::abs(t), 1.0 / p), t);
}

inline bool singular_end(const EigenProblem& prob, Side side) {
  const double eP = side == Side::left ? prob.P.left_exponent : prob.P.right_exponent;
  const double em = side == Side::left ? prob.m.left_exponent : prob.m.right_exponent;
  return eP != 0.0 || em < 0.0;
}

// A Dirichlet condition cannot be imposed where P ~ dist^rho with rho >= 1; the principal
// (bounded, flux -> 0) solution is selected there instead.
inline EigenProblem principal_form(EigenProblem prob, std::string& note) {
  if (prob.left == Boundary::dirichlet && prob.P.left_exponent >= 1.0) {
    prob.left = Boundary::natural;
    note += "left: principal condition replaces u(a)=0 (P vanishes to order >= 1); ";
  }
  if (prob.right == Boundary::dirichlet && prob.P.right_exponent >= 1.0) {
    prob.right = Boundary::natural;
    note += "right: principal condition replaces u(b)=0 (P vanishes to order >= 1); ";
  }
  return prob;
}

inline void check_coefficients(const EigenProblem& prob) {
  if (!(prob.p >= 1.0)) throw PreconditionFailed("p >= 1");
  const Interval& iv = prob.interval;
  for (int i = 1; i < 1024; ++i) {
    const double x = iv.a() + iv.length() * i / 1024.0;
    const double P = prob.P.fn(x);
    if (!(P > 0.0) || !std::isfinite(P)) {
      throw SingularCoefficient("eigen: P must be positive and finite inside (a, b); P(" +
                                std::to_string(x) + ") = " + std::to_string(P));
    }
    const double m = prob.m.fn(x);
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw PreconditionFailed("density m >= 0 on (a, b)");
    }
  }
}

// Smallest eigenvalue of the symmetric tridiagonal (diag, off) by Sturm-sequence bisection.
inline double tridiagonal_smallest(const std::vector<double>& diag, const std::vector<double>& off) {
  const std::size_t n = diag.size();
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = diag[i];
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    hi = std::max(hi, r);
  }
  auto count_below = [&](double lambda) {
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double o2 = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
      d = diag[i] - lambda - (i > 0 ? o2 / d : 0.0);
      if (d == 0.0) d = -std::numeric_limits<double>::min();
      if (d < 0.0) ++count;
    }
    return count;
  };
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double fd_eigenvalue(const EigenProblem& prob, int n) {
  const double a = prob.interval.a();
  const double L = prob.interval.length();
  const double h = L / n;
  const int i0 = prob.left == Boundary::dirichlet ? 1 : 0;
  const int i1 = prob.right == Boundary::dirichlet ? n - 1 : n;
  const std::size_t size = static_cast<std::size_t>(i1 - i0 + 1);
  std::vector<double> Pmid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) Pmid[static_cast<std::size_t>(i)] = prob.P.fn(a + (i + 0.5) * h);
  std::vector<double> K(size);
  std::vector<double> Koff(size > 0 ? size - 1 : 0);
  std::vector<double> M(size);
  for (int i = i0; i <= i1; ++i) {
    const std::size_t k = static_cast<std::size_t>(i - i0);
    double kd = 0.0;
    if (i > 0) kd += Pmid[static_cast<std::size_t>(i - 1)] / h;
    if (i < n) kd += Pmid[static_cast<std::size_t>(i)] / h;
    K[k] = kd;
    if (i < i1) Koff[k] = -Pmid[static_cast<std::size_t>(i)] / h;
    const double x = a + i * h;
    const double lo = std::max(a, x - 0.5 * h);
    const double hi = std::min(a + L, x + 0.5 * h);
    double mass = prob.m.fn(x) * (hi - lo);
    if (!std::isfinite(mass) || !(mass > 0.0)) {
      Integrand g;
      g.fn = prob.m.fn;
      if (i == 0) g.left_exponent = prob.m.left_exponent;
      if (i == n) g.right_exponent = prob.m.right_exponent;
      mass = integrate(g, Interval(lo, hi), QuadOptions{1e-10, 0.0, 10000}).value;
    }
    if (!(mass > 0.0)) throw PreconditionFailed("density m > 0 at grid nodes");
    M[k] = mass;
  }
  std::vector<double> diag(size);
  std::vector<double> off(Koff.size());
  for (std::size_t k = 0; k < size; ++k) diag[k] = K[k] / M[k];
  for (std::size_t k = 0; k < off.size(); ++k) off[k] = Koff[k] / std::sqrt(M[k] * M[k + 1]);
  return tridiagonal_smallest(diag, off);
}

// Shooting on a closed subinterval [lo, hi] where P and m are finite and P > 0.
class Shooter {
 public:
  Shooter(const EigenProblem& prob, double lo, double hi, int steps)
      : p_(prob.p), left_(prob.left), right_(prob.right), n_(steps), h_((hi - lo) / steps) {
    P_.resize(static_cast<std::size_t>(2 * steps + 1));
    m_.resize(P_.size());
    for (std::size_t j = 0; j < P_.size(); ++j) {
      const double x = j + 1 == P_.size() ? hi : lo + 0.5 * h_ * static_cast<double>(j);
      P_[j] = prob.P.fn(x);
      m_[j] = prob.m.fn(x);
      if (!(P_[j] > 0.0) || !std::isfinite(P_[j]) || !std::isfinite(m_[j])) {
        throw SingularCoefficient("shooting: coefficient singular at x = " + std::to_string(x));
      }
    }
  }

  /// True when the solution from the left end reaches b without violating the right condition,
  /// i.e. lambda lies below the smallest eigenvalue.
  bool below(double lambda) const {
    double u = left_ == Boundary::dirichlet ? 0.0 : 1.0;
    double w = left_ == Boundary::dirichlet ? 1.0 : 0.0;
    auto rhs = [&](std::size_t j, double uu, double ww, double& du, double& dw) {
      du = phi_inv(ww / P_[j], p_);
      dw = -lambda * m_[j] * phi(uu, p_);
    };
    double prev = right_ == Boundary::dirichlet ? u : w;
    for (int i = 0; i < n_; ++i) {
      const std::size_t j = static_cast<std::size_t>(2 * i);
      double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w;
      rhs(j, u, w, k1u, k1w);
      rhs(j + 1, u + 0.5 * h_ * k1u, w + 0.5 * h_ * k1w, k2u, k2w);
      rhs(j + 1, u + 0.5 * h_ * k2u, w + 0.5 * h_ * k2w, k3u, k3w);
      rhs(j + 2, u + h_ * k3u, w + h_ * k3w, k4u, k4w);
      u += h_ / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
      w += h_ / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
      const double cur = right_ == Boundary::dirichlet ? u : w;
      if (cur == 0.0 || (prev != 0.0 && std::signbit(cur) != std::signbit(prev))) return false;
      if (!std::isfinite(cur)) return false;
      prev = cur;
    }
    return true;
  }

 private:
  double p_;
  Boundary left_;
  Boundary right_;
  int n_;
  double h_;
  std::vector<double> P_;
  std::vector<double> m_;
};

// Bisection for the crossing of a monotone predicate in [lo_bound, hi_bound].
template <typename Pred>
double bisect_threshold(const Pred& below, double lo_bound, double hi_bound, double rel_tol) {
  if (!below(lo_bound)) {
    throw NoEigenvalueInBracket("no eigenvalue above lambda_lo = " + std::to_string(lo_bound));
  }
  double lo = lo_bound;
  double hi = std::max(1.0, 2.0 * lo_bound);
  while (below(hi)) {
    lo = hi;
    hi *= 4.0;
    if (hi > hi_bound) {
      if (below(hi_bound)) {
        throw NoEigenvalueInBracket("no eigenvalue below lambda_hi = " + std::to_string(hi_bound));
      }
      hi = hi_bound;
      break;
    }
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double shooting_on(const EigenProblem& prob, double lo, double hi, int steps,
                          const EigenOptions& opts) {
  const Shooter shooter(prob, lo, hi, steps);
  return bisect_threshold([&](double l) { return shooter.below(l); }, opts.lambda_lo,
                          opts.lambda_hi, 1e-13);
}

// Shooting with step doubling, plus delta-extrapolation when an endpoint is singular.
inline Estimate shooting_eigenvalue(const EigenProblem& prob, const EigenOptions& opts,
                                    bool& truncated) {
  const Interval& iv = prob.interval;
  const bool sl = singular_end(prob, Side::left);
  const bool sr = singular_end(prob, Side::right);
  truncated = sl || sr;
  auto solve = [&](double delta, int steps) {
    const double lo = sl ? iv.a() + delta * iv.length() : iv.a();
    const double hi = sr ? iv.b() - delta * iv.length() : iv.b();
    return shooting_on(prob, lo, hi, steps, opts);
  };
  const int n = opts.shooting_steps;
  if (!truncated) {
    const double coarse = solve(0.0, n);
    const double fine = solve(0.0, 2 * n);
    return {fine, std::abs(fine - coarse)};
  }
  const double d1 = 1e-3;
  const double l1 = solve(d1, n);
  const double l2 = solve(d1 / 2, n);
  const double l3 = solve(d1 / 4, n);
  const double r1 = 2.0 * l2 - l1;
  const double r2 = 2.0 * l3 - l2;
  const double value = (4.0 * r2 - r1) / 3.0;
  return {value, std::abs(r2 - r1) / 3.0 + std::abs(value - r2) * 1e-3};
}

}  // namespace detail

/// Smallest eigenvalue of the problem; see the file comment for the methods used.
inline EigenResult smallest_eigenvalue(const EigenProblem& problem, const EigenOptions& opts = {}) {
  if (opts.fd_points < 16) throw DomainError("eigen: fd_points must be >= 16");
  EigenResult out;
  const EigenProblem prob = detail::principal_form(problem, out.boundary_note);
  detail::check_coefficients(prob);
  if (prob.left == Boundary::natural && prob.right == Boundary::natural) {
    throw NoEigenvalueInBracket(
        "eigen: no Dirichlet condition survives (" + out.boundary_note + "), so lambda0 = 0");
  }
  bool truncated = false;
  const Estimate shoot = detail::shooting_eigenvalue(prob, opts, truncated);
  out.shooting = shoot.value;
  out.truncated = truncated;
  if (prob.p == 1.0) {
    const double coarse = detail::fd_eigenvalue(prob, opts.fd_points);
    const double fine = detail::fd_eigenvalue(prob, 2 * opts.fd_points);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    out.finite_difference = extrapolated;
    // shooting is the sharper of the two on regular problems; FD copes better with singular ends
    out.value = truncated ? extrapolated : shoot.value;
    const double fd_error = std::abs(fine - coarse) / 3.0 * 0.25;
    out.error_estimate = std::max({std::abs(extrapolated - shoot.value),
                                   truncated ? fd_error : shoot.error, 1e-13 * std::abs(out.value)});
  } else {
    out.value = shoot.value;
    out.error_estimate = std::max(shoot.error, 1e-13 * std::abs(shoot.value));
  }
  return out;
}

/// Smallest positive lambda of (r phi(u'))' = lambda s' phi(u), u(a) = 0, with the Robin
/// condition r(b) phi(u'(b)) = lambda s(b) phi(u(b)) at the right end.
inline EigenResult boyd_wong_eigenvalue(const FunctionSpec& r, const FunctionSpec& s, double p,
                                        const Interval& iv, const EigenOptions& opts = {}) {
  if (!(p > 0.0)) throw PreconditionFailed("p > 0");
  const auto ds = closed_derivative(s, iv);
  if (!ds && s.as<PiecewiseLinear>()) {
    throw NonDifferentiableWeight("s is piecewise linear with an interior kink");
  }
  const double hd = 1e-6 * iv.length();
  std::function<double(double)> sprime;
  if (ds) {
    sprime = [d = *ds, iv](double x) { return detail::evaluate_unchecked(d, x, iv); };
  } else {
    sprime = [s, iv, hd](double x) {
      const double lo = std::max(iv.a(), x - hd);
      const double hi = std::min(iv.b(), x + hd);
      return (evaluate(s, hi, iv) - evaluate(s, lo, iv)) / (hi - lo);
    };
  }
  const double sb = evaluate(s, iv.b(), iv);
  auto residual = [&](double lambda, int steps) {
    const double h = iv.length() / steps;
    double u = 0.0;
    double w = 1.0;
    auto rhs = [&](double x, double uu, double ww, double& du, double& dw) {
      const double rx = detail::evaluate_unchecked(r, x, iv);
      if (!(rx > 0.0) || !std::isfinite(rx)) throw PreconditionFailed("r > 0 on [a, b]");
      du = detail::phi_inv(ww / rx, p);
      dw = lambda * sprime(x) * detail::phi(uu, p);
    };
    for (int i = 0; i < steps; ++i) {
      const double x = iv.a() + i * h;
      double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w;
      rhs(x, u, w, k1u, k1w);
      rhs(x + 0.5 * h, u + 0.5 * h * k1u, w + 0.5 * h * k1w, k2u, k2w);
      rhs(x + 0.5 * h, u + 0.5 * h * k2u, w + 0.5 * h * k2w, k3u, k3w);
      rhs(x + h, u + h * k3u, w + h * k3w, k4u, k4w);
      u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
      w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
    }
    return w - lambda * sb * detail::phi(u, p);
  };
  auto solve = [&](int steps) {
    return detail::bisect_threshold([&](double l) { return residual(l, steps) > 0.0; },
                                    opts.lambda_lo, opts.lambda_hi, 1e-13);
  };
  const int n = std::max(256, opts.shooting_steps / 4);
  const double coarse = solve(n);
  const double fine = solve(2 * n);
  EigenResult out;
  out.value = fine;
  out.shooting = fine;
  out.error_estimate = std::max(std::abs(fine - coarse), 1e-13 * fine);
  return out;
}

/// Eigenproblem behind the single-weight Hardy bound int r F^{p+1} <= (1/lambda0) int s f^{p+1}.
/// as_derived: -(s phi(u'))' = lambda r phi(u), u(a) = 0, natural at b (the Rayleigh quotient
/// int s u'^{p+1} / int r u^{p+1}). as_printed: -(R(x,b) phi(u'))' = lambda s' phi(u), u(a) = 0,
/// principal condition at b where R vanishes.
inline EigenProblem t2_13_problem(const FunctionSpec& r, const FunctionSpec& s, double p,
                                  const Interval& iv, Mode mode) {
  EigenProblem prob;
  prob.p = p;
  prob.interval = iv;
  prob.left = Boundary::dirichlet;
  if (mode == Mode::as_derived) {
    prob.P = coefficient_of(s, iv);
    prob.m = coefficient_of(r, iv);
    prob.right = Boundary::natural;
    return prob;
  }
  auto tail = std::make_shared<Primitive>(r, iv, Anchor::right);
  const double er = endpoint_exponent(r, Side::right, iv);
  prob.P = {[tail](double x) { return (*tail)(x); }, 0.0, std::isfinite(er) ? er + 1.0 : 1.0};
  const auto ds = closed_derivative(s, iv);
  if (!ds) {
    if (s.as<PiecewiseLinear>() || !breakpoints(s, iv).empty()) {
      throw NonDifferentiableWeight("s is piecewise linear with an interior kink; s' is discontinuous");
    }
    const double hd = 1e-6 * iv.length();
    prob.m = {[s, iv, hd](double x) {
                const double lo = std::max(iv.a(), x - hd);
                const double hi = std::min(iv.b(), x + hd);
                return (detail::evaluate_unchecked(s, hi, iv) - detail::evaluate_unchecked(s, lo, iv)) /
                       (hi - lo);
              },
              0.0, 0.0};
  } else {
    prob.m = coefficient_of(*ds, iv);
  }
  bool positive = false;
  for (int i = 1; i < 1024; ++i) {
    const double v = prob.m.fn(iv.a() + iv.length() * i / 1024.0);
    if (v < -1e-12) throw PreconditionFailed("s' >= 0 on (a, b)");
    if (v > 0.0) positive = true;
  }
  if (!positive) throw PreconditionFailed("s' not identically zero (degenerate density)");
  prob.right = Boundary::dirichlet;
  return prob;
}

/// 1/lambda0 for the single-weight bound, with the eigenvalue's error propagated.
inline Estimate t2_13_constant(const FunctionSpec& r, const FunctionSpec& s, double p,
                               const Interval& iv, Mode mode = Mode::as_derived,
                               const EigenOptions& opts = {}) {
  const EigenResult ev = smallest_eigenvalue(t2_13_problem(r, s, p, iv, mode), opts);
  return {1.0 / ev.value, ev.error_estimate / (ev.value * ev.value)};
}

}  // namespace hopial
