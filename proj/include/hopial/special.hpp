#pragma once

// Gamma function and the Boyd constants sigma, I, N, L.

#include <cmath>
#include <string>

#include "hopial/errors.hpp"
#include "hopial/mode.hpp"
#include "hopial/quad.hpp"

namespace hopial {

struct BoydParams {
  double nu = 1.0;
  double eta = 1.0;
  double s = 2.0;
};

/// A value together with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;

  double rel_error() const noexcept {
    return value == 0.0 ? (error == 0.0 ? 0.0 : detail::kInf) : error / std::abs(value);
  }
};

inline double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
  return std::tgamma(x);
}

namespace detail {

inline void check_boyd(const BoydParams& bp) {
  if (!(bp.nu > 0.0)) throw PreconditionFailed("nu > 0");
  if (!(bp.s > 1.0)) throw PreconditionFailed("s > 1");
  if (!(bp.eta >= 0.0 && bp.eta < bp.s)) throw PreconditionFailed("0 <= eta < s");
}

}  // namespace detail

inline double boyd_sigma(const BoydParams& bp) {
  detail::check_boyd(bp);
  const auto [nu, eta, s] = bp;
  return std::pow((nu * (s - 1.0) + (s - eta)) / ((s - 1.0) * (nu + eta)), 1.0 / s);
}

inline QuadResult boyd_I(const BoydParams& bp, double tol = 1e-12) {
  detail::check_boyd(bp);
  const auto [nu, eta, s] = bp;
  const double gam = (nu + eta + s * nu) / (s * nu);
  const double c = s * (eta - 1.0) / (s - eta);
  Integrand g;
  g.left_exponent = 1.0 / nu - 1.0;
  if (eta == 0.0) {
    // both brackets equal 1 - t
    g.right_exponent = -1.0 / s;
    g.fn = [=](double t) { return std::pow(1.0 - t, 1.0 - gam) * std::pow(t, 1.0 / nu - 1.0); };
  } else {
    g.fn = [=](double t) {
      return std::pow(1.0 + c * t, -gam) * (1.0 + (eta - 1.0) * t) * std::pow(t, 1.0 / nu - 1.0);
    };
  }
  return integrate(g, Interval(0.0, 1.0), QuadOptions{tol, 0.0, 10000});
}

inline Estimate boyd_N(const BoydParams& bp, double tol = 1e-12) {
  const auto [nu, eta, s] = bp;
  const double sigma = boyd_sigma(bp);
  const QuadResult I = boyd_I(bp, tol);
  const double value = (s - eta) * std::pow(nu, nu) * std::pow(sigma, nu + eta - s) /
                       ((s - 1.0) * (nu + eta) * std::pow(I.value, nu));
  return {value, value * nu * I.rel_error()};
}

/// Exponent e of (b - a)^e that makes the Boyd inequality scale-invariant.
inline double boyd_length_exponent(const BoydParams& bp) {
  return (bp.nu * (bp.s - 1.0) + bp.s - bp.eta) / bp.s;
}

namespace detail {

inline double gamma_ratio(double nu, double eta) {
  return gamma((eta + 1.0) / eta + 1.0 / nu) / (gamma((eta + 1.0) / eta) * gamma(1.0 / nu));
}

inline void check_L(double nu, double eta) {
  if (!(nu > 0.0)) throw DomainError("L(nu, eta): nu must be positive");
  if (!(eta >= 1.0)) throw DomainError("L(nu, eta): eta must be >= 1");
}

}  // namespace detail

/// L(nu, eta) with the prefactor eta nu^eta / (nu + eta).
inline double boyd_L(double nu, double eta) {
  detail::check_L(nu, eta);
  return eta * std::pow(nu, eta) / (nu + eta) * std::pow(nu / (nu + eta), nu / eta) *
         std::pow(detail::gamma_ratio(nu, eta), nu);
}

/// Limit of N(nu, eta', s) as eta' -> s = eta: same as boyd_L with nu^nu in the prefactor.
inline double boyd_L_limit(double nu, double eta) {
  detail::check_L(nu, eta);
  return eta * std::pow(nu, nu) / (nu + eta) * std::pow(nu / (nu + eta), nu / eta) *
         std::pow(detail::gamma_ratio(nu, eta), nu);
}

/// L(pq, q). as_printed drops the outer exponent on the Gamma ratio; as_derived is boyd_L(pq, q).
inline double boyd_Lq(double p, double q, Mode mode = Mode::as_derived) {
  if (mode == Mode::as_derived) return boyd_L(p * q, q);
  detail::check_L(p * q, q);
  return std::pow(p * q, q) / (p + 1.0) * std::pow(p / (p + 1.0), p) *
         detail::gamma_ratio(p * q, q);
}

}  // namespace hopial
