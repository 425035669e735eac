#pragma once

#include <cmath>
#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "hopial/funcspace.hpp"
#include "hopial/quad.hpp"

namespace hopial {

/// G(x) = int_a^x g (Anchor::left) or int_x^b g (Anchor::right). Uses the closed
/// antiderivative when the catalog has one, otherwise a cumulative table.
class Primitive {
 public:
  Primitive(const FunctionSpec& g, const Interval& iv, Anchor anchor, int n = 256,
            const QuadOptions& opts = {})
      : iv_(iv), anchor_(anchor) {
    // the right-anchored closed form goes through the reflected function to avoid cancellation
    const FunctionSpec base = anchor == Anchor::left ? g : reflect(g, iv);
    closed_ = closed_antiderivative(base, iv);
    if (closed_) {
      total_ = detail::evaluate_unchecked(*closed_, iv.b(), iv);
    } else {
      table_.emplace(integrand_of(g, iv), iv, n, opts, anchor);
      total_ = table_->total();
      error_ = table_->error_estimate();
    }
    const double e = endpoint_exponent(g, anchor == Anchor::left ? Side::left : Side::right, iv);
    anchor_exponent_ = std::isfinite(e) ? e + 1.0 : 0.0;
    breakpoints_ = hopial::breakpoints(g, iv);
  }

  /// Table-backed primitive of an arbitrary integrand over iv.
  Primitive(const Integrand& g, const Interval& iv, Anchor anchor, int n = 256,
            const QuadOptions& opts = {})
      : iv_(iv), anchor_(anchor) {
    table_.emplace(g, iv, n, opts, anchor);
    total_ = table_->total();
    error_ = table_->error_estimate();
    anchor_exponent_ = (anchor == Anchor::left ? g.left_exponent : g.right_exponent) + 1.0;
    breakpoints_ = g.breakpoints;
  }

  double operator()(double x) const {
    if (closed_) {
      const double y = anchor_ == Anchor::left ? x : iv_.a() + iv_.b() - x;
      if (y <= iv_.a()) return 0.0;
      return detail::evaluate_unchecked(*closed_, std::min(y, iv_.b()), iv_);
    }
    return (*table_)(std::clamp(x, iv_.a(), iv_.b()));
  }

  /// G at x given the exact distances dl = x - a, dr = b - x.
  double at(double x, double dl, double dr) const {
    if (closed_) {
      if (anchor_ == Anchor::right) std::swap(dl, dr);
      if (dl <= 0.0) return 0.0;
      const double y = anchor_ == Anchor::left ? x : iv_.a() + iv_.b() - x;
      return detail::evaluate_at(*closed_, std::clamp(y, iv_.a(), iv_.b()), dl, std::max(dr, 0.0), iv_);
    }
    return (*table_)(std::clamp(x, iv_.a(), iv_.b()));
  }

  double total() const noexcept { return total_; }
  double abs_error() const noexcept { return error_; }
  double rel_error() const noexcept {
    return total_ == 0.0 ? 0.0 : std::max(error_ / std::abs(total_), 1e-15);
  }
  bool is_closed() const noexcept { return closed_.has_value(); }
  Anchor anchor() const noexcept { return anchor_; }
  /// Leading power of G at its anchor endpoint.
  double anchor_exponent() const noexcept { return anchor_exponent_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const Interval& interval() const noexcept { return iv_; }

 private:
  Interval iv_;
  Anchor anchor_;
  std::optional<FunctionSpec> closed_;
  std::optional<CumulativeTable> table_;
  double total_ = 0.0;
  double error_ = 0.0;
  double anchor_exponent_ = 1.0;
  std::vector<double> breakpoints_;
};

// ---------------------------------------------------------------------------------------------
// Integrand algebra: pointwise products and powers that keep track of endpoint exponents.

inline Integrand integrand_of(std::shared_ptr<const Primitive> G) {
  Integrand out;
  const bool left = G->anchor() == Anchor::left;
  out.left_exponent = left ? G->anchor_exponent() : 0.0;
  out.right_exponent = left ? 0.0 : G->anchor_exponent();
  out.breakpoints = G->breakpoints();
  out.at = [G](double x, double dl, double dr) { return G->at(x, dl, dr); };
  out.home_a = G->interval().a();
  out.home_b = G->interval().b();
  out.fn = [G = std::move(G)](double x) { return (*G)(x); };
  return out;
}

inline Integrand operator*(const Integrand& f, const Integrand& g) {
  Integrand out;
  out.fn = [a = f.fn, b = g.fn](double x) {
    const double u = a(x);
    return u == 0.0 ? 0.0 : u * b(x);
  };
  out.left_exponent = f.left_exponent + g.left_exponent;
  out.right_exponent = f.right_exponent + g.right_exponent;
  out.breakpoints = f.breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  out.structural = f.structural && g.structural;
  const bool same_home = !f.at || !g.at || (f.home_a == g.home_a && f.home_b == g.home_b);
  if ((f.at || g.at) && same_home) {
    out.home_a = f.at ? f.home_a : g.home_a;
    out.home_b = f.at ? f.home_b : g.home_b;
    auto fa = f.at ? f.at : [a = f.fn](double x, double, double) { return a(x); };
    auto ga = g.at ? g.at : [b = g.fn](double x, double, double) { return b(x); };
    out.at = [fa, ga](double x, double dl, double dr) {
      const double u = fa(x, dl, dr);
      return u == 0.0 ? 0.0 : u * ga(x, dl, dr);
    };
  }
  return out;
}

/// x -> max(f(x), 0)^gamma.
inline Integrand pow(const Integrand& f, double gamma) {
  if (gamma == 1.0) return f;
  Integrand out = f;
  out.fn = [a = f.fn, gamma](double x) {
    const double v = std::max(a(x), 0.0);
    if (gamma == 2.0) return v * v;
    return std::pow(v, gamma);
  };
  if (f.at) {
    out.at = [a = f.at, gamma](double x, double dl, double dr) {
      const double v = std::max(a(x, dl, dr), 0.0);
      if (gamma == 2.0) return v * v;
      return std::pow(v, gamma);
    };
  }
  out.left_exponent = f.left_exponent * gamma;
  out.right_exponent = f.right_exponent * gamma;
  return out;
}

inline Integrand constant_integrand(double c) {
  Integrand out;
  out.fn = [c](double) { return c; };
  return out;
}

}  // namespace hopial
