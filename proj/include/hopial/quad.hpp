#pragma once

// Adaptive Gauss-Kronrod quadrature with structural endpoint-singularity handling,
// cumulative tables F(x) = int_a^x f (or int_x^b f), and supremum location.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"

namespace hopial {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 1;

  double rel_error() const noexcept {
    if (value == 0.0) return abs_error_estimate == 0.0 ? 0.0 : detail::kInf;
    return abs_error_estimate / std::abs(value);
  }
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_panels = 10000;
};

inline constexpr double kSmoothTolerance = 1e-10;
inline constexpr double kSingularTolerance = 1e-7;

/// Integrand plus what is known structurally about it: the leading power of the integrand at
/// each endpoint and interior points where it is not smooth.
struct Integrand {
  std::function<double(double)> fn;
  // optional: value at x given the exact distances (x - home_a, home_b - x)
  std::function<double(double, double, double)> at;
  double home_a = std::numeric_limits<double>::quiet_NaN();
  double home_b = std::numeric_limits<double>::quiet_NaN();
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  std::vector<double> breakpoints;
  bool structural = true;  // false: raw callable, error estimates inflated by 10
};

inline Integrand integrand_of(const FunctionSpec& spec, const Interval& iv) {
  Integrand out;
  out.fn = [spec, iv](double x) { return detail::evaluate_unchecked(spec, x, iv); };
  out.at = [spec, iv](double x, double dl, double dr) { return detail::evaluate_at(spec, x, dl, dr, iv); };
  out.home_a = iv.a();
  out.home_b = iv.b();
  out.left_exponent = endpoint_exponent(spec, Side::left, iv);
  out.right_exponent = endpoint_exponent(spec, Side::right, iv);
  if (!std::isfinite(out.left_exponent)) out.left_exponent = 0.0;
  if (!std::isfinite(out.right_exponent)) out.right_exponent = 0.0;
  out.breakpoints = breakpoints(spec, iv);
  out.structural = is_structural(spec);
  return out;
}

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
};

template <typename G>
PanelEstimate gauss_kronrod15(const G& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {result, err};
}

// Exponent k of the substitution x = endpoint +- L u^k that turns d^e into a smooth function
// of u; 1 when no substitution is needed.
inline double substitution_power(double e) {
  if (std::abs(e - std::round(e)) < 1e-12 || e >= 2.0) return 1.0;
  return std::ceil(1.0 + e) / (1.0 + e);
}

struct Segment {
  double lo;
  double hi;
  int anchor;  // -1: singular at lo, +1: singular at hi, 0: plain
  double k;
};

}  // namespace detail

/// Adaptive integration of f over iv to relative tolerance opts.rel_tol.
/// Throws NonIntegrable when an endpoint exponent is <= -1 or a value is not finite, and
/// BudgetExceeded when more than opts.max_panels panels would be needed.
inline QuadResult integrate(const Integrand& f, const Interval& iv, const QuadOptions& opts = {}) {
  if (!(opts.rel_tol > 1e-14 && opts.rel_tol < 1e-2)) {
    throw DomainError("integrate: tolerance must lie in (1e-14, 1e-2)");
  }
  if (f.left_exponent <= -1.0 || f.right_exponent <= -1.0) {
    throw NonIntegrable("integrate: endpoint singularity with exponent <= -1 (left " +
                        std::to_string(f.left_exponent) + ", right " +
                        std::to_string(f.right_exponent) + ")");
  }
  const double kl = detail::substitution_power(f.left_exponent);
  const double kr = detail::substitution_power(f.right_exponent);

  std::vector<double> cuts{iv.a()};
  for (double x : f.breakpoints) {
    if (x > iv.a() && x < iv.b() && x - cuts.back() > 1e-14 * iv.length()) cuts.push_back(x);
  }
  if (cuts.size() == 1 && kl != 1.0 && kr != 1.0) cuts.push_back(iv.midpoint());
  cuts.push_back(iv.b());

  std::vector<detail::Segment> segs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    detail::Segment s{cuts[i], cuts[i + 1], 0, 1.0};
    if (i == 0 && kl != 1.0) {
      s.anchor = -1;
      s.k = kl;
    } else if (i + 2 == cuts.size() && kr != 1.0) {
      s.anchor = 1;
      s.k = kr;
    }
    segs.push_back(s);
  }

  const double inflate = f.structural ? 1.0 : 10.0;
  auto transformed = [&](const detail::Segment& s) {
    return [&f, s, a = iv.a(), b = iv.b()](double u) {
      double x = u;
      double jac = 1.0;
      double d = 0.0;
      if (s.anchor != 0) {
        const double len = s.hi - s.lo;
        d = len * std::pow(u, s.k);
        x = s.anchor < 0 ? s.lo + d : s.hi - d;
        jac = len * s.k * std::pow(u, s.k - 1.0);
      }
      double v = 0.0;
      if (f.at) {
        const double dl = s.anchor < 0 && s.lo == f.home_a ? d : x - f.home_a;
        const double dr = s.anchor > 0 && s.hi == f.home_b ? d : f.home_b - x;
        v = f.at(x, dl, dr);
      } else {
        if (x <= a) x = std::nextafter(a, b);
        if (x >= b) x = std::nextafter(b, a);
        v = f.fn(x);
      }
      if (!std::isfinite(v)) {
        throw NonIntegrable("integrate: non-finite integrand value at x = " + std::to_string(x));
      }
      return v * jac;
    };
  };

  struct Panel {
    std::size_t seg;
    double lo;
    double hi;
    double value;
    double error;
  };
  auto by_error = [](const Panel& p, const Panel& q) { return p.error < q.error; };
  auto evaluate_panel = [&](std::size_t seg, double lo, double hi) {
    const auto& s = segs[seg];
    const auto est = detail::gauss_kronrod15(transformed(s), lo, hi);
    return Panel{seg, lo, hi, est.value, est.error * inflate};
  };

  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].anchor == 0) {
      heap.push_back(evaluate_panel(i, segs[i].lo, segs[i].hi));
    } else {
      heap.push_back(evaluate_panel(i, 0.0, 1.0));
    }
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&]() {
    double v = 0.0;
    double e = 0.0;
    for (const auto& p : heap) {
      v += p.value;
      e += p.error;
    }
    for (const auto& p : frozen) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  while (true) {
    auto [value, error] = totals();
    if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)) || heap.empty()) break;
    if (static_cast<int>(heap.size() + frozen.size()) + 1 > opts.max_panels) {
      throw BudgetExceeded("integrate: panel cap " + std::to_string(opts.max_panels) +
                           " reached (estimate " + std::to_string(value) + " +- " +
                           std::to_string(error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const double scale = segs[worst.seg].anchor == 0 ? segs[worst.seg].hi - segs[worst.seg].lo : 1.0;
    if (worst.hi - worst.lo < 1e-13 * scale || mid <= worst.lo || mid >= worst.hi) {
      frozen.push_back(worst);
      continue;
    }
    for (const Panel& child :
         {evaluate_panel(worst.seg, worst.lo, mid), evaluate_panel(worst.seg, mid, worst.hi)}) {
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
  }

  // fixed summation order: by segment, then by position
  std::vector<Panel> all = heap;
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) {
    return p.seg != q.seg ? p.seg < q.seg : p.lo < q.lo;
  });
  QuadResult out;
  out.value = 0.0;
  out.abs_error_estimate = 0.0;
  for (const auto& p : all) {
    out.value += p.value;
    out.abs_error_estimate += p.error;
  }
  out.subdivisions = static_cast<int>(all.size());
  return out;
}

inline QuadResult integrate(std::function<double(double)> fn, const Interval& iv,
                            const QuadOptions& opts = {}) {
  Integrand g;
  g.fn = std::move(fn);
  return integrate(g, iv, opts);
}

// ---------------------------------------------------------------------------------------------

enum class Anchor { left, right };

/// F(x) = int_a^x f (Anchor::left) or int_x^b f (Anchor::right) tabulated on a grid.
/// Values at the knots come from adaptive quadrature on each cell; between knots the table
/// uses cubic Hermite interpolation with the exact slope +-f. Cells touching a singular
/// endpoint are answered by direct quadrature instead.
class CumulativeTable {
 public:
  CumulativeTable(const Integrand& f, const Interval& iv, int n, const QuadOptions& opts,
                  Anchor anchor)
      : f_(f), iv_(iv), opts_(opts), anchor_(anchor) {
    if (n < 16) throw DomainError("cumulative: grid size must be >= 16");
    grid_.reserve(static_cast<std::size_t>(n) + 1 + f.breakpoints.size());
    for (int i = 0; i <= n; ++i) grid_.push_back(iv.a() + iv.length() * i / n);
    grid_.back() = iv.b();
    for (double x : f.breakpoints) {
      if (x > iv.a() && x < iv.b()) grid_.push_back(x);
    }
    std::sort(grid_.begin(), grid_.end());
    std::vector<double> merged;
    for (double x : grid_) {
      if (merged.empty() || x - merged.back() > 1e-12 * iv.length()) merged.push_back(x);
    }
    merged.back() = iv.b();
    grid_ = std::move(merged);

    singular_left_ = needs_direct(f.left_exponent);
    singular_right_ = needs_direct(f.right_exponent);

    const std::size_t m = grid_.size();
    values_.assign(m, 0.0);
    slopes_.assign(m, 0.0);
    std::vector<double> cell(m - 1, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const auto r = integrate(cell_integrand(i), Interval(grid_[i], grid_[i + 1]), opts_);
      cell[i] = r.value;
      error_ += r.abs_error_estimate;
    }
    const double sign = anchor_ == Anchor::left ? 1.0 : -1.0;
    if (anchor_ == Anchor::left) {
      for (std::size_t i = 1; i < m; ++i) values_[i] = values_[i - 1] + cell[i - 1];
    } else {
      for (std::size_t i = m - 1; i-- > 0;) values_[i] = values_[i + 1] + cell[i];
    }
    for (std::size_t i = 0; i < m; ++i) {
      const bool skip = (i == 0 && singular_left_) || (i + 1 == m && singular_right_);
      slopes_[i] = skip ? 0.0 : sign * f_.fn(grid_[i]);
    }
  }

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  int interpolation_order() const noexcept { return 3; }
  Anchor anchor() const noexcept { return anchor_; }
  const Interval& interval() const noexcept { return iv_; }
  double total() const noexcept { return anchor_ == Anchor::left ? values_.back() : values_.front(); }
  /// Sum of the per-cell quadrature error estimates.
  double error_estimate() const noexcept { return error_; }

  double operator()(double x) const {
    if (!iv_.contains(x)) throw DomainError("cumulative: query outside the interval");
    if (x == iv_.a()) return values_.front();
    if (x == iv_.b()) return values_.back();
    auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double x0 = grid_[i];
    const double x1 = grid_[i + 1];
    if (x == x0) return values_[i];
    const bool first = i == 0 && singular_left_;
    const bool last = i + 2 == grid_.size() && singular_right_;
    if (first || last) {
      // exact partial cell, integrated from the knot on the singular side
      if (first) {
        Integrand g = f_;
        g.right_exponent = 0.0;
        g.breakpoints.clear();
        const double part = integrate(g, Interval(x0, x), opts_).value;
        return anchor_ == Anchor::left ? values_[i] + part : values_[i] - part;
      }
      Integrand g = f_;
      g.left_exponent = 0.0;
      g.breakpoints.clear();
      const double part = integrate(g, Interval(x, x1), opts_).value;
      return anchor_ == Anchor::left ? values_[i + 1] - part : values_[i + 1] + part;
    }
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
  }

 private:
  static bool needs_direct(double e) { return std::abs(e - std::round(e)) > 1e-12 || e < 0.0; }

  Integrand cell_integrand(std::size_t i) const {
    Integrand g;
    g.fn = f_.fn;
    g.structural = f_.structural;
    if (i == 0) g.left_exponent = f_.left_exponent;
    if (i + 2 == grid_.size()) g.right_exponent = f_.right_exponent;
    return g;
  }

  Integrand f_;
  Interval iv_;
  QuadOptions opts_;
  Anchor anchor_;
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double error_ = 0.0;
  bool singular_left_ = false;
  bool singular_right_ = false;
};

inline CumulativeTable cumulative(const Integrand& f, const Interval& iv, int n,
                                  const QuadOptions& opts = {}, Anchor anchor = Anchor::left) {
  return CumulativeTable(f, iv, n, opts, anchor);
}

// ---------------------------------------------------------------------------------------------

struct SupResult {
  double arg = 0.0;
  double value = 0.0;
};

struct SupOptions {
  bool singular_left = false;
  bool singular_right = false;
  int audit_points = 1024;
  double x_tol = 1e-10;
};

/// Golden-section search for a maximum of g on [lo, hi]; returns (argmax, max).
template <typename G>
std::pair<double, double> golden_section_maximize(const G& g, double lo, double hi, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double gc = g(c);
  double gd = g(d);
  while (hi - lo > x_tol) {
    if (gc >= gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  return gc >= gd ? std::pair{c, gc} : std::pair{d, gd};
}

/// Supremum of g over (a, b): a uniform audit grid followed by golden-section refinement of
/// the best grid cell. Endpoints flagged singular are pulled in by 1e-12 (b - a).
inline SupResult sup_on_interval(const std::function<double(double)>& g, const Interval& iv,
                                 const SupOptions& opts = {}) {
  const double eps = 1e-12 * iv.length();
  const double lo = opts.singular_left ? iv.a() + eps : iv.a();
  const double hi = opts.singular_right ? iv.b() - eps : iv.b();
  auto checked = [&](double x) {
    const double v = g(x);
    if (std::isnan(v)) throw DomainError("sup_on_interval: evaluation failed at x = " + std::to_string(x));
    return v;
  };
  const int n = std::max(2, opts.audit_points);
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::size_t best = 0;
  double best_value = -detail::kInf;
  for (int i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    xs[static_cast<std::size_t>(i)] = x;
    const double v = checked(x);
    if (v > best_value) {
      best_value = v;
      best = static_cast<std::size_t>(i);
    }
  }
  SupResult out{xs[best], best_value};
  if (std::isinf(best_value)) return out;
  const double left = xs[best == 0 ? 0 : best - 1];
  const double right = xs[std::min(best + 1, xs.size() - 1)];
  const auto [x, v] = golden_section_maximize(checked, left, right, opts.x_tol);
  if (v > out.value) out = {x, v};
  return out;
}

}  // namespace hopial
