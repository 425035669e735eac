#pragma once

// Derivative-free maximization over a small parameter box.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"

namespace hopial {

struct SharpnessResult {
  double best_ratio = 0.0;
  std::vector<double> best_params;
  int evaluations = 0;
  std::vector<std::pair<std::vector<double>, double>> history;
};

/// Nelder-Mead ascent on objective over the box [lo, hi] (clamped), at most max_evals
/// evaluations. Non-finite values are treated as -inf. With no parameters, evaluates once.
inline SharpnessResult maximize_in_box(const std::function<double(const std::vector<double>&)>& objective,
                                       const std::vector<double>& lo, const std::vector<double>& hi,
                                       int max_evals) {
  if (lo.size() != hi.size() || lo.size() > 3) throw DomainError("sharpness: at most 3 parameters");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw DomainError("sharpness: empty parameter box");
  }
  SharpnessResult res;
  const std::size_t n = lo.size();
  auto clamp = [&](std::vector<double> x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
  };
  auto eval = [&](const std::vector<double>& x) {
    double v = -detail::kInf;
    try {
      v = objective(x);
    } catch (const Error&) {
    }
    if (!std::isfinite(v)) v = -detail::kInf;
    ++res.evaluations;
    res.history.emplace_back(x, v);
    if (res.best_params.empty() || v > res.best_ratio) {
      res.best_ratio = v;
      res.best_params = x;
    }
    return v;
  };
  if (n == 0) {
    eval({});
    return res;
  }
  std::vector<std::vector<double>> simplex;
  std::vector<double> center(n);
  for (std::size_t i = 0; i < n; ++i) center[i] = 0.5 * (lo[i] + hi[i]);
  simplex.push_back(center);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = center;
    v[i] += 0.25 * (hi[i] - lo[i]);
    simplex.push_back(clamp(v));
  }
  std::vector<double> val;
  for (const auto& v : simplex) val.push_back(eval(v));
  while (res.evaluations < max_evals) {
    std::vector<std::size_t> order(simplex.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] > val[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      spread = std::max(spread, std::abs(simplex[best][i] - simplex[worst][i]) / (hi[i] - lo[i]));
    }
    if (spread < 1e-10) break;
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) c[i] += simplex[k][i] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = c[i] + t * (simplex[worst][i] - c[i]);
      return clamp(x);
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr > val[best]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe > fr) {
        simplex[worst] = xe;
        val[worst] = fe;
      } else {
        simplex[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr > val[second]) {
      simplex[worst] = xr;
      val[worst] = fr;
    } else {
      const auto xc = along(0.5);
      const double fc = eval(xc);
      if (fc > val[worst]) {
        simplex[worst] = xc;
        val[worst] = fc;
      } else {
        for (std::size_t k = 0; k < simplex.size(); ++k) {
          if (k == best) continue;
          for (std::size_t i = 0; i < n; ++i) {
            simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
          }
          val[k] = eval(simplex[k]);
        }
      }
    }
  }
  return res;
}

}  // namespace hopial
