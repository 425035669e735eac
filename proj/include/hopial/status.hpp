#pragma once

#include <cmath>
#include <string>

#include "hopial/errors.hpp"

namespace hopial {

enum class Status { holds, violated, inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "Holds";
    case Status::violated:
      return "Violated";
    case Status::inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

inline Status status_from_string(const std::string& s) {
  if (s == "Holds") return Status::holds;
  if (s == "Violated") return Status::violated;
  if (s == "Inconclusive") return Status::inconclusive;
  throw UsageError("status", "unknown status '" + s + "'");
}

/// Smallest relative error budget ever assigned to a comparison.
inline constexpr double kBudgetFloor = 1e-10;

/// Holds if ratio <= 1 + budget, Violated if ratio > 1 + 10 budget, Inconclusive in between.
inline Status classify(double ratio, double budget) {
  if (std::isnan(ratio)) return Status::inconclusive;
  if (ratio <= 1.0 + budget) return Status::holds;
  if (ratio > 1.0 + 10.0 * budget) return Status::violated;
  return Status::inconclusive;
}

}  // namespace hopial
