#pragma once

#include <string>

#include "hopial/errors.hpp"

namespace hopial {

/// as_printed evaluates a formula exactly as typeset; as_derived evaluates what the
/// supporting argument actually yields where the two differ.
enum class Mode { as_printed, as_derived };

inline std::string to_string(Mode m) { return m == Mode::as_printed ? "as_printed" : "as_derived"; }

inline Mode mode_from_string(const std::string& s) {
  if (s == "as_printed" || s == "printed") return Mode::as_printed;
  if (s == "as_derived" || s == "derived") return Mode::as_derived;
  throw UsageError("mode", "expected as_printed or as_derived, got '" + s + "'");
}

inline Mode other(Mode m) { return m == Mode::as_printed ? Mode::as_derived : Mode::as_printed; }

}  // namespace hopial
