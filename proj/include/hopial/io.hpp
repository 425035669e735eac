#pragma once

// Serialization: function specs as JSON and as an inline mini-syntax, verification reports as
// JSON and CSV, ratio plots as SVG, and atomic file output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hopial/constants.hpp"
#include "hopial/errors.hpp"
#include "hopial/funcspace.hpp"
#include "hopial/opial.hpp"
#include "hopial/status.hpp"
#include "hopial/verify.hpp"

namespace hopial::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------------------------
// FunctionSpec <-> JSON. Every object carries a "variant" discriminator.

inline json to_json(const FunctionSpec& f) {
  return std::visit(
      detail::overloaded{
          [](const PowerLaw& n) { return json{{"variant", "power"}, {"c", n.c}, {"alpha", n.alpha}}; },
          [](const ShiftedPowerLaw& n) {
            return json{{"variant", "shifted_power"}, {"c", n.c}, {"alpha", n.alpha},
                        {"from_right", n.from_right}};
          },
          [](const Exponential& n) {
            return json{{"variant", "exponential"}, {"c", n.c}, {"beta", n.beta}};
          },
          [](const Constant& n) { return json{{"variant", "constant"}, {"c", n.c}}; },
          [](const PiecewiseLinear& n) {
            json knots = json::array();
            for (const auto& [x, y] : n.knots) knots.push_back(json::array({x, y}));
            return json{{"variant", "piecewise_linear"}, {"knots", knots}};
          },
          [](const Product& n) {
            json fs = json::array();
            for (const auto& g : n.factors) fs.push_back(to_json(g));
            return json{{"variant", "product"}, {"factors", fs}};
          },
          [](const Sum& n) {
            json ts = json::array();
            for (const auto& g : n.terms) ts.push_back(to_json(g));
            return json{{"variant", "sum"}, {"terms", ts}};
          },
          [](const RawFunction& n) -> json {
            throw InvalidSpec("raw function '" + n.label + "' has no JSON form");
          },
      },
      f.node());
}

namespace detail {

inline double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw UsageError(where + "." + key, "expected a number");
  }
  return j.at(key).get<double>();
}

}  // namespace detail

inline FunctionSpec function_from_json(const json& j, const std::string& where = "function") {
  if (!j.is_object() || !j.contains("variant") || !j.at("variant").is_string()) {
    throw UsageError(where, "expected an object with a \"variant\" string");
  }
  const std::string v = j.at("variant").get<std::string>();
  if (v == "constant") return FunctionSpec::constant(detail::number(j, "c", where));
  if (v == "power") return PowerLaw{detail::number(j, "c", where), detail::number(j, "alpha", where)};
  if (v == "shifted_power") {
    return ShiftedPowerLaw{detail::number(j, "c", where), detail::number(j, "alpha", where),
                           j.value("from_right", true)};
  }
  if (v == "exponential") {
    return Exponential{detail::number(j, "c", where), detail::number(j, "beta", where)};
  }
  if (v == "piecewise_linear") {
    if (!j.contains("knots") || !j.at("knots").is_array()) {
      throw UsageError(where + ".knots", "expected an array of [x, y] pairs");
    }
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : j.at("knots")) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
        throw UsageError(where + ".knots", "expected [x, y] number pairs");
      }
      knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    return FunctionSpec::piecewise_linear(std::move(knots));
  }
  if (v == "product" || v == "sum") {
    const char* key = v == "product" ? "factors" : "terms";
    if (!j.contains(key) || !j.at(key).is_array()) {
      throw UsageError(where + "." + key, "expected an array of functions");
    }
    std::vector<FunctionSpec> parts;
    int i = 0;
    for (const auto& part : j.at(key)) {
      parts.push_back(function_from_json(part, where + "." + key + "[" + std::to_string(i++) + "]"));
    }
    return v == "product" ? FunctionSpec::product(std::move(parts)) : FunctionSpec::sum(std::move(parts));
  }
  throw UsageError(where + ".variant", "unknown function variant '" + v + "'");
}

// ---------------------------------------------------------------------------------------------
// Mini-syntax: const:C, pow:ALPHA, pow:C,ALPHA, rpow:ALPHA, rpow:C,ALPHA, exp:BETA, exp:C,BETA,
// pwl:x0,y0;x1,y1;...  A string starting with '{' is read as JSON.

namespace detail {

inline std::vector<double> numbers(const std::string& s, char sep, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(field, "'" + item + "' is not a number");
    }
  }
  return out;
}

}  // namespace detail

inline FunctionSpec parse_function(const std::string& text, const std::string& field) {
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw UsageError(field, std::string("invalid JSON: ") + e.what());
    }
    return function_from_json(j, field);
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(field, "expected KIND:ARGS, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (kind == "pwl") {
    std::vector<std::pair<double, double>> knots;
    std::stringstream ss(args);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
      const auto xy = detail::numbers(pair, ',', field);
      if (xy.size() != 2) throw UsageError(field, "pwl knots are x,y pairs separated by ';'");
      knots.emplace_back(xy[0], xy[1]);
    }
    return FunctionSpec::piecewise_linear(std::move(knots));
  }
  const auto v = detail::numbers(args, ',', field);
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (v.size() < lo || v.size() > hi) throw UsageError(field, "wrong number of arguments for " + kind);
  };
  if (kind == "const") {
    arity(1, 1);
    return FunctionSpec::constant(v[0]);
  }
  if (kind == "pow") {
    arity(1, 2);
    return v.size() == 1 ? FunctionSpec::power(1.0, v[0]) : FunctionSpec::power(v[0], v[1]);
  }
  if (kind == "rpow") {
    arity(1, 2);
    return v.size() == 1 ? FunctionSpec::power_from_right(1.0, v[0])
                         : FunctionSpec::power_from_right(v[0], v[1]);
  }
  if (kind == "exp") {
    arity(1, 2);
    return v.size() == 1 ? FunctionSpec::exponential(1.0, v[0]) : FunctionSpec::exponential(v[0], v[1]);
  }
  throw UsageError(field, "unknown function kind '" + kind + "'");
}

inline Interval parse_interval(const std::string& text, const std::string& field = "interval") {
  const auto v = detail::numbers(text, ',', field);
  if (v.size() != 2) throw UsageError(field, "expected a,b");
  try {
    return Interval(v[0], v[1]);
  } catch (const DomainError& e) {
    throw UsageError(field, e.what());
  }
}

// ---------------------------------------------------------------------------------------------
// Reports

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const ConstantBreakdown& c) {
  json factors = json::array();
  for (const auto& f : c.factors) factors.push_back({{"name", f.name}, {"value", finite_or_null(f.value)}});
  json out{{"value", finite_or_null(c.value)}, {"factors", factors}, {"mode", to_string(c.mode)},
           {"error_estimate", finite_or_null(c.error_estimate)}};
  if (!c.rhs_weight.empty()) out["rhs_weight"] = c.rhs_weight;
  return out;
}

inline json instance_json(double lhs, double rhs, double constant, double ratio, Status status,
                          double budget, const std::string& reason) {
  json out{{"lhs", finite_or_null(lhs)},       {"rhs", finite_or_null(rhs)},
           {"constant", finite_or_null(constant)}, {"ratio", finite_or_null(ratio)},
           {"status", to_string(status)},       {"budget", finite_or_null(budget)}};
  if (!reason.empty()) out["reason"] = reason;
  return out;
}

inline json to_json(const VerificationReport& r) {
  json out = instance_json(r.lhs, r.rhs, r.constant, r.ratio, r.status, r.budget, r.reason);
  try {
    out["f"] = to_json(r.instance.f);
  } catch (const InvalidSpec&) {
  }
  return out;
}

inline json to_json(const VerificationRecord& r) {
  return instance_json(r.lhs, r.rhs, r.constant, r.ratio, r.status, r.budget, r.note);
}

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct CsvRow {
  std::string theorem;
  std::string mode;
  double lhs, rhs, constant, ratio;
  Status status;
  double budget;
};

inline std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "theorem,mode,lhs,rhs,constant,ratio,status,budget\n";
  for (const auto& r : rows) {
    out += r.theorem + "," + r.mode + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
           format_double(r.constant) + "," + format_double(r.ratio) + "," + to_string(r.status) +
           "," + format_double(r.budget) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// SVG ratio plot

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, ratio); non-finite ratios skipped
};

inline std::string svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                            const std::string& x_label) {
  const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double xmin = hopial::detail::kInf, xmax = -hopial::detail::kInf, ymax = 1.0;
  std::size_t count = 0;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
      ++count;
    }
  }
  if (count == 0) throw DomainError("svg_plot: nothing to plot");
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  ymax *= 1.05;
  auto fx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto fy = [&](double y) { return H - B - y / ymax * (H - T - B); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  auto esc = [](std::string s) {
    std::string out;
    for (char c : s) {
      if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else if (c == '&') out += "&amp;";
      else out += c;
    }
    return out;
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(W) + "\" height=\"" +
         num(H) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(W) + "\" height=\"" + num(H) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + esc(title) + "</text>\n";
  svg += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) + "\" y2=\"" + num(H - B) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" + num(H - B) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(L) + "\" y1=\"" + num(fy(1.0)) + "\" x2=\"" + num(W - R) + "\" y2=\"" +
         num(fy(1.0)) + "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  svg += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         esc(x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + num((T + H - B) / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         num((T + H - B) / 2) + ")\">ratio</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = ymax * i / 4.0;
    svg += "<text x=\"" + num(L - 6) + "\" y=\"" + num(fy(y) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
           num(y) + "</text>\n";
    const double x = xmin + (xmax - xmin) * i / 4.0;
    svg += "<text x=\"" + num(fx(x)) + "\" y=\"" + num(H - B + 16) + "\" text-anchor=\"middle\" font-size=\"11\">" +
           num(x) + "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 4];
    std::string pts;
    double best_x = 0, best_y = -hopial::detail::kInf;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(y)) continue;
      if (!pts.empty()) pts += " ";
      pts += num(fx(x)) + "," + num(fy(y));
      if (y > best_y) {
        best_y = y;
        best_x = x;
      }
    }
    if (pts.empty()) continue;
    if (pts.find(' ') == std::string::npos) {
      svg += "<circle cx=\"" + num(fx(best_x)) + "\" cy=\"" + num(fy(best_y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    } else {
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
    }
    svg += "<circle cx=\"" + num(fx(best_x)) + "\" cy=\"" + num(fy(best_y)) + "\" r=\"5\" fill=\"none\" stroke=\"" +
           color + "\" stroke-width=\"2\"><title>max ratio " + num(best_y) + "</title></circle>\n";
    svg += "<text x=\"" + num(W - R - 4) + "\" y=\"" + num(T + 14 + 14.0 * static_cast<double>(k)) +
           "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + color + "\">" + esc(s.label) + " (max " +
           num(best_y) + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// ---------------------------------------------------------------------------------------------

/// Writes content to path through a temporary file in the same directory and a rename.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error("cannot create the directory for " + path + ": " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

}  // namespace hopial::io
