#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "tsn/bench.hpp"

// Declarative scenario files: one [name] block per simulation cell.
//
//   [right_tau10_alpha4]
//   direction = right        # left | right | double
//   tau = 0.1
//   alpha0 = 4               # xi0 / omega0 optional, default 0 / 1
//   n = 500
//   reps = 200
//   methods = grid-mom, mwm
//   grid_a = 5               # optional, default 5
//   grid_points = 401        # optional, default 401
//   seed = 42
//   multistart = 1           # optional, MLE starts

namespace tsn {

struct scenario_parse_error : error {
  using error::error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_number(const std::string& value, const std::string& field,
                           int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw scenario_parse_error("line " + std::to_string(line) +
                               ": field '" + field +
                               "' expects a number, got '" + value + "'");
  }
}

}  // namespace detail

inline std::vector<ScenarioSpec> parse_scenarios(std::istream& in) {
  std::vector<ScenarioSpec> out;
  std::vector<std::string> seen_keys;
  std::string line;
  int lineno = 0;
  bool in_block = false;
  int block_line = 0;

  auto finish_block = [&]() {
    if (!in_block) return;
    auto require = [&](const char* key) {
      for (const auto& k : seen_keys)
        if (k == key) return;
      throw scenario_parse_error("scenario '" + out.back().name +
                                 "' (line " + std::to_string(block_line) +
                                 "): missing required field '" + key + "'");
    };
    require("direction");
    require("tau");
    require("alpha0");
    require("n");
    require("reps");
    require("methods");
    require("seed");
    out.back().validate();
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw scenario_parse_error("line " + std::to_string(lineno) +
                                   ": unterminated scenario header");
      finish_block();
      ScenarioSpec spec;
      spec.name = detail::trim(line.substr(1, line.size() - 2));
      if (spec.name.empty())
        throw scenario_parse_error("line " + std::to_string(lineno) +
                                   ": scenario name must be nonempty");
      spec.methods.clear();
      out.push_back(std::move(spec));
      seen_keys.clear();
      in_block = true;
      block_line = lineno;
      continue;
    }

    if (!in_block)
      throw scenario_parse_error("line " + std::to_string(lineno) +
                                 ": expected a [scenario] header first");
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw scenario_parse_error("line " + std::to_string(lineno) +
                                 ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    ScenarioSpec& spec = out.back();
    seen_keys.push_back(key);

    if (key == "direction") {
      if (value == "left")
        spec.direction = TruncationDirection::Left;
      else if (value == "right")
        spec.direction = TruncationDirection::Right;
      else if (value == "double")
        spec.direction = TruncationDirection::Double;
      else
        throw scenario_parse_error(
            "line " + std::to_string(lineno) + ": field 'direction' must be " +
            "left, right, or double, got '" + value + "'");
    } else if (key == "tau") {
      spec.tau = detail::parse_number(value, key, lineno);
    } else if (key == "xi0") {
      spec.truth.xi = detail::parse_number(value, key, lineno);
    } else if (key == "omega0") {
      spec.truth.omega = detail::parse_number(value, key, lineno);
    } else if (key == "alpha0") {
      spec.truth.alpha = detail::parse_number(value, key, lineno);
    } else if (key == "n") {
      spec.n = std::size_t(detail::parse_number(value, key, lineno));
    } else if (key == "reps") {
      spec.replications = int(detail::parse_number(value, key, lineno));
    } else if (key == "seed") {
      spec.base_seed = std::uint64_t(detail::parse_number(value, key, lineno));
    } else if (key == "grid_a") {
      spec.grid.half_width = detail::parse_number(value, key, lineno);
    } else if (key == "grid_points") {
      spec.grid.points = int(detail::parse_number(value, key, lineno));
    } else if (key == "multistart") {
      spec.mle_options.multistart_count =
          int(detail::parse_number(value, key, lineno));
    } else if (key == "methods") {
      std::stringstream ss(value);
      std::string token;
      while (std::getline(ss, token, ',')) {
        token = detail::trim(token);
        if (token.empty()) continue;
        const auto m = method_from_name(token);
        if (!m)
          throw scenario_parse_error("line " + std::to_string(lineno) +
                                     ": unknown method '" + token +
                                     "' in field 'methods'");
        spec.methods.push_back(*m);
      }
      if (spec.methods.empty())
        throw scenario_parse_error("line " + std::to_string(lineno) +
                                   ": field 'methods' must name a method");
    } else {
      throw scenario_parse_error("line " + std::to_string(lineno) +
                                 ": unknown field '" + key + "'");
    }
  }
  finish_block();
  if (out.empty())
    throw scenario_parse_error("scenario file contains no scenarios");
  return out;
}

inline std::vector<ScenarioSpec> parse_scenarios(const std::string& text) {
  std::istringstream in(text);
  return parse_scenarios(in);
}

}  // namespace tsn
