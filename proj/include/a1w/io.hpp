#pragma once

// JSON forms of step weights, interval sets, and the per-weight reports.
//
//   weight:        {"breakpoints": ["0", "1/2", "1"], "values": ["2", "1"]}
//   interval set:  {"host": ["0", "1"], "components": [["0.1", "0.3"], ...]}
//
// Rationals are strings holding a decimal or "p/q" literal.

#include <a1w/a1.hpp>
#include <a1w/covering.hpp>
#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace a1w {

using Json = nlohmann::json;

namespace detail {

inline Rational rational_field(const Json& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": rationals must be JSON strings");
  return parse_rational(j.get<std::string>());
}

inline std::vector<Rational> rational_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + " must be an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(rational_field(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace detail

inline StepWeight weight_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
    throw std::invalid_argument("weight JSON needs \"breakpoints\" and \"values\"");
  return StepWeight(detail::rational_array(j.at("breakpoints"), "breakpoints"),
                    detail::rational_array(j.at("values"), "values"));
}

inline Json to_json(const StepWeight& w) {
  Json j;
  j["breakpoints"] = Json::array();
  j["values"] = Json::array();
  for (auto& t : w.breakpoints()) j["breakpoints"].push_back(to_string(t));
  for (auto& v : w.values()) j["values"].push_back(to_string(v));
  return j;
}

inline StepWeight load_weight(const std::string& path) {
  return weight_from_json(detail::read_json_file(path));
}

inline IntervalSet interval_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("host") || !j.contains("components"))
    throw std::invalid_argument("interval-set JSON needs \"host\" and \"components\"");
  auto host = detail::rational_array(j.at("host"), "host");
  if (host.size() != 2) throw std::invalid_argument("host must be [lo, hi]");
  const Json& parts = j.at("components");
  if (!parts.is_array()) throw std::invalid_argument("components must be an array");
  std::vector<Segment> components;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    auto ends = detail::rational_array(parts[k], "components[" + std::to_string(k) + "]");
    if (ends.size() != 2) throw std::invalid_argument("each component must be [lo, hi]");
    components.push_back({ends[0], ends[1]});
  }
  return IntervalSet(Interval(host[0], host[1]), std::move(components));
}

inline IntervalSet load_interval_set(const std::string& path) {
  return interval_set_from_json(detail::read_json_file(path));
}

inline Json to_json(const IntervalSet& e) {
  Json j;
  j["host"] = {to_string(e.host().lo), to_string(e.host().hi)};
  j["components"] = Json::array();
  for (auto& c : e.components()) j["components"].push_back({to_string(c.lo), to_string(c.hi)});
  return j;
}

inline Json to_json(const A1Report& r) {
  return {{"constant", to_string(r.constant)},
          {"constant_approx", to_double(r.constant)},
          {"witness", {to_string(r.witness.lo), to_string(r.witness.hi)}},
          {"witness_cell", {r.witness_cell.first, r.witness_cell.second}}};
}

inline Json to_json(const Theorem1Report& r) {
  return {{"original_constant", to_string(r.original_constant)},
          {"rearranged_constant", to_string(r.rearranged_constant)},
          {"anchored_constant", to_string(r.anchored_constant)},
          {"pass", r.pass}};
}

inline Json to_json(const CoverResult& r) {
  Json j;
  j["epsilon"] = to_string(r.epsilon);
  j["intervals"] = Json::array();
  for (auto& s : r.intervals) j["intervals"].push_back({to_string(s.lo), to_string(s.hi)});
  return j;
}

}  // namespace a1w
