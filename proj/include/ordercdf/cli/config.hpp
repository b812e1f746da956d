#pragma once

// JSON run configuration.
//
//   {
//     "space":   {"kind": "finite", "labels": ["a", "b", "c"]}
//              | {"kind": "int_range", "lo": 0, "hi": 10}
//              | {"kind": "real_interval", "lo": 0, "hi": 1,
//                 "include_lo": true, "include_hi": true}
//              | {"kind": "lex", "outer": {"labels": ["0", "1"]},
//                 "fibers": [{"lo": 0, "hi": 1}, ...]},
//     "measure": {"atoms":    [{"at": "b", "mass": 0.3}, ...],
//                 "segments": [{"interval": "[0,0.4]", "mass": 0.5}, ...]},
//     "command": "eval-cdf", "params": {"at": "b"},
//     "seed": 42, "output": "samples.txt"
//   }
//
// Points are strings in the space's element syntax ("b", "0.25", "(1,0.25)");
// plain JSON numbers are accepted for numeric spaces.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "ordercdf/errors.hpp"
#include "ordercdf/instances.hpp"
#include "ordercdf/interval_syntax.hpp"

namespace ordercdf::cli {

using json = nlohmann::json;

struct RunConfig {
  AnySpec spec;
  std::string command{};  // empty: chosen on the command line
  json params = json::object();
  std::uint64_t seed = 0;
  std::optional<std::string> output{};
};

namespace detail {

inline const json& require(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(field, "missing required key");
  return obj.at(key);
}

template <class T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field, "has the wrong type (got " + std::string(j.type_name()) + ")");
  }
}

inline bool flag_or(const json& obj, const char* key, bool fallback, const std::string& field) {
  if (!obj.contains(key)) return fallback;
  return get_as<bool>(obj.at(key), field + "." + key);
}

inline ChunkBounds parse_bounds(const json& j, const std::string& field) {
  ChunkBounds b;
  b.lo = get_as<double>(require(j, "lo", field + ".lo"), field + ".lo");
  b.hi = get_as<double>(require(j, "hi", field + ".hi"), field + ".hi");
  b.include_lo = flag_or(j, "include_lo", true, field);
  b.include_hi = flag_or(j, "include_hi", true, field);
  return b;
}

inline std::vector<std::string> parse_labels(const json& j, const std::string& field) {
  return get_as<std::vector<std::string>>(require(j, "labels", field + ".labels"), field + ".labels");
}

// Element text from a JSON string or number.
inline std::string point_text(const json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return text::format_real(j.get<double>());
  throw ConfigError(field, "expected a point in element syntax");
}

template <OrderedSpace S>
MeasureSpec<S> parse_measure(const S& space, const json& m) {
  using P = typename S::point_type;
  if (!m.is_object()) throw ConfigError("measure", "must be an object");
  std::vector<Atom<P>> atoms;
  std::vector<DensitySegment<P>> segments;
  if (m.contains("atoms")) {
    const auto& arr = m.at("atoms");
    if (!arr.is_array()) throw ConfigError("measure.atoms", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto field = "measure.atoms[" + std::to_string(i) + "]";
      const auto at_text = point_text(require(arr[i], "at", field + ".at"), field + ".at");
      P at;
      try {
        at = space.parse(at_text);
      } catch (const std::exception& e) {
        throw ConfigError(field + ".at", "'" + at_text + "' is not an element of the space: " + e.what());
      }
      atoms.push_back({at, get_as<double>(require(arr[i], "mass", field + ".mass"), field + ".mass")});
    }
  }
  if (m.contains("segments")) {
    const auto& arr = m.at("segments");
    if (!arr.is_array()) throw ConfigError("measure.segments", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto field = "measure.segments[" + std::to_string(i) + "]";
      const auto text =
          get_as<std::string>(require(arr[i], "interval", field + ".interval"), field + ".interval");
      IntervalOf<S> iv;
      try {
        iv = parse_interval(space, text);
      } catch (const std::exception& e) {
        throw ConfigError(field + ".interval", e.what());
      }
      segments.push_back({iv, get_as<double>(require(arr[i], "mass", field + ".mass"), field + ".mass")});
    }
  }
  return MeasureSpec<S>(space, std::move(atoms), std::move(segments));
}

inline json bounds_json(const ChunkBounds& b) {
  return {{"lo", b.lo}, {"hi", b.hi}, {"include_lo", b.include_lo}, {"include_hi", b.include_hi}};
}

inline json space_json(const FiniteSpace& s) { return {{"kind", "finite"}, {"labels", s.labels()}}; }
inline json space_json(const IntegerRange& s) {
  return {{"kind", "int_range"}, {"lo", s.lo()}, {"hi", s.hi()}};
}
inline json space_json(const RealInterval& s) {
  json j = bounds_json(s.bounds());
  j["kind"] = "real_interval";
  return j;
}
inline json space_json(const LexProduct& s) {
  json fibers = json::array();
  for (const auto& f : s.fibers()) fibers.push_back(bounds_json(f));
  return {{"kind", "lex"}, {"outer", {{"labels", s.outer().labels()}}}, {"fibers", fibers}};
}

}  // namespace detail

// The space and measure blocks of a config.
inline AnySpec parse_spec(const json& root) {
  using namespace detail;
  if (!root.is_object()) throw ConfigError("config", "top level must be a JSON object");
  const auto& sp = require(root, "space", "space");
  const auto& m = require(root, "measure", "measure");
  const auto kind = get_as<std::string>(require(sp, "kind", "space.kind"), "space.kind");
  if (kind == "finite") return parse_measure(FiniteSpace(parse_labels(sp, "space")), m);
  if (kind == "int_range") {
    const auto lo = get_as<long long>(require(sp, "lo", "space.lo"), "space.lo");
    const auto hi = get_as<long long>(require(sp, "hi", "space.hi"), "space.hi");
    return parse_measure(IntegerRange(lo, hi), m);
  }
  if (kind == "real_interval") {
    const auto b = parse_bounds(sp, "space");
    return parse_measure(RealInterval(b.lo, b.hi, b.include_lo, b.include_hi), m);
  }
  if (kind == "lex") {
    FiniteSpace outer(parse_labels(require(sp, "outer", "space.outer"), "space.outer"));
    const auto& fj = require(sp, "fibers", "space.fibers");
    if (!fj.is_array()) throw ConfigError("space.fibers", "must be an array");
    std::vector<ChunkBounds> fibers;
    for (std::size_t i = 0; i < fj.size(); ++i) {
      fibers.push_back(parse_bounds(fj[i], "space.fibers[" + std::to_string(i) + "]"));
    }
    return parse_measure(LexProduct(std::move(outer), std::move(fibers)), m);
  }
  throw ConfigError("space.kind", "unknown kind '" + kind + "' (finite, int_range, real_interval, lex)");
}

inline RunConfig parse_config(const json& root) {
  RunConfig c{parse_spec(root)};
  if (root.contains("command")) c.command = detail::get_as<std::string>(root.at("command"), "command");
  if (root.contains("params")) {
    c.params = root.at("params");
    if (!c.params.is_object()) throw ConfigError("params", "must be an object");
  }
  if (root.contains("seed")) c.seed = detail::get_as<std::uint64_t>(root.at("seed"), "seed");
  if (root.contains("output")) c.output = detail::get_as<std::string>(root.at("output"), "output");
  return c;
}

inline RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(root);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// Canonical JSON of the space and measure: sorted atoms, canonical segment
// intervals, shortest round-trip numbers.
inline json spec_json(const AnySpec& spec) {
  return std::visit(
      [](const auto& ms) {
        const auto& sp = ms.space();
        json atoms = json::array(), segments = json::array();
        for (const auto& a : ms.atoms()) atoms.push_back({{"at", sp.format(a.at)}, {"mass", a.mass}});
        for (const auto& s : ms.segments()) {
          segments.push_back({{"interval", format_interval(sp, s.interval)}, {"mass", s.mass}});
        }
        return json{{"space", detail::space_json(sp)},
                    {"measure", {{"atoms", atoms}, {"segments", segments}}}};
      },
      spec);
}

inline json to_json(const RunConfig& c) {
  json j = spec_json(c.spec);
  if (!c.command.empty()) j["command"] = c.command;
  j["params"] = c.params;
  j["seed"] = c.seed;
  if (c.output) j["output"] = *c.output;
  return j;
}

inline bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.spec == b.spec && a.command == b.command && a.params == b.params && a.seed == b.seed &&
         a.output == b.output;
}

// 64-bit FNV-1a of the canonical spec JSON, for sample metadata.
inline std::string spec_hash(const AnySpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : spec_json(spec).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex << h;
  return ss.str();
}

}  // namespace ordercdf::cli
