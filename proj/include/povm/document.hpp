#pragma once

// JSON document format:
//
//   {
//     "schema_version": "1",
//     "states": { "psi": { "r": [0, 0, 1] } },
//     "povm": { "elements": [ { "a": 1, "v": [0, 0, 1] }, ... ] }
//   }
//
// Both "states" and "povm" are optional. Unknown keys are rejected. Key order
// of "states" is preserved.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "povm/bloch.hpp"
#include "povm/error.hpp"

namespace povm {

inline constexpr std::string_view kSchemaVersion = "1";

struct NamedState {
  std::string name;
  BlochState state;

  bool operator==(const NamedState&) const = default;
};

struct Document {
  std::string schema_version{kSchemaVersion};
  std::optional<std::vector<NamedState>> states;
  std::optional<PovmSet> povm;

  const BlochState* find_state(std::string_view name) const {
    if (!states) return nullptr;
    for (const auto& s : *states) {
      if (s.name == name) return &s.state;
    }
    return nullptr;
  }

  bool operator==(const Document&) const = default;
};

/// Malformed JSON, with the 1-based position of the offending character.
class DocumentParseError : public Error {
 public:
  DocumentParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

using ojson = nlohmann::ordered_json;

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

inline void require_keys(const ojson& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed,
                         std::initializer_list<std::string_view> required) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto k : allowed) known = known || key == k;
    if (!known) schema_fail(path, "unknown field \"" + key + "\"");
  }
  for (auto k : required) {
    if (!obj.contains(k)) schema_fail(path, "missing field \"" + std::string(k) + "\"");
  }
}

inline double read_number(const ojson& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

inline Vec3 read_vec3(const ojson& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) schema_fail(path, "expected an array of 3 numbers");
  const double x = read_number(j[0], path + "[0]");
  const double y = read_number(j[1], path + "[1]");
  const double z = read_number(j[2], path + "[2]");
  try {
    return {x, y, z};
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, path + ": " + e.what());
  }
}

inline ojson write_vec3(const Vec3& v) { return ojson::array({v.x(), v.y(), v.z()}); }

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based index of the last character read.
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Throws DocumentParseError, or Error with SchemaError / ValidationError.
inline Document parse_document(std::string_view text) {
  using detail::ojson;
  ojson root;
  try {
    root = ojson::parse(text.begin(), text.end());
  } catch (const ojson::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte);
    throw DocumentParseError(line, col, e.what());
  } catch (const ojson::exception& e) {
    // Numbers outside the double range.
    throw Error(ErrorCode::ParseError, e.what());
  }

  detail::require_keys(root, "$", {"schema_version", "states", "povm"}, {"schema_version"});
  if (!root["schema_version"].is_string()) detail::schema_fail("$.schema_version", "expected a string");
  Document doc;
  doc.schema_version = root["schema_version"].get<std::string>();
  if (doc.schema_version != kSchemaVersion) {
    detail::schema_fail("$.schema_version", "unsupported version \"" + doc.schema_version + "\"");
  }

  if (root.contains("states")) {
    const ojson& states = root["states"];
    if (!states.is_object()) detail::schema_fail("$.states", "expected an object");
    doc.states.emplace();
    for (const auto& [name, value] : states.items()) {
      const std::string path = "$.states." + name;
      detail::require_keys(value, path, {"r"}, {"r"});
      const Vec3 r = detail::read_vec3(value["r"], path + ".r");
      try {
        doc.states->push_back({name, BlochState(r)});
      } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, path + ": " + e.what());
      }
    }
  }

  if (root.contains("povm")) {
    const ojson& povm = root["povm"];
    detail::require_keys(povm, "$.povm", {"elements"}, {"elements"});
    const ojson& elements = povm["elements"];
    if (!elements.is_array() || elements.empty()) {
      detail::schema_fail("$.povm.elements", "expected a non-empty array");
    }
    std::vector<PovmElement> parsed;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const std::string path = "$.povm.elements[" + std::to_string(i) + "]";
      detail::require_keys(elements[i], path, {"a", "v"}, {"a", "v"});
      PovmElement e{detail::read_number(elements[i]["a"], path + ".a"),
                    detail::read_vec3(elements[i]["v"], path + ".v")};
      const ElementReport rep = validate_element(e);
      if (!rep.positive) throw Error(ErrorCode::ValidationError, path + ": " + rep.reason);
      parsed.push_back(e);
    }
    doc.povm.emplace(std::move(parsed));
  }
  return doc;
}

inline nlohmann::ordered_json povm_to_json(const PovmSet& set) {
  detail::ojson elements = detail::ojson::array();
  for (const auto& e : set) elements.push_back({{"a", e.a}, {"v", detail::write_vec3(e.v)}});
  return {{"elements", std::move(elements)}};
}

/// Canonical form: two-space indentation, trailing newline, shortest
/// round-trip number formatting.
inline std::string serialize_document(const Document& doc) {
  detail::ojson root;
  root["schema_version"] = doc.schema_version;
  if (doc.states) {
    detail::ojson states = detail::ojson::object();
    for (const auto& s : *doc.states) states[s.name] = {{"r", detail::write_vec3(s.state.r())}};
    root["states"] = std::move(states);
  }
  if (doc.povm) root["povm"] = povm_to_json(*doc.povm);
  return root.dump(2) + "\n";
}

}  // namespace povm
