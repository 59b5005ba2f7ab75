#include "json_util.hpp"

namespace egg::detail {

json parse_json(std::string_view text, const std::string& where) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSyntax, where + ": " + e.what());
  }
}

void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchema, path + ": " + what);
}

ObjectReader::ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) schema_error(path_, "expected an object");
}

const json& ObjectReader::required(std::string_view key) {
  auto it = j_.find(key);
  if (it == j_.end()) schema_error(path(key), "missing required field");
  seen_.emplace(key);
  return *it;
}

const json* ObjectReader::optional(std::string_view key) {
  auto it = j_.find(key);
  if (it == j_.end()) return nullptr;
  seen_.emplace(key);
  return &*it;
}

std::string ObjectReader::string(std::string_view key, bool allow_empty) {
  const auto& v = required(key);
  if (!v.is_string()) schema_error(path(key), "expected a string");
  auto s = v.get<std::string>();
  if (!allow_empty && s.empty()) schema_error(path(key), "must not be empty");
  return s;
}

std::optional<std::string> ObjectReader::optional_string(std::string_view key) {
  const auto* v = optional(key);
  if (!v) return std::nullopt;
  if (!v->is_string()) schema_error(path(key), "expected a string");
  return v->get<std::string>();
}

std::int64_t ObjectReader::integer(std::string_view key) {
  const auto& v = required(key);
  if (!v.is_number_integer()) schema_error(path(key), "expected an integer");
  return v.get<std::int64_t>();
}

NodeId ObjectReader::id(std::string_view key) { return read_id(required(key), path(key)); }

Position3 ObjectReader::position(std::string_view key) { return read_position(required(key), path(key)); }

TimeInterval ObjectReader::interval(std::string_view key) {
  ObjectReader r(required(key), path(key));
  TimeInterval t{{r.integer("start")}, {r.integer("end")}};
  r.finish();
  return t;
}

void ObjectReader::finish() const {
  for (const auto& [k, v] : j_.items())
    if (!seen_.contains(k)) schema_error(path(k), "unknown field");
}

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

Position3 read_position(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) schema_error(path, "expected [x, y, z]");
  for (const auto& c : j)
    if (!c.is_number()) schema_error(path, "position components must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

NodeId read_id(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a node id string");
  auto s = j.get<std::string>();
  if (!NodeId::is_well_formed(s)) schema_error(path, "malformed node id '" + s + "'");
  return NodeId(std::move(s));
}

ordered_json write_position(const Position3& p) { return ordered_json::array({p.x, p.y, p.z}); }

}  // namespace egg::detail
