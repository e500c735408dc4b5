#include "graphivm/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "graphivm/error.hpp"
#include "json.hpp"

namespace graphivm {

using nlohmann::json;

namespace {

Value scalar_from_json(const json& j, const std::string& key) {
  if (j.is_boolean()) return Value{j.get<bool>()};
  if (j.is_number_integer()) return Value{j.get<int64_t>()};
  if (j.is_number_float()) return Value{j.get<double>()};
  if (j.is_string()) return Value{j.get<std::string>()};
  throw Error(ErrorKind::TypeMismatch, "property '" + key + "': bag items must be scalars");
}

Value value_from_json(const json& j, const std::string& key) {
  if (j.is_null()) return Value{};
  if (j.is_object()) {
    if (j.size() != 1 || !j.contains("bag") || !j["bag"].is_array()) {
      throw Error(ErrorKind::ParseError, "property '" + key + "': expected {\"bag\": [...]}");
    }
    std::vector<Value> items;
    for (const auto& item : j["bag"]) items.push_back(scalar_from_json(item, key));
    return Value{Bag{std::move(items)}};
  }
  if (j.is_array()) {
    throw Error(ErrorKind::ParseError,
                "property '" + key + "': collections are written as {\"bag\": [...]}");
  }
  return scalar_from_json(j, key);
}

json value_to_json(const Value& v) {
  if (v.is<bool>()) return v.as<bool>();
  if (v.is<int64_t>()) return v.as<int64_t>();
  if (v.is<double>()) return v.as<double>();
  if (v.is<std::string>()) return v.as<std::string>();
  if (v.is<Bag>()) {
    json items = json::array();
    for (const auto& item : v.as<Bag>().items()) items.push_back(value_to_json(item));
    return json{{"bag", items}};
  }
  return nullptr;
}

PropertyMap properties_from_json(const json& obj, const char* where) {
  PropertyMap props;
  if (obj.is_null()) return props;
  if (!obj.is_object()) throw Error(ErrorKind::ParseError, std::string(where) + ": properties must be an object");
  for (const auto& [k, v] : obj.items()) {
    Value value = value_from_json(v, k);
    if (!value.is_null()) props.emplace(k, std::move(value));
  }
  return props;
}

json properties_to_json(const PropertyMap& props) {
  json out = json::object();
  for (const auto& [k, v] : props) out[k] = value_to_json(v);
  return out;
}

std::string id_from_json(const json& j, const char* field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<int64_t>());
  throw Error(ErrorKind::ParseError, std::string("field '") + field + "' must be a string or integer id");
}

const json& require(const json& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + field + "'");
  }
  return obj.at(field);
}

std::vector<std::string> labels_from_json(const json& obj) {
  std::vector<std::string> labels;
  if (!obj.contains("labels")) return labels;
  const auto& arr = obj.at("labels");
  if (!arr.is_array()) throw Error(ErrorKind::ParseError, "labels must be an array of strings");
  for (const auto& l : arr) {
    if (!l.is_string()) throw Error(ErrorKind::ParseError, "labels must be an array of strings");
    labels.push_back(l.get<std::string>());
  }
  return labels;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

PropertyGraph load_graph(std::string_view document) {
  const json doc = parse_json(document);
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "graph document must be an object");
  PropertyGraph g;
  try {
    if (doc.contains("vertices")) {
      const auto& vs = doc.at("vertices");
      if (!vs.is_array()) throw Error(ErrorKind::ParseError, "'vertices' must be an array");
      for (const auto& v : vs) {
        const std::string id = id_from_json(require(v, "id"), "id");
        if (g.find_vertex(id)) throw Error(ErrorKind::DuplicateId, "duplicate vertex id '" + id + "'");
        g.apply_delta(GraphDelta::add_vertex(
            id, labels_from_json(v),
            properties_from_json(v.value("properties", json()), "vertex")));
      }
    }
    if (doc.contains("edges")) {
      const auto& es = doc.at("edges");
      if (!es.is_array()) throw Error(ErrorKind::ParseError, "'edges' must be an array");
      for (const auto& e : es) {
        const std::string id = id_from_json(require(e, "id"), "id");
        const std::string src = id_from_json(require(e, "src"), "src");
        const std::string trg = id_from_json(require(e, "trg"), "trg");
        const auto& type = require(e, "type");
        if (!type.is_string()) throw Error(ErrorKind::ParseError, "edge type must be a string");
        if (g.find_edge(id)) throw Error(ErrorKind::DuplicateId, "duplicate edge id '" + id + "'");
        for (const auto& end : {src, trg}) {
          if (!g.find_vertex(end)) {
            throw Error(ErrorKind::DanglingEdge,
                        "edge '" + id + "' references unknown vertex '" + end + "'");
          }
        }
        g.apply_delta(GraphDelta::add_edge(id, src, trg, type.get<std::string>(),
                                           properties_from_json(e.value("properties", json()), "edge")));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PropertyGraph load_graph_file(const std::string& path) { return load_graph(read_file(path)); }

GraphDelta parse_delta(std::string_view record) {
  const json j = parse_json(record);
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "delta record must be an object");
  try {
    const auto& op_field = require(j, "op");
    if (!op_field.is_string()) throw Error(ErrorKind::ParseError, "'op' must be a string");
    const std::string op = op_field.get<std::string>();
    const std::string id = id_from_json(require(j, "id"), "id");
    auto target_is_edge = [&]() {
      const std::string target = j.value("target", std::string("vertex"));
      if (target != "vertex" && target != "edge") {
        throw Error(ErrorKind::ParseError, "'target' must be \"vertex\" or \"edge\"");
      }
      return target == "edge";
    };
    if (op == "add_vertex") {
      return GraphDelta::add_vertex(id, labels_from_json(j),
                                    properties_from_json(j.value("properties", json()), "vertex"));
    }
    if (op == "remove_vertex") return GraphDelta::remove_vertex(id, j.value("detach", false));
    if (op == "add_edge") {
      const auto& type = require(j, "type");
      if (!type.is_string()) throw Error(ErrorKind::ParseError, "edge type must be a string");
      return GraphDelta::add_edge(id, id_from_json(require(j, "src"), "src"),
                                  id_from_json(require(j, "trg"), "trg"), type.get<std::string>(),
                                  properties_from_json(j.value("properties", json()), "edge"));
    }
    if (op == "remove_edge") return GraphDelta::remove_edge(id);
    if (op == "set_property") {
      const bool on_edge = target_is_edge();
      const auto& key = require(j, "key");
      if (!key.is_string()) throw Error(ErrorKind::ParseError, "'key' must be a string");
      const std::string k = key.get<std::string>();
      Value v = value_from_json(require(j, "value"), k);
      if (v.is_null()) {
        throw Error(ErrorKind::TypeMismatch, "set_property with null value (use remove_property)");
      }
      return GraphDelta::set_property(on_edge, id, k, std::move(v));
    }
    if (op == "remove_property") {
      const bool on_edge = target_is_edge();
      const auto& key = require(j, "key");
      if (!key.is_string()) throw Error(ErrorKind::ParseError, "'key' must be a string");
      return GraphDelta::remove_property(on_edge, id, key.get<std::string>());
    }
    throw Error(ErrorKind::ParseError, "unknown op '" + op + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::vector<ScriptLine> parse_delta_script(std::string_view text) {
  std::vector<ScriptLine> out;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        out.push_back({line_no, parse_delta(line)});
      } catch (const Error& e) {
        throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.message(),
                    SourcePos{static_cast<uint32_t>(line_no), 1});
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::string delta_to_json(const GraphDelta& d) {
  using K = GraphDelta::Kind;
  json j;
  switch (d.kind) {
    case K::AddVertex:
      j = {{"op", "add_vertex"}, {"id", d.id}, {"labels", d.labels},
           {"properties", properties_to_json(d.properties)}};
      break;
    case K::RemoveVertex:
      j = {{"op", "remove_vertex"}, {"id", d.id}};
      if (d.detach) j["detach"] = true;
      break;
    case K::AddEdge:
      j = {{"op", "add_edge"}, {"id", d.id}, {"src", d.src}, {"trg", d.trg}, {"type", d.type},
           {"properties", properties_to_json(d.properties)}};
      break;
    case K::RemoveEdge: j = {{"op", "remove_edge"}, {"id", d.id}}; break;
    case K::SetProperty:
      j = {{"op", "set_property"}, {"target", d.on_edge ? "edge" : "vertex"}, {"id", d.id},
           {"key", d.key}, {"value", value_to_json(d.value)}};
      break;
    case K::RemoveProperty:
      j = {{"op", "remove_property"}, {"target", d.on_edge ? "edge" : "vertex"}, {"id", d.id},
           {"key", d.key}};
      break;
  }
  return j.dump();
}

}  // namespace graphivm
