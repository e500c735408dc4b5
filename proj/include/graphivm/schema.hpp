#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace graphivm {

/// What a variable is bound to.
enum class VarType { Vertex, Edge, Path, Value };

std::string_view to_string(VarType t);

enum class AttrKind {
  Variable,  // element, path, or computed value column
  Property,  // "var.key" carried for a vertex/edge variable
  Labels,    // label set of a vertex variable, as a bag of strings
};

/// One schema column. Nested schemas only hold Variable attributes; flat
/// schemas additionally carry Property and Labels columns.
struct Attribute {
  AttrKind kind = AttrKind::Variable;
  std::string var;
  std::string key;  // Property only
  VarType type = VarType::Value;  // Variable only

  static Attribute variable(std::string name, VarType type) {
    return {AttrKind::Variable, std::move(name), {}, type};
  }
  static Attribute property(std::string var, std::string key) {
    return {AttrKind::Property, std::move(var), std::move(key), VarType::Value};
  }
  static Attribute labels(std::string var) {
    return {AttrKind::Labels, std::move(var), {}, VarType::Value};
  }

  bool is_variable() const { return kind == AttrKind::Variable; }
  bool is_element() const {
    return kind == AttrKind::Variable && (type == VarType::Vertex || type == VarType::Edge);
  }

  /// Identity ignores the variable type: two columns with the same name are the same column.
  bool operator==(const Attribute& o) const {
    return kind == o.kind && var == o.var && key == o.key;
  }
  /// Deterministic order for required-property columns: by (var, kind, key).
  bool operator<(const Attribute& o) const;

  std::string name() const;
};

using Schema = std::vector<Attribute>;
using SchemaPtr = std::shared_ptr<const Schema>;

std::optional<size_t> find_attribute(const Schema& schema, const Attribute& attr);
std::optional<size_t> find_variable(const Schema& schema, const std::string& var);
bool has_variable(const Schema& schema, const std::string& var);

/// "⟨a, b, c⟩"
std::string schema_text(const Schema& schema);

}  // namespace graphivm
