#include "graphivm/schema.hpp"

#include <tuple>

namespace graphivm {

std::string_view to_string(VarType t) {
  switch (t) {
    case VarType::Vertex: return "vertex";
    case VarType::Edge: return "edge";
    case VarType::Path: return "path";
    case VarType::Value: return "value";
  }
  return "value";
}

bool Attribute::operator<(const Attribute& o) const {
  return std::tie(var, kind, key) < std::tie(o.var, o.kind, o.key);
}

std::string Attribute::name() const {
  switch (kind) {
    case AttrKind::Variable: return var;
    case AttrKind::Property: return var + "." + key;
    case AttrKind::Labels: return "labels(" + var + ")";
  }
  return var;
}

std::optional<size_t> find_attribute(const Schema& schema, const Attribute& attr) {
  for (size_t i = 0; i < schema.size(); ++i) {
    if (schema[i] == attr) return i;
  }
  return std::nullopt;
}

std::optional<size_t> find_variable(const Schema& schema, const std::string& var) {
  for (size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].is_variable() && schema[i].var == var) return i;
  }
  return std::nullopt;
}

bool has_variable(const Schema& schema, const std::string& var) {
  return find_variable(schema, var).has_value();
}

std::string schema_text(const Schema& schema) {
  std::string out = "⟨";
  for (size_t i = 0; i < schema.size(); ++i) {
    if (i != 0) out += ", ";
    out += schema[i].name();
  }
  return out + "⟩";
}

}  // namespace graphivm
