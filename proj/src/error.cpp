#include "graphivm/error.hpp"

namespace graphivm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::VertexHasEdges: return "VertexHasEdges";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::MisplacedAggregate: return "MisplacedAggregate";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::InferenceError: return "InferenceError";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::EvaluationError: return "EvaluationError";
    case ErrorKind::InconsistentRetraction: return "InconsistentRetraction";
    case ErrorKind::PathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorKind::UnknownQuery: return "UnknownQuery";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

namespace {
std::string render(ErrorKind kind, const std::string& message, SourcePos pos) {
  std::string out;
  if (pos.valid()) {
    out += std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
  }
  out += to_string(kind);
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, std::string message, SourcePos pos)
    : std::runtime_error(render(kind, message, pos)),
      kind_(kind),
      pos_(pos),
      message_(std::move(message)) {}

std::string Error::diagnostic() const { return what(); }

bool is_internal(ErrorKind kind) {
  return kind == ErrorKind::InconsistentRetraction ||
         kind == ErrorKind::InferenceError;
}

}  // namespace graphivm
