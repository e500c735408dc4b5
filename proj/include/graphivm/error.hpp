#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphivm {

enum class ErrorKind {
  // graph store
  DuplicateId,
  DanglingEdge,
  ParseError,
  UnknownId,
  VertexHasEdges,
  TypeMismatch,
  // frontend
  SyntaxError,
  UnsupportedFeature,
  UnboundVariable,
  DuplicateVariable,
  MisplacedAggregate,
  SemanticError,
  // lowering
  InferenceError,
  SchemaMismatch,
  // engine
  EvaluationError,
  InconsistentRetraction,
  PathBudgetExceeded,
  // session
  UnknownQuery,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Position in query text, 1-based. line == 0 means "no position".
struct SourcePos {
  uint32_t line = 0;
  uint32_t column = 0;

  bool valid() const { return line != 0; }
};

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourcePos pos = {});

  ErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  const std::string& message() const { return message_; }

  /// "line:col: Kind: message" when a position is known, else "Kind: message".
  std::string diagnostic() const;

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string message_;
};

/// True for errors that indicate engine/store desynchronization rather than bad input.
bool is_internal(ErrorKind kind);

}  // namespace graphivm
