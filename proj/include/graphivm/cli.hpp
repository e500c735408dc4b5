#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "graphivm/session.hpp"

namespace graphivm {

/// Exit statuses of the command surface.
enum ExitCode : int { kExitOk = 0, kExitUserError = 1, kExitInternal = 2 };

/// Executes textual commands against a Session, writing reports to `out`
/// and diagnostics to `err`:
///   load <file>
///   register <name> <query-file|inline query>
///   apply <file> [--batch]
///   results <name>
///   explain <name> --stage gra|nra|fra
class CommandRunner {
 public:
  CommandRunner(Session& session, std::ostream& out, std::ostream& err);

  /// Runs one command given as tokens. Returns an ExitCode.
  int execute(const std::vector<std::string>& command);

  /// Runs commands until the first failure; returns the first nonzero code.
  int execute_all(const std::vector<std::vector<std::string>>& commands);

 private:
  int load(const std::vector<std::string>& args);
  int register_query(const std::vector<std::string>& args);
  int apply(const std::vector<std::string>& args);
  int results(const std::vector<std::string>& args);
  int explain(const std::vector<std::string>& args);
  void print_table(const std::vector<std::string>& header, const std::vector<Tuple>& rows);
  void print_deltas(const std::string& tag, const std::vector<QueryDelta>& deltas);
  int fail(const Error& e, const std::string& context = {});

  Session& session_;
  std::ostream& out_;
  std::ostream& err_;
};

/// Splits argv-style tokens into commands at ";" tokens.
std::vector<std::vector<std::string>> split_commands(const std::vector<std::string>& argv);

/// Parses a command script: one command per line, '#' comments and blank
/// lines skipped, ';' also separating commands. Tokens are split on
/// whitespace with single or double quotes grouping; the query argument of
/// `register` is taken verbatim as the rest of its command.
std::vector<std::vector<std::string>> parse_command_script(const std::string& text);

}  // namespace graphivm
