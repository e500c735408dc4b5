#include "graphivm/cli.hpp"

#include <filesystem>
#include <ostream>

#include "graphivm/graph_io.hpp"

namespace graphivm {

CommandRunner::CommandRunner(Session& session, std::ostream& out, std::ostream& err)
    : session_(session), out_(out), err_(err) {}

int CommandRunner::fail(const Error& e, const std::string& context) {
  err_ << "error: ";
  if (!context.empty()) err_ << context << ": ";
  if (auto* staged = dynamic_cast<const StageError*>(&e)) err_ << "[" << staged->stage() << "] ";
  err_ << e.diagnostic() << "\n";
  return is_internal(e.kind()) ? kExitInternal : kExitUserError;
}

int CommandRunner::execute(const std::vector<std::string>& command) {
  if (command.empty()) return kExitOk;
  const std::string& verb = command[0];
  const std::vector<std::string> args(command.begin() + 1, command.end());
  try {
    if (verb == "load") return load(args);
    if (verb == "register") return register_query(args);
    if (verb == "apply") return apply(args);
    if (verb == "results") return results(args);
    if (verb == "explain") return explain(args);
    err_ << "error: unknown command '" << verb << "'\n";
    return kExitUserError;
  } catch (const Error& e) {
    return fail(e, verb);
  } catch (const std::exception& e) {
    err_ << "error: " << verb << ": internal: " << e.what() << "\n";
    return kExitInternal;
  }
}

int CommandRunner::execute_all(const std::vector<std::vector<std::string>>& commands) {
  for (const auto& c : commands) {
    if (int code = execute(c); code != kExitOk) return code;
  }
  return kExitOk;
}

namespace {

int usage(std::ostream& err, const char* text) {
  err << "usage: " << text << "\n";
  return kExitUserError;
}

}  // namespace

int CommandRunner::load(const std::vector<std::string>& args) {
  if (args.size() != 1) return usage(err_, "load <file>");
  session_.load_file(args[0]);
  out_ << "|V|=" << session_.graph().vertex_count() << " |E|=" << session_.graph().edge_count() << "\n";
  return kExitOk;
}

int CommandRunner::register_query(const std::vector<std::string>& args) {
  if (args.size() < 2) return usage(err_, "register <name> <query-file|query>");
  std::string text;
  for (size_t i = 1; i < args.size(); ++i) text += (i > 1 ? " " : "") + args[i];
  std::error_code ec;
  if (args.size() == 2 && std::filesystem::is_regular_file(args[1], ec)) text = read_file(args[1]);
  const RegisteredQuery& q = session_.register_query(args[0], text);
  print_table(q.validated.columns, q.network->read_results());
  return kExitOk;
}

int CommandRunner::apply(const std::vector<std::string>& args) {
  bool batch = false;
  std::vector<std::string> files;
  for (const auto& a : args) {
    if (a == "--batch") batch = true;
    else files.push_back(a);
  }
  if (files.size() != 1) return usage(err_, "apply <file> [--batch]");
  const auto script = parse_delta_script(read_file(files[0]));
  if (batch) {
    std::vector<GraphDelta> deltas;
    for (const auto& line : script) deltas.push_back(line.delta);
    print_deltas("batch", session_.apply_batch(deltas));
    return kExitOk;
  }
  for (const auto& line : script) {
    std::vector<QueryDelta> deltas;
    try {
      deltas = session_.apply(line.delta);
    } catch (const Error& e) {
      return fail(e, files[0] + ":" + std::to_string(line.line));
    }
    print_deltas(std::to_string(line.line), deltas);
  }
  return kExitOk;
}

int CommandRunner::results(const std::vector<std::string>& args) {
  if (args.size() != 1) return usage(err_, "results <name>");
  print_table(session_.query(args[0]).validated.columns, session_.results(args[0]));
  return kExitOk;
}

int CommandRunner::explain(const std::vector<std::string>& args) {
  std::optional<std::string> name;
  std::optional<Stage> stage;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--stage" && i + 1 < args.size()) {
      stage = parse_stage(args[++i]);
      if (!stage) return usage(err_, "explain <name> --stage gra|nra|fra");
    } else if (!name) {
      name = args[i];
    } else {
      return usage(err_, "explain <name> --stage gra|nra|fra");
    }
  }
  if (!name) return usage(err_, "explain <name> --stage gra|nra|fra");
  out_ << session_.explain(*name, stage.value_or(Stage::Gra));
  return kExitOk;
}

void CommandRunner::print_table(const std::vector<std::string>& header, const std::vector<Tuple>& rows) {
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "\t" : "") << header[i];
  out_ << "\n";
  for (const auto& r : rows) out_ << format_row(r, &session_.graph()) << "\n";
}

void CommandRunner::print_deltas(const std::string& tag, const std::vector<QueryDelta>& deltas) {
  for (const auto& d : deltas) {
    out_ << "[" << tag << "] " << d.name << "\n";
    for (const auto& t : d.delta.negative) out_ << "- " << format_row(t, &session_.graph()) << "\n";
    for (const auto& t : d.delta.positive) out_ << "+ " << format_row(t, &session_.graph()) << "\n";
  }
}

std::vector<std::vector<std::string>> split_commands(const std::vector<std::string>& argv) {
  std::vector<std::vector<std::string>> out(1);
  for (const auto& a : argv) {
    if (a == ";") {
      out.emplace_back();
    } else {
      out.back().push_back(a);
    }
  }
  std::erase_if(out, [](const auto& c) { return c.empty(); });
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

void parse_line(std::string_view line, std::vector<std::vector<std::string>>& out) {
  std::vector<std::string> cmd;
  size_t i = 0;
  auto flush = [&] {
    if (!cmd.empty()) out.push_back(std::move(cmd));
    cmd.clear();
  };
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#' && cmd.empty()) break;
    if (c == ';') {
      flush();
      ++i;
      continue;
    }
    if (cmd.size() == 2 && cmd[0] == "register") {
      cmd.push_back(unquote(trim(line.substr(i))));
      break;
    }
    std::string token;
    while (i < line.size()) {
      const char d = line[i];
      if (d == ' ' || d == '\t' || d == '\r' || d == ';') break;
      if (d == '"' || d == '\'') {
        const size_t close = line.find(d, i + 1);
        const size_t end = close == std::string_view::npos ? line.size() : close;
        token.append(line.substr(i + 1, end - i - 1));
        i = end == line.size() ? end : end + 1;
        continue;
      }
      token += d;
      ++i;
    }
    cmd.push_back(std::move(token));
  }
  flush();
}

}  // namespace

std::vector<std::vector<std::string>> parse_command_script(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    parse_line(std::string_view(text).substr(start, end - start), out);
    start = end + 1;
  }
  return out;
}

}  // namespace graphivm
