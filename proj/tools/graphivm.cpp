// Command-line driver: global options first, then commands separated by
// ";" tokens. Without commands, a script is read from --script or stdin.
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "graphivm/cli.hpp"
#include "graphivm/graph_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Incremental property-graph query engine"};
  graphivm::rete::EngineConfig config;
  std::string script;
  app.add_option("--path-budget", config.path_budget, "Maximum cached paths per transitive node");
  app.add_flag("--label-preservation", config.label_preservation,
               "Enforce equal source/target labels on every path vertex instead of joining the target");
  app.add_option("--script", script, "Read commands from a file");
  app.prefix_command();
  app.footer(
      "Commands:\n"
      "  load <file>\n"
      "  register <name> <query-file|query>\n"
      "  apply <file> [--batch]\n"
      "  results <name>\n"
      "  explain <name> --stage gra|nra|fra");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? graphivm::kExitOk : graphivm::kExitUserError;
  }

  std::vector<std::vector<std::string>> commands;
  try {
    if (!script.empty()) {
      commands = graphivm::parse_command_script(graphivm::read_file(script));
    } else if (!app.remaining().empty()) {
      commands = graphivm::split_commands(app.remaining());
    } else {
      std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
      commands = graphivm::parse_command_script(text);
    }
  } catch (const graphivm::Error& e) {
    std::cerr << "error: " << e.diagnostic() << "\n";
    return graphivm::kExitUserError;
  }

  graphivm::Session session(config);
  graphivm::CommandRunner runner(session, std::cout, std::cerr);
  return runner.execute_all(commands);
}
