#include "covol/cli/commands.hpp"
#include "covol/cli/workspace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw covol::cli::CommandError("cannot write " + path);
  out << text;
}

int fail(const covol::cli::Json& error) {
  std::cerr << error.dump(2) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace covol::cli;

  CLI::App app{"covol: coverings, gradings and comodules of path coalgebras"};
  std::string command;
  std::string file;
  Options options;
  std::string jsonPath;
  std::string dotPath;
  std::string gamma;
  std::string weighting;
  std::string subcoalgebra;
  std::string comodule;

  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commandNames()));
  app.add_option("workspace", file, "Workspace file")->required();
  app.add_option("--window", options.window, "Ball radius of the group window")->capture_default_str();
  auto* jsonOpt = app.add_option("--json", jsonPath, "Write the JSON report (to a file when given)")->expected(0, 1);
  auto* dotOpt = app.add_option("--dot", dotPath, "Write DOT output (to a file when given)")->expected(0, 1);
  auto* gammaOpt = app.add_option("--gamma", gamma, "Vertex weighting, e.g. x=1,y=0");
  auto* wOpt = app.add_option("--weighting", weighting, "Weighting to use (default: first matching)");
  auto* bOpt = app.add_option("--subcoalgebra", subcoalgebra, "Subcoalgebra to use (default: first)");
  auto* mOpt = app.add_option("--comodule", comodule, "Comodule to use (default: first)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (*gammaOpt) options.gamma = gamma;
  if (*wOpt) options.weighting = weighting;
  if (*bOpt) options.subcoalgebra = subcoalgebra;
  if (*mOpt) options.comodule = comodule;

  try {
    const Workspace ws = parseFile(file);
    const Report report = run(command, ws, options);
    const std::string json = report.json.dump(2) + "\n";
    const bool dotToStdout = *dotOpt && dotPath.empty();
    if (*dotOpt) {
      if (dotToStdout)
        std::cout << report.dot;
      else
        writeFile(dotPath, report.dot);
    }
    if (*jsonOpt && !jsonPath.empty())
      writeFile(jsonPath, json);
    else if (!dotToStdout || *jsonOpt)
      std::cout << json;
    return report.ok ? 0 : 1;
  } catch (const ParseError& e) {
    return fail({{"schema", kSchemaVersion},
                 {"error", "parse"},
                 {"file", file},
                 {"line", e.where().line},
                 {"column", e.where().column},
                 {"message", e.message()},
                 {"expected", e.expected()}});
  } catch (const CommandError& e) {
    return fail({{"schema", kSchemaVersion}, {"error", "command"}, {"command", command}, {"message", e.what()}});
  } catch (const std::exception& e) {
    return fail({{"schema", kSchemaVersion}, {"error", "internal"}, {"command", command}, {"message", e.what()}});
  }
}
