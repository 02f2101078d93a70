// Command-line front end: divsel <command> [problem.json] [options]

#include "divsel/commands.hpp"
#include "divsel/problem_file.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int run(const std::string& command, const std::string& path, const divsel::CommandOptions& options) {
  std::optional<divsel::ProblemFile> problem;
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read '" << path << "'\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = divsel::parse_problem_file(buf.str());
    if (!parsed.problem) {
      for (const auto& d : parsed.diagnostics) std::cerr << path << ": " << divsel::to_string(d) << '\n';
      return 2;
    }
    problem = std::move(parsed.problem);
  }
  auto result = divsel::run_command(command, options, problem ? &*problem : nullptr);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selectivity of commutative orders in central division algebras"};
  app.require_subcommand(1);

  divsel::CommandOptions options;
  std::string path;

  auto add_common = [&](CLI::App* sub, bool needs_file) {
    auto* file = sub->add_option("problem", path, "problem file (JSON)")->check(CLI::ExistingFile);
    if (needs_file) file->required();
    sub->add_flag("--json", options.json, "machine-readable report");
  };

  auto* validate = app.add_subcommand("validate", "check a problem file");
  add_common(validate, true);

  auto* analyze = app.add_subcommand("analyze", "Brauer data of the algebras");
  add_common(analyze, true);
  analyze->add_option("--algebra", options.algebra, "algebra name (default: all)");

  auto* decompose = app.add_subcommand("decompose", "split into quaternion and odd degree parts");
  add_common(decompose, true);
  decompose->add_option("--algebra", options.algebra, "algebra name")->required();

  auto* embed = app.add_subcommand("embed", "maximal subfield embedding test");
  add_common(embed, true);
  embed->add_option("--algebra", options.algebra, "algebra name")->required();
  embed->add_option("--field", options.field, "field name")->required();

  auto* selectivity = app.add_subcommand("selectivity", "selectivity verdict for the maximal order of a field");
  add_common(selectivity, true);
  selectivity->add_option("--algebra", options.algebra, "algebra name")->required();
  selectivity->add_option("--field", options.field, "field name")->required();
  selectivity->add_option("--candidate", options.candidates, "candidate quadratic subfield (repeatable)");

  auto* enumerate = app.add_subcommand("enumerate", "consistency sweep over small universes");
  add_common(enumerate, false);
  enumerate->add_option("--max-degree", options.max_degree, "largest algebra degree")->check(CLI::Range(1u, 12u));
  enumerate->add_option("--min-degree", options.min_degree, "smallest algebra degree")->check(CLI::Range(1u, 12u));
  enumerate->add_option("--real", options.sweep_places.real, "number of real places");
  enumerate->add_option("--complex", options.sweep_places.complex, "number of complex places");
  enumerate->add_option("--finite", options.sweep_places.finite, "number of finite places");
  enumerate->add_option("--budget", options.budget, "maximum (algebra, field) instances");
  enumerate->add_option("--workers", options.workers, "worker threads")->check(CLI::Range(1u, 64u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }
  return run(app.get_subcommands().front()->get_name(), path, options);
}
