// tdlc: command-line front end. Exit codes: 0 success, 1 invalid input,
// 2 infeasible (guard exceeded or truncation too shallow).

#include <fstream>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace tdlc::cli;

  CLI::App app{"Desk-scale computations with groups acting on trees and right-angled buildings", "tdlc"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  auto& g = ctx.globals;
  app.add_option("--config,--spec", g.config, "JSON input (system, building spec, label vector, ...)");
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--guard", g.guard, "largest number of enumerated objects")->capture_default_str();
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_option("--format", g.format, "json | text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  add_tree_commands(app, ctx);
  add_padic_commands(app, ctx);
  add_coxeter_commands(app, ctx);
  add_building_commands(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  nlohmann::json report;
  try {
    report = envelope(g, ctx.run());
  } catch (const tdlc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const tdlc::DepthError& e) {
    std::cerr << "too shallow: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  }

  const std::string text = g.format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.out);
    if (!out) {
      std::cerr << "cannot write " << g.out << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}
