#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tdlc/errors.hpp"
#include "tdlc/universal_group.hpp"

namespace tdlc::cli {

inline constexpr int kSchemaVersion = 1;

struct GlobalOptions {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t guard = 1'000'000;
  std::string out;
  std::string format = "json";

  Guard make_guard() const { return Guard{guard}; }
};

struct Report {
  std::string command;
  /// Radius or depth up to which the claims in `result` are certified.
  int certified_radius = 0;
  nlohmann::json result;
};

/// Filled in by the callback of whichever subcommand was parsed.
struct Context {
  GlobalOptions globals;
  std::function<Report()> run;
};

nlohmann::json load_json(const std::string& path);
/// The --config/--spec file; throws std::invalid_argument when absent.
nlohmann::json require_config(const GlobalOptions& g, const std::string& what);

nlohmann::json envelope(const GlobalOptions& g, const Report& r);
/// One "path: value" line per JSON leaf, in key order.
std::string render_text(const nlohmann::json& j);

/// Local group options shared by the tree commands: a named family or a
/// JSON file passed as --config.
struct LocalGroupOptions {
  std::string family = "symmetric";
  int degree = 3;
};
void add_local_group_options(CLI::App* sub, LocalGroupOptions& o);
LocalGroup resolve_local_group(const LocalGroupOptions& o, const GlobalOptions& g);

/// "0 1 2" or "012" -> colour word.
std::vector<std::uint8_t> parse_color_word(const std::string& s, int degree);

void add_tree_commands(CLI::App& app, Context& ctx);
void add_padic_commands(CLI::App& app, Context& ctx);
void add_coxeter_commands(CLI::App& app, Context& ctx);
void add_building_commands(CLI::App& app, Context& ctx);

}  // namespace tdlc::cli
