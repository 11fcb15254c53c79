#include "cli.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tdlc::cli {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

nlohmann::json require_config(const GlobalOptions& g, const std::string& what) {
  if (g.config.empty()) throw std::invalid_argument(what + " needs --config/--spec");
  return load_json(g.config);
}

nlohmann::json envelope(const GlobalOptions& g, const Report& r) {
  return {{"schema_version", kSchemaVersion},
          {"command", r.command},
          {"seed", g.seed},
          {"guard", g.guard},
          {"certified_radius", r.certified_radius},
          {"result", r.result}};
}

namespace {

void flatten(const nlohmann::json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && !j.front().is_primitive()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const nlohmann::json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

void add_local_group_options(CLI::App* sub, LocalGroupOptions& o) {
  sub->add_option("--local", o.family, "symmetric | cyclic | trivial | file (reads --config)")
      ->check(CLI::IsMember({"symmetric", "cyclic", "trivial", "file"}))
      ->capture_default_str();
  sub->add_option("--degree", o.degree, "tree degree d >= 3")->capture_default_str();
}

LocalGroup resolve_local_group(const LocalGroupOptions& o, const GlobalOptions& g) {
  if (o.family == "file") return local_group_from_json(require_config(g, "--local file"));
  if (o.degree < 3) throw std::invalid_argument("--degree must be at least 3");
  if (o.family == "cyclic") return LocalGroup::cyclic(o.degree);
  if (o.family == "trivial") return LocalGroup::trivial(o.degree);
  return LocalGroup::symmetric(o.degree);
}

std::vector<std::uint8_t> parse_color_word(const std::string& s, int degree) {
  std::vector<std::uint8_t> w;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') continue;
    if (!std::isdigit(static_cast<unsigned char>(ch)) || ch - '0' >= degree) {
      throw std::invalid_argument("bad colour '" + std::string(1, ch) + "' in word \"" + s + "\"");
    }
    w.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return w;
}

}  // namespace tdlc::cli
