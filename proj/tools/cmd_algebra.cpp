// padic and coxeter.

#include <random>

#include "cli.hpp"
#include "tdlc/coxeter.hpp"
#include "tdlc/padic.hpp"

namespace tdlc::cli {

namespace {

struct PadicOptions {
  std::int64_t p = 0;
  int n_max = 10;
  int samples = 100;
};

Report padic_verify_report(const PadicOptions& o, const GlobalOptions& g) {
  if (!is_prime(o.p)) throw std::invalid_argument("--p must be prime");
  if (o.n_max < 1) throw std::invalid_argument("--n-max must be positive");

  std::mt19937_64 rng(g.seed);
  bool formula = true;
  for (int i = 0; i < o.samples && formula; ++i) {
    const auto h = random_matrix(rng, o.p);
    for (int n = 1; n <= o.n_max && formula; ++n) formula = conjugation_formula_check(h, n);
  }

  const auto table = unipotent_contraction_check(o.n_max, o.p);

  bool diverges = true;
  bool within_bound = true;
  nlohmann::json regimes = nlohmann::json::array();
  const std::vector<std::pair<std::string, ProjMatrix>> hs{
      {"(1 1; 0 1)", ProjMatrix(1, 1, 0, 1, o.p)},
      {"(1 0; 1 1)", ProjMatrix(1, 0, 1, 1, o.p)},
      {"diag(1, 1+p)", ProjMatrix(1, 0, 0, 1 + o.p, o.p)}};
  for (const auto& [name, h] : hs) {
    const auto rep = perturbed_triviality_evidence(h, o.n_max);
    diverges = diverges && rep.diverges;
    within_bound = within_bound && rep.all_within_bound;
    regimes.push_back({{"h", name}, {"report", to_json(rep)}});
  }

  nlohmann::json result = {
      {"p", o.p},
      {"n_max", o.n_max},
      {"formula", {{"holds", formula}, {"samples", o.samples}, {"n_max", o.n_max}}},
      {"unipotent", {{"holds", table.all_equal_n}, {"table", to_json(table)}}},
      {"perturbed", {{"holds", diverges}, {"all_within_bound", within_bound}, {"regimes", regimes}}}};
  return {"padic verify", o.n_max, result};
}

struct CoxeterOptions {
  std::string word;
  std::string s;
  int length = 3;
  int profile = 3;
  bool list = false;
  std::string ws_file;
};

RACoxeterSystem system_of(const GlobalOptions& g) { return coxeter_from_json(require_config(g, "coxeter")); }

Generator generator_of(const RACoxeterSystem& sys, const std::string& name) {
  const auto w = sys.parse(name);
  if (w.length() != 1) throw std::invalid_argument("--s must name one generator");
  return w.word.front();
}

nlohmann::json formatted(const RACoxeterSystem& sys, const std::vector<CoxElement>& els) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : els) out.push_back(sys.format(w));
  return out;
}

Report coxeter_nf(const CoxeterOptions& o, const GlobalOptions& g) {
  const auto sys = system_of(g);
  const auto u = sys.parse(o.word);
  return {"coxeter nf", sys.length(u),
          {{"input", o.word}, {"normal_form", sys.format(u)}, {"word", to_json(sys, u)}, {"length", sys.length(u)}}};
}

Report coxeter_length(const CoxeterOptions& o, const GlobalOptions& g) {
  const auto sys = system_of(g);
  const auto u = sys.parse(o.word);
  return {"coxeter length", sys.length(u), {{"input", o.word}, {"length", sys.length(u)}}};
}

Report coxeter_enumerate(const CoxeterOptions& o, const GlobalOptions& g) {
  const auto sys = system_of(g);
  const auto els = enumerate_elements(sys, o.length, g.make_guard());
  std::vector<std::size_t> spheres(static_cast<std::size_t>(o.length) + 1, 0);
  for (const auto& w : els) ++spheres[static_cast<std::size_t>(w.length())];
  nlohmann::json result = {{"max_length", o.length}, {"count", els.size()}, {"spheres", spheres}};
  if (o.list) result["elements"] = formatted(sys, els);
  return {"coxeter enumerate", o.length, result};
}

Report coxeter_wall(const CoxeterOptions& o, const GlobalOptions& g) {
  const auto sys = system_of(g);
  const auto w = sys.parse(o.word);
  const auto s = generator_of(sys, o.s);
  const auto conj = sys.conjugate_generator(w, s);
  return {"coxeter wall", sys.length(conj),
          {{"w", sys.format(w)},
           {"s", sys.name(s)},
           {"conjugate", sys.format(conj)},
           {"conjugate_length", sys.length(conj)},
           {"wall_distance", wall_distance(sys, w, s)},
           {"in_root", root_contains(sys, s, w)},
           {"distance_to_root", dist_to_root(sys, w, s, g.make_guard())}}};
}

Report coxeter_profile(const CoxeterOptions& o, const GlobalOptions& g) {
  const auto sys = system_of(g);
  const auto els = profile_bounded_set(sys, o.length, o.profile, g.make_guard());
  nlohmann::json result = {{"max_length", o.length}, {"max_profile", o.profile}, {"count", els.size()},
                           {"irreducible", sys.is_irreducible()}};
  if (o.list) result["elements"] = formatted(sys, els);
  return {"coxeter profile", o.length, result};
}

std::vector<CoxElement> load_words(const RACoxeterSystem& sys, const std::string& path) {
  const auto j = load_json(path);
  if (!j.is_array()) throw std::invalid_argument(path + ": expected an array of words");
  std::vector<CoxElement> out;
  for (const auto& w : j) out.push_back(w.is_string() ? sys.parse(w.get<std::string>()) : sys.normal_form(sys.parse_word(w)));
  return out;
}

Report coxeter_chain(const CoxeterOptions& o, const GlobalOptions& g) {
  const auto sys = system_of(g);
  const auto ws = o.ws_file.empty() ? enumerate_elements(sys, o.length, g.make_guard()) : load_words(sys, o.ws_file);
  const auto r = growing_chain_search(sys, ws, g.make_guard());
  int depth = 0;
  for (const auto& w : ws) depth = std::max(depth, w.length());
  return {"coxeter chain", depth, {{"candidates", ws.size()}, {"chain", to_json(sys, r)}}};
}

}  // namespace

void add_padic_commands(CLI::App& app, Context& ctx) {
  auto* padic = app.add_subcommand("padic", "The PGL(2, Q_p) example");
  padic->require_subcommand(1);
  auto o = std::make_shared<PadicOptions>();
  auto* verify = padic->add_subcommand("verify", "Conjugation formula, unipotent contraction, perturbed divergence");
  verify->add_option("--p", o->p, "prime")->required();
  verify->add_option("--n-max", o->n_max)->capture_default_str();
  verify->add_option("--samples", o->samples, "random matrices for the formula check")->capture_default_str();
  verify->callback([&ctx, o] { ctx.run = [&ctx, o] { return padic_verify_report(*o, ctx.globals); }; });
}

void add_coxeter_commands(CLI::App& app, Context& ctx) {
  auto* cox = app.add_subcommand("coxeter", "Right-angled Coxeter systems (system JSON in --config)");
  cox->require_subcommand(1);
  auto o = std::make_shared<CoxeterOptions>();

  auto bind = [&ctx, o](CLI::App* sub, Report (*fn)(const CoxeterOptions&, const GlobalOptions&)) {
    sub->callback([&ctx, o, fn] { ctx.run = [&ctx, o, fn] { return fn(*o, ctx.globals); }; });
  };

  auto* nf = cox->add_subcommand("nf", "Normal form of a word");
  nf->add_option("--word", o->word)->required();
  bind(nf, coxeter_nf);

  auto* len = cox->add_subcommand("length", "Length of a word");
  len->add_option("--word", o->word)->required();
  bind(len, coxeter_length);

  auto* en = cox->add_subcommand("enumerate", "Elements of length <= L");
  en->add_option("--L", o->length)->capture_default_str();
  en->add_flag("--list", o->list);
  bind(en, coxeter_enumerate);

  auto* wall = cox->add_subcommand("wall", "Wall distance of w to the s-wall");
  wall->add_option("--word", o->word)->required();
  wall->add_option("--s", o->s)->required();
  bind(wall, coxeter_wall);

  auto* prof = cox->add_subcommand("profile", "{w : l(w) <= L, l(w^-1 s w) <= R for all s}");
  prof->add_option("--L", o->length)->capture_default_str();
  prof->add_option("--R", o->profile)->capture_default_str();
  prof->add_flag("--list", o->list);
  bind(prof, coxeter_profile);

  auto* chain = cox->add_subcommand("chain", "Chain with growing distance to a root");
  chain->add_option("--ws-file", o->ws_file, "JSON array of words (default: all of length <= L)");
  chain->add_option("--L", o->length)->capture_default_str();
  bind(chain, coxeter_chain);
}

}  // namespace tdlc::cli
