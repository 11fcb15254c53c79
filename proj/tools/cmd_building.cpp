// building ball | kak | contract, plus the kak-building and contract-building aliases.

#include <random>

#include "cli.hpp"
#include "tdlc/kak_building.hpp"

namespace tdlc::cli {

namespace {

struct BuildingOptions {
  int length = 2;
  int radius = -1;
  int samples = 8;
  std::vector<std::string> ws;
  std::string ws_file;
};

BuildingSpecPtr spec_of(const GlobalOptions& g) {
  return std::make_shared<const BuildingSpec>(building_spec_from_json(require_config(g, "building")));
}

Report building_ball(const BuildingOptions& o, const GlobalOptions& g) {
  const auto spec = spec_of(g);
  const ChamberBall ball(spec, o.length, g.make_guard());
  nlohmann::json spheres = nlohmann::json::array();
  for (int n = 0; n <= o.length; ++n) spheres.push_back(ball.sphere(n).size());
  return {"building ball", o.length,
          {{"spec", spec->to_json()},
           {"radius", o.length},
           {"size", ball.size()},
           {"count", chamber_ball_count(*spec, o.length, g.make_guard())},
           {"spheres", spheres},
           {"thick", spec->is_thick()}}};
}

Report building_kak(const BuildingOptions& o, const GlobalOptions& g) {
  const auto spec = spec_of(g);
  const auto guard = g.make_guard();
  const int radius = o.radius < 0 ? o.length + 1 : o.radius;
  if (radius < o.length) throw std::invalid_argument("--radius must be at least --L");
  const auto bc = representatives(spec, o.length, guard);
  const ChamberBall ball(spec, radius, guard);
  const auto check = certify_representatives(bc, ball);
  const auto disjoint = double_coset_disjointness_check(bc, ball, g.seed, static_cast<std::size_t>(o.samples));

  // Random k1 L_x k2 with l(x) <= L, so g(C) stays in range.
  std::vector<Chamber> near;
  for (const auto& c : ball.chambers()) {
    if (c.length() <= o.length) near.push_back(c);
  }
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<std::size_t> pick(0, near.size() - 1);
  int verified = 0;
  for (int i = 0; i < o.samples; ++i) {
    const auto gg = random_chamber_stabilizer(ball, rng) *
                    BuildingAutomorphism::left_multiplication(spec, near[pick(rng)]) *
                    random_chamber_stabilizer(ball, rng);
    if (factorize(gg, bc, ball).verified) ++verified;
  }

  auto reps = to_json(bc);
  nlohmann::json result = {
      {"representatives", reps.contains("representatives") ? reps["representatives"] : reps},
      {"max_length", o.length},
      {"certification",
       {{"weyl_distance_ok", check.weyl_distance_ok},
        {"stabilises_apartment", check.stabilises_apartment},
        {"type_preserving", check.type_preserving},
        {"radius", check.radius}}},
      {"disjointness",
       {{"symbolic", disjoint.symbolic}, {"sampled", disjoint.sampled}, {"pairs", disjoint.pairs}, {"samples", disjoint.samples}}},
      {"coverage", {{"samples", o.samples}, {"verified", verified}}},
      {"radius", radius}};
  return {"building kak", radius, result};
}

std::vector<CoxElement> resolve_words(const BuildingOptions& o, const RACoxeterSystem& sys, const Guard& guard) {
  std::vector<CoxElement> out;
  if (!o.ws_file.empty()) {
    const auto j = load_json(o.ws_file);
    if (!j.is_array()) throw std::invalid_argument(o.ws_file + ": expected an array of words");
    for (const auto& w : j) out.push_back(w.is_string() ? sys.parse(w.get<std::string>()) : sys.normal_form(sys.parse_word(w)));
  }
  for (const auto& w : o.ws) out.push_back(sys.parse(w));
  if (out.empty()) out = enumerate_elements(sys, o.length, guard);
  return out;
}

Report building_contract(const BuildingOptions& o, const GlobalOptions& g) {
  const auto spec = spec_of(g);
  const auto ws = resolve_words(o, spec->system(), g.make_guard());
  const int radius = o.radius < 0 ? 7 : o.radius;
  const auto r = building_contraction_witness(ws, spec, radius, g.make_guard());
  auto result = to_json(*spec, r);
  result["candidates"] = ws.size();
  return {"building contract", radius, result};
}

using Handler = Report (*)(const BuildingOptions&, const GlobalOptions&);

void add_kak_options(CLI::App* sub, BuildingOptions& o) {
  sub->add_option("--L", o.length, "largest representative length")->capture_default_str();
  sub->add_option("--radius", o.radius, "certifying chamber-ball radius (default L + 1)");
  sub->add_option("--samples", o.samples, "sampled factorizations and double-coset samples per w")->capture_default_str();
}

void add_contract_options(CLI::App* sub, BuildingOptions& o) {
  sub->add_option("--ws-file", o.ws_file, "JSON array of Weyl words");
  sub->add_option("--ws", o.ws, "Weyl word (repeatable)");
  sub->add_option("--L", o.length, "use all words of length <= L when none are given")->capture_default_str();
  sub->add_option("--radius", o.radius, "chamber-ball radius (default 7)");
}

}  // namespace

void add_building_commands(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<BuildingOptions>();
  auto bind = [&ctx, o](CLI::App* sub, Handler fn) {
    sub->callback([&ctx, o, fn] { ctx.run = [&ctx, o, fn] { return fn(*o, ctx.globals); }; });
  };

  auto* building = app.add_subcommand("building", "Semi-regular right-angled buildings (spec JSON in --spec)");
  building->require_subcommand(1);

  auto* ball = building->add_subcommand("ball", "Chamber ball B(C, L)");
  ball->add_option("--L", o->length)->capture_default_str();
  bind(ball, building_ball);

  auto* kak = building->add_subcommand("kak", "Cartan decomposition Aut^+ = K A K");
  add_kak_options(kak, *o);
  bind(kak, building_kak);

  auto* contract = building->add_subcommand("contract", "Contraction witness from a sequence in W");
  add_contract_options(contract, *o);
  bind(contract, building_contract);

  auto* kak_alias = app.add_subcommand("kak-building", "Same as 'building kak'");
  add_kak_options(kak_alias, *o);
  bind(kak_alias, building_kak);

  auto* contract_alias = app.add_subcommand("contract-building", "Same as 'building contract'");
  add_contract_options(contract_alias, *o);
  bind(contract_alias, building_contract);
}

}  // namespace tdlc::cli
