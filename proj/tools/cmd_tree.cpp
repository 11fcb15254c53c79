// tree, ugroup, kak-tree and contract-tree.

#include <random>

#include "cli.hpp"
#include "tdlc/kak_tree.hpp"
#include "tdlc/tree_automorphism.hpp"
#include "tdlc/tree_ball.hpp"

namespace tdlc::cli {

namespace {

struct TreeBallOptions {
  int degree = 3;
  int radius = 2;
  std::string root;
  bool full = false;
};

Report tree_ball_report(const TreeBallOptions& o, const GlobalOptions& g) {
  TreeBallPtr ball;
  nlohmann::json shape;
  if (!o.root.empty()) {
    const auto labels = label_vector_from_json(require_config(g, "tree ball --root"));
    ball = build_label_regular_ball(labels, o.root, o.radius, g.make_guard());
    shape = {{"labels", label_vector_to_json(labels)}, {"root", o.root}};
  } else {
    if (o.degree < 2) throw std::invalid_argument("--degree must be at least 2");
    g.make_guard().check(regular_ball_count(o.degree, o.radius), "tree ball");
    ball = build_regular_ball(o.degree, o.radius, g.make_guard());
    shape = {{"degree", o.degree}, {"expected_size", regular_ball_count(o.degree, o.radius)}};
  }
  nlohmann::json spheres = nlohmann::json::array();
  for (int n = 0; n <= o.radius; ++n) spheres.push_back(sphere(*ball, TreeBall::kBase, n).vertices.size());
  nlohmann::json result = {{"shape", shape}, {"radius", o.radius}, {"size", ball->size()}, {"spheres", spheres}};
  if (o.full) result["ball"] = to_json(*ball);
  return {"tree ball", o.radius, result};
}

Report tree_classify_report(const GlobalOptions& g) {
  const auto aut = tree_automorphism_from_json(require_config(g, "tree classify"));
  const int radius = aut.ball().radius();
  return {"tree classify", radius,
          {{"class", isometry_class_to_json(classify(aut))}, {"radius", radius}, {"is_identity", aut.is_identity()}}};
}

struct UGroupOptions {
  LocalGroupOptions local;
  int radius = 2;
  int k = 1;
};

Report ugroup_report(const UGroupOptions& o, const GlobalOptions& g) {
  const auto f = resolve_local_group(o.local, g);
  const auto guard = g.make_guard();
  const auto pg = f.group(guard);
  const auto formula = u1_stabilizer_count(pg, o.radius);
  guard.check(formula, "U_1(F) stabiliser ball");
  const auto k = enumerate_U1_stabilizer_ball(f, o.radius, guard);

  nlohmann::json pk = {{"k", o.k}};
  if (o.radius >= o.k + 1) {
    const VertexId w = k.ball->vertex(TreeBall::kBase).children.front();
    const auto rep = check_property_Pk(k, TreeBall::kBase, w, o.k);
    pk["holds"] = rep.holds;
    pk["fixator_size"] = rep.fixator_size;
    if (!rep.reason.empty()) pk["reason"] = rep.reason;
  } else {
    pk["holds"] = nullptr;
    pk["reason"] = "radius must exceed k";
  }
  nlohmann::json result = {
      {"local_group", to_json(f)},
      {"order", pg.order()},
      {"transitive", pg.is_transitive()},
      {"semiprimitive", is_semiprimitive(f, guard)},
      {"generated_by_point_stabilizers", is_generated_by_point_stabilizers(f, guard)},
      {"stabilizer", {{"radius", o.radius}, {"enumerated", k.size()}, {"formula", formula}, {"agree", k.size() == formula}}},
      {"property_pk", pk}};
  return {"ugroup", o.radius, result};
}

struct KakTreeOptions {
  LocalGroupOptions local;
  int radius = 2;
  int n_max = -1;
  int samples = 100;
};

Report kak_tree_report(const KakTreeOptions& o, const GlobalOptions& g) {
  const auto f = resolve_local_group(o.local, g);
  const auto guard = g.make_guard();
  const int n_max = o.n_max < 0 ? o.radius : o.n_max;
  if (n_max > o.radius) throw std::invalid_argument("--n-max must not exceed --radius");
  const auto k = enumerate_U1_stabilizer_ball(f, o.radius, guard);
  const auto dec = enumerate_representatives(k, f, n_max);

  const auto words = words_within(f.degree, n_max);
  guard.check(words.size() * k.lifts.size(), "kak-tree population");
  std::vector<ColoredAutomorphism> population;
  for (const auto& u : words) {
    const auto t = ColoredAutomorphism::translation(f.degree, u);
    for (const auto& kl : k.lifts) population.push_back(t * kl);
  }
  const auto part = double_coset_partition(dec, population);

  // Random k1 t_u k2, certified on the K ball.
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<std::size_t> pick_k(0, k.lifts.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_u(0, words.size() - 1);
  int verified = 0;
  for (int i = 0; i < o.samples; ++i) {
    const auto gg = k.lifts[pick_k(rng)] * ColoredAutomorphism::translation(f.degree, words[pick_u(rng)]) *
                    k.lifts[pick_k(rng)];
    const auto fac = factorize(gg, dec, o.radius);
    const auto& a = dec.representatives[fac.representative].a;
    if (fac.verified && (fac.k * a * fac.k_prime).agrees_with(gg, o.radius)) ++verified;
  }

  auto reps = to_json(dec);
  nlohmann::json result = {{"representatives", reps["representatives"]},
                           {"decomposition", reps},
                           {"disjointness", part.disjoint},
                           {"coverage", part.covers},
                           {"coset_sizes", part.coset_sizes},
                           {"population", population.size()},
                           {"factorizations", {{"samples", o.samples}, {"verified", verified}}},
                           {"radius", part.radius}};
  return {"kak-tree", part.radius, result};
}

struct ContractTreeOptions {
  LocalGroupOptions local;
  int radius = 2;
  std::string translation = "01";
  int powers = 8;
  int bound = 1;
  int certify_radius = 10;
};

Report contract_tree_report(const ContractTreeOptions& o, const GlobalOptions& g) {
  const auto f = resolve_local_group(o.local, g);
  const auto k = enumerate_U1_stabilizer_ball(f, o.radius, g.make_guard());
  const auto word = parse_color_word(o.translation, f.degree);
  const auto a = ColoredAutomorphism::translation(f.degree, word);
  std::vector<ColoredAutomorphism> seq;
  auto power = ColoredAutomorphism::identity(f.degree);
  for (int i = 1; i <= o.powers; ++i) {
    power = a * power;
    seq.push_back(power);
  }
  const auto search = contraction_witness_search(seq, k, o.bound, o.certify_radius);
  auto result = to_json(search);
  result["sequence"] = {{"translation", word}, {"powers", o.powers}};
  if (!result.contains("depths")) result["depths"] = nlohmann::json::array();
  return {"contract-tree", o.certify_radius, result};
}

}  // namespace

void add_tree_commands(CLI::App& app, Context& ctx) {
  auto* tree = app.add_subcommand("tree", "Balls in regular and label-regular trees");
  tree->require_subcommand(1);

  auto ball_opts = std::make_shared<TreeBallOptions>();
  auto* ball = tree->add_subcommand("ball", "Build B(v, R) and report sphere sizes");
  ball->add_option("--degree", ball_opts->degree)->capture_default_str();
  ball->add_option("--radius", ball_opts->radius)->capture_default_str();
  ball->add_option("--root", ball_opts->root, "root label; reads the label vector from --config");
  ball->add_flag("--full", ball_opts->full, "include every vertex");
  ball->callback([&ctx, ball_opts] { ctx.run = [&ctx, ball_opts] { return tree_ball_report(*ball_opts, ctx.globals); }; });

  auto* cls = tree->add_subcommand("classify", "Classify the automorphism in --config");
  cls->callback([&ctx] { ctx.run = [&ctx] { return tree_classify_report(ctx.globals); }; });

  auto ug = std::make_shared<UGroupOptions>();
  auto* ugroup = app.add_subcommand("ugroup", "U_1(F) stabiliser balls, local properties and P_k");
  add_local_group_options(ugroup, ug->local);
  ugroup->add_option("--radius", ug->radius)->capture_default_str();
  ugroup->add_option("--k", ug->k)->capture_default_str();
  ugroup->callback([&ctx, ug] { ctx.run = [&ctx, ug] { return ugroup_report(*ug, ctx.globals); }; });

  auto kt = std::make_shared<KakTreeOptions>();
  auto* kak = app.add_subcommand("kak-tree", "Cartan decomposition of U_1(F)");
  add_local_group_options(kak, kt->local);
  kak->add_option("--radius", kt->radius, "radius of the K ball")->capture_default_str();
  kak->add_option("--n-max", kt->n_max, "largest sphere (default: radius)");
  kak->add_option("--samples", kt->samples, "random factorizations")->capture_default_str();
  kak->callback([&ctx, kt] { ctx.run = [&ctx, kt] { return kak_tree_report(*kt, ctx.globals); }; });

  auto ct = std::make_shared<ContractTreeOptions>();
  auto* contract = app.add_subcommand("contract-tree", "Contraction witness for powers of a translation");
  add_local_group_options(contract, ct->local);
  contract->add_option("--radius", ct->radius, "radius of the K ball")->capture_default_str();
  contract->add_option("--translation", ct->translation, "colour word of the translation")->capture_default_str();
  contract->add_option("--powers", ct->powers)->capture_default_str();
  contract->add_option("--bound", ct->bound, "displacement bound for boundedness")->capture_default_str();
  contract->add_option("--certify-radius", ct->certify_radius)->capture_default_str();
  contract->callback([&ctx, ct] { ctx.run = [&ctx, ct] { return contract_tree_report(*ct, ctx.globals); }; });
}

}  // namespace tdlc::cli
