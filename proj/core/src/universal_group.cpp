#include "tdlc/universal_group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace tdlc {

LocalGroup LocalGroup::symmetric(int d) {
  LocalGroup f{d, {}};
  if (d >= 2) {
    f.generators.push_back(Perm::transposition(d, 0, 1));
    std::vector<int> all(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = i;
    f.generators.push_back(Perm::cycle(d, all));
  }
  return f;
}

LocalGroup LocalGroup::trivial(int d) { return LocalGroup{d, {}}; }

LocalGroup LocalGroup::cyclic(int d) {
  std::vector<int> all(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = i;
  return LocalGroup{d, {Perm::cycle(d, all)}};
}

LocalGroup local_group_from_json(const nlohmann::json& j) {
  LocalGroup f;
  f.degree = j.at("degree").get<int>();
  if (f.degree < 2) throw std::invalid_argument("local group degree must be >= 2");
  for (const auto& g : j.at("generators")) {
    auto p = Perm::from_one_based(g.get<std::vector<int>>());
    if (p.size() != f.degree) throw std::invalid_argument("generator has the wrong degree");
    f.generators.push_back(std::move(p));
  }
  return f;
}

nlohmann::json to_json(const LocalGroup& f) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : f.generators) gens.push_back(g.one_based());
  return {{"degree", f.degree}, {"generators", gens}};
}

// ------------------------------------------------------------------ GroupBall

std::optional<std::size_t> GroupBall::index_of(const FiniteTreeAutomorphism& g) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || !(*it == g)) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

GroupBall make_group_ball(TreeBallPtr ball, std::vector<FiniteTreeAutomorphism> elements,
                          bool closed) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return GroupBall{std::move(ball), std::move(elements), closed, {}};
}

bool membership_U1(const FiniteTreeAutomorphism& g, const PermGroup& f, const LegalColoring& c) {
  for (VertexId v = 0; v < g.ball().size(); ++v) {
    if (g.ball().is_interior(v) && !f.contains(local_action(g, v, c))) return false;
  }
  return true;
}

bool membership_U1(const ColoredAutomorphism& g, const PermGroup& f, int radius) {
  for (const auto& x : words_within(g.degree(), radius)) {
    if (!f.contains(g.local_action(x))) return false;
  }
  return true;
}

std::size_t u1_stabilizer_count(const PermGroup& f, int radius) {
  if (radius <= 0) return 1;
  std::vector<std::size_t> orbit_size(static_cast<std::size_t>(f.degree()));
  for (const auto& orbit : f.orbits()) {
    for (int c : orbit) orbit_size[static_cast<std::size_t>(c)] = orbit.size();
  }
  std::size_t count = f.order();
  for (const auto& x : words_within(f.degree(), radius - 1)) {
    if (x.empty()) continue;
    count *= f.order() / orbit_size[x.back()];
  }
  return count;
}

GroupBall enumerate_U1_stabilizer_ball(const LocalGroup& f, int radius, const Guard& guard) {
  const PermGroup group = f.group(guard);
  guard.check(u1_stabilizer_count(group, radius), "U1(F) stabiliser ball");
  auto ball = build_regular_ball(f.degree, radius, guard);
  GroupBall out;
  out.ball = ball;
  out.closed = true;
  if (radius == 0) {
    out.elements.push_back(FiniteTreeAutomorphism::identity(ball));
    out.lifts.push_back(ColoredAutomorphism::identity(f.degree));
    return out;
  }
  const auto interior = words_within(f.degree, radius - 1);
  // interior is in BFS order, so a parent always precedes its children.
  std::map<ColorWord, std::size_t> position;
  for (std::size_t i = 0; i < interior.size(); ++i) position.emplace(interior[i], i);
  std::vector<const Perm*> choice(interior.size(), nullptr);
  std::vector<std::pair<FiniteTreeAutomorphism, ColoredAutomorphism>> found;

  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == interior.size()) {
      std::map<ColorWord, Perm> sigma;
      for (std::size_t k = 0; k < interior.size(); ++k) sigma.emplace(interior[k], *choice[k]);
      auto lift = ColoredAutomorphism::from_portrait(Portrait(f.degree, radius - 1, sigma));
      found.emplace_back(lift.restrict_to(ball), std::move(lift));
      return;
    }
    const ColorWord& x = interior[i];
    const Perm* parent = nullptr;
    if (!x.empty()) parent = choice[position.at(ColorWord(x.begin(), x.end() - 1))];
    for (const auto& tau : group.elements()) {
      if (parent && tau(x.back()) != (*parent)(x.back())) continue;
      choice[i] = &tau;
      extend(i + 1);
    }
  };
  extend(0);

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [g, lift] : found) {
    out.elements.push_back(std::move(g));
    out.lifts.push_back(std::move(lift));
  }
  return out;
}

namespace {

std::vector<VertexId> edge_neighbourhood(const TreeBall& ball, VertexId v, VertexId w, int k) {
  if (!ball.adjacent(v, w)) throw std::invalid_argument("edge_fixator: {v,w} is not an edge");
  if (std::max(ball.depth(v), ball.depth(w)) + k - 1 > ball.radius()) {
    throw DepthError("edge_fixator: B(v,k-1) u B(w,k-1) leaves the ball");
  }
  std::set<VertexId> out;
  for (VertexId x : ball_around(ball, v, k - 1)) out.insert(x);
  for (VertexId x : ball_around(ball, w, k - 1)) out.insert(x);
  return {out.begin(), out.end()};
}

bool fixes_all(const FiniteTreeAutomorphism& g, const std::vector<VertexId>& xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [&](VertexId x) { return g.image(x) == g.ball().address(x); });
}

}  // namespace

GroupBall edge_fixator(const GroupBall& gb, VertexId v, VertexId w, int k) {
  const auto fixed = edge_neighbourhood(*gb.ball, v, w, k);
  GroupBall out;
  out.ball = gb.ball;
  out.closed = gb.closed;
  for (std::size_t i = 0; i < gb.elements.size(); ++i) {
    if (!fixes_all(gb.elements[i], fixed)) continue;
    out.elements.push_back(gb.elements[i]);
    if (!gb.lifts.empty()) out.lifts.push_back(gb.lifts[i]);
  }
  return out;
}

GroupBall generate_plus_k(const GroupBall& gb, int k, const Guard& guard) {
  if (!gb.closed) throw std::invalid_argument("generate_plus_k: group ball is not closed");
  const auto& ball = *gb.ball;
  std::set<FiniteTreeAutomorphism> generators;
  for (VertexId x = 1; x < ball.size(); ++x) {
    const VertexId p = ball.vertex(x).parent;
    if (ball.depth(x) + k - 1 > ball.radius()) continue;
    for (const auto& g : edge_fixator(gb, p, x, k).elements) {
      if (!g.is_identity()) generators.insert(g);
    }
  }
  std::set<FiniteTreeAutomorphism> seen{FiniteTreeAutomorphism::identity(gb.ball)};
  std::deque<FiniteTreeAutomorphism> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      auto next = compose(g, cur);
      if (seen.insert(next).second) {
        guard.check(seen.size(), "G^{+k} closure");
        queue.push_back(std::move(next));
      }
    }
  }
  return make_group_ball(gb.ball, {seen.begin(), seen.end()}, true);
}

bool k_closure_membership(const FiniteTreeAutomorphism& g, const GroupBall& gb, int k) {
  const auto& ball = g.ball();
  if (!(ball.shape() == gb.ball->shape())) {
    throw std::invalid_argument("k_closure_membership: ball mismatch");
  }
  bool any = false;
  for (VertexId v = 0; v < ball.size(); ++v) {
    if (ball.depth(v) + k > std::min(ball.radius(), gb.ball->radius())) continue;
    any = true;
    const auto region = ball_around(ball, v, k);
    const bool matched = std::any_of(gb.elements.begin(), gb.elements.end(), [&](const auto& g0) {
      return std::all_of(region.begin(), region.end(),
                         [&](VertexId x) { return g0.image(x) == g.image(x); });
    });
    if (!matched) return false;
  }
  if (!any) throw DepthError("k_closure_membership: no k-ball fits inside the ball");
  return true;
}

PropertyPkReport check_property_Pk(const GroupBall& gb, VertexId v, VertexId w, int k) {
  PropertyPkReport report;
  const auto fix = edge_fixator(gb, v, w, k);
  report.fixator_size = fix.size();
  const auto& ball = *gb.ball;
  const HalfTreeRef side_w{v, w, w};
  const auto half = half_tree_vertices(ball, side_w);
  std::vector<bool> in_half(ball.size(), false);
  for (VertexId x : half) in_half[x] = true;

  for (std::size_t i = 0; i < fix.elements.size(); ++i) {
    const auto& g = fix.elements[i];
    std::vector<Address> images;
    images.reserve(ball.size());
    for (VertexId x = 0; x < ball.size(); ++x) {
      images.push_back(in_half[x] ? g.image(x) : ball.address(x));
    }
    std::optional<FiniteTreeAutomorphism> g1;
    try {
      g1.emplace(gb.ball, std::move(images));
    } catch (const std::invalid_argument&) {
      report.offending = g;
      report.reason = "half-tree restriction is not an automorphism";
      return report;
    }
    auto g2 = compose(g, invert(*g1));
    if (!gb.contains(*g1) || !gb.contains(g2)) {
      report.offending = g;
      report.reason = "half-tree factor not in the group ball";
      return report;
    }
    report.factorizations.push_back(HalfTreeFactorization{i, std::move(*g1), std::move(g2)});
  }
  report.holds = true;
  return report;
}

// ----------------------------------------------------- permutation predicates

namespace {

std::vector<Perm> normal_closure(const PermGroup& g, const std::vector<Perm>& seeds,
                                 const Guard& guard) {
  std::set<Perm> gens;
  for (const auto& s : seeds) {
    for (const auto& x : g.elements()) gens.insert(x * s * x.inverse());
  }
  return close_under_composition(g.degree(), {gens.begin(), gens.end()}, guard);
}

}  // namespace

std::vector<std::vector<Perm>> normal_subgroups(const PermGroup& g, const Guard& guard) {
  std::set<std::vector<Perm>> found;
  std::deque<std::vector<Perm>> queue;
  auto trivial = std::vector<Perm>{Perm::identity(g.degree())};
  found.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    auto n = std::move(queue.front());
    queue.pop_front();
    for (const auto& x : g.elements()) {
      if (std::binary_search(n.begin(), n.end(), x)) continue;
      auto seeds = n;
      seeds.push_back(x);
      auto m = normal_closure(g, seeds, guard);
      if (found.insert(m).second) {
        guard.check(found.size(), "normal subgroup enumeration");
        queue.push_back(std::move(m));
      }
    }
  }
  return {found.begin(), found.end()};
}

bool is_semiregular(const std::vector<Perm>& elements) {
  return std::all_of(elements.begin(), elements.end(),
                     [](const Perm& p) { return p.is_identity() || p.fixed_point_count() == 0; });
}

bool is_semiprimitive(const LocalGroup& f, const Guard& guard) {
  const auto g = f.group(guard);
  if (!g.is_transitive()) return false;
  for (const auto& n : normal_subgroups(g, guard)) {
    PermGroup sub(g.degree(), n, guard);
    if (!sub.is_transitive() && !is_semiregular(n)) return false;
  }
  return true;
}

bool is_generated_by_point_stabilizers(const LocalGroup& f, const Guard& guard) {
  const auto g = f.group(guard);
  std::vector<Perm> gens;
  for (int i = 0; i < g.degree(); ++i) {
    for (auto& p : g.stabilizer(i)) gens.push_back(std::move(p));
  }
  return close_under_composition(g.degree(), gens, guard).size() == g.order();
}

Perm k_local_action(const FiniteTreeAutomorphism& g, VertexId v, int k, const LegalColoring& c) {
  const auto& ball = g.ball();
  if (ball.depth(v) + k > ball.radius()) {
    throw DepthError("k_local_action: B(v,k) leaves the ball");
  }
  const auto model = words_within(c.degree(), k);
  std::map<ColorWord, int> index;
  for (std::size_t i = 0; i < model.size(); ++i) index.emplace(model[i], static_cast<int>(i));
  const ColorWord x = c.word_of(ball.address(v));
  const ColorWord gx_inv = word_inverse(c.word_of(g.image(v)));
  std::vector<int> images;
  images.reserve(model.size());
  for (const auto& u : model) {
    const Address xu = c.address_of(word_product(x, u));
    images.push_back(index.at(word_product(gx_inv, c.word_of(g.apply(xu)))));
  }
  return Perm(std::move(images));
}

bool membership_Uk(const FiniteTreeAutomorphism& g, const PermGroup& f, int k,
                   const LegalColoring& c) {
  const auto& ball = g.ball();
  for (VertexId v = 0; v < ball.size(); ++v) {
    if (ball.depth(v) + k > ball.radius()) continue;
    if (!f.contains(k_local_action(g, v, k, c))) return false;
  }
  return true;
}

}  // namespace tdlc
