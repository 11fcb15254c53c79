#include "tdlc/kak_tree.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tdlc {

namespace {

using ImageKey = std::vector<Address>;

LegalColoring coloring_of(const GroupBall& gb) {
  return LegalColoring(gb.ball->shape().regular_degree());
}

void require_lifts(const GroupBall& gb) {
  if (gb.lifts.size() != gb.elements.size()) {
    throw std::invalid_argument("group ball carries no exact lifts");
  }
}

}  // namespace

std::vector<std::vector<VertexId>> sphere_orbits(const GroupBall& gb, VertexId v, int n) {
  const auto& ball = *gb.ball;
  const auto s = sphere(ball, v, n);
  if (!s.complete) throw DepthError("sphere_orbits: S(v,n) is not inside the ball");
  std::vector<const FiniteTreeAutomorphism*> stab;
  for (const auto& g : gb.elements) {
    if (g.image(v) == ball.address(v)) stab.push_back(&g);
  }
  std::set<VertexId> remaining(s.vertices.begin(), s.vertices.end());
  std::vector<std::vector<VertexId>> out;
  while (!remaining.empty()) {
    std::vector<VertexId> orbit{*remaining.begin()};
    remaining.erase(remaining.begin());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto* g : stab) {
        const VertexId y = (*g)(orbit[i]);
        if (remaining.erase(y)) orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

CartanDecomposition enumerate_representatives(const GroupBall& k, const LocalGroup& f,
                                              int n_max) {
  require_lifts(k);
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (n_max > k.ball->radius()) throw DepthError("n_max exceeds the radius of K's ball");
  const auto c = coloring_of(k);
  CartanDecomposition dec{k, f, n_max, {}, {}};
  dec.orbit_of.assign(k.ball->count_within(n_max), 0);
  for (int n = 0; n <= n_max; ++n) {
    for (const auto& orbit : sphere_orbits(k, TreeBall::kBase, n)) {
      const VertexId w = orbit.front();
      for (VertexId x : orbit) dec.orbit_of[x] = dec.representatives.size();
      dec.representatives.push_back(Representative{
          n, w, ColoredAutomorphism::translation(f.degree, c.word_of(k.ball->address(w)))});
    }
  }
  return dec;
}

TreeFactorization factorize(const ColoredAutomorphism& g, const CartanDecomposition& dec,
                            int certify_radius) {
  const auto c = coloring_of(dec.k);
  const ColorWord gv = g(ColorWord{});
  if (static_cast<int>(gv.size()) > dec.max_sphere) {
    throw std::invalid_argument("factorize: g(v) lies outside the enumerated spheres");
  }
  const VertexId x = dec.k.ball->at(c.address_of(gv));
  const std::size_t r = dec.orbit_of.at(x);
  const auto& rep = dec.representatives[r];
  std::optional<std::size_t> mover;
  for (std::size_t i = 0; i < dec.k.elements.size() && !mover; ++i) {
    if (dec.k.elements[i](x) == rep.w) mover = i;
  }
  if (!mover) throw std::logic_error("factorize: orbit table inconsistent with K");
  const auto& kl = dec.k.lifts[*mover];
  TreeFactorization out{kl.inverse(), r, rep.a.inverse() * kl * g, false, certify_radius};
  const PermGroup f = dec.f.group();
  out.verified = out.k_prime.fixes(ColorWord{}) && out.k.fixes(ColorWord{}) &&
                 membership_U1(out.k, f, certify_radius) &&
                 membership_U1(out.k_prime, f, certify_radius) &&
                 (out.k * rep.a * out.k_prime).agrees_with(g, certify_radius);
  return out;
}

PartitionReport double_coset_partition(const CartanDecomposition& dec,
                                       const std::vector<ColoredAutomorphism>& population) {
  require_lifts(dec.k);
  PartitionReport report;
  report.radius = dec.k.ball->radius();
  std::set<ImageKey> seen;
  report.disjoint = true;
  for (const auto& rep : dec.representatives) {
    std::set<ImageKey> coset;
    for (const auto& k1 : dec.k.lifts) {
      const auto left = k1 * rep.a;
      for (const auto& k2 : dec.k.lifts) coset.insert((left * k2).restrict_to(dec.k.ball).images());
    }
    report.coset_sizes.push_back(coset.size());
    for (const auto& key : coset) {
      if (!seen.insert(key).second) report.disjoint = false;
    }
  }
  std::set<ImageKey> target;
  for (const auto& g : population) target.insert(g.restrict_to(dec.k.ball).images());
  report.covers = target == seen;
  return report;
}

bool is_left_coset_decomposition(const GroupBall& k, const GroupBall& sub,
                                 const std::vector<std::size_t>& reps) {
  for (std::size_t r : reps) {
    if (r >= k.elements.size()) return false;
  }
  for (const auto& x : sub.elements) {
    if (!k.contains(x)) return false;
  }
  for (const auto& x : k.elements) {
    int hits = 0;
    for (std::size_t r : reps) {
      if (sub.contains(compose(invert(k.elements[r]), x))) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

std::vector<ColoredAutomorphism> transport_representatives(
    const std::vector<ColoredAutomorphism>& coset_reps,
    const std::vector<ColoredAutomorphism>& a) {
  std::vector<ColoredAutomorphism> out;
  out.reserve(coset_reps.size() * coset_reps.size() * a.size());
  for (const auto& gi : coset_reps) {
    for (const auto& rep : a) {
      for (const auto& gj : coset_reps) out.push_back(gi.inverse() * rep * gj);
    }
  }
  return out;
}

TransportedFactorization factorize_transported(const ColoredAutomorphism& g,
                                               const CartanDecomposition& dec,
                                               const GroupBall& sub,
                                               const std::vector<std::size_t>& coset_reps,
                                               int certify_radius) {
  const auto f = factorize(g, dec, certify_radius);
  const auto& ball = dec.k.ball;
  const auto k_ball = f.k.restrict_to(ball);
  const auto kp_ball = f.k_prime.restrict_to(ball);
  std::optional<std::size_t> i_found;
  std::optional<std::size_t> j_found;
  for (std::size_t t = 0; t < coset_reps.size(); ++t) {
    const auto& gt = dec.k.elements[coset_reps[t]];
    if (!i_found && sub.contains(compose(k_ball, gt))) i_found = t;
    if (!j_found && sub.contains(compose(invert(gt), kp_ball))) j_found = t;
  }
  if (!i_found || !j_found) throw std::invalid_argument("coset decomposition does not cover K");
  const auto& gi = dec.k.lifts[coset_reps[*i_found]];
  const auto& gj = dec.k.lifts[coset_reps[*j_found]];
  TransportedFactorization out{f.k * gi,
                               gi.inverse() * dec.representatives[f.representative].a * gj,
                               gj.inverse() * f.k_prime,
                               *i_found,
                               f.representative,
                               *j_found,
                               false};
  out.verified = f.verified && sub.contains(out.k1.restrict_to(ball)) &&
                 sub.contains(out.k2.restrict_to(ball)) &&
                 (out.k1 * out.a_prime * out.k2).agrees_with(g, certify_radius);
  return out;
}

std::vector<std::size_t> select_representatives_for_supergroup(
    const GroupBall& big, const std::vector<ColoredAutomorphism>& a) {
  require_lifts(big);
  std::vector<std::size_t> kept;
  std::set<ImageKey> covered;
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::set<ImageKey> coset;
    for (const auto& k1 : big.lifts) {
      const auto left = k1 * a[r];
      for (const auto& k2 : big.lifts) coset.insert((left * k2).restrict_to(big.ball).images());
    }
    const bool fresh = std::none_of(coset.begin(), coset.end(),
                                    [&](const ImageKey& key) { return covered.count(key) > 0; });
    if (!fresh) continue;
    kept.push_back(r);
    covered.insert(coset.begin(), coset.end());
  }
  return kept;
}

bool is_bounded(const std::vector<ColoredAutomorphism>& seq, int bound) {
  return std::all_of(seq.begin(), seq.end(), [&](const ColoredAutomorphism& g) {
    return static_cast<int>(g(ColorWord{}).size()) < bound;
  });
}

bool is_bounded(const std::vector<FiniteTreeAutomorphism>& seq, VertexId v, int bound) {
  return std::all_of(seq.begin(), seq.end(),
                     [&](const FiniteTreeAutomorphism& g) { return g.displacement(v) < bound; });
}

HalfTreeSearch half_tree_fixator_witness(const GroupBall& k, const HalfTreeRef& h) {
  require_lifts(k);
  const auto& ball = *k.ball;
  if (!ball.adjacent(h.v, h.w)) throw std::invalid_argument("half-tree: {v,w} is not an edge");
  if (!ball.is_interior(h.v) || !ball.is_interior(h.w)) {
    throw DepthError("half-tree witness: edge must be interior to the ball");
  }
  const auto c = coloring_of(k);
  std::vector<ColorWord> region;
  for (const auto& x : words_within(c.degree(), ball.radius() - 1)) {
    if (in_half_tree(ball, h, c.address_of(x))) region.push_back(x);
  }
  HalfTreeSearch out;
  out.radius = ball.radius();
  for (std::size_t i = 0; i < k.elements.size(); ++i) {
    ++out.searched;
    if (k.elements[i].is_identity()) continue;
    const bool fixes = std::all_of(region.begin(), region.end(), [&](const ColorWord& x) {
      auto val = k.lifts[i].evaluate(x);
      return val.image == x && val.local.is_identity();
    });
    if (fixes) {
      out.witness = HalfTreeWitness{i, k.elements[i], k.lifts[i]};
      return out;
    }
  }
  return out;
}

ContractionSearch contraction_witness_search(const std::vector<ColoredAutomorphism>& seq,
                                             const GroupBall& k, int bound, int certify_radius) {
  ContractionSearch out;
  if (is_bounded(seq, bound)) {
    out.reason = "bounded";
    return out;
  }
  std::vector<std::size_t> chosen;
  std::vector<ColorWord> moved;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ColorWord gv = seq[i](ColorWord{});
    if (static_cast<int>(gv.size()) >= static_cast<int>(chosen.size()) + 1) {
      chosen.push_back(i);
      moved.push_back(std::move(gv));
    }
  }
  // Common first step: the largest class, ties to the smaller colour.
  std::map<int, std::vector<std::size_t>> by_step;
  for (std::size_t t = 0; t < chosen.size(); ++t) by_step[moved[t].front()].push_back(t);
  auto best = by_step.begin();
  for (auto it = by_step.begin(); it != by_step.end(); ++it) {
    if (it->second.size() > best->second.size()) best = it;
  }
  std::vector<std::size_t> through, off;
  for (std::size_t t : best->second) {
    const auto& a = seq[chosen[t]];
    const auto twice = a(a(ColorWord{}));
    (twice.size() == 2 * moved[t].size() ? through : off).push_back(t);
  }
  const bool on_axis = through.size() >= off.size();
  const auto& picked = on_axis ? through : off;

  const auto c = coloring_of(k);
  const VertexId v = TreeBall::kBase;
  const VertexId w = k.ball->at(c.address_of(ColorWord{static_cast<std::uint8_t>(best->first)}));
  const HalfTreeRef side{v, w, on_axis ? v : w};
  auto search = half_tree_fixator_witness(k, side);
  if (!search.witness) {
    out.reason = "half-tree fixator is trivial at this depth";
    return out;
  }
  ContractionCertificate cert{*search.witness, side, on_axis, {}, {}, {}, {}, true, certify_radius};
  const auto ball = build_regular_ball(c.degree(), certify_radius);
  const auto id = FiniteTreeAutomorphism::identity(ball);
  for (std::size_t pos = 0; pos < picked.size(); ++pos) {
    const std::size_t t = picked[pos];
    const auto& a = seq[chosen[t]];
    const auto conj = (a * cert.witness.lift * a.inverse()).restrict_to(ball);
    const auto depth = agreement_depth(conj, id, v);
    const int ell = static_cast<int>(moved[t].size());
    cert.indices.push_back(chosen[t]);
    cert.displacements.push_back(ell);
    cert.depths.push_back(depth.depth);
    cert.caps.push_back(depth.cap);
    const int needed = std::min(std::max(ell, static_cast<int>(pos) + 1), depth.cap);
    if (depth.depth < needed) cert.law_holds = false;
  }
  out.certificate = std::move(cert);
  return out;
}

nlohmann::json to_json(const CartanDecomposition& dec) {
  const auto c = coloring_of(dec.k);
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : dec.representatives) {
    reps.push_back({{"sphere", r.sphere},
                    {"vertex", r.w},
                    {"word", c.word_of(dec.k.ball->address(r.w))}});
  }
  return {{"max_sphere", dec.max_sphere},
          {"k_order", dec.k.size()},
          {"radius", dec.k.ball->radius()},
          {"local_group", to_json(dec.f)},
          {"representatives", reps}};
}

nlohmann::json to_json(const ContractionSearch& s) {
  if (!s.certificate) return {{"found", false}, {"reason", s.reason}};
  const auto& c = *s.certificate;
  return {{"found", true},
          {"radius", c.radius},
          {"on_axis", c.on_axis},
          {"side", {{"v", c.side.v}, {"w", c.side.w}, {"side", c.side.side}}},
          {"witness", to_json(c.witness.x)},
          {"indices", c.indices},
          {"displacements", c.displacements},
          {"depths", c.depths},
          {"caps", c.caps},
          {"law_holds", c.law_holds}};
}

}  // namespace tdlc
