#include <doctest.h>

#include <algorithm>
#include <set>
#include <variant>

#include "tdlc/colored_tree.hpp"
#include "tdlc/tree_automorphism.hpp"
#include "tdlc/universal_group.hpp"

using namespace tdlc;

namespace {

// Address of the vertex at signed position p on the line T_2.
Address line_address(int p) {
  if (p == 0) return {};
  Address a(static_cast<std::size_t>(std::abs(p)), 0);
  a[0] = p > 0 ? 0 : 1;
  return a;
}

int line_position(const Address& a) {
  if (a.empty()) return 0;
  const int n = static_cast<int>(a.size());
  return a[0] == 0 ? n : -n;
}

FiniteTreeAutomorphism line_shift(const TreeBallPtr& ball, int by) {
  std::vector<Address> images;
  for (const auto& v : ball->vertices()) images.push_back(line_address(line_position(v.address) + by));
  return FiniteTreeAutomorphism(ball, images);
}

// Swaps the subtrees below child slots 0 and 1 of the vertex at `at`.
FiniteTreeAutomorphism swap_below(const TreeBallPtr& ball, const Address& at) {
  std::vector<Address> images;
  for (const auto& v : ball->vertices()) {
    Address a = v.address;
    if (a.size() > at.size() && is_prefix(at, a) && a[at.size()] < 2) a[at.size()] ^= 1;
    images.push_back(a);
  }
  return FiniteTreeAutomorphism(ball, images);
}

ColoredAutomorphism base_rotation() {
  return ColoredAutomorphism::from_portrait(Portrait(3, 0, {{ColorWord{}, Perm::cycle(3, {0, 1, 2})}}));
}

std::set<VertexId> mapped(const FiniteTreeAutomorphism& k, const std::vector<VertexId>& vs) {
  std::set<VertexId> out;
  for (VertexId v : vs) out.insert(k(v));
  return out;
}

}  // namespace

TEST_CASE("construction validates adjacency") {
  auto ball = build_regular_ball(3, 1);
  CHECK_THROWS_AS(FiniteTreeAutomorphism::from_permutation(ball, {1, 0, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteTreeAutomorphism::from_permutation(ball, {0, 1, 1, 3}), std::invalid_argument);
  CHECK_NOTHROW(FiniteTreeAutomorphism::from_permutation(ball, {0, 2, 3, 1}));
}

TEST_CASE("compose and invert") {
  auto ball = build_regular_ball(3, 1);
  auto g = FiniteTreeAutomorphism::from_permutation(ball, {0, 2, 3, 1});
  auto h = FiniteTreeAutomorphism::from_permutation(ball, {0, 2, 1, 3});
  auto id = FiniteTreeAutomorphism::identity(ball);
  CHECK(compose(g, invert(g)).is_identity());
  CHECK(compose(id, h) == h);
  // g(h(x)) by table: 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
  CHECK(compose(g, h).permutation() == std::vector<VertexId>{0, 3, 2, 1});
}

TEST_CASE("classification") {
  auto t3 = build_regular_ball(3, 2);
  CHECK(std::holds_alternative<Elliptic>(classify(FiniteTreeAutomorphism::identity(t3))));

  auto t2 = build_regular_ball(2, 4);
  auto c = classify(line_shift(t2, 1));
  REQUIRE(std::holds_alternative<Hyperbolic>(c));
  CHECK(std::get<Hyperbolic>(c).translation_length == 1);
  CHECK(std::get<Hyperbolic>(c).axis.size() == 7);

  auto swap = ColoredAutomorphism::translation(3, {0}).restrict_to(t3);
  auto inv = classify(swap);
  REQUIRE(std::holds_alternative<Inversion>(inv));
  const auto e = std::get<Inversion>(inv);
  CHECK(std::set<VertexId>{e.u, e.w} == std::set<VertexId>{0, t3->at({0})});
}

TEST_CASE("agreement depth examples") {
  auto t3 = build_regular_ball(3, 2);
  auto id = FiniteTreeAutomorphism::identity(t3);
  auto g = base_rotation().restrict_to(t3);
  CHECK(agreement_depth(g, g, 0).depth == agreement_depth(g, g, 0).cap);
  CHECK(agreement_depth(g, g, 0).cap == 2);
  CHECK(agreement_depth(id, g, 0).depth == 0);
  auto t = ColoredAutomorphism::translation(3, {0, 1}).restrict_to(t3);
  CHECK(agreement_depth(id, t, 0).depth == -1);
}

TEST_CASE("agreement depth is left invariant") {
  auto ball = build_regular_ball(3, 3);
  auto k = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 3);
  auto id = FiniteTreeAutomorphism::identity(ball);
  for (std::size_t i = 0; i < k.size(); i += 97) {
    for (std::size_t j = 0; j < k.size(); j += 61) {
      const auto& g = k.elements[i];
      const auto& h = k.elements[j];
      for (VertexId v = 0; v < ball->size(); v += 5) {
        CHECK(agreement_depth(g, h, v).depth == agreement_depth(compose(invert(h), g), id, v).depth);
      }
    }
  }
}

TEST_CASE("convergence certificates") {
  auto ball = build_regular_ball(3, 4);
  auto id = FiniteTreeAutomorphism::identity(ball);
  auto constant_id = converges_to_identity({id, id, id}, 0);
  CHECK(constant_id.depths == std::vector<int>{4, 4, 4});
  CHECK(constant_id.converges);

  std::vector<FiniteTreeAutomorphism> seq;
  for (int i = 0; i < 4; ++i) seq.push_back(swap_below(ball, Address(static_cast<std::size_t>(i), 0)));
  seq.push_back(id);
  auto growing = converges_to_identity(seq, 0);
  CHECK(growing.depths == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(growing.converges);
  CHECK(growing.first_index_at_least[3] == 3);

  auto g = swap_below(ball, {0});
  auto constant = converges_to_identity({g, g, g}, 0);
  CHECK(constant.depths == std::vector<int>{1, 1, 1});
  CHECK_FALSE(constant.converges);
}

TEST_CASE("classification is conjugation equivariant") {
  auto ball = build_regular_ball(3, 5);
  auto k = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 2);
  std::vector<ColoredAutomorphism> gs;
  for (const auto& u : words_within(3, 3)) gs.push_back(ColoredAutomorphism::translation(3, u));
  gs.push_back(base_rotation());
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    const auto g = gs[gi].restrict_to(ball);
    const auto cg = classify(g);
    for (std::size_t ki = 0; ki < k.size(); ki += 7) {
      const auto& kk = k.lifts[ki];
      const auto kr = kk.restrict_to(ball);
      const auto conj = classify((kk * gs[gi] * kk.inverse()).restrict_to(ball));
      REQUIRE(kind_name(conj) == kind_name(cg));
      if (const auto* h = std::get_if<Hyperbolic>(&cg)) {
        const auto& h2 = std::get<Hyperbolic>(conj);
        CHECK(h2.translation_length == h->translation_length);
        CHECK(mapped(kr, h->axis) == std::set<VertexId>(h2.axis.begin(), h2.axis.end()));
      } else if (const auto* e = std::get_if<Inversion>(&cg)) {
        const auto& e2 = std::get<Inversion>(conj);
        CHECK(mapped(kr, {e->u, e->w}) == std::set<VertexId>{e2.u, e2.w});
      } else if (const auto* f = std::get_if<Elliptic>(&cg)) {
        CHECK((kk * gs[gi] * kk.inverse()).restrict_to(ball).displacement(kr(f->fixed)) == 0);
      }
    }
  }
}

TEST_CASE("min displacement is zero iff there is an interior fixed vertex") {
  auto ball = build_regular_ball(3, 3);
  for (const auto& u : words_within(3, 2)) {
    const auto g = (ColoredAutomorphism::translation(3, u) * base_rotation()).restrict_to(ball);
    int min_disp = 1 << 20;
    bool fixed = false;
    for (VertexId v = 0; v < ball->size(); ++v) {
      if (!ball->is_interior(v)) continue;
      min_disp = std::min(min_disp, g.displacement(v));
      fixed = fixed || g.displacement(v) == 0;
    }
    CHECK((min_disp == 0) == fixed);
    if (fixed) CHECK(std::holds_alternative<Elliptic>(classify(g)));
  }
}

TEST_CASE("restriction and JSON") {
  auto ball = build_regular_ball(3, 3);
  auto g = (ColoredAutomorphism::translation(3, {1, 2}) * base_rotation()).restrict_to(ball);
  CHECK(g.restrict_to(1).radius() == 1);
  CHECK_THROWS_AS(g.restrict_to(4), DepthError);
  CHECK(tree_automorphism_from_json(to_json(g)) == g);
  auto k = base_rotation().restrict_to(ball);
  auto back = tree_automorphism_from_json(to_json(k));
  CHECK(back == k);
  CHECK(to_json(k).contains("perm"));
}
