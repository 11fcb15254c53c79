#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "tdlc/universal_group.hpp"

using namespace tdlc;

namespace {

PermGroup sym3() { return LocalGroup::symmetric(3).group(); }
PermGroup swap01() { return PermGroup(3, {Perm::transposition(3, 0, 1)}); }

// Every automorphism of B(base, R) fixing the base, built level by level
// from bijections between child lists. No colours involved.
std::vector<FiniteTreeAutomorphism> all_base_fixing(const TreeBallPtr& ball) {
  std::vector<FiniteTreeAutomorphism> out;
  std::vector<VertexId> perm(ball->size(), kNoVertex);
  perm[0] = 0;
  std::vector<VertexId> todo;
  for (VertexId v = 0; v < ball->size(); ++v) {
    if (!ball->vertex(v).children.empty()) todo.push_back(v);
  }
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == todo.size()) {
      out.push_back(FiniteTreeAutomorphism::from_permutation(ball, perm));
      return;
    }
    const auto& from = ball->vertex(todo[i]).children;
    auto to = ball->vertex(perm[todo[i]]).children;
    std::sort(to.begin(), to.end());
    do {
      for (std::size_t j = 0; j < from.size(); ++j) perm[from[j]] = to[j];
      rec(i + 1);
    } while (std::next_permutation(to.begin(), to.end()));
  };
  rec(0);
  return out;
}

// Local actions read straight off the edge colours.
bool oracle_in_U1(const FiniteTreeAutomorphism& g, const PermGroup& f, const LegalColoring& c) {
  const auto& ball = g.ball();
  for (VertexId v = 0; v < ball.size(); ++v) {
    if (!ball.is_interior(v)) continue;
    const Address& a = ball.address(v);
    std::vector<int> images;
    for (int i = 0; i < c.degree(); ++i) {
      images.push_back(c.edge_color(g.apply(a), g.apply(c.neighbor(a, i))));
    }
    if (!f.contains(Perm(images))) return false;
  }
  return true;
}

FiniteTreeAutomorphism swap_below(const TreeBallPtr& ball, const Address& at, int s1, int s2) {
  std::vector<Address> images;
  for (const auto& v : ball->vertices()) {
    Address a = v.address;
    if (a.size() > at.size() && is_prefix(at, a)) {
      if (a[at.size()] == s1) {
        a[at.size()] = static_cast<std::uint8_t>(s2);
      } else if (a[at.size()] == s2) {
        a[at.size()] = static_cast<std::uint8_t>(s1);
      }
    }
    images.push_back(a);
  }
  return FiniteTreeAutomorphism(ball, images);
}

std::vector<PermGroup> subgroups_of_sym3() {
  return {PermGroup(3, {}), swap01(), PermGroup(3, {Perm::transposition(3, 1, 2)}),
          PermGroup(3, {Perm::cycle(3, {0, 1, 2})}), sym3()};
}

}  // namespace

TEST_CASE("local actions") {
  auto ball = build_regular_ball(3, 2);
  LegalColoring c(3);
  CHECK(local_action(FiniteTreeAutomorphism::identity(ball), 0, c).is_identity());
  auto rot = ColoredAutomorphism::from_portrait(Portrait(3, 0, {{ColorWord{}, Perm::cycle(3, {0, 1, 2})}}));
  CHECK(local_action(rot.restrict_to(ball), 0, c) == Perm::cycle(3, {0, 1, 2}));
  auto swap = swap_below(ball, {}, 0, 1);
  CHECK(local_action(swap, 0, c) == Perm::transposition(3, 0, 1));
  CHECK_THROWS(local_action(swap, ball->at({0, 0}), c));
}

TEST_CASE("membership examples") {
  auto ball = build_regular_ball(3, 2);
  LegalColoring c(3);
  CHECK(membership_U1(FiniteTreeAutomorphism::identity(ball), PermGroup(3, {}), c));
  auto swap = ColoredAutomorphism::from_portrait(Portrait(3, 0, {{ColorWord{}, Perm::transposition(3, 0, 1)}}));
  CHECK(membership_U1(swap.restrict_to(ball), swap01(), c));
  auto rot = ColoredAutomorphism::from_portrait(Portrait(3, 0, {{ColorWord{}, Perm::cycle(3, {0, 1, 2})}}));
  CHECK_FALSE(membership_U1(rot.restrict_to(ball), swap01(), c));
}

TEST_CASE("stabiliser ball counts") {
  CHECK(enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 1).size() == 6);
  CHECK(enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 2).size() == 48);
  for (int r = 0; r <= 3; ++r) CHECK(enumerate_U1_stabilizer_ball(LocalGroup::trivial(3), r).size() == 1);
  CHECK_THROWS_AS(enumerate_U1_stabilizer_ball(LocalGroup::symmetric(4), 4, Guard{1000}), InfeasibleError);
}

TEST_CASE("counting law against brute-force portraits") {
  LegalColoring c(3);
  for (int r = 1; r <= 2; ++r) {
    auto ball = build_regular_ball(3, r);
    const auto everything = all_base_fixing(ball);
    for (const auto& f : subgroups_of_sym3()) {
      std::set<FiniteTreeAutomorphism> brute;
      for (const auto& g : everything) {
        if (oracle_in_U1(g, f, c)) brute.insert(g);
      }
      LocalGroup lf{3, f.generators()};
      const auto gb = enumerate_U1_stabilizer_ball(lf, r);
      CHECK(gb.size() == brute.size());
      CHECK(u1_stabilizer_count(f, r) == brute.size());
      CHECK(std::set<FiniteTreeAutomorphism>(gb.elements.begin(), gb.elements.end()) == brute);
      for (std::size_t i = 0; i < gb.size(); ++i) CHECK(gb.lifts[i].restrict_to(ball) == gb.elements[i]);
    }
  }
}

TEST_CASE("U1 membership is closed under compose and invert") {
  auto ball = build_regular_ball(3, 2);
  LegalColoring c(3);
  const auto everything = all_base_fixing(ball);
  for (const auto& f : subgroups_of_sym3()) {
    std::vector<FiniteTreeAutomorphism> members;
    for (const auto& g : everything) {
      if (membership_U1(g, f, c)) members.push_back(g);
    }
    for (const auto& g : members) {
      CHECK(membership_U1(invert(g), f, c));
      for (const auto& h : members) CHECK(membership_U1(compose(g, h), f, c));
    }
  }
}

TEST_CASE("edge fixators") {
  auto gb = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 2);
  const VertexId w = gb.ball->at({0});
  auto fix = edge_fixator(gb, 0, w, 1);
  std::size_t direct = 0;
  for (const auto& g : gb.elements) direct += g(w) == w ? 1 : 0;
  CHECK(fix.size() == direct);
  CHECK(fix.size() == 16);
  CHECK(fix.contains(FiniteTreeAutomorphism::identity(gb.ball)));

  auto trivial = enumerate_U1_stabilizer_ball(LocalGroup::trivial(3), 2);
  CHECK(edge_fixator(trivial, 0, w, 1).size() == 1);
  CHECK_THROWS_AS(edge_fixator(gb, 0, w, 3), DepthError);
}

TEST_CASE("fixators shrink as k grows") {
  auto gb = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 3);
  const VertexId w = gb.ball->at({1});
  auto f1 = edge_fixator(gb, 0, w, 1);
  auto f2 = edge_fixator(gb, 0, w, 2);
  CHECK(f2.size() < f1.size());
  for (const auto& g : f2.elements) CHECK(f1.contains(g));
}

TEST_CASE("G^{+k} closures") {
  auto trivial = enumerate_U1_stabilizer_ball(LocalGroup::trivial(3), 2);
  CHECK(generate_plus_k(trivial, 1).size() == 1);

  auto gb = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 2);
  auto plus = generate_plus_k(gb, 1);
  for (const auto& g : plus.elements) CHECK(gb.contains(g));
  const std::size_t index = gb.size() / plus.size();
  CHECK(gb.size() % plus.size() == 0);
  CHECK((index == 1 || index == 2));
  // Sym(3) is generated by point stabilisers, so the edge fixators already
  // give the whole vertex stabiliser on this ball.
  CHECK(index == 1);

  // Normalised by gb: conjugating a generator stays inside.
  const VertexId w = gb.ball->at({2});
  for (const auto& x : edge_fixator(gb, 0, w, 1).elements) {
    for (const auto& k : gb.elements) CHECK(plus.contains(compose(k, compose(x, invert(k)))));
  }

  // On the line, fixing an edge fixes everything.
  auto line = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(2), 2);
  CHECK(line.size() == 2);
  CHECK(generate_plus_k(line, 1).size() == 1);
}

TEST_CASE("k-closure membership") {
  auto gb = enumerate_U1_stabilizer_ball(LocalGroup{3, {Perm::transposition(3, 0, 1)}}, 2);
  for (const auto& g : gb.elements) CHECK(k_closure_membership(g, gb, 1));
  CHECK(k_closure_membership(FiniteTreeAutomorphism::identity(gb.ball), gb, 1));
  // Below the colour-0 neighbour the swap exchanges colours 1 and 2.
  auto illegal = swap_below(gb.ball, {0}, 0, 1);
  CHECK_FALSE(membership_U1(illegal, swap01(), LegalColoring(3)));
  CHECK_FALSE(k_closure_membership(illegal, gb, 1));
  CHECK_THROWS_AS(k_closure_membership(illegal, gb, 3), DepthError);
}

TEST_CASE("Property P_k") {
  auto gb = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 3);
  const VertexId w = gb.ball->at({0});
  auto report = check_property_Pk(gb, 0, w, 1);
  CHECK(report.holds);
  CHECK(report.factorizations.size() == report.fixator_size);
  for (const auto& f : report.factorizations) {
    CHECK(compose(f.g2, f.g1) == edge_fixator(gb, 0, w, 1).elements[f.element]);
  }

  auto trivial = enumerate_U1_stabilizer_ball(LocalGroup::trivial(3), 3);
  CHECK(check_property_Pk(trivial, 0, w, 1).holds);

  // A diagonal element whose two halves are missing.
  auto ball = build_regular_ball(3, 2);
  const VertexId w2 = ball->at({0});
  auto diag = compose(swap_below(ball, {0}, 0, 1), swap_below(ball, {}, 1, 2));
  auto toy = make_group_ball(ball, {FiniteTreeAutomorphism::identity(ball), diag}, true);
  auto bad = check_property_Pk(toy, 0, w2, 1);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.offending.has_value());
  CHECK(*bad.offending == diag);
}

TEST_CASE("permutation-group predicates") {
  CHECK(is_semiprimitive(LocalGroup::symmetric(3)));
  CHECK_FALSE(is_semiprimitive(LocalGroup{3, {Perm::transposition(3, 0, 1)}}));
  CHECK(is_semiprimitive(LocalGroup::cyclic(3)));
  CHECK(normal_subgroups(sym3()).size() == 3);

  CHECK(is_generated_by_point_stabilizers(LocalGroup::symmetric(3)));
  CHECK_FALSE(is_generated_by_point_stabilizers(LocalGroup::cyclic(3)));
  CHECK_FALSE(is_generated_by_point_stabilizers(LocalGroup::symmetric(2)));
  CHECK(is_generated_by_point_stabilizers(LocalGroup::symmetric(4)));
}

TEST_CASE("U_1 through the k-local interface") {
  auto ball = build_regular_ball(3, 2);
  LegalColoring c(3);
  // words_within(3, 1) = [e, 0, 1, 2]; embed <(0 1)> fixing the empty word.
  PermGroup f4(4, {Perm::transposition(4, 1, 2)});
  for (const auto& g : all_base_fixing(ball)) {
    CHECK(membership_Uk(g, f4, 1, c) == membership_U1(g, swap01(), c));
  }
}

TEST_CASE("local group JSON") {
  auto f = local_group_from_json({{"degree", 3}, {"generators", {{2, 1, 3}}}});
  CHECK(f.group().order() == 2);
  CHECK(local_group_from_json(to_json(f)).generators == f.generators);
  CHECK_THROWS(local_group_from_json({{"degree", 3}, {"generators", {{1, 1, 3}}}}));
}
