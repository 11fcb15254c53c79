#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/colored_tree.hpp"
#include "tdlc/permutation.hpp"
#include "tdlc/tree_automorphism.hpp"

namespace tdlc {

/// F <= Sym(d), given by generators acting on colours 0..d-1.
struct LocalGroup {
  int degree = 0;
  std::vector<Perm> generators;

  PermGroup group(const Guard& guard = {}) const { return PermGroup(degree, generators, guard); }

  static LocalGroup symmetric(int d);
  static LocalGroup trivial(int d);
  /// The cyclic group generated by the d-cycle, acting regularly.
  static LocalGroup cyclic(int d);
};

/// {"degree": d, "generators": [[...one-line 1-based perms...]]}
LocalGroup local_group_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LocalGroup& f);

/// A finite collection of ball automorphisms standing in for G restricted
/// to a ball. Elements are kept sorted; `lifts`, when present, holds an
/// exact automorphism of the infinite tree for each element (same order).
struct GroupBall {
  TreeBallPtr ball;
  std::vector<FiniteTreeAutomorphism> elements;
  bool closed = false;
  std::vector<ColoredAutomorphism> lifts;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> index_of(const FiniteTreeAutomorphism& g) const;
  bool contains(const FiniteTreeAutomorphism& g) const { return index_of(g).has_value(); }
};

/// Sorts and deduplicates; the result carries no lifts.
GroupBall make_group_ball(TreeBallPtr ball, std::vector<FiniteTreeAutomorphism> elements,
                          bool closed);

bool membership_U1(const FiniteTreeAutomorphism& g, const PermGroup& f, const LegalColoring& c);
/// Membership of an exact automorphism, certified on words of length <= radius.
bool membership_U1(const ColoredAutomorphism& g, const PermGroup& f, int radius);

/// |F| times, for each non-base vertex of depth < R entered along colour c,
/// the number |F| / |F.c| of tau in F sending c to a prescribed point.
std::size_t u1_stabilizer_count(const PermGroup& f, int radius);

/// Every automorphism of B(base, R) fixing the base whose local actions at
/// interior vertices lie in F, with exact lifts (rigid portraits).
GroupBall enumerate_U1_stabilizer_ball(const LocalGroup& f, int radius, const Guard& guard = {});

/// Elements of gb fixing B(v,k-1) union B(w,k-1) pointwise.
GroupBall edge_fixator(const GroupBall& gb, VertexId v, VertexId w, int k);

/// Closure within the ball of all certified edge fixators F_{k,e}.
GroupBall generate_plus_k(const GroupBall& gb, int k, const Guard& guard = {});

/// For every v with B(v,k) inside the ball there is g0 in gb agreeing with
/// g on B(v,k).
bool k_closure_membership(const FiniteTreeAutomorphism& g, const GroupBall& gb, int k);

struct HalfTreeFactorization {
  std::size_t element = 0;
  /// g1 acts as g on the half-tree containing w and trivially elsewhere.
  FiniteTreeAutomorphism g1;
  /// g2 = g * g1^-1 is supported on the other half-tree.
  FiniteTreeAutomorphism g2;
};

struct PropertyPkReport {
  bool holds = false;
  std::size_t fixator_size = 0;
  std::vector<HalfTreeFactorization> factorizations;
  std::optional<FiniteTreeAutomorphism> offending;
  std::string reason;
};

PropertyPkReport check_property_Pk(const GroupBall& gb, VertexId v, VertexId w, int k);

/// All normal subgroups as sorted element lists.
std::vector<std::vector<Perm>> normal_subgroups(const PermGroup& g, const Guard& guard = {});
bool is_semiregular(const std::vector<Perm>& elements);
bool is_semiprimitive(const LocalGroup& f, const Guard& guard = {});
bool is_generated_by_point_stabilizers(const LocalGroup& f, const Guard& guard = {});

/// The k-local action at v: a permutation of words_within(d, k), sending u
/// to the word from g(v) to g(v u). Needs depth(v) + k <= R.
Perm k_local_action(const FiniteTreeAutomorphism& g, VertexId v, int k, const LegalColoring& c);
/// U_k(F) membership for F given on the points of words_within(d, k).
bool membership_Uk(const FiniteTreeAutomorphism& g, const PermGroup& f, int k,
                   const LegalColoring& c);

}  // namespace tdlc
