#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/universal_group.hpp"

namespace tdlc {

/// Orbits of the elements of gb fixing v on the sphere S(v, n). Each orbit
/// is sorted and the orbits are ordered by their smallest vertex id, which
/// is also the chosen representative.
std::vector<std::vector<VertexId>> sphere_orbits(const GroupBall& gb, VertexId v, int n);

struct Representative {
  int sphere = 0;
  VertexId w = TreeBall::kBase;
  /// Exact mover with a(base) = w.
  ColoredAutomorphism a;
};

/// G = K A K for G = U_1(F) around the base vertex, K = G_v.
struct CartanDecomposition {
  /// K restricted to B(v, R), with exact lifts.
  GroupBall k;
  LocalGroup f;
  int max_sphere = 0;
  std::vector<Representative> representatives;
  /// representative index per vertex of B(v, max_sphere)
  std::vector<std::size_t> orbit_of;
};

/// One representative per K-orbit on each sphere n <= N; the movers are the
/// colour translations x -> w x, which lie in U_1(F) for every F.
CartanDecomposition enumerate_representatives(const GroupBall& k, const LocalGroup& f, int n_max);

struct TreeFactorization {
  ColoredAutomorphism k;
  std::size_t representative = 0;
  ColoredAutomorphism k_prime;
  /// k * a * k_prime == g on B(v, certified_radius), k and k_prime fix v
  /// and are in U_1(F) on that ball.
  bool verified = false;
  int certified_radius = 0;
};

TreeFactorization factorize(const ColoredAutomorphism& g, const CartanDecomposition& dec,
                            int certify_radius);

struct PartitionReport {
  bool disjoint = false;
  bool covers = false;
  std::vector<std::size_t> coset_sizes;
  int radius = 0;
};

/// Enumerates K a K restricted to K's ball for each representative and checks
/// that these sets are pairwise disjoint and that their union is exactly
/// `population` (restricted to the same ball).
PartitionReport double_coset_partition(const CartanDecomposition& dec,
                                       const std::vector<ColoredAutomorphism>& population);

/// True iff K = disjoint union of g_i K' on the ball, where g_i = k.elements[reps[i]].
bool is_left_coset_decomposition(const GroupBall& k, const GroupBall& sub,
                                 const std::vector<std::size_t>& reps);

/// A' = { g_i^-1 a g_j }, ordered by (i, a, j).
std::vector<ColoredAutomorphism> transport_representatives(
    const std::vector<ColoredAutomorphism>& coset_reps, const std::vector<ColoredAutomorphism>& a);

struct TransportedFactorization {
  ColoredAutomorphism k1;
  ColoredAutomorphism a_prime;
  ColoredAutomorphism k2;
  std::size_t i = 0;
  std::size_t representative = 0;
  std::size_t j = 0;
  bool verified = false;
};

/// Factors g as k1 a' k2 with k1, k2 in K' and a' = g_i^-1 a g_j.
TransportedFactorization factorize_transported(const ColoredAutomorphism& g,
                                               const CartanDecomposition& dec,
                                               const GroupBall& sub,
                                               const std::vector<std::size_t>& coset_reps,
                                               int certify_radius);

/// For K' containing K: keeps a representative when its K' double coset
/// (on the ball) misses those of the representatives already kept.
std::vector<std::size_t> select_representatives_for_supergroup(
    const GroupBall& big, const std::vector<ColoredAutomorphism>& a);

/// Finite-depth proxy: every displacement d(v, g_i v) stays below `bound`.
bool is_bounded(const std::vector<ColoredAutomorphism>& seq, int bound);
bool is_bounded(const std::vector<FiniteTreeAutomorphism>& seq, VertexId v, int bound);

struct HalfTreeWitness {
  std::size_t index = 0;
  FiniteTreeAutomorphism x;
  ColoredAutomorphism lift;
};

struct HalfTreeSearch {
  std::optional<HalfTreeWitness> witness;
  std::size_t searched = 0;
  int radius = 0;
};

/// A nontrivial element of K whose lift fixes the half-tree h pointwise.
/// Both endpoints of h must be interior to K's ball.
HalfTreeSearch half_tree_fixator_witness(const GroupBall& k, const HalfTreeRef& h);

struct ContractionCertificate {
  /// x, both on K's ball and as an exact lift.
  HalfTreeWitness witness;
  HalfTreeRef side;
  bool on_axis = false;
  /// Indices into the input sequence, in order.
  std::vector<std::size_t> indices;
  std::vector<int> displacements;
  std::vector<int> depths;
  std::vector<int> caps;
  /// depths[i] >= min(displacements[i], caps[i]) and depths[i] >= min(i+1, caps[i])
  bool law_holds = false;
  int radius = 0;
};

struct ContractionSearch {
  std::optional<ContractionCertificate> certificate;
  std::string reason;
};

/// Follows the half-tree argument: subsequence with growing displacement,
/// common first step w, then a witness fixing the half-tree on the side
/// of v (translations through v) or of w (otherwise).
ContractionSearch contraction_witness_search(const std::vector<ColoredAutomorphism>& seq,
                                             const GroupBall& k, int bound, int certify_radius);

nlohmann::json to_json(const CartanDecomposition& dec);
nlohmann::json to_json(const ContractionSearch& s);

}  // namespace tdlc
