#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/errors.hpp"

namespace tdlc {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

/// A vertex of the infinite tree, named by the child slots taken on the
/// way down from the base vertex. The empty address is the base.
using Address = std::vector<std::uint8_t>;

struct AddressHash {
  std::size_t operator()(const Address& a) const noexcept;
};

/// Distance in the infinite tree between two addresses.
int address_distance(const Address& a, const Address& b);

/// True iff `prefix` is an ancestor-or-self of `a`.
bool is_prefix(const Address& prefix, const Address& a);

/// Label data for a label-regular tree.
///
/// Each label has a fixed neighbour multiset. A vertex of label L whose
/// parent has label P gets children labelled by neighbours(L) with the
/// first occurrence of P removed; the base vertex gets all of neighbours(L).
/// Neighbour lists are kept sorted by label index, which fixes the child
/// order (by label, then by slot).
class LabelVector {
 public:
  LabelVector(std::vector<std::string> labels,
              const std::map<std::string, int>& degree_of,
              const std::map<std::string, std::vector<std::string>>& neighbors);

  /// A single label of degree d: the d-regular tree.
  static LabelVector regular(int d);

  const std::vector<std::string>& labels() const { return labels_; }
  int label_count() const { return static_cast<int>(labels_.size()); }
  int index_of(const std::string& label) const;
  int degree(int label) const { return degrees_.at(static_cast<std::size_t>(label)); }
  const std::vector<int>& neighbors(int label) const {
    return neighbors_.at(static_cast<std::size_t>(label));
  }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::vector<std::vector<int>> neighbors_;
};

/// The infinite locally finite tree a ball is cut from.
class TreeShape {
 public:
  static TreeShape regular(int degree);
  static TreeShape label_regular(LabelVector labels, const std::string& root_label);

  bool is_regular() const { return regular_; }
  /// Degree of the regular tree; throws for label-regular shapes.
  int regular_degree() const;
  const LabelVector& label_vector() const { return labels_; }
  int root_label() const { return root_label_; }

  /// Labels of the children of a vertex labelled `label` whose parent has
  /// label `parent_label` (-1 for the base vertex).
  const std::vector<int>& child_labels(int label, int parent_label) const;

  /// Label of an arbitrary vertex of the infinite tree; throws on an
  /// address that names no vertex.
  int label_of(const Address& a) const;
  bool is_valid(const Address& a) const;
  /// Number of neighbours of the vertex at `a` (its degree).
  int degree_at(const Address& a) const;

  friend bool operator==(const TreeShape& a, const TreeShape& b) {
    return a.regular_ == b.regular_ && a.labels_ == b.labels_ &&
           a.root_label_ == b.root_label_;
  }

 private:
  TreeShape(bool regular, LabelVector labels, int root_label);

  bool regular_;
  LabelVector labels_;
  int root_label_;
  // child label table indexed by label * (n + 1) + (parent_label + 1)
  std::vector<std::vector<int>> child_table_;
};

struct TreeVertex {
  Address address;
  VertexId parent = kNoVertex;
  std::vector<VertexId> children;
  int depth = 0;
  int label = 0;
};

/// The ball B(base, R) of an infinite tree. Vertex ids follow BFS order,
/// so the ids of B(base, r) are exactly 0 .. count(r) - 1 for every r <= R.
class TreeBall {
 public:
  static constexpr VertexId kBase = 0;

  TreeBall(TreeShape shape, int radius, const Guard& guard = {});

  const TreeShape& shape() const { return shape_; }
  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }
  const TreeVertex& vertex(VertexId v) const;
  const std::vector<TreeVertex>& vertices() const { return vertices_; }
  const Address& address(VertexId v) const { return vertex(v).address; }
  int depth(VertexId v) const { return vertex(v).depth; }
  bool is_labelled() const { return !shape_.is_regular(); }

  std::optional<VertexId> find(const Address& a) const;
  /// Like find, but throws std::invalid_argument when `a` is outside.
  VertexId at(const Address& a) const;

  /// Neighbours inside the ball: parent first, then children in order.
  std::vector<VertexId> neighbors(VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const;
  /// Full degree holds (depth < radius).
  bool is_interior(VertexId v) const { return depth(v) < radius_; }
  /// Number of vertices of B(base, r) for r <= radius.
  std::size_t count_within(int r) const;

 private:
  TreeShape shape_;
  int radius_;
  std::vector<TreeVertex> vertices_;
  std::vector<std::size_t> depth_end_;
  std::unordered_map<Address, VertexId, AddressHash> index_;
};

using TreeBallPtr = std::shared_ptr<const TreeBall>;

/// Ball of radius R in the d-regular tree.
TreeBallPtr build_regular_ball(int d, int radius, const Guard& guard = {});
/// Ball of radius R in a label-regular tree rooted at a vertex of `root_label`.
TreeBallPtr build_label_regular_ball(const LabelVector& labels,
                                     const std::string& root_label, int radius,
                                     const Guard& guard = {});
/// Same tree, different radius.
TreeBallPtr resize_ball(const TreeBall& ball, int radius);

/// 1 + d((d-1)^R - 1)/(d-2), with the d = 2 limit 2R + 1.
std::size_t regular_ball_count(int d, int radius);

int distance(const TreeBall& ball, VertexId u, VertexId v);

struct SphereResult {
  std::vector<VertexId> vertices;
  /// False when part of the true sphere lies beyond the ball.
  bool complete = true;
};

SphereResult sphere(const TreeBall& ball, VertexId center, int n);
/// Vertices of B(center, n) that lie in the ball.
std::vector<VertexId> ball_around(const TreeBall& ball, VertexId center, int n);

/// The half-tree containing `side` after deleting the edge {v, w}.
struct HalfTreeRef {
  VertexId v = kNoVertex;
  VertexId w = kNoVertex;
  VertexId side = kNoVertex;

  VertexId other() const { return side == v ? w : v; }
  friend bool operator==(const HalfTreeRef&, const HalfTreeRef&) = default;
};

std::vector<VertexId> half_tree_vertices(const TreeBall& ball, const HalfTreeRef& h);
/// Membership test for an arbitrary address of the infinite tree.
bool in_half_tree(const TreeBall& ball, const HalfTreeRef& h, const Address& a);

nlohmann::json label_vector_to_json(const LabelVector& a);
LabelVector label_vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TreeBall& ball);
TreeBallPtr tree_ball_from_json(const nlohmann::json& j);

}  // namespace tdlc
