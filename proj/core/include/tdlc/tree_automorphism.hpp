#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/tree_ball.hpp"

namespace tdlc {

/// The restriction of a tree automorphism to a ball B(base, R).
///
/// Stored as the image address of every ball vertex, so an element that
/// moves the base (a translation, say) is still representable; images may
/// then leave the ball. When every image stays inside, the element is a
/// bijection of the ball and `permutation()` is available.
class FiniteTreeAutomorphism {
 public:
  /// Validates adjacency, local injectivity and labels.
  FiniteTreeAutomorphism(TreeBallPtr ball, std::vector<Address> images);

  static FiniteTreeAutomorphism identity(TreeBallPtr ball);
  /// From a vertex permutation of the ball; perm[x] is the image id of x.
  static FiniteTreeAutomorphism from_permutation(TreeBallPtr ball,
                                                 const std::vector<VertexId>& perm);

  const TreeBall& ball() const { return *ball_; }
  const TreeBallPtr& ball_ptr() const { return ball_; }
  int radius() const { return ball_->radius(); }

  const Address& image(VertexId v) const { return images_.at(v); }
  const std::vector<Address>& images() const { return images_; }
  /// Image of an arbitrary address inside the ball.
  Address apply(const Address& a) const;
  /// Image as a ball vertex id, if it lies in the ball.
  std::optional<VertexId> image_id(VertexId v) const { return ball_->find(images_.at(v)); }
  /// Throws std::invalid_argument if the image leaves the ball.
  VertexId operator()(VertexId v) const;

  int displacement(VertexId v) const;
  bool is_identity() const;
  bool is_ball_bijection() const;
  std::vector<VertexId> permutation() const;

  /// Same element on the smaller ball of the given radius.
  FiniteTreeAutomorphism restrict_to(int radius) const;

  friend bool operator==(const FiniteTreeAutomorphism& a, const FiniteTreeAutomorphism& b) {
    return a.ball_->radius() == b.ball_->radius() && a.images_ == b.images_;
  }
  friend bool operator<(const FiniteTreeAutomorphism& a, const FiniteTreeAutomorphism& b) {
    return a.images_ < b.images_;
  }

 private:
  FiniteTreeAutomorphism(TreeBallPtr ball, std::vector<Address> images, bool);

  TreeBallPtr ball_;
  std::vector<Address> images_;
};

/// g after h. The result lives on the largest ball where both are known.
FiniteTreeAutomorphism compose(const FiniteTreeAutomorphism& g, const FiniteTreeAutomorphism& h);
FiniteTreeAutomorphism invert(const FiniteTreeAutomorphism& g);

struct Elliptic {
  VertexId fixed = TreeBall::kBase;
};
struct Inversion {
  VertexId u = kNoVertex;
  VertexId w = kNoVertex;
};
struct Hyperbolic {
  int translation_length = 0;
  /// Interior axis vertices, in order along the axis (direction of translation
  /// when it can be seen inside the ball).
  std::vector<VertexId> axis;
};
struct Undetermined {
  std::string reason;
};
using IsometryClass = std::variant<Elliptic, Inversion, Hyperbolic, Undetermined>;

IsometryClass classify(const FiniteTreeAutomorphism& g);
std::string kind_name(const IsometryClass& c);

struct AgreementDepth {
  /// Largest k with agreement on B(v, k), or -1 when the images of v differ.
  int depth = -1;
  /// The radius up to which agreement can be certified from these balls.
  int cap = 0;
};

AgreementDepth agreement_depth(const FiniteTreeAutomorphism& g, const FiniteTreeAutomorphism& h,
                               VertexId v);

struct ConvergenceCertificate {
  std::vector<int> depths;
  int cap = 0;
  /// first_index_at_least[t] is the first i with depths[j] >= t for all j >= i,
  /// or -1 when the tail never reaches t.
  std::vector<int> first_index_at_least;
  bool converges = false;
};

/// Finite-depth proxy for g_i -> id: the tail of the sequence must reach
/// the certified cap.
ConvergenceCertificate converges_to_identity(const std::vector<FiniteTreeAutomorphism>& seq,
                                             VertexId v);

nlohmann::json to_json(const FiniteTreeAutomorphism& g);
FiniteTreeAutomorphism tree_automorphism_from_json(const nlohmann::json& j);
nlohmann::json isometry_class_to_json(const IsometryClass& c);

}  // namespace tdlc
