#include "tdlc/tree_automorphism.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

namespace tdlc {

namespace {

bool shapes_match(const TreeBall& a, const TreeBall& b) { return a.shape() == b.shape(); }

}  // namespace

FiniteTreeAutomorphism::FiniteTreeAutomorphism(TreeBallPtr ball, std::vector<Address> images,
                                               bool)
    : ball_(std::move(ball)), images_(std::move(images)) {}

FiniteTreeAutomorphism::FiniteTreeAutomorphism(TreeBallPtr ball, std::vector<Address> images)
    : ball_(std::move(ball)), images_(std::move(images)) {
  if (!ball_) throw std::invalid_argument("automorphism: null ball");
  if (images_.size() != ball_->size()) {
    throw std::invalid_argument("automorphism: need one image per ball vertex");
  }
  const auto& shape = ball_->shape();
  for (VertexId x = 0; x < ball_->size(); ++x) {
    const auto& ix = images_[x];
    if (!shape.is_valid(ix)) throw std::invalid_argument("automorphism: image is not a vertex");
    if (shape.label_of(ix) != ball_->vertex(x).label) {
      throw std::invalid_argument("automorphism: labels not preserved");
    }
    const auto& tv = ball_->vertex(x);
    if (tv.parent == kNoVertex) continue;
    const auto& ip = images_[tv.parent];
    if (address_distance(ix, ip) != 1) {
      throw std::invalid_argument("automorphism: adjacency not preserved");
    }
    const auto& pv = ball_->vertex(tv.parent);
    if (pv.parent != kNoVertex && images_[pv.parent] == ix) {
      throw std::invalid_argument("automorphism: not injective around a vertex");
    }
  }
  for (VertexId x = 0; x < ball_->size(); ++x) {
    std::set<Address> seen;
    for (VertexId c : ball_->vertex(x).children) {
      if (!seen.insert(images_[c]).second) {
        throw std::invalid_argument("automorphism: not injective around a vertex");
      }
    }
  }
}

FiniteTreeAutomorphism FiniteTreeAutomorphism::identity(TreeBallPtr ball) {
  std::vector<Address> images;
  images.reserve(ball->size());
  for (const auto& v : ball->vertices()) images.push_back(v.address);
  return FiniteTreeAutomorphism(std::move(ball), std::move(images), true);
}

FiniteTreeAutomorphism FiniteTreeAutomorphism::from_permutation(
    TreeBallPtr ball, const std::vector<VertexId>& perm) {
  if (perm.size() != ball->size()) throw std::invalid_argument("permutation has wrong size");
  std::vector<bool> hit(perm.size(), false);
  std::vector<Address> images;
  images.reserve(perm.size());
  for (VertexId y : perm) {
    if (y >= perm.size() || hit[y]) throw std::invalid_argument("not a permutation of the ball");
    hit[y] = true;
    images.push_back(ball->address(y));
  }
  return FiniteTreeAutomorphism(std::move(ball), std::move(images));
}

Address FiniteTreeAutomorphism::apply(const Address& a) const {
  auto id = ball_->find(a);
  if (!id) throw std::invalid_argument("automorphism: address outside the certified ball");
  return images_[*id];
}

VertexId FiniteTreeAutomorphism::operator()(VertexId v) const {
  auto id = image_id(v);
  if (!id) throw std::invalid_argument("automorphism: image leaves the ball");
  return *id;
}

int FiniteTreeAutomorphism::displacement(VertexId v) const {
  return address_distance(ball_->address(v), images_.at(v));
}

bool FiniteTreeAutomorphism::is_identity() const {
  for (VertexId x = 0; x < ball_->size(); ++x) {
    if (images_[x] != ball_->address(x)) return false;
  }
  return true;
}

bool FiniteTreeAutomorphism::is_ball_bijection() const {
  // An isometric embedding of B(base, R) maps it onto B(g(base), R).
  return images_.front().empty();
}

std::vector<VertexId> FiniteTreeAutomorphism::permutation() const {
  std::vector<VertexId> out;
  out.reserve(images_.size());
  for (VertexId x = 0; x < images_.size(); ++x) out.push_back((*this)(x));
  return out;
}

FiniteTreeAutomorphism FiniteTreeAutomorphism::restrict_to(int radius) const {
  if (radius > ball_->radius()) throw DepthError("cannot extend an automorphism beyond its ball");
  if (radius == ball_->radius()) return *this;
  auto small = resize_ball(*ball_, radius);
  std::vector<Address> images(images_.begin(),
                              images_.begin() + static_cast<std::ptrdiff_t>(small->size()));
  return FiniteTreeAutomorphism(std::move(small), std::move(images), true);
}

FiniteTreeAutomorphism compose(const FiniteTreeAutomorphism& g, const FiniteTreeAutomorphism& h) {
  if (!shapes_match(g.ball(), h.ball())) throw std::invalid_argument("compose: ball mismatch");
  const int r = std::min(h.radius(), g.radius() - static_cast<int>(h.image(0).size()));
  if (r < 0) throw DepthError("compose: balls too small to compose");
  auto ball = r == h.radius() ? h.ball_ptr() : resize_ball(h.ball(), r);
  std::vector<Address> images;
  images.reserve(ball->size());
  for (VertexId x = 0; x < ball->size(); ++x) images.push_back(g.apply(h.image(x)));
  return FiniteTreeAutomorphism(std::move(ball), std::move(images));
}

FiniteTreeAutomorphism invert(const FiniteTreeAutomorphism& g) {
  const int r = g.radius() - static_cast<int>(g.image(0).size());
  if (r < 0) throw DepthError("invert: base image outside the ball");
  std::unordered_map<Address, VertexId, AddressHash> preimage;
  for (VertexId x = 0; x < g.ball().size(); ++x) preimage.emplace(g.image(x), x);
  auto ball = r == g.radius() ? g.ball_ptr() : resize_ball(g.ball(), r);
  std::vector<Address> images;
  images.reserve(ball->size());
  for (VertexId y = 0; y < ball->size(); ++y) {
    images.push_back(g.ball().address(preimage.at(ball->address(y))));
  }
  return FiniteTreeAutomorphism(std::move(ball), std::move(images));
}

// -------------------------------------------------------------- classification

IsometryClass classify(const FiniteTreeAutomorphism& g) {
  const auto& ball = g.ball();
  if (ball.radius() == 0) return Undetermined{"radius 0 has no interior"};
  int interior_min = std::numeric_limits<int>::max();
  int overall_min = std::numeric_limits<int>::max();
  for (VertexId x = 0; x < ball.size(); ++x) {
    const int d = g.displacement(x);
    overall_min = std::min(overall_min, d);
    if (ball.is_interior(x)) interior_min = std::min(interior_min, d);
  }
  if (overall_min < interior_min) {
    return Undetermined{"minimal displacement attained only on the boundary sphere"};
  }
  if (interior_min == 0) {
    for (VertexId x = 0; x < ball.size(); ++x) {
      if (ball.is_interior(x) && g.displacement(x) == 0) return Elliptic{x};
    }
  }
  if (interior_min == 1) {
    for (VertexId x = 0; x < ball.size(); ++x) {
      if (!ball.is_interior(x) || g.displacement(x) != 1) continue;
      if (g.apply(g.image(x)) == ball.address(x)) {
        const VertexId y = ball.at(g.image(x));
        return Inversion{std::min(x, y), std::max(x, y)};
      }
    }
  }
  std::vector<VertexId> axis;
  for (VertexId x = 0; x < ball.size(); ++x) {
    if (ball.is_interior(x) && g.displacement(x) == interior_min) axis.push_back(x);
  }
  // The axis meets the interior in a path; walk it from one end.
  std::set<VertexId> on_axis(axis.begin(), axis.end());
  auto axis_neighbors = [&](VertexId x) {
    std::vector<VertexId> out;
    for (VertexId y : ball.neighbors(x)) {
      if (on_axis.count(y)) out.push_back(y);
    }
    return out;
  };
  VertexId start = axis.front();
  for (VertexId x : axis) {
    const auto nb = axis_neighbors(x);
    if (nb.size() > 2) return Undetermined{"displacement minimisers are not collinear"};
    if (nb.size() <= 1) {
      start = x;
      break;
    }
  }
  std::vector<VertexId> path{start};
  VertexId prev = kNoVertex;
  while (true) {
    VertexId next = kNoVertex;
    for (VertexId y : axis_neighbors(path.back())) {
      if (y != prev) next = y;
    }
    if (next == kNoVertex) break;
    prev = path.back();
    path.push_back(next);
  }
  if (path.size() != axis.size()) return Undetermined{"displacement minimisers are not collinear"};
  const auto ell = static_cast<std::size_t>(interior_min);
  if (path.size() > ell) {
    const bool forward = g.image(path.front()) == ball.address(path[ell]);
    if (!forward) std::reverse(path.begin(), path.end());
  }
  return Hyperbolic{interior_min, std::move(path)};
}

std::string kind_name(const IsometryClass& c) {
  struct {
    std::string operator()(const Elliptic&) const { return "elliptic"; }
    std::string operator()(const Inversion&) const { return "inversion"; }
    std::string operator()(const Hyperbolic&) const { return "hyperbolic"; }
    std::string operator()(const Undetermined&) const { return "undetermined"; }
  } visitor;
  return std::visit(visitor, c);
}

// ------------------------------------------------------------------ agreement

AgreementDepth agreement_depth(const FiniteTreeAutomorphism& g, const FiniteTreeAutomorphism& h,
                               VertexId v) {
  if (!shapes_match(g.ball(), h.ball())) {
    throw std::invalid_argument("agreement_depth: ball mismatch");
  }
  const auto& ball = g.radius() <= h.radius() ? g.ball() : h.ball();
  if (v >= ball.size()) throw std::invalid_argument("agreement_depth: vertex not in ball");
  AgreementDepth out;
  out.cap = ball.radius() - ball.depth(v);
  if (g.image(v) != h.image(v)) return out;
  int first_bad = out.cap + 1;
  for (VertexId x : ball_around(ball, v, out.cap)) {
    if (g.image(x) != h.image(x)) first_bad = std::min(first_bad, distance(ball, v, x));
  }
  out.depth = first_bad - 1;
  return out;
}

ConvergenceCertificate converges_to_identity(const std::vector<FiniteTreeAutomorphism>& seq,
                                             VertexId v) {
  ConvergenceCertificate out;
  if (seq.empty()) return out;
  out.cap = std::numeric_limits<int>::max();
  for (const auto& g : seq) {
    auto id = FiniteTreeAutomorphism::identity(g.ball_ptr());
    auto a = agreement_depth(g, id, v);
    out.depths.push_back(a.depth);
    out.cap = std::min(out.cap, a.cap);
  }
  for (int t = 0; t <= out.cap; ++t) {
    int first = -1;
    for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
      if (out.depths[static_cast<std::size_t>(i)] < t) break;
      first = i;
    }
    out.first_index_at_least.push_back(first);
  }
  out.converges = std::min(out.depths.back(), out.cap) == out.cap;
  return out;
}

// ----------------------------------------------------------------------- JSON

nlohmann::json to_json(const FiniteTreeAutomorphism& g) {
  auto ball = to_json(g.ball());
  ball.erase("vertices");
  nlohmann::json images = nlohmann::json::array();
  for (const auto& a : g.images()) images.push_back(a);
  nlohmann::json out = {{"ball", ball}, {"images", images}};
  if (g.is_ball_bijection()) {
    nlohmann::json perm = nlohmann::json::array();
    for (VertexId x = 0; x < g.ball().size(); ++x) perm.push_back({x, g(x)});
    out["perm"] = perm;
  }
  return out;
}

FiniteTreeAutomorphism tree_automorphism_from_json(const nlohmann::json& j) {
  auto ball = tree_ball_from_json(j.at("ball"));
  if (j.contains("images")) {
    return FiniteTreeAutomorphism(ball, j.at("images").get<std::vector<Address>>());
  }
  std::vector<VertexId> perm(ball->size(), kNoVertex);
  for (const auto& pair : j.at("perm")) {
    perm.at(pair.at(0).get<VertexId>()) = pair.at(1).get<VertexId>();
  }
  return FiniteTreeAutomorphism::from_permutation(ball, perm);
}

nlohmann::json isometry_class_to_json(const IsometryClass& c) {
  nlohmann::json out = {{"kind", kind_name(c)}};
  if (auto* e = std::get_if<Elliptic>(&c)) out["fixed_vertex"] = e->fixed;
  if (auto* i = std::get_if<Inversion>(&c)) out["edge"] = {i->u, i->w};
  if (auto* h = std::get_if<Hyperbolic>(&c)) {
    out["translation_length"] = h->translation_length;
    out["axis"] = h->axis;
  }
  if (auto* u = std::get_if<Undetermined>(&c)) out["reason"] = u->reason;
  return out;
}

}  // namespace tdlc
