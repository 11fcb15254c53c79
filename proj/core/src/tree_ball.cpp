#include "tdlc/tree_ball.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tdlc {

std::size_t AddressHash::operator()(const Address& a) const noexcept {
  std::size_t h = 0x84222325cbf29ce4ULL ^ a.size();
  for (auto x : a) h = (h ^ x) * 0x100000001b3ULL;
  return h;
}

int address_distance(const Address& a, const Address& b) {
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
  return static_cast<int>(a.size() + b.size() - 2 * common);
}

bool is_prefix(const Address& prefix, const Address& a) {
  return prefix.size() <= a.size() && std::equal(prefix.begin(), prefix.end(), a.begin());
}

// ---------------------------------------------------------------- LabelVector

LabelVector::LabelVector(std::vector<std::string> labels,
                         const std::map<std::string, int>& degree_of,
                         const std::map<std::string, std::vector<std::string>>& neighbors)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("LabelVector: no labels");
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) {
    throw std::invalid_argument("LabelVector: duplicate label");
  }
  for (const auto& name : labels_) {
    auto d = degree_of.find(name);
    if (d == degree_of.end()) throw std::invalid_argument("LabelVector: no degree for label " + name);
    if (d->second < 2) {
      throw std::invalid_argument("LabelVector: label " + name + " has degree < 2 (leaves)");
    }
    auto nb = neighbors.find(name);
    if (nb == neighbors.end()) {
      throw std::invalid_argument("LabelVector: no adjacency rule for label " + name);
    }
    if (static_cast<int>(nb->second.size()) != d->second) {
      throw std::invalid_argument("LabelVector: adjacency rule for " + name +
                                  " does not match its degree");
    }
    degrees_.push_back(d->second);
    std::vector<int> idx;
    for (const auto& m : nb->second) idx.push_back(index_of(m));
    std::sort(idx.begin(), idx.end());
    neighbors_.push_back(std::move(idx));
  }
  for (int l = 0; l < label_count(); ++l) {
    for (int m : this->neighbors(l)) {
      const auto& back = this->neighbors(m);
      if (std::find(back.begin(), back.end(), l) == back.end()) {
        throw std::invalid_argument("LabelVector: inconsistent adjacency rule: " + labels_[l] +
                                    " lists " + labels_[m] + " but not conversely");
      }
    }
  }
}

LabelVector LabelVector::regular(int d) {
  if (d < 2) throw std::invalid_argument("regular tree needs degree >= 2");
  return LabelVector({"*"}, {{"*", d}}, {{"*", std::vector<std::string>(d, "*")}});
}

int LabelVector::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown label: " + label);
  return static_cast<int>(it - labels_.begin());
}

// ------------------------------------------------------------------ TreeShape

TreeShape::TreeShape(bool regular, LabelVector labels, int root_label)
    : regular_(regular), labels_(std::move(labels)), root_label_(root_label) {
  const int n = labels_.label_count();
  child_table_.resize(static_cast<std::size_t>(n * (n + 1)));
  for (int l = 0; l < n; ++l) {
    const auto& nb = labels_.neighbors(l);
    child_table_[static_cast<std::size_t>(l * (n + 1))] = nb;
    for (int p = 0; p < n; ++p) {
      auto kids = nb;
      auto it = std::find(kids.begin(), kids.end(), p);
      if (it != kids.end()) kids.erase(it);
      child_table_[static_cast<std::size_t>(l * (n + 1) + p + 1)] = std::move(kids);
    }
  }
}

TreeShape TreeShape::regular(int degree) {
  return TreeShape(true, LabelVector::regular(degree), 0);
}

TreeShape TreeShape::label_regular(LabelVector labels, const std::string& root_label) {
  int root = labels.index_of(root_label);
  return TreeShape(false, std::move(labels), root);
}

int TreeShape::regular_degree() const {
  if (!regular_) throw std::invalid_argument("tree shape is not regular");
  return labels_.degree(0);
}

const std::vector<int>& TreeShape::child_labels(int label, int parent_label) const {
  const int n = labels_.label_count();
  return child_table_.at(static_cast<std::size_t>(label * (n + 1) + parent_label + 1));
}

int TreeShape::label_of(const Address& a) const {
  int label = root_label_;
  int parent = -1;
  for (auto slot : a) {
    const auto& kids = child_labels(label, parent);
    if (slot >= kids.size()) throw std::invalid_argument("address names no vertex");
    parent = label;
    label = kids[slot];
  }
  return label;
}

bool TreeShape::is_valid(const Address& a) const {
  int label = root_label_;
  int parent = -1;
  for (auto slot : a) {
    const auto& kids = child_labels(label, parent);
    if (slot >= kids.size()) return false;
    parent = label;
    label = kids[slot];
  }
  return true;
}

int TreeShape::degree_at(const Address& a) const { return labels_.degree(label_of(a)); }

// ------------------------------------------------------------------- TreeBall

TreeBall::TreeBall(TreeShape shape, int radius, const Guard& guard)
    : shape_(std::move(shape)), radius_(radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  TreeVertex base;
  base.label = shape_.root_label();
  vertices_.push_back(base);
  index_.emplace(Address{}, kBase);
  depth_end_.push_back(1);
  std::size_t level_begin = 0;
  for (int depth = 1; depth <= radius; ++depth) {
    std::size_t level_end = vertices_.size();
    for (std::size_t v = level_begin; v < level_end; ++v) {
      const int parent_label =
          vertices_[v].parent == kNoVertex ? -1 : vertices_[vertices_[v].parent].label;
      const auto kids = shape_.child_labels(vertices_[v].label, parent_label);
      for (std::size_t slot = 0; slot < kids.size(); ++slot) {
        TreeVertex child;
        child.address = vertices_[v].address;
        child.address.push_back(static_cast<std::uint8_t>(slot));
        child.parent = static_cast<VertexId>(v);
        child.depth = depth;
        child.label = kids[slot];
        auto id = static_cast<VertexId>(vertices_.size());
        vertices_[v].children.push_back(id);
        index_.emplace(child.address, id);
        vertices_.push_back(std::move(child));
        guard.check(vertices_.size(), "tree ball");
      }
    }
    level_begin = level_end;
    depth_end_.push_back(vertices_.size());
  }
}

const TreeVertex& TreeBall::vertex(VertexId v) const {
  if (v >= vertices_.size()) throw std::invalid_argument("vertex not in ball");
  return vertices_[v];
}

std::optional<VertexId> TreeBall::find(const Address& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId TreeBall::at(const Address& a) const {
  auto v = find(a);
  if (!v) throw std::invalid_argument("address outside the ball");
  return *v;
}

std::vector<VertexId> TreeBall::neighbors(VertexId v) const {
  const auto& tv = vertex(v);
  std::vector<VertexId> out;
  if (tv.parent != kNoVertex) out.push_back(tv.parent);
  out.insert(out.end(), tv.children.begin(), tv.children.end());
  return out;
}

bool TreeBall::adjacent(VertexId u, VertexId v) const {
  return vertex(u).parent == v || vertex(v).parent == u;
}

std::size_t TreeBall::count_within(int r) const {
  if (r < 0) return 0;
  return depth_end_.at(static_cast<std::size_t>(std::min(r, radius_)));
}

TreeBallPtr build_regular_ball(int d, int radius, const Guard& guard) {
  if (d < 2) throw std::invalid_argument("regular tree needs degree >= 2 (no leaves)");
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  guard.check(regular_ball_count(d, radius), "tree ball");
  return std::make_shared<const TreeBall>(TreeShape::regular(d), radius, guard);
}

TreeBallPtr build_label_regular_ball(const LabelVector& labels, const std::string& root_label,
                                     int radius, const Guard& guard) {
  return std::make_shared<const TreeBall>(TreeShape::label_regular(labels, root_label), radius,
                                          guard);
}

TreeBallPtr resize_ball(const TreeBall& ball, int radius) {
  return std::make_shared<const TreeBall>(ball.shape(), radius);
}

std::size_t regular_ball_count(int d, int radius) {
  if (radius <= 0) return 1;
  if (d == 2) return static_cast<std::size_t>(2 * radius + 1);
  std::size_t power = 1;
  for (int i = 0; i < radius; ++i) power *= static_cast<std::size_t>(d - 1);
  return 1 + static_cast<std::size_t>(d) * (power - 1) / static_cast<std::size_t>(d - 2);
}

int distance(const TreeBall& ball, VertexId u, VertexId v) {
  return address_distance(ball.address(u), ball.address(v));
}

std::vector<VertexId> ball_around(const TreeBall& ball, VertexId center, int n) {
  std::vector<VertexId> out;
  if (n < 0) return out;
  std::vector<int> dist(ball.size(), -1);
  std::deque<VertexId> queue{center};
  ball.vertex(center);
  dist[center] = 0;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    out.push_back(x);
    if (dist[x] == n) continue;
    for (VertexId y : ball.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SphereResult sphere(const TreeBall& ball, VertexId center, int n) {
  SphereResult out;
  if (n < 0) return out;
  for (VertexId x : ball_around(ball, center, n)) {
    if (distance(ball, center, x) == n) out.vertices.push_back(x);
  }
  out.complete = ball.depth(center) + n <= ball.radius();
  return out;
}

namespace {

void check_edge(const TreeBall& ball, const HalfTreeRef& h) {
  if (!ball.adjacent(h.v, h.w)) throw std::invalid_argument("half-tree: {v,w} is not an edge");
  if (h.side != h.v && h.side != h.w) throw std::invalid_argument("half-tree: side not on edge");
}

}  // namespace

bool in_half_tree(const TreeBall& ball, const HalfTreeRef& h, const Address& a) {
  check_edge(ball, h);
  const VertexId other = h.other();
  // The half-tree is either the subtree below `side` (when side is the child)
  // or the complement of the subtree below `other`.
  if (ball.vertex(h.side).parent == other) return is_prefix(ball.address(h.side), a);
  return !is_prefix(ball.address(other), a);
}

std::vector<VertexId> half_tree_vertices(const TreeBall& ball, const HalfTreeRef& h) {
  check_edge(ball, h);
  std::vector<VertexId> out;
  for (VertexId x = 0; x < ball.size(); ++x) {
    if (in_half_tree(ball, h, ball.address(x))) out.push_back(x);
  }
  return out;
}

// ----------------------------------------------------------------------- JSON

nlohmann::json label_vector_to_json(const LabelVector& a) {
  nlohmann::json degrees = nlohmann::json::object();
  nlohmann::json rule = nlohmann::json::array();
  for (int l = 0; l < a.label_count(); ++l) {
    degrees[a.labels()[l]] = a.degree(l);
    nlohmann::json nb = nlohmann::json::array();
    for (int m : a.neighbors(l)) nb.push_back(a.labels()[m]);
    rule.push_back({{"label", a.labels()[l]}, {"neighbors", nb}});
  }
  return {{"labels", a.labels()}, {"degrees", degrees}, {"rule", rule}};
}

LabelVector label_vector_from_json(const nlohmann::json& j) {
  auto labels = j.at("labels").get<std::vector<std::string>>();
  auto degrees = j.at("degrees").get<std::map<std::string, int>>();
  std::map<std::string, std::vector<std::string>> rule;
  for (const auto& r : j.at("rule")) {
    rule[r.at("label").get<std::string>()] = r.at("neighbors").get<std::vector<std::string>>();
  }
  return LabelVector(std::move(labels), degrees, rule);
}

nlohmann::json to_json(const TreeBall& ball) {
  nlohmann::json tree;
  const auto& shape = ball.shape();
  if (shape.is_regular()) {
    tree = {{"kind", "regular"}, {"degree", shape.regular_degree()}};
  } else {
    tree = {{"kind", "label_regular"},
            {"label_vector", label_vector_to_json(shape.label_vector())},
            {"root_label", shape.label_vector().labels()[shape.root_label()]}};
  }
  nlohmann::json vertices = nlohmann::json::array();
  for (VertexId v = 0; v < ball.size(); ++v) {
    const auto& tv = ball.vertex(v);
    nlohmann::json jv = {{"id", v}};
    jv["parent"] = tv.parent == kNoVertex ? nlohmann::json(nullptr) : nlohmann::json(tv.parent);
    jv["label"] = ball.is_labelled() ? nlohmann::json(shape.label_vector().labels()[tv.label])
                                     : nlohmann::json(nullptr);
    vertices.push_back(std::move(jv));
  }
  return {{"base", TreeBall::kBase}, {"radius", ball.radius()}, {"tree", tree},
          {"vertices", vertices}};
}

TreeBallPtr tree_ball_from_json(const nlohmann::json& j) {
  const auto& tree = j.at("tree");
  const int radius = j.at("radius").get<int>();
  TreeBallPtr ball;
  if (tree.at("kind") == "regular") {
    ball = build_regular_ball(tree.at("degree").get<int>(), radius);
  } else if (tree.at("kind") == "label_regular") {
    ball = build_label_regular_ball(label_vector_from_json(tree.at("label_vector")),
                                    tree.at("root_label").get<std::string>(), radius);
  } else {
    throw std::invalid_argument("unknown tree kind");
  }
  if (!j.contains("vertices")) return ball;
  const auto& vertices = j.at("vertices");
  if (vertices.size() != ball->size()) {
    throw std::invalid_argument("TreeBall JSON: vertex count does not match the tree");
  }
  for (const auto& jv : vertices) {
    const auto id = jv.at("id").get<VertexId>();
    const auto& tv = ball->vertex(id);
    const VertexId parent = jv.at("parent").is_null() ? kNoVertex : jv.at("parent").get<VertexId>();
    if (parent != tv.parent) throw std::invalid_argument("TreeBall JSON: parent mismatch");
    if (ball->is_labelled() &&
        jv.at("label").get<std::string>() != ball->shape().label_vector().labels()[tv.label]) {
      throw std::invalid_argument("TreeBall JSON: label mismatch");
    }
  }
  return ball;
}

}  // namespace tdlc
