#include "tdlc/colored_tree.hpp"

#include <algorithm>

namespace tdlc {

ColorWord word_product(const ColorWord& u, const ColorWord& x) {
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < x.size() && u[u.size() - 1 - cancel] == x[cancel]) {
    ++cancel;
  }
  ColorWord out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(cancel), x.end());
  return out;
}

ColorWord word_inverse(const ColorWord& u) { return ColorWord(u.rbegin(), u.rend()); }

bool is_reduced(const ColorWord& w) {
  return std::adjacent_find(w.begin(), w.end()) == w.end();
}

// ------------------------------------------------------------- LegalColoring

LegalColoring::LegalColoring(int degree) : degree_(degree) {
  if (degree < 2) throw std::invalid_argument("colouring needs degree >= 2");
}

ColorWord LegalColoring::word_of(const Address& a) const {
  ColorWord out;
  out.reserve(a.size());
  int in = -1;
  for (auto slot : a) {
    if (slot >= (in < 0 ? degree_ : degree_ - 1)) {
      throw std::invalid_argument("address names no vertex of the regular tree");
    }
    const int c = (in < 0 || slot < in) ? slot : slot + 1;
    out.push_back(static_cast<std::uint8_t>(c));
    in = c;
  }
  return out;
}

Address LegalColoring::address_of(const ColorWord& w) const {
  Address out;
  out.reserve(w.size());
  int in = -1;
  for (auto c : w) {
    if (c >= degree_ || c == in) throw std::invalid_argument("not a reduced colour word");
    out.push_back(static_cast<std::uint8_t>((in < 0 || c < in) ? c : c - 1));
    in = c;
  }
  return out;
}

int LegalColoring::incoming_color(const Address& a) const {
  if (a.empty()) return -1;
  return word_of(a).back();
}

int LegalColoring::edge_color(const Address& a, const Address& b) const {
  if (a.size() + 1 == b.size() && is_prefix(a, b)) return incoming_color(b);
  if (b.size() + 1 == a.size() && is_prefix(b, a)) return incoming_color(a);
  throw std::invalid_argument("edge_color: vertices are not adjacent");
}

Address LegalColoring::neighbor(const Address& a, int color) const {
  return address_of(word_product(word_of(a), ColorWord{static_cast<std::uint8_t>(color)}));
}

nlohmann::json LegalColoring::to_json() const {
  return {{"kind", "standard"}, {"degree", degree_}};
}

LegalColoring legal_coloring_from_json(const nlohmann::json& j) {
  if (j.value("kind", "standard") != "standard") {
    throw std::invalid_argument("only the standard colouring is supported");
  }
  return LegalColoring(j.at("degree").get<int>());
}

Perm local_action(const FiniteTreeAutomorphism& g, VertexId v, const LegalColoring& c) {
  const auto& ball = g.ball();
  if (!ball.shape().is_regular() || ball.shape().regular_degree() != c.degree()) {
    throw std::invalid_argument("local_action: colouring does not fit the ball");
  }
  if (!ball.is_interior(v)) {
    throw DepthError("local_action: vertex on the boundary sphere, action not determined");
  }
  const Address& x = ball.address(v);
  const Address& gx = g.image(v);
  std::vector<int> images(static_cast<std::size_t>(c.degree()));
  for (int i = 0; i < c.degree(); ++i) {
    images[static_cast<std::size_t>(i)] = c.edge_color(gx, g.apply(c.neighbor(x, i)));
  }
  return Perm(std::move(images));
}

// ------------------------------------------------------------------ Portrait

Portrait::Portrait(int degree, int radius, std::map<ColorWord, Perm> sigma)
    : degree_(degree), radius_(radius), identity_(Perm::identity(degree)) {
  if (radius < 0) throw std::invalid_argument("portrait radius must be >= 0");
  for (auto& [x, p] : sigma) {
    if (static_cast<int>(x.size()) > radius || !is_reduced(x)) {
      throw std::invalid_argument("portrait entry outside its radius");
    }
    for (auto ch : x) {
      if (ch >= degree) throw std::invalid_argument("portrait entry is not a vertex");
    }
    if (p.size() != degree) throw std::invalid_argument("portrait entry has wrong degree");
    if (!p.is_identity()) sigma_.emplace(x, p);
  }
  // Compatibility along every edge touching a non-identity entry.
  for (const auto& [x, p] : sigma_) {
    if (!x.empty() && p(x.back()) != local(ColorWord(x.begin(), x.end() - 1))(x.back())) {
      throw std::invalid_argument("portrait: local actions disagree on an edge");
    }
    if (static_cast<int>(x.size()) == radius) continue;
    for (int c = 0; c < degree; ++c) {
      if (!x.empty() && c == x.back()) continue;
      ColorWord child = x;
      child.push_back(static_cast<std::uint8_t>(c));
      if (local(child)(c) != p(c)) {
        throw std::invalid_argument("portrait: local actions disagree on an edge");
      }
    }
  }
}

Portrait Portrait::identity(int degree) { return Portrait(degree, 0, {}); }

const Perm& Portrait::local(const ColorWord& x) const {
  if (sigma_.empty()) return identity_;
  auto it = static_cast<int>(x.size()) <= radius_
                ? sigma_.find(x)
                : sigma_.find(ColorWord(x.begin(), x.begin() + radius_));
  return it == sigma_.end() ? identity_ : it->second;
}

ColorWord Portrait::apply(const ColorWord& x) const {
  ColorWord out;
  out.reserve(x.size());
  ColorWord prefix;
  prefix.reserve(x.size());
  for (auto c : x) {
    out.push_back(static_cast<std::uint8_t>(local(prefix)(c)));
    prefix.push_back(c);
  }
  return out;
}

ColorWord Portrait::apply_inverse(const ColorWord& y) const {
  ColorWord x;
  x.reserve(y.size());
  for (auto c : y) {
    const Perm& s = local(x);
    int pre = 0;
    while (s(pre) != c) ++pre;
    x.push_back(static_cast<std::uint8_t>(pre));
  }
  return x;
}

Portrait portrait_of(const FiniteTreeAutomorphism& g, const LegalColoring& c) {
  if (!g.image(TreeBall::kBase).empty()) {
    throw std::invalid_argument("portrait_of: element moves the base vertex");
  }
  const auto& ball = g.ball();
  if (ball.radius() == 0) return Portrait::identity(c.degree());
  std::map<ColorWord, Perm> sigma;
  for (VertexId v = 0; v < ball.size(); ++v) {
    if (ball.is_interior(v)) sigma.emplace(c.word_of(ball.address(v)), local_action(g, v, c));
  }
  return Portrait(c.degree(), ball.radius() - 1, std::move(sigma));
}

// ------------------------------------------------------- ColoredAutomorphism

ColoredAutomorphism::ColoredAutomorphism(int degree) : degree_(degree) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
}

ColoredAutomorphism ColoredAutomorphism::translation(int degree, ColorWord u) {
  if (!is_reduced(u)) throw std::invalid_argument("translation word is not reduced");
  for (auto ch : u) {
    if (ch >= degree) throw std::invalid_argument("translation word uses an unknown colour");
  }
  ColoredAutomorphism out(degree);
  if (!u.empty()) out.factors_.push_back(Factor{true, std::move(u), nullptr, false});
  return out;
}

ColoredAutomorphism ColoredAutomorphism::from_portrait(Portrait p) {
  ColoredAutomorphism out(p.degree());
  if (!p.entries().empty()) {
    out.factors_.push_back(
        Factor{false, {}, std::make_shared<const Portrait>(std::move(p)), false});
  }
  return out;
}

ColoredAutomorphism::Value ColoredAutomorphism::evaluate(const ColorWord& x) const {
  Value v{x, Perm::identity(degree_)};
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (it->is_translation) {
      v.image = word_product(it->inverted ? word_inverse(it->word) : it->word, v.image);
    } else if (!it->inverted) {
      v.local = it->portrait->local(v.image) * v.local;
      v.image = it->portrait->apply(v.image);
    } else {
      v.image = it->portrait->apply_inverse(v.image);
      v.local = it->portrait->local(v.image).inverse() * v.local;
    }
  }
  return v;
}

ColoredAutomorphism ColoredAutomorphism::inverse() const {
  ColoredAutomorphism out(degree_);
  out.factors_.assign(factors_.rbegin(), factors_.rend());
  for (auto& f : out.factors_) f.inverted = !f.inverted;
  return out;
}

ColoredAutomorphism operator*(const ColoredAutomorphism& a, const ColoredAutomorphism& b) {
  if (a.degree_ != b.degree_) throw std::invalid_argument("degree mismatch");
  ColoredAutomorphism out(a.degree_);
  out.factors_ = a.factors_;
  out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
  return out;
}

FiniteTreeAutomorphism ColoredAutomorphism::restrict_to(const TreeBallPtr& ball) const {
  if (!ball->shape().is_regular() || ball->shape().regular_degree() != degree_) {
    throw std::invalid_argument("restrict_to: ball is not in the right regular tree");
  }
  LegalColoring c(degree_);
  std::vector<Address> images;
  images.reserve(ball->size());
  for (const auto& v : ball->vertices()) images.push_back(c.address_of((*this)(c.word_of(v.address))));
  return FiniteTreeAutomorphism(ball, std::move(images));
}

bool ColoredAutomorphism::agrees_with(const ColoredAutomorphism& other, int radius) const {
  for (const auto& x : words_within(degree_, radius)) {
    if ((*this)(x) != other(x)) return false;
  }
  return true;
}

std::vector<ColorWord> words_within(int degree, int r) {
  std::vector<ColorWord> out{ColorWord{}};
  std::size_t begin = 0;
  for (int depth = 1; depth <= r; ++depth) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int c = 0; c < degree; ++c) {
        if (!out[i].empty() && out[i].back() == c) continue;
        ColorWord w = out[i];
        w.push_back(static_cast<std::uint8_t>(c));
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace tdlc
