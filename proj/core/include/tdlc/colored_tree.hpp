#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/permutation.hpp"
#include "tdlc/tree_automorphism.hpp"

namespace tdlc {

/// A reduced word in colours 0..d-1 with no two equal neighbours.
///
/// With the standard colouring the vertices of T_d are exactly these words
/// (the Cayley graph of the free product of d copies of Z/2), the base
/// vertex being the empty word.
using ColorWord = std::vector<std::uint8_t>;

/// u * x with cancellation of equal letters at the junction.
ColorWord word_product(const ColorWord& u, const ColorWord& x);
/// Letters are involutions, so the inverse is the reversal.
ColorWord word_inverse(const ColorWord& u);
bool is_reduced(const ColorWord& w);

/// The standard legal edge colouring of the d-regular tree: one colour per
/// edge, bijective around every vertex. Child slot j of the base gets
/// colour j; child slot j of a vertex entered along colour c gets colour j
/// when j < c and j + 1 otherwise.
class LegalColoring {
 public:
  explicit LegalColoring(int degree);

  int degree() const { return degree_; }
  ColorWord word_of(const Address& a) const;
  Address address_of(const ColorWord& w) const;
  /// Colour of the edge from `a` back to its parent; -1 at the base.
  int incoming_color(const Address& a) const;
  /// Colour of the edge between two adjacent vertices.
  int edge_color(const Address& a, const Address& b) const;
  Address neighbor(const Address& a, int color) const;

  nlohmann::json to_json() const;

  friend bool operator==(const LegalColoring&, const LegalColoring&) = default;

 private:
  int degree_;
};

LegalColoring legal_coloring_from_json(const nlohmann::json& j);

/// The permutation i -> colour at g(v) of the image of the i-coloured edge
/// at v. Requires v interior to g's ball.
Perm local_action(const FiniteTreeAutomorphism& g, VertexId v, const LegalColoring& c);

/// A colour-portrait of an automorphism fixing the base vertex.
///
/// sigma(x) is prescribed on words of length <= radius and extended rigidly
/// beyond (sigma(x) = sigma of the ancestor of x at depth radius). Entries
/// left out are the identity. The compatibility sigma(x)(c) = sigma(parent)(c)
/// for the incoming colour c is checked at construction.
class Portrait {
 public:
  Portrait(int degree, int radius, std::map<ColorWord, Perm> sigma);

  static Portrait identity(int degree);

  int degree() const { return degree_; }
  int radius() const { return radius_; }
  const std::map<ColorWord, Perm>& entries() const { return sigma_; }

  const Perm& local(const ColorWord& x) const;
  ColorWord apply(const ColorWord& x) const;
  ColorWord apply_inverse(const ColorWord& y) const;

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  int degree_;
  int radius_;
  std::map<ColorWord, Perm> sigma_;
  Perm identity_;
};

/// Reads the portrait of a base-fixing ball automorphism from its local
/// actions at interior vertices; the result has radius R - 1.
Portrait portrait_of(const FiniteTreeAutomorphism& g, const LegalColoring& c);

/// An exact automorphism of T_d, kept as a product of translations
/// x -> u x and portraits. Evaluation is lazy, so products of any length
/// are exact on every vertex.
class ColoredAutomorphism {
 public:
  struct Value {
    ColorWord image;
    Perm local;
  };

  explicit ColoredAutomorphism(int degree);

  static ColoredAutomorphism identity(int degree) { return ColoredAutomorphism(degree); }
  static ColoredAutomorphism translation(int degree, ColorWord u);
  static ColoredAutomorphism from_portrait(Portrait p);

  int degree() const { return degree_; }
  std::size_t factor_count() const { return factors_.size(); }

  Value evaluate(const ColorWord& x) const;
  ColorWord operator()(const ColorWord& x) const { return evaluate(x).image; }
  Perm local_action(const ColorWord& x) const { return evaluate(x).local; }

  ColoredAutomorphism inverse() const;
  /// a * b is a after b.
  friend ColoredAutomorphism operator*(const ColoredAutomorphism& a,
                                       const ColoredAutomorphism& b);

  /// The restriction to a ball of the regular tree of the same degree.
  FiniteTreeAutomorphism restrict_to(const TreeBallPtr& ball) const;
  /// Equality on B(base, radius).
  bool agrees_with(const ColoredAutomorphism& other, int radius) const;
  bool fixes(const ColorWord& x) const { return evaluate(x).image == x; }

 private:
  struct Factor {
    bool is_translation = true;
    ColorWord word;
    std::shared_ptr<const Portrait> portrait;
    bool inverted = false;
  };

  int degree_;
  std::vector<Factor> factors_;  // applied last to first
};

/// All reduced colour words of length <= r, in BFS (address) order.
std::vector<ColorWord> words_within(int degree, int r);

}  // namespace tdlc
