#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"

namespace tdlc {

/// A permutation of {0, ..., n-1}. Composition follows function
/// composition: (p * q)(i) = p(q(i)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  /// Builds from a one-line 1-based list such as [2, 1, 3].
  static Perm from_one_based(const std::vector<int>& one_line);
  /// Swaps a and b (0-based).
  static Perm transposition(int n, int a, int b);
  /// Maps i to cycle[k+1] when i = cycle[k], cyclically (0-based).
  static Perm cycle(int n, const std::vector<int>& cycle);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<int> one_based() const;

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const;
  int fixed_point_count() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  std::string to_string() const;

 private:
  std::vector<int> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

/// A finite permutation group given by generators, enumerated on demand.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> generators, Guard guard = {});

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  /// All elements, sorted; the identity is always first.
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const Perm& p) const;

  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;
  /// The stabiliser of a point as an element list.
  std::vector<Perm> stabilizer(int point) const;

 private:
  int degree_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
};

/// Closure of a generating set under composition (BFS); sorted output.
std::vector<Perm> close_under_composition(int degree,
                                          const std::vector<Perm>& generators,
                                          const Guard& guard);

}  // namespace tdlc
