#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/errors.hpp"

namespace tdlc {

/// Index into the ordered generator list.
using Generator = int;
using CoxWord = std::vector<Generator>;

/// A reduced word that is ShortLex-least in its commutation class.
struct CoxElement {
  CoxWord word;
  /// Fingerprint of the owning system; 0 for a default-constructed element.
  std::size_t system_tag = 0;

  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }

  friend bool operator==(const CoxElement& a, const CoxElement& b) { return a.word == b.word; }
  /// ShortLex: shorter first, then lexicographic in generator order.
  friend std::strong_ordering operator<=>(const CoxElement& a, const CoxElement& b);
};

/// Right-angled Coxeter system: m(s,t) = 2 for listed pairs, infinity otherwise.
class RACoxeterSystem {
 public:
  RACoxeterSystem(std::vector<std::string> generators,
                  const std::vector<std::pair<std::string, std::string>>& commuting_pairs);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::string& name(Generator s) const;
  Generator index_of(const std::string& name) const;
  bool commute(Generator s, Generator t) const;
  std::size_t tag() const { return tag_; }

  CoxElement identity() const { return {{}, tag_}; }
  CoxElement generator(Generator s) const;

  /// Reduces (cancel s..s across commuting letters) and sorts into ShortLex.
  CoxElement normal_form(const CoxWord& word) const;
  /// Whitespace-separated generator names.
  CoxWord parse_word(const std::string& text) const;
  CoxWord parse_word(const nlohmann::json& names) const;
  CoxElement parse(const std::string& text) const { return normal_form(parse_word(text)); }
  std::string format(const CoxWord& word) const;
  std::string format(const CoxElement& u) const { return format(u.word); }

  CoxElement multiply(const CoxElement& u, const CoxElement& v) const;
  CoxElement invert(const CoxElement& u) const;
  CoxElement times_generator(const CoxElement& u, Generator s) const;
  CoxElement generator_times(Generator s, const CoxElement& u) const;
  /// u^-1 s u
  CoxElement conjugate_generator(const CoxElement& u, Generator s) const;
  int length(const CoxElement& u) const;

  bool is_spherical(const std::vector<Generator>& j) const;
  bool is_irreducible() const;

  nlohmann::json to_json() const;

 private:
  void check(const CoxElement& u) const;
  CoxWord reduce(const CoxWord& word) const;
  CoxWord shortlex(CoxWord reduced) const;

  std::vector<std::string> names_;
  std::vector<std::vector<bool>> commute_;
  std::size_t tag_ = 0;
};

/// {"generators": [...], "commuting_pairs": [[s,t], ...]}
RACoxeterSystem coxeter_from_json(const nlohmann::json& j);

/// Every element of length <= L, once each, in ShortLex order.
std::vector<CoxElement> enumerate_elements(const RACoxeterSystem& sys, int max_length,
                                           const Guard& guard = {});

/// (l(w^-1 s w) - 1) / 2; throws std::logic_error if that length is even.
int wall_distance(const RACoxeterSystem& sys, const CoxElement& w, Generator s);

/// {w : l(w) <= L and l(w^-1 s w) <= R for every s}
std::vector<CoxElement> profile_bounded_set(const RACoxeterSystem& sys, int max_length,
                                            int max_profile, const Guard& guard = {});

/// Chamber w lies in the root alpha_s (same side of the s-wall as e).
bool root_contains(const RACoxeterSystem& sys, Generator s, const CoxElement& w);

/// Cayley-graph distance from w to alpha_s by BFS, checked against
/// wall_distance(w, s) + 1 off the root.
int dist_to_root(const RACoxeterSystem& sys, const CoxElement& w, Generator s,
                 const Guard& guard = {});

struct GrowingChain {
  Generator s = 0;
  /// The chosen w_k, ordered by distance.
  std::vector<CoxElement> chain;
  /// wall_distance(w_k^-1, s)
  std::vector<int> wall_distances;
  /// d(C, w_k alpha_s) = dist_to_root(w_k^-1, s)
  std::vector<int> distances;
};

/// Among the w with w^-1 outside alpha_s, the longest chain of strictly
/// growing distance; one ShortLex-least element per distance value, ties
/// between generators to the earlier one. Throws InfeasibleError("no growing
/// chain") when no chain of length >= 2 exists.
GrowingChain growing_chain_search(const RACoxeterSystem& sys, const std::vector<CoxElement>& ws,
                           const Guard& guard = {});

nlohmann::json to_json(const RACoxeterSystem& sys, const CoxElement& u);
nlohmann::json to_json(const RACoxeterSystem& sys, const GrowingChain& r);

}  // namespace tdlc
