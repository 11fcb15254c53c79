#pragma once

// Small fixtures and independent oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tdlc/building.hpp"
#include "tdlc/coxeter.hpp"

namespace tdlc::testing {

inline RACoxeterSystem dinf() { return RACoxeterSystem({"s", "t"}, {}); }
inline RACoxeterSystem klein() { return RACoxeterSystem({"s", "t"}, {{"s", "t"}}); }
/// Three generators, no commuting pairs.
inline RACoxeterSystem free3() { return RACoxeterSystem({"r", "s", "t"}, {}); }

inline BuildingSpecPtr dinf_building(int q) {
  return std::make_shared<const BuildingSpec>(dinf(), std::vector<int>{q, q});
}

/// Every right-angled system on n generators, one per commutation graph.
inline std::vector<RACoxeterSystem> all_systems(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  std::vector<RACoxeterSystem> out;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (mask & (1u << e)) pairs.emplace_back(names[edges[e].first], names[edges[e].second]);
    }
    out.emplace_back(names, pairs);
  }
  return out;
}

/// Union-find over all words of length <= L, joined by the elementary moves
/// (swap adjacent commuting letters, delete an adjacent equal pair). Two
/// words are equal in W iff they end up in the same class.
class MoveClosure {
 public:
  MoveClosure(const RACoxeterSystem& sys, int max_length) : rank_(sys.rank()) {
    offsets_.push_back(0);
    std::size_t count = 1;
    for (int l = 0; l <= max_length; ++l) {
      offsets_.push_back(offsets_.back() + count);
      count *= static_cast<std::size_t>(rank_);
    }
    parent_.resize(offsets_.back());
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    for (int l = 0; l <= max_length; ++l) {
      const std::size_t n = offsets_[l + 1] - offsets_[l];
      for (std::size_t code = 0; code < n; ++code) {
        const CoxWord w = decode(l, code);
        for (int i = 0; i + 1 < l; ++i) {
          if (w[i] == w[i + 1]) {
            CoxWord shorter = w;
            shorter.erase(shorter.begin() + i, shorter.begin() + i + 2);
            unite(id(w), id(shorter));
          } else if (sys.commute(w[i], w[i + 1])) {
            CoxWord swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            unite(id(w), id(swapped));
          }
        }
      }
    }
  }

  std::size_t size() const { return parent_.size(); }
  std::size_t id(const CoxWord& w) const {
    std::size_t code = 0;
    for (Generator s : w) code = code * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(s);
    return offsets_[w.size()] + code;
  }
  CoxWord word(std::size_t id) const {
    int l = 0;
    while (offsets_[l + 1] <= id) ++l;
    return decode(l, id - offsets_[l]);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

 private:
  CoxWord decode(int l, std::size_t code) const {
    CoxWord w(static_cast<std::size_t>(l));
    for (int i = l - 1; i >= 0; --i) {
      w[i] = static_cast<Generator>(code % static_cast<std::size_t>(rank_));
      code /= static_cast<std::size_t>(rank_);
    }
    return w;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  int rank_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> parent_;
};

/// Cayley-graph BFS distance between two elements (right multiplication by
/// generators).
inline int cayley_distance(const RACoxeterSystem& sys, const CoxElement& from, const CoxElement& to) {
  std::set<CoxElement> seen{from};
  std::vector<CoxElement> frontier{from};
  for (int d = 0;; ++d) {
    for (const auto& x : frontier) {
      if (x == to) return d;
    }
    std::vector<CoxElement> next;
    for (const auto& x : frontier) {
      for (Generator s = 0; s < sys.rank(); ++s) {
        auto y = sys.times_generator(x, s);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
}

/// Tits' criterion by brute force: a word is reduced iff no letter occurs
/// twice with only letters commuting with it in between.
inline bool tits_reduced(const RACoxeterSystem& sys, const CoxWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j] == w[i]) return false;
      if (!sys.commute(w[i], w[j])) break;
    }
  }
  return true;
}

/// Number of chambers at gallery distance <= L: reduced type words up to
/// commutation, weighted by the colour choices.
inline std::size_t chamber_count_oracle(const BuildingSpec& b, int radius) {
  const auto& sys = b.system();
  std::set<CoxWord> classes;
  std::vector<CoxWord> level{CoxWord{}};
  classes.insert(CoxWord{});
  for (int l = 1; l <= radius; ++l) {
    std::vector<CoxWord> next;
    for (const auto& w : level) {
      for (Generator s = 0; s < sys.rank(); ++s) {
        CoxWord x = w;
        x.push_back(s);
        if (tits_reduced(sys, x)) next.push_back(x);
      }
    }
    // Canonical class member: lexicographically least word reachable by
    // commuting swaps.
    std::vector<CoxWord> reps;
    for (const auto& w : next) {
      std::set<CoxWord> seen{w};
      std::deque<CoxWord> queue{w};
      while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
          if (!sys.commute(x[i], x[i + 1])) continue;
          auto y = x;
          std::swap(y[i], y[i + 1]);
          if (seen.insert(y).second) queue.push_back(y);
        }
      }
      if (classes.insert(*seen.begin()).second) reps.push_back(*seen.begin());
    }
    level = std::move(reps);
  }
  std::size_t total = 0;
  for (const auto& w : classes) {
    std::size_t n = 1;
    for (Generator s : w) n *= static_cast<std::size_t>(b.q(s) - 1);
    total += n;
  }
  return total;
}

}  // namespace tdlc::testing
