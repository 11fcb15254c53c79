#include "tdlc/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tdlc {

std::strong_ordering operator<=>(const CoxElement& a, const CoxElement& b) {
  if (auto c = a.word.size() <=> b.word.size(); c != 0) return c;
  return a.word <=> b.word;
}

RACoxeterSystem::RACoxeterSystem(std::vector<std::string> generators,
                                 const std::vector<std::pair<std::string, std::string>>& commuting_pairs)
    : names_(std::move(generators)) {
  if (names_.empty()) throw std::invalid_argument("coxeter system needs at least one generator");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || n.find_first_of(" \t\n") != std::string::npos) {
      throw std::invalid_argument("bad generator name '" + n + "'");
    }
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate generator " + n);
  }
  const auto r = names_.size();
  commute_.assign(r, std::vector<bool>(r, false));
  for (const auto& [a, b] : commuting_pairs) {
    const Generator i = index_of(a);
    const Generator j = index_of(b);
    if (i == j) throw std::invalid_argument("commuting pair must be irreflexive: " + a);
    commute_[i][j] = commute_[j][i] = true;
  }
  std::size_t h = std::hash<std::size_t>{}(r);
  for (std::size_t i = 0; i < r; ++i) {
    h = h * 1000003u ^ std::hash<std::string>{}(names_[i]);
    for (std::size_t j = 0; j < r; ++j) h = h * 31u + (commute_[i][j] ? 1u : 0u);
  }
  tag_ = h == 0 ? 1 : h;
}

const std::string& RACoxeterSystem::name(Generator s) const {
  if (s < 0 || s >= rank()) throw std::invalid_argument("generator index out of range");
  return names_[s];
}

Generator RACoxeterSystem::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown generator '" + name + "'");
  return static_cast<Generator>(it - names_.begin());
}

bool RACoxeterSystem::commute(Generator s, Generator t) const {
  return s != t && commute_.at(s).at(t);
}

CoxElement RACoxeterSystem::generator(Generator s) const {
  name(s);
  return {{s}, tag_};
}

void RACoxeterSystem::check(const CoxElement& u) const {
  if (u.system_tag != tag_) throw std::invalid_argument("element belongs to another coxeter system");
}

CoxWord RACoxeterSystem::reduce(const CoxWord& word) const {
  CoxWord out;
  for (Generator s : word) {
    name(s);
    // An earlier s cancels if every letter after it commutes with s.
    bool cancelled = false;
    for (std::size_t i = out.size(); i-- > 0;) {
      if (out[i] == s) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        cancelled = true;
        break;
      }
      if (!commute(out[i], s)) break;
    }
    if (!cancelled) out.push_back(s);
  }
  return out;
}

CoxWord RACoxeterSystem::shortlex(CoxWord rest) const {
  CoxWord out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    // Smallest letter whose first occurrence commutes past everything before it.
    std::size_t best = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j) movable = commute(rest[j], rest[i]);
      if (movable && (best == rest.size() || rest[i] < rest[best])) best = i;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

CoxElement RACoxeterSystem::normal_form(const CoxWord& word) const {
  return {shortlex(reduce(word)), tag_};
}

CoxWord RACoxeterSystem::parse_word(const std::string& text) const {
  std::istringstream in(text);
  CoxWord w;
  for (std::string tok; in >> tok;) w.push_back(index_of(tok));
  return w;
}

CoxWord RACoxeterSystem::parse_word(const nlohmann::json& names) const {
  if (names.is_string()) return parse_word(names.get<std::string>());
  if (!names.is_array()) throw std::invalid_argument("word must be an array of generator names");
  CoxWord w;
  for (const auto& n : names) w.push_back(index_of(n.get<std::string>()));
  return w;
}

std::string RACoxeterSystem::format(const CoxWord& word) const {
  std::string out;
  for (Generator s : word) {
    if (!out.empty()) out += ' ';
    out += name(s);
  }
  return out;
}

CoxElement RACoxeterSystem::multiply(const CoxElement& u, const CoxElement& v) const {
  check(u);
  check(v);
  CoxWord w = u.word;
  w.insert(w.end(), v.word.begin(), v.word.end());
  return normal_form(w);
}

CoxElement RACoxeterSystem::invert(const CoxElement& u) const {
  check(u);
  return normal_form(CoxWord(u.word.rbegin(), u.word.rend()));
}

CoxElement RACoxeterSystem::times_generator(const CoxElement& u, Generator s) const {
  check(u);
  CoxWord w = u.word;
  w.push_back(s);
  return normal_form(w);
}

CoxElement RACoxeterSystem::generator_times(Generator s, const CoxElement& u) const {
  check(u);
  CoxWord w{s};
  w.insert(w.end(), u.word.begin(), u.word.end());
  return normal_form(w);
}

CoxElement RACoxeterSystem::conjugate_generator(const CoxElement& u, Generator s) const {
  return multiply(invert(u), generator_times(s, u));
}

int RACoxeterSystem::length(const CoxElement& u) const {
  check(u);
  return u.length();
}

bool RACoxeterSystem::is_spherical(const std::vector<Generator>& j) const {
  for (Generator s : j) name(s);
  for (std::size_t a = 0; a < j.size(); ++a) {
    for (std::size_t b = a + 1; b < j.size(); ++b) {
      if (j[a] != j[b] && !commute(j[a], j[b])) return false;
    }
  }
  return true;
}

bool RACoxeterSystem::is_irreducible() const {
  std::vector<bool> seen(names_.size(), false);
  std::deque<Generator> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Generator s = queue.front();
    queue.pop_front();
    for (Generator t = 0; t < rank(); ++t) {
      if (t != s && !commute(s, t) && !seen[t]) {
        seen[t] = true;
        ++count;
        queue.push_back(t);
      }
    }
  }
  return count == names_.size();
}

nlohmann::json RACoxeterSystem::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (Generator s = 0; s < rank(); ++s) {
    for (Generator t = s + 1; t < rank(); ++t) {
      if (commute(s, t)) pairs.push_back({names_[s], names_[t]});
    }
  }
  return {{"generators", names_}, {"commuting_pairs", pairs}};
}

RACoxeterSystem coxeter_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("generators")) {
    throw std::invalid_argument("coxeter config needs \"generators\"");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("commuting_pairs")) {
    for (const auto& p : j.at("commuting_pairs")) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("commuting pair must have two names");
      pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  return RACoxeterSystem(j.at("generators").get<std::vector<std::string>>(), pairs);
}

std::vector<CoxElement> enumerate_elements(const RACoxeterSystem& sys, int max_length,
                                           const Guard& guard) {
  if (max_length < 0) throw std::invalid_argument("length bound must be >= 0");
  std::vector<CoxElement> all{sys.identity()};
  std::vector<CoxElement> level{sys.identity()};
  for (int len = 1; len <= max_length && !level.empty(); ++len) {
    std::set<CoxElement> next;
    for (const auto& u : level) {
      for (Generator s = 0; s < sys.rank(); ++s) {
        auto v = sys.times_generator(u, s);
        if (v.length() == len) next.insert(std::move(v));
      }
    }
    guard.check(all.size() + next.size(), "enumerate_elements");
    level.assign(next.begin(), next.end());
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

int wall_distance(const RACoxeterSystem& sys, const CoxElement& w, Generator s) {
  const int l = sys.conjugate_generator(w, s).length();
  if (l % 2 == 0) throw std::logic_error("l(w^-1 s w) is even");
  return (l - 1) / 2;
}

std::vector<CoxElement> profile_bounded_set(const RACoxeterSystem& sys, int max_length,
                                            int max_profile, const Guard& guard) {
  std::vector<CoxElement> out;
  for (const auto& w : enumerate_elements(sys, max_length, guard)) {
    bool ok = true;
    for (Generator s = 0; s < sys.rank() && ok; ++s) {
      ok = sys.conjugate_generator(w, s).length() <= max_profile;
    }
    if (ok) out.push_back(w);
  }
  return out;
}

bool root_contains(const RACoxeterSystem& sys, Generator s, const CoxElement& w) {
  return sys.generator_times(s, w).length() > w.length();
}

int dist_to_root(const RACoxeterSystem& sys, const CoxElement& w, Generator s, const Guard& guard) {
  std::map<CoxElement, int> dist{{w, 0}};
  std::deque<CoxElement> queue{w};
  int found = -1;
  while (!queue.empty()) {
    CoxElement u = queue.front();
    queue.pop_front();
    if (root_contains(sys, s, u)) {
      found = dist[u];
      break;
    }
    for (Generator t = 0; t < sys.rank(); ++t) {
      auto v = sys.times_generator(u, t);
      if (dist.emplace(v, dist[u] + 1).second) queue.push_back(std::move(v));
    }
    guard.check(dist.size(), "dist_to_root");
  }
  if (found < 0) throw std::logic_error("dist_to_root: BFS exhausted");
  if (found > 0 && found != wall_distance(sys, w, s) + 1) {
    throw std::logic_error("dist_to_root disagrees with wall_distance + 1");
  }
  return found;
}

GrowingChain growing_chain_search(const RACoxeterSystem& sys, const std::vector<CoxElement>& ws,
                           const Guard& guard) {
  std::optional<GrowingChain> best;
  for (Generator s = 0; s < sys.rank(); ++s) {
    // distance -> ShortLex-least w on the side w^-1 outside alpha_s
    std::map<int, CoxElement> by_distance;
    for (const auto& w : ws) {
      const auto winv = sys.invert(w);
      if (root_contains(sys, s, winv)) continue;
      const int d = wall_distance(sys, winv, s);
      auto [it, fresh] = by_distance.emplace(d, w);
      if (!fresh && w < it->second) it->second = w;
    }
    if (best && by_distance.size() <= best->chain.size()) continue;
    GrowingChain r;
    r.s = s;
    for (const auto& [d, w] : by_distance) {
      r.chain.push_back(w);
      r.wall_distances.push_back(d);
      r.distances.push_back(dist_to_root(sys, sys.invert(w), s, guard));
    }
    best = std::move(r);
  }
  if (!best || best->chain.size() < 2) throw InfeasibleError("no growing chain");
  return *best;
}

nlohmann::json to_json(const RACoxeterSystem& sys, const CoxElement& u) {
  nlohmann::json names = nlohmann::json::array();
  for (Generator s : u.word) names.push_back(sys.name(s));
  return names;
}

nlohmann::json to_json(const RACoxeterSystem& sys, const GrowingChain& r) {
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& w : r.chain) chain.push_back(to_json(sys, w));
  return {{"s", sys.name(r.s)},
          {"chain", chain},
          {"wall_distances", r.wall_distances},
          {"distances", r.distances}};
}

}  // namespace tdlc
