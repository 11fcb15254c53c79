#include "tdlc/permutation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace tdlc {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)]) {
      throw std::invalid_argument("Perm: not a bijection of {0.." +
                                  std::to_string(size() - 1) + "}");
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Perm(std::move(v));
}

Perm Perm::from_one_based(const std::vector<int>& one_line) {
  std::vector<int> v;
  v.reserve(one_line.size());
  for (int x : one_line) v.push_back(x - 1);
  return Perm(std::move(v));
}

Perm Perm::transposition(int n, int a, int b) {
  auto v = identity(n).images_;
  std::swap(v.at(static_cast<std::size_t>(a)), v.at(static_cast<std::size_t>(b)));
  return Perm(std::move(v));
}

Perm Perm::cycle(int n, const std::vector<int>& cyc) {
  auto v = identity(n).images_;
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    v.at(static_cast<std::size_t>(cyc[k])) = cyc[(k + 1) % cyc.size()];
  }
  return Perm(std::move(v));
}

std::vector<int> Perm::one_based() const {
  std::vector<int> v;
  v.reserve(images_.size());
  for (int x : images_) v.push_back(x + 1);
  return v;
}

Perm Perm::operator*(const Perm& rhs) const {
  if (rhs.size() != size()) throw std::invalid_argument("Perm: degree mismatch");
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = images_[static_cast<std::size_t>(rhs.images_[i])];
  }
  Perm out;
  out.images_ = std::move(v);
  return out;
}

Perm Perm::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  }
  Perm out;
  out.images_ = std::move(v);
  return out;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

int Perm::fixed_point_count() const {
  int n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] == static_cast<int>(i)) ++n;
  }
  return n;
}

std::string Perm::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ' ';
    os << images_[i] + 1;
  }
  os << ']';
  return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : p.images()) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Perm> close_under_composition(int degree,
                                          const std::vector<Perm>& generators,
                                          const Guard& guard) {
  for (const auto& g : generators) {
    if (g.size() != degree) throw std::invalid_argument("generator degree mismatch");
  }
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> queue;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Perm next = g * cur;
      if (seen.insert(next).second) {
        guard.check(seen.size(), "permutation group closure");
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators, Guard guard)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree < 1) throw std::invalid_argument("PermGroup: degree must be >= 1");
  elements_ = close_under_composition(degree_, generators_, guard);
}

bool PermGroup::contains(const Perm& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<int> orbit_of(static_cast<std::size_t>(degree_), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < degree_; ++start) {
    if (orbit_of[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> orbit{start};
    orbit_of[static_cast<std::size_t>(start)] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& g : generators_) {
        int y = g(orbit[k]);
        if (orbit_of[static_cast<std::size_t>(y)] < 0) {
          orbit_of[static_cast<std::size_t>(y)] = static_cast<int>(out.size());
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool PermGroup::is_transitive() const { return orbits().size() == 1; }

std::vector<Perm> PermGroup::stabilizer(int point) const {
  std::vector<Perm> out;
  for (const auto& g : elements_) {
    if (g(point) == point) out.push_back(g);
  }
  return out;
}

}  // namespace tdlc
