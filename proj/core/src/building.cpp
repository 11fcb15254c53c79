#include "tdlc/building.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tdlc {

namespace {

int mod(int a, int q) { return ((a % q) + q) % q; }

/// Every permutation of 0..q-1 fixing 0, identity excluded, in lexicographic order.
std::vector<Perm> nontrivial_rotations(int q) {
  std::vector<int> rest(static_cast<std::size_t>(q - 1));
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<Perm> out;
  do {
    std::vector<int> images{0};
    images.insert(images.end(), rest.begin(), rest.end());
    Perm p(images);
    if (!p.is_identity()) out.push_back(p);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Index of the first syllable of type s movable to the front, if any.
std::optional<std::size_t> s_prefix(const RACoxeterSystem& sys, const Chamber& e, Generator s) {
  for (std::size_t i = 0; i < e.syllables.size(); ++i) {
    const Generator t = e.syllables[i].type;
    if (t == s) return i;
    if (!sys.commute(t, s)) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::strong_ordering operator<=>(const Chamber& a, const Chamber& b) {
  if (auto c = a.syllables.size() <=> b.syllables.size(); c != 0) return c;
  return a.syllables <=> b.syllables;
}

// --------------------------------------------------------------- BuildingSpec

BuildingSpec::BuildingSpec(RACoxeterSystem system, std::vector<int> thickness)
    : system_(std::move(system)), q_(std::move(thickness)) {
  if (static_cast<int>(q_.size()) != system_.rank()) {
    throw std::invalid_argument("need one thickness parameter per generator");
  }
  for (int q : q_) {
    if (q < 2) throw std::invalid_argument("thickness parameters must be >= 2");
  }
}

bool BuildingSpec::is_thick() const {
  return std::all_of(q_.begin(), q_.end(), [](int q) { return q >= 3; });
}

Chamber BuildingSpec::normal_form(const std::vector<Syllable>& word) const {
  std::vector<Syllable> out;
  for (Syllable syl : word) {
    system_.name(syl.type);
    const int q = this->q(syl.type);
    syl.color = mod(syl.color, q);
    if (syl.color == 0) continue;
    bool merged = false;
    for (std::size_t i = out.size(); i-- > 0;) {
      if (out[i].type == syl.type) {
        out[i].color = mod(out[i].color + syl.color, q);
        if (out[i].color == 0) out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        merged = true;
        break;
      }
      if (!system_.commute(out[i].type, syl.type)) break;
    }
    if (!merged) out.push_back(syl);
  }
  // ShortLex on types: repeatedly take the smallest type movable to the front.
  Chamber c;
  c.syllables.reserve(out.size());
  while (!out.empty()) {
    std::size_t best = out.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j) movable = system_.commute(out[j].type, out[i].type);
      if (movable && (best == out.size() || out[i].type < out[best].type)) best = i;
    }
    c.syllables.push_back(out[best]);
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return c;
}

Chamber BuildingSpec::product(const Chamber& c, const Chamber& d) const {
  std::vector<Syllable> w = c.syllables;
  w.insert(w.end(), d.syllables.begin(), d.syllables.end());
  return normal_form(w);
}

Chamber BuildingSpec::inverse(const Chamber& c) const {
  std::vector<Syllable> w(c.syllables.rbegin(), c.syllables.rend());
  for (auto& syl : w) syl.color = mod(-syl.color, q(syl.type));
  return normal_form(w);
}

Chamber BuildingSpec::times(const Chamber& c, Syllable s) const {
  std::vector<Syllable> w = c.syllables;
  w.push_back(s);
  return normal_form(w);
}

CoxElement BuildingSpec::type_of(const Chamber& c) const {
  CoxWord w;
  for (const auto& syl : c.syllables) w.push_back(syl.type);
  return system_.normal_form(w);
}

std::vector<Syllable> BuildingSpec::parse_syllables(const nlohmann::json& j) const {
  if (!j.is_array()) throw std::invalid_argument("chamber must be an array of [type, colour] pairs");
  std::vector<Syllable> w;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("syllable must be [type, colour]");
    w.push_back({system_.index_of(p[0].get<std::string>()), p[1].get<int>()});
  }
  return w;
}

nlohmann::json BuildingSpec::to_json(const Chamber& c) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& syl : c.syllables) out.push_back({system_.name(syl.type), syl.color});
  return out;
}

std::string BuildingSpec::format(const Chamber& c) const {
  if (c.is_base()) return "1";
  std::ostringstream os;
  for (const auto& syl : c.syllables) os << '(' << system_.name(syl.type) << ',' << syl.color << ')';
  return os.str();
}

nlohmann::json BuildingSpec::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  for (Generator s = 0; s < system_.rank(); ++s) params[system_.name(s)] = q(s);
  return {{"coxeter", system_.to_json()}, {"parameters", params}};
}

BuildingSpec building_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coxeter") || !j.contains("parameters")) {
    throw std::invalid_argument("building spec needs \"coxeter\" and \"parameters\"");
  }
  auto sys = coxeter_from_json(j.at("coxeter"));
  const auto& params = j.at("parameters");
  std::vector<int> q;
  for (const auto& name : sys.generator_names()) {
    if (!params.contains(name)) throw std::invalid_argument("missing thickness for generator " + name);
    q.push_back(params.at(name).get<int>());
  }
  for (const auto& [name, value] : params.items()) {
    sys.index_of(name);
    (void)value;
  }
  return BuildingSpec(std::move(sys), std::move(q));
}

// ----------------------------------------------------------- chamber geometry

Chamber chamber_product(const BuildingSpec& b, const Chamber& c, const Chamber& d) {
  return b.product(c, d);
}

Chamber chamber_inverse(const BuildingSpec& b, const Chamber& c) { return b.inverse(c); }

CoxElement weyl_distance(const BuildingSpec& b, const Chamber& c, const Chamber& d) {
  return b.type_of(b.product(b.inverse(c), d));
}

int gallery_distance(const BuildingSpec& b, const Chamber& c, const Chamber& d) {
  return b.product(b.inverse(c), d).length();
}

std::vector<Chamber> panel(const BuildingSpec& b, const Chamber& c, Generator s) {
  std::vector<Chamber> out;
  for (int x = 0; x < b.q(s); ++x) out.push_back(b.times(c, {s, x}));
  return out;
}

Chamber project(const BuildingSpec& b, const Chamber& c, const std::vector<Generator>& j,
                const Chamber& d) {
  const auto& sys = b.system();
  const Chamber e = b.product(b.inverse(c), d);
  std::vector<Syllable> prefix;
  std::vector<Generator> blocked;
  for (const auto& syl : e.syllables) {
    const bool in_j = std::find(j.begin(), j.end(), syl.type) != j.end();
    const bool free = std::all_of(blocked.begin(), blocked.end(),
                                  [&](Generator t) { return sys.commute(t, syl.type); });
    if (in_j && free) {
      prefix.push_back(syl);
    } else {
      blocked.push_back(syl.type);
    }
  }
  return b.product(c, b.normal_form(prefix));
}

bool in_residue(const BuildingSpec& b, const Chamber& c, const std::vector<Generator>& j,
                const Chamber& d) {
  const auto w = weyl_distance(b, c, d);
  return std::all_of(w.word.begin(), w.word.end(), [&](Generator t) {
    return std::find(j.begin(), j.end(), t) != j.end();
  });
}

bool wing_contains(const BuildingSpec& b, const Chamber& c, Generator s, const Chamber& d) {
  return project(b, c, {s}, d) == c;
}

// ------------------------------------------------------------ apartments/roots

ApartmentRef ApartmentRef::standard(const BuildingSpec& b) {
  return {std::vector<int>(b.thickness().size(), 1)};
}

namespace {
void check_apartment(const BuildingSpec& b, const ApartmentRef& ap) {
  if (ap.colors.size() != b.thickness().size()) throw std::invalid_argument("apartment colour count");
  for (std::size_t s = 0; s < ap.colors.size(); ++s) {
    if (ap.colors[s] < 1 || ap.colors[s] >= b.thickness()[s]) {
      throw std::invalid_argument("apartment colour out of range");
    }
  }
}
}  // namespace

Chamber apartment_chamber(const BuildingSpec& b, const ApartmentRef& ap, const CoxElement& w) {
  check_apartment(b, ap);
  std::vector<Syllable> syl;
  for (Generator s : w.word) syl.push_back({s, ap.colors[static_cast<std::size_t>(s)]});
  return b.normal_form(syl);
}

bool in_apartment(const BuildingSpec& b, const ApartmentRef& ap, const Chamber& c) {
  check_apartment(b, ap);
  return std::all_of(c.syllables.begin(), c.syllables.end(), [&](const Syllable& syl) {
    return syl.color == ap.colors[static_cast<std::size_t>(syl.type)];
  });
}

CoxElement apartment_element(const BuildingSpec& b, const ApartmentRef& ap, const Chamber& c) {
  if (!in_apartment(b, ap, c)) throw std::invalid_argument("chamber is not in the apartment");
  return b.type_of(c);
}

bool root_contains(const BuildingSpec& b, const RootRef& r, const Chamber& c) {
  if (!in_apartment(b, r.apartment, c)) return false;
  const auto& sys = b.system();
  return root_contains(sys, r.s, sys.multiply(sys.invert(r.u), b.type_of(c)));
}

RootRef opposite(const BuildingSpec& b, const RootRef& r) {
  return {r.apartment, b.system().times_generator(r.u, r.s), r.s};
}

Chamber wall_chamber(const BuildingSpec& b, const RootRef& r) {
  return apartment_chamber(b, r.apartment, r.u);
}

// ---------------------------------------------------------------- ChamberBall

ChamberBall::ChamberBall(BuildingSpecPtr spec, int radius, const Guard& guard)
    : spec_(std::move(spec)), radius_(radius) {
  if (!spec_) throw std::invalid_argument("null building spec");
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::vector<Chamber> level{Chamber{}};
  chambers_ = level;
  for (int n = 1; n <= radius && !level.empty(); ++n) {
    std::set<Chamber> next;
    for (const auto& c : level) {
      for (Generator s = 0; s < spec_->system().rank(); ++s) {
        for (int x = 1; x < spec_->q(s); ++x) {
          auto d = spec_->times(c, {s, x});
          if (d.length() == n) next.insert(std::move(d));
        }
      }
      guard.check(chambers_.size() + next.size(), "chamber ball");
    }
    level.assign(next.begin(), next.end());
    chambers_.insert(chambers_.end(), level.begin(), level.end());
  }
  for (std::size_t i = 0; i < chambers_.size(); ++i) index_.emplace(chambers_[i], i);
}

std::optional<std::size_t> ChamberBall::index_of(const Chamber& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ChamberBall::panel_complete(const Chamber& c, Generator s) const {
  for (const auto& d : panel(*spec_, c, s)) {
    if (d.length() > radius_) return false;
  }
  return true;
}

std::vector<Chamber> ChamberBall::sphere(int n) const {
  std::vector<Chamber> out;
  for (const auto& c : chambers_) {
    if (c.length() == n) out.push_back(c);
  }
  return out;
}

std::vector<Chamber> ChamberBall::ball_around_base(int n) const {
  if (n > radius_) throw DepthError("B(C, " + std::to_string(n) + ") exceeds the chamber ball");
  std::vector<Chamber> out;
  for (const auto& c : chambers_) {
    if (c.length() <= n) out.push_back(c);
  }
  return out;
}

std::size_t chamber_ball_count(const BuildingSpec& b, int radius, const Guard& guard) {
  std::size_t total = 0;
  for (const auto& w : enumerate_elements(b.system(), radius, guard)) {
    std::size_t n = 1;
    for (Generator s : w.word) n *= static_cast<std::size_t>(b.q(s) - 1);
    total += n;
  }
  return total;
}

int dist_chamber_to_root(const ChamberBall& ball, const Chamber& c, const RootRef& r) {
  const auto& b = ball.spec();
  std::optional<int> best;
  for (const auto& x : ball.chambers()) {
    if (!root_contains(b, r, x)) continue;
    const int d = gallery_distance(b, c, x);
    if (!best || d < *best) best = d;
  }
  if (!best || c.length() + *best > ball.radius()) {
    throw DepthError("root chambers near " + b.format(c) + " are not all in the ball");
  }
  if (in_apartment(b, r.apartment, c)) {
    const auto& sys = b.system();
    const int oracle = dist_to_root(sys, sys.multiply(sys.invert(r.u), b.type_of(c)), r.s);
    if (oracle != *best) throw std::logic_error("dist_chamber_to_root disagrees with the Coxeter side");
  }
  return *best;
}

// -------------------------------------------------------- BuildingAutomorphism

BuildingAutomorphism::BuildingAutomorphism(BuildingSpecPtr spec) : spec_(std::move(spec)) {
  if (!spec_) throw std::invalid_argument("null building spec");
}

BuildingAutomorphism BuildingAutomorphism::left_multiplication(BuildingSpecPtr spec, Chamber x) {
  BuildingAutomorphism g(std::move(spec));
  if (!x.is_base()) g.factors_.push_back({false, std::move(x), 0, Perm{}, false});
  return g;
}

BuildingAutomorphism BuildingAutomorphism::panel_rotation(BuildingSpecPtr spec, Chamber c, Generator s,
                                                          Perm sigma) {
  BuildingAutomorphism g(std::move(spec));
  g.spec_->system().name(s);
  if (sigma.size() != g.spec_->q(s)) throw std::invalid_argument("rotation must permute 0..q_s-1");
  if (sigma(0) != 0) throw std::invalid_argument("rotation must fix colour 0");
  if (!sigma.is_identity()) g.factors_.push_back({true, std::move(c), s, std::move(sigma), false});
  return g;
}

Chamber BuildingAutomorphism::apply(const Factor& f, const Chamber& d) const {
  const auto& b = *spec_;
  if (!f.rotation) return b.product(f.inverted ? b.inverse(f.at) : f.at, d);
  Chamber e = b.product(b.inverse(f.at), d);
  const auto i = s_prefix(b.system(), e, f.type);
  if (!i) return d;
  int& color = e.syllables[*i].color;
  color = f.inverted ? f.sigma.inverse()(color) : f.sigma(color);
  return b.product(f.at, e);
}

Chamber BuildingAutomorphism::operator()(const Chamber& d) const {
  Chamber x = d;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) x = apply(*it, x);
  return x;
}

BuildingAutomorphism BuildingAutomorphism::inverse() const {
  BuildingAutomorphism g(spec_);
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    Factor f = *it;
    f.inverted = !f.inverted;
    g.factors_.push_back(std::move(f));
  }
  return g;
}

BuildingAutomorphism BuildingAutomorphism::operator*(const BuildingAutomorphism& o) const {
  if (spec_ != o.spec_ && spec_->to_json() != o.spec_->to_json()) {
    throw std::invalid_argument("automorphisms of different buildings");
  }
  BuildingAutomorphism g(spec_);
  g.factors_ = factors_;
  g.factors_.insert(g.factors_.end(), o.factors_.begin(), o.factors_.end());
  return g;
}

bool BuildingAutomorphism::fixes_all(const std::vector<Chamber>& ds) const {
  return std::all_of(ds.begin(), ds.end(), [&](const Chamber& d) { return fixes(d); });
}

bool BuildingAutomorphism::agrees_on(const BuildingAutomorphism& o, const std::vector<Chamber>& ds) const {
  return std::all_of(ds.begin(), ds.end(), [&](const Chamber& d) { return (*this)(d) == o(d); });
}

std::vector<Chamber> BuildingAutomorphism::support(const std::vector<Chamber>& ds) const {
  std::vector<Chamber> out;
  for (const auto& d : ds) {
    if (!fixes(d)) out.push_back(d);
  }
  return out;
}

nlohmann::json BuildingAutomorphism::to_json() const {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : factors_) {
    nlohmann::json j{{"kind", f.rotation ? "rotation" : "left"},
                     {"at", spec_->to_json(f.at)},
                     {"inverse", f.inverted}};
    if (f.rotation) {
      j["type"] = spec_->system().name(f.type);
      j["sigma"] = f.sigma.images();
    }
    factors.push_back(std::move(j));
  }
  return factors;
}

// -------------------------------------------------- FiniteBuildingAutomorphism

FiniteBuildingAutomorphism FiniteBuildingAutomorphism::restrict(const BuildingAutomorphism& g,
                                                                const ChamberBall& ball) {
  FiniteBuildingAutomorphism f;
  f.ball = &ball;
  f.perm.reserve(ball.size());
  for (const auto& c : ball.chambers()) {
    const auto image = g(c);
    auto i = ball.index_of(image);
    if (!i) throw DepthError("image of " + ball.spec().format(c) + " leaves the chamber ball");
    f.perm.push_back(*i);
  }
  return f;
}

bool FiniteBuildingAutomorphism::is_bijection() const {
  std::vector<bool> hit(perm.size(), false);
  for (auto i : perm) {
    if (i >= perm.size() || hit[i]) return false;
    hit[i] = true;
  }
  return true;
}

bool FiniteBuildingAutomorphism::is_type_preserving() const {
  if (!ball || !is_bijection()) return false;
  const auto& b = ball->spec();
  const auto& ch = ball->chambers();
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  for (const std::vector<std::size_t>* p : {&perm, static_cast<const std::vector<std::size_t>*>(&inv)}) {
    for (std::size_t i = 0; i < ch.size(); ++i) {
      for (Generator s = 0; s < b.system().rank(); ++s) {
        for (int x = 1; x < b.q(s); ++x) {
          auto j = ball->index_of(b.times(ch[i], {s, x}));
          if (!j) continue;
          const auto w = weyl_distance(b, ch[(*p)[i]], ch[(*p)[*j]]);
          if (w.word != CoxWord{s}) return false;
        }
      }
    }
  }
  return true;
}

// ----------------------------------------------------------------- wing groups

std::vector<BuildingAutomorphism> wing_fixator(const ChamberBall& ball, const Chamber& c, Generator s,
                                               const Guard& guard) {
  const auto& b = ball.spec();
  std::vector<Chamber> wing;
  for (const auto& d : ball.chambers()) {
    if (wing_contains(b, c, s, d)) wing.push_back(d);
  }
  std::vector<BuildingAutomorphism> out;
  for (const auto& sigma : nontrivial_rotations(b.q(s))) {
    out.push_back(BuildingAutomorphism::panel_rotation(ball.spec_ptr(), c, s, sigma));
  }
  for (const auto& d : ball.chambers()) {
    if (wing_contains(b, c, s, d)) continue;
    for (Generator t = 0; t < b.system().rank(); ++t) {
      for (const auto& sigma : nontrivial_rotations(b.q(t))) {
        auto g = BuildingAutomorphism::panel_rotation(ball.spec_ptr(), d, t, sigma);
        if (!g.fixes_all(wing) || g.is_identity_on(ball.chambers())) continue;
        out.push_back(std::move(g));
        guard.check(out.size(), "wing_fixator");
      }
    }
  }
  return out;
}

RootFixReport check_root_fixes_ball(const ChamberBall& ball, const RootRef& r, int n, const Guard& guard) {
  const auto& b = ball.spec();
  RootFixReport rep;
  rep.n = n;
  rep.distance = dist_chamber_to_root(ball, Chamber{}, r);
  if (rep.distance <= n) return rep;
  const RootRef minus = opposite(b, r);
  const auto gens = wing_fixator(ball, wall_chamber(b, minus), r.s, guard);
  rep.generators = gens.size();
  const auto target = ball.ball_around_base(n);
  rep.status = RootFixStatus::Holds;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].fixes_all(target)) {
      rep.status = RootFixStatus::Fails;
      rep.offending = i;
      break;
    }
  }
  return rep;
}

std::string status_name(RootFixStatus s) {
  switch (s) {
    case RootFixStatus::Holds: return "holds";
    case RootFixStatus::Fails: return "fails";
    case RootFixStatus::Inapplicable: return "inapplicable";
  }
  return "?";
}

}  // namespace tdlc
