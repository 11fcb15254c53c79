#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/coxeter.hpp"
#include "tdlc/errors.hpp"
#include "tdlc/permutation.hpp"

namespace tdlc {

/// (type, colour) with colour in 1..q_s-1.
struct Syllable {
  Generator type = 0;
  int color = 0;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A chamber of the graph-product model: a normal-form syllable word.
struct Chamber {
  std::vector<Syllable> syllables;

  int length() const { return static_cast<int>(syllables.size()); }
  bool is_base() const { return syllables.empty(); }
  friend bool operator==(const Chamber&, const Chamber&) = default;
  /// ShortLex on syllables.
  friend std::strong_ordering operator<=>(const Chamber& a, const Chamber& b);
};

/// Semi-regular right-angled building: W right-angled, q_s chambers per s-panel.
class BuildingSpec {
 public:
  BuildingSpec(RACoxeterSystem system, std::vector<int> thickness);

  const RACoxeterSystem& system() const { return system_; }
  int q(Generator s) const { return q_.at(static_cast<std::size_t>(s)); }
  const std::vector<int>& thickness() const { return q_; }
  bool is_thick() const;

  /// Normal form: equal-type syllables that meet after commutations add
  /// their colours mod q_s (and vanish at 0); then ShortLex on types.
  Chamber normal_form(const std::vector<Syllable>& word) const;
  Chamber product(const Chamber& c, const Chamber& d) const;
  Chamber inverse(const Chamber& c) const;
  Chamber times(const Chamber& c, Syllable s) const;

  /// Type word of the chamber, as a Coxeter element.
  CoxElement type_of(const Chamber& c) const;

  std::vector<Syllable> parse_syllables(const nlohmann::json& j) const;
  Chamber parse_chamber(const nlohmann::json& j) const { return normal_form(parse_syllables(j)); }
  nlohmann::json to_json(const Chamber& c) const;
  std::string format(const Chamber& c) const;
  nlohmann::json to_json() const;

 private:
  RACoxeterSystem system_;
  std::vector<int> q_;
};

using BuildingSpecPtr = std::shared_ptr<const BuildingSpec>;

/// {"coxeter": {...}, "parameters": {"s": 3, ...}}
BuildingSpec building_spec_from_json(const nlohmann::json& j);

Chamber chamber_product(const BuildingSpec& b, const Chamber& c, const Chamber& d);
Chamber chamber_inverse(const BuildingSpec& b, const Chamber& c);
CoxElement weyl_distance(const BuildingSpec& b, const Chamber& c, const Chamber& d);
int gallery_distance(const BuildingSpec& b, const Chamber& c, const Chamber& d);

/// {C (s,c) : c = 0..q_s-1}, C first.
std::vector<Chamber> panel(const BuildingSpec& b, const Chamber& c, Generator s);
/// Gate projection of d onto the J-residue of c.
Chamber project(const BuildingSpec& b, const Chamber& c, const std::vector<Generator>& j,
                const Chamber& d);
bool in_residue(const BuildingSpec& b, const Chamber& c, const std::vector<Generator>& j,
                const Chamber& d);
/// d lies in the s-wing X_s(c).
bool wing_contains(const BuildingSpec& b, const Chamber& c, Generator s, const Chamber& d);

/// The apartment through the base chamber using colour y_s for each type.
struct ApartmentRef {
  std::vector<int> colors;
  static ApartmentRef standard(const BuildingSpec& b);
};

Chamber apartment_chamber(const BuildingSpec& b, const ApartmentRef& ap, const CoxElement& w);
bool in_apartment(const BuildingSpec& b, const ApartmentRef& ap, const Chamber& c);
/// Inverse of apartment_chamber on apartment chambers.
CoxElement apartment_element(const BuildingSpec& b, const ApartmentRef& ap, const Chamber& c);

/// The root u alpha_s of an apartment: chambers ap(v) with u^-1 v in alpha_s.
/// The wall panel is the s-panel of ap(u).
struct RootRef {
  ApartmentRef apartment;
  CoxElement u;
  Generator s = 0;
};

bool root_contains(const BuildingSpec& b, const RootRef& r, const Chamber& c);
/// The opposite root u s alpha_s.
RootRef opposite(const BuildingSpec& b, const RootRef& r);
/// The chamber of r on its wall panel, ap(u).
Chamber wall_chamber(const BuildingSpec& b, const RootRef& r);

/// Chambers within gallery distance L of the base chamber.
class ChamberBall {
 public:
  ChamberBall(BuildingSpecPtr spec, int radius, const Guard& guard = {});

  const BuildingSpec& spec() const { return *spec_; }
  const BuildingSpecPtr& spec_ptr() const { return spec_; }
  int radius() const { return radius_; }
  /// ShortLex order, base chamber first.
  const std::vector<Chamber>& chambers() const { return chambers_; }
  std::size_t size() const { return chambers_.size(); }
  std::optional<std::size_t> index_of(const Chamber& c) const;
  bool contains(const Chamber& c) const { return index_of(c).has_value(); }
  std::vector<Chamber> sphere(int n) const;
  std::vector<Chamber> ball_around_base(int n) const;
  /// Every chamber of panel(c, s) lies in the ball.
  bool panel_complete(const Chamber& c, Generator s) const;

 private:
  BuildingSpecPtr spec_;
  int radius_;
  std::vector<Chamber> chambers_;
  std::map<Chamber, std::size_t> index_;
};

/// Sum over reduced type words of length <= L of prod (q_s - 1).
std::size_t chamber_ball_count(const BuildingSpec& b, int radius, const Guard& guard = {});

/// d(c, r): min gallery distance from c to an apartment chamber of r. Exact
/// when d(base, c) + d <= L, else DepthError. For apartment chambers it is
/// checked against the Coxeter-side dist_to_root.
int dist_chamber_to_root(const ChamberBall& ball, const Chamber& c, const RootRef& r);

/// An exact type-preserving automorphism of the whole building, stored as a
/// composite of left multiplications and panel rotations.
class BuildingAutomorphism {
 public:
  explicit BuildingAutomorphism(BuildingSpecPtr spec);

  static BuildingAutomorphism identity(BuildingSpecPtr spec) { return BuildingAutomorphism(std::move(spec)); }
  /// D -> x D
  static BuildingAutomorphism left_multiplication(BuildingSpecPtr spec, Chamber x);
  /// rho_{C,s,sigma}: D with C^-1 D = (s,c) E goes to C (s, sigma(c)) E;
  /// sigma permutes 0..q_s-1 and fixes 0.
  static BuildingAutomorphism panel_rotation(BuildingSpecPtr spec, Chamber c, Generator s, Perm sigma);

  Chamber operator()(const Chamber& d) const;
  BuildingAutomorphism inverse() const;
  /// (a * b)(D) = a(b(D))
  BuildingAutomorphism operator*(const BuildingAutomorphism& b) const;

  bool fixes(const Chamber& d) const { return (*this)(d) == d; }
  bool fixes_all(const std::vector<Chamber>& ds) const;
  bool agrees_on(const BuildingAutomorphism& o, const std::vector<Chamber>& ds) const;
  bool is_identity_on(const std::vector<Chamber>& ds) const { return fixes_all(ds); }
  /// Chambers of the list that are moved.
  std::vector<Chamber> support(const std::vector<Chamber>& ds) const;

  const BuildingSpec& spec() const { return *spec_; }
  const BuildingSpecPtr& spec_ptr() const { return spec_; }
  std::size_t factor_count() const { return factors_.size(); }
  nlohmann::json to_json() const;

 private:
  struct Factor {
    bool rotation = false;
    Chamber at;
    Generator type = 0;
    Perm sigma;
    bool inverted = false;
  };
  Chamber apply(const Factor& f, const Chamber& d) const;

  BuildingSpecPtr spec_;
  /// Rightmost factor acts first.
  std::vector<Factor> factors_;
};

/// An automorphism restricted to a chamber ball that it maps onto itself.
struct FiniteBuildingAutomorphism {
  const ChamberBall* ball = nullptr;
  std::vector<std::size_t> perm;

  /// DepthError if g moves a ball chamber outside the ball.
  static FiniteBuildingAutomorphism restrict(const BuildingAutomorphism& g, const ChamberBall& ball);
  bool is_bijection() const;
  /// D ~_s D' iff perm(D) ~_s perm(D'), for all pairs and types.
  bool is_type_preserving() const;
};

/// Non-identity generators of Fix(X_s(c)) seen on the ball: the rotations at
/// c of type s, and rotations at chambers off X_s(c) whose support inside the
/// ball misses X_s(c).
std::vector<BuildingAutomorphism> wing_fixator(const ChamberBall& ball, const Chamber& c,
                                               Generator s, const Guard& guard = {});

enum class RootFixStatus { Holds, Fails, Inapplicable };

struct RootFixReport {
  RootFixStatus status = RootFixStatus::Inapplicable;
  int distance = 0;
  int n = 0;
  std::size_t generators = 0;
  std::optional<std::size_t> offending;
};

/// Every wing-fixator generator on the -r side fixes B(base, n). Needs
/// d(base, r) > n, otherwise Inapplicable.
RootFixReport check_root_fixes_ball(const ChamberBall& ball, const RootRef& r, int n,
                                    const Guard& guard = {});

std::string status_name(RootFixStatus s);

}  // namespace tdlc
