#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdlc/building.hpp"

namespace tdlc {

struct BuildingRepresentative {
  CoxElement w;
  /// Stabilises the apartment and sends the base chamber to ap(w).
  BuildingAutomorphism a;
};

/// Aut(Delta)^+ = K A K with K the stabiliser of the base chamber.
struct BuildingCartan {
  BuildingSpecPtr spec;
  ApartmentRef apartment;
  int max_length = 0;
  /// ShortLex order of w.
  std::vector<BuildingRepresentative> representatives;

  const BuildingRepresentative& representative(const CoxElement& w) const;
};

/// a_s = L_{(s,y_s)} composed with the rotation at the base chamber swapping
/// y_s and -y_s; a_w is the product along the normal form of w.
BuildingAutomorphism apartment_translation(const BuildingSpecPtr& spec, const ApartmentRef& ap,
                                           const CoxElement& w);

BuildingCartan representatives(const BuildingSpecPtr& spec, int max_length, const Guard& guard = {});

struct RepresentativeCheck {
  /// delta(C, a_w C) = w for every w
  bool weyl_distance_ok = false;
  /// a_w maps ap(v) to ap(wv) for every l(v) <= L
  bool stabilises_apartment = false;
  /// delta(a_w D, a_w D') = delta(D, D') over the ball (all pairs)
  bool type_preserving = false;
  int radius = 0;
};

RepresentativeCheck certify_representatives(const BuildingCartan& bc, const ChamberBall& ball);

struct BuildingFactorization {
  BuildingAutomorphism k;
  CoxElement w;
  BuildingAutomorphism a;
  BuildingAutomorphism k_prime;
  /// k a k' = g on the ball; k and k' fix the base chamber.
  bool verified = false;
  int certified_radius = 0;
};

/// Builds k' from rotations along the normal form of g(C), so no search is
/// needed. Throws DepthError when l(delta(C, g C)) exceeds the
/// representatives' range.
BuildingFactorization factorize(const BuildingAutomorphism& g, const BuildingCartan& bc,
                                const ChamberBall& ball);

struct DisjointnessReport {
  /// delta(C, a_w C) = w and these are pairwise distinct.
  bool symbolic = false;
  /// delta(C, k1 a_w k2 C) = w for every sample.
  bool sampled = false;
  std::size_t pairs = 0;
  std::size_t samples = 0;
};

/// A random base-chamber stabiliser: a product of rotations fixing C.
BuildingAutomorphism random_chamber_stabilizer(const ChamberBall& ball, std::mt19937_64& rng,
                                               int factors = 4);

DisjointnessReport double_coset_disjointness_check(const BuildingCartan& bc, const ChamberBall& ball,
                                                   std::uint64_t seed, std::size_t samples_per_w = 8);

struct BuildingContractionStep {
  CoxElement w;
  int distance = 0;
  int radius = 0;
  /// a_w x a_w^-1 fixes X_s(ap(ws)) on the ball.
  bool in_wing_fixator = false;
  /// ... and B(C, distance - 1).
  bool fixes_ball = false;
};

struct BuildingContractionCertificate {
  Generator s = 0;
  /// Rotation at ap(s) of type s: a non-identity element of U_{-alpha_s}.
  BuildingAutomorphism x;
  bool x_nontrivial = false;
  std::vector<BuildingContractionStep> steps;
  bool holds = false;
  int ball_radius = 0;
};

struct BuildingContractionResult {
  std::optional<BuildingContractionCertificate> certificate;
  std::string reason;
};

/// Propagates InfeasibleError("no growing chain") from growing_chain_search; a thin
/// s-panel gives reason "trivial wing fixator".
BuildingContractionResult building_contraction_witness(const std::vector<CoxElement>& ws,
                                                       const BuildingSpecPtr& spec, int ball_radius,
                                                       const Guard& guard = {});

nlohmann::json to_json(const BuildingCartan& bc);
nlohmann::json to_json(const BuildingSpec& b, const BuildingFactorization& f);
nlohmann::json to_json(const BuildingSpec& b, const BuildingContractionResult& r);

}  // namespace tdlc
