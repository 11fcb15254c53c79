#include "tdlc/kak_building.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace tdlc {

namespace {

/// The rotation at c of type s swapping colours from and to (identity if equal).
BuildingAutomorphism swap_rotation(const BuildingSpecPtr& spec, const Chamber& c, Generator s, int from,
                                   int to) {
  const int q = spec->q(s);
  const Perm sigma = from == to ? Perm::identity(q) : Perm::transposition(q, from, to);
  return BuildingAutomorphism::panel_rotation(spec, c, s, sigma);
}

}  // namespace

const BuildingRepresentative& BuildingCartan::representative(const CoxElement& w) const {
  for (const auto& r : representatives) {
    if (r.w == w) return r;
  }
  throw DepthError("no representative for w of length " + std::to_string(w.length()));
}

BuildingAutomorphism apartment_translation(const BuildingSpecPtr& spec, const ApartmentRef& ap,
                                           const CoxElement& w) {
  auto a = BuildingAutomorphism::identity(spec);
  for (Generator s : w.word) {
    const int y = ap.colors.at(static_cast<std::size_t>(s));
    const int q = spec->q(s);
    auto step = BuildingAutomorphism::left_multiplication(spec, Chamber{{{s, y}}}) *
                swap_rotation(spec, Chamber{}, s, y, (q - y) % q);
    a = a * step;
  }
  return a;
}

BuildingCartan representatives(const BuildingSpecPtr& spec, int max_length, const Guard& guard) {
  BuildingCartan bc;
  bc.spec = spec;
  bc.apartment = ApartmentRef::standard(*spec);
  bc.max_length = max_length;
  for (const auto& w : enumerate_elements(spec->system(), max_length, guard)) {
    bc.representatives.push_back({w, apartment_translation(spec, bc.apartment, w)});
  }
  return bc;
}

RepresentativeCheck certify_representatives(const BuildingCartan& bc, const ChamberBall& ball) {
  const auto& b = *bc.spec;
  const auto& sys = b.system();
  RepresentativeCheck rc;
  rc.radius = ball.radius();
  rc.weyl_distance_ok = rc.stabilises_apartment = rc.type_preserving = true;
  const auto vs = enumerate_elements(sys, ball.radius());
  const Chamber base;
  for (const auto& r : bc.representatives) {
    if (weyl_distance(b, base, r.a(base)) != r.w) rc.weyl_distance_ok = false;
    for (const auto& v : vs) {
      const auto image = r.a(apartment_chamber(b, bc.apartment, v));
      if (image != apartment_chamber(b, bc.apartment, sys.multiply(r.w, v))) rc.stabilises_apartment = false;
    }
    std::vector<Chamber> images;
    images.reserve(ball.size());
    for (const auto& d : ball.chambers()) images.push_back(r.a(d));
    for (std::size_t i = 0; i < ball.size() && rc.type_preserving; ++i) {
      for (std::size_t j = i + 1; j < ball.size(); ++j) {
        if (weyl_distance(b, images[i], images[j]) != weyl_distance(b, ball.chambers()[i], ball.chambers()[j])) {
          rc.type_preserving = false;
          break;
        }
      }
    }
  }
  return rc;
}

BuildingFactorization factorize(const BuildingAutomorphism& g, const BuildingCartan& bc,
                                const ChamberBall& ball) {
  const auto& b = *bc.spec;
  const Chamber base;
  const Chamber target = g(base);
  if (target.length() > bc.max_length) {
    throw DepthError("l(delta(C, gC)) = " + std::to_string(target.length()) +
                     " exceeds the representatives' range");
  }
  // Rotate the syllables of g(C) one at a time onto the apartment colours.
  auto k = BuildingAutomorphism::identity(bc.spec);
  Chamber prefix;
  for (const auto& syl : target.syllables) {
    const int y = bc.apartment.colors.at(static_cast<std::size_t>(syl.type));
    k = swap_rotation(bc.spec, prefix, syl.type, syl.color, y) * k;
    prefix = b.times(prefix, {syl.type, y});
  }
  const CoxElement w = b.type_of(target);
  const auto& rep = bc.representative(w);

  BuildingFactorization f{k.inverse(), w, rep.a, rep.a.inverse() * k * g, false, ball.radius()};
  const auto product = f.k * f.a * f.k_prime;
  f.verified = f.k.fixes(base) && f.k_prime.fixes(base) && product.agrees_on(g, ball.chambers());
  return f;
}

BuildingAutomorphism random_chamber_stabilizer(const ChamberBall& ball, std::mt19937_64& rng, int factors) {
  const auto& b = ball.spec();
  const auto& chambers = ball.chambers();
  std::uniform_int_distribution<std::size_t> pick_chamber(0, chambers.size() - 1);
  std::uniform_int_distribution<int> pick_type(0, b.system().rank() - 1);
  auto k = BuildingAutomorphism::identity(ball.spec_ptr());
  const Chamber base;
  int added = 0;
  for (int attempts = 0; added < factors && attempts < 100 * factors; ++attempts) {
    const Chamber& c = chambers[pick_chamber(rng)];
    const Generator t = pick_type(rng);
    const int q = b.q(t);
    if (q < 3) continue;
    std::uniform_int_distribution<int> color(1, q - 1);
    const int x = color(rng);
    const int z = color(rng);
    if (x == z) continue;
    auto rho = swap_rotation(ball.spec_ptr(), c, t, x, z);
    if (!rho.fixes(base)) continue;
    k = rho * k;
    ++added;
  }
  return k;
}

DisjointnessReport double_coset_disjointness_check(const BuildingCartan& bc, const ChamberBall& ball,
                                                   std::uint64_t seed, std::size_t samples_per_w) {
  const auto& b = *bc.spec;
  const Chamber base;
  DisjointnessReport r;
  r.symbolic = true;
  std::set<CoxElement> seen;
  for (const auto& rep : bc.representatives) {
    if (weyl_distance(b, base, rep.a(base)) != rep.w || !seen.insert(rep.w).second) r.symbolic = false;
  }
  const auto n = bc.representatives.size();
  r.pairs = n * (n - 1) / 2;
  std::mt19937_64 rng(seed);
  r.sampled = true;
  for (const auto& rep : bc.representatives) {
    for (std::size_t i = 0; i < samples_per_w; ++i) {
      const auto k1 = random_chamber_stabilizer(ball, rng);
      const auto k2 = random_chamber_stabilizer(ball, rng);
      ++r.samples;
      if (weyl_distance(b, base, (k1 * rep.a * k2)(base)) != rep.w) r.sampled = false;
    }
  }
  return r;
}

BuildingContractionResult building_contraction_witness(const std::vector<CoxElement>& ws,
                                                       const BuildingSpecPtr& spec, int ball_radius,
                                                       const Guard& guard) {
  const auto& b = *spec;
  const auto& sys = b.system();
  const auto chain = growing_chain_search(sys, ws, guard);
  const Generator s = chain.s;
  BuildingContractionResult result;
  if (b.q(s) < 3) {
    result.reason = "trivial wing fixator";
    return result;
  }
  const ChamberBall ball(spec, ball_radius, guard);
  const ApartmentRef ap = ApartmentRef::standard(b);
  const Chamber c_minus = apartment_chamber(b, ap, sys.generator(s));

  BuildingContractionCertificate cert{
      s, swap_rotation(spec, c_minus, s, 1, 2), false, {}, true, ball_radius};
  cert.x_nontrivial = !cert.x.is_identity_on(ball.chambers());

  for (std::size_t i = 0; i < chain.chain.size(); ++i) {
    const auto& w = chain.chain[i];
    BuildingContractionStep step;
    step.w = w;
    step.distance = chain.distances[i];
    step.radius = step.distance - 1;
    const auto a = apartment_translation(spec, ap, w);
    const auto conj = a * cert.x * a.inverse();
    const Chamber wall = apartment_chamber(b, ap, sys.times_generator(w, s));
    step.in_wing_fixator = true;
    for (const auto& d : ball.chambers()) {
      if (wing_contains(b, wall, s, d) && !conj.fixes(d)) {
        step.in_wing_fixator = false;
        break;
      }
    }
    step.fixes_ball = step.radius <= ball_radius && conj.fixes_all(ball.ball_around_base(step.radius));
    if (!step.in_wing_fixator || !step.fixes_ball) cert.holds = false;
    cert.steps.push_back(std::move(step));
  }
  cert.holds = cert.holds && cert.x_nontrivial;
  result.certificate = std::move(cert);
  return result;
}

nlohmann::json to_json(const BuildingCartan& bc) {
  const auto& b = *bc.spec;
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : bc.representatives) {
    reps.push_back({{"w", to_json(b.system(), r.w)}, {"image_of_base", b.to_json(r.a(Chamber{}))}});
  }
  return {{"max_length", bc.max_length}, {"apartment_colors", bc.apartment.colors}, {"representatives", reps}};
}

nlohmann::json to_json(const BuildingSpec& b, const BuildingFactorization& f) {
  return {{"w", to_json(b.system(), f.w)},
          {"k", f.k.to_json()},
          {"k_prime", f.k_prime.to_json()},
          {"verified", f.verified},
          {"certified_radius", f.certified_radius}};
}

nlohmann::json to_json(const BuildingSpec& b, const BuildingContractionResult& r) {
  if (!r.certificate) return {{"certificate", nullptr}, {"reason", r.reason}};
  const auto& c = *r.certificate;
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : c.steps) {
    steps.push_back({{"w", to_json(b.system(), st.w)},
                     {"distance", st.distance},
                     {"fixed_ball_radius", st.radius},
                     {"in_wing_fixator", st.in_wing_fixator},
                     {"fixes_ball", st.fixes_ball}});
  }
  return {{"certificate",
           {{"s", b.system().name(c.s)},
            {"x", c.x.to_json()},
            {"x_nontrivial", c.x_nontrivial},
            {"steps", steps},
            {"holds", c.holds},
            {"ball_radius", c.ball_radius}}},
          {"reason", r.reason}};
}

}  // namespace tdlc
