#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "tdlc/kak_building.hpp"

using namespace tdlc;
using namespace tdlc::testing;

namespace {

BuildingSpecPtr spec_of(RACoxeterSystem sys, std::vector<int> q) {
  return std::make_shared<const BuildingSpec>(std::move(sys), std::move(q));
}

// Random element of Aut^+: left multiplications mixed with rotations.
BuildingAutomorphism random_element(const ChamberBall& ball, std::mt19937_64& rng, int max_len) {
  const auto& b = ball.spec();
  std::vector<Chamber> near;
  for (const auto& c : ball.chambers()) {
    if (c.length() <= max_len) near.push_back(c);
  }
  std::uniform_int_distribution<std::size_t> pick(0, near.size() - 1);
  auto g = random_chamber_stabilizer(ball, rng, 3);
  g = BuildingAutomorphism::left_multiplication(ball.spec_ptr(), near[pick(rng)]) * g;
  // Keep g(C) within reach of the representatives.
  while (g(Chamber{}).length() > max_len) {
    g = BuildingAutomorphism::left_multiplication(ball.spec_ptr(), b.inverse(near[pick(rng)])) * g;
  }
  return g;
}

void check_factorization(const BuildingAutomorphism& g, const BuildingCartan& bc, const ChamberBall& ball) {
  const auto f = factorize(g, bc, ball);
  const auto& b = ball.spec();
  CHECK(f.verified);
  CHECK(f.k.fixes(Chamber{}));
  CHECK(f.k_prime.fixes(Chamber{}));
  CHECK(f.w == weyl_distance(b, Chamber{}, g(Chamber{})));
  CHECK((f.k * f.a * f.k_prime).agrees_on(g, ball.chambers()));
}

}  // namespace

TEST_CASE("apartment translations") {
  for (int q : {2, 3, 4}) {
    const auto spec = dinf_building(q);
    const auto& sys = spec->system();
    const auto ap = ApartmentRef::standard(*spec);
    const ChamberBall ball(spec, 4);
    for (const auto& w : enumerate_elements(sys, 3)) {
      const auto a = apartment_translation(spec, ap, w);
      CHECK(a(Chamber{}) == apartment_chamber(*spec, ap, w));
      for (const auto& v : enumerate_elements(sys, 3)) {
        CHECK(a(apartment_chamber(*spec, ap, v)) == apartment_chamber(*spec, ap, sys.multiply(w, v)));
      }
      for (const auto& c : ball.ball_around_base(1)) {
        for (const auto& d : ball.sphere(2)) CHECK(weyl_distance(*spec, a(c), a(d)) == weyl_distance(*spec, c, d));
      }
    }
  }
}

TEST_CASE("certified representatives") {
  for (const auto& spec : {dinf_building(3), spec_of(free3(), {2, 3, 4}), spec_of(klein(), {3, 3})}) {
    const auto bc = representatives(spec, 3);
    CHECK(bc.representatives.size() == enumerate_elements(spec->system(), 3).size());
    const auto check = certify_representatives(bc, ChamberBall(spec, 4));
    CHECK(check.weyl_distance_ok);
    CHECK(check.stabilises_apartment);
    CHECK(check.type_preserving);
    CHECK(check.radius == 4);
    const ChamberBall small(spec, 2);
    CHECK(bc.representative(spec->system().identity()).a.is_identity_on(small.chambers()));
  }
}

TEST_CASE("factorization examples") {
  const auto spec = dinf_building(3);
  const auto& b = *spec;
  const auto bc = representatives(spec, 4);
  const ChamberBall ball(spec, 5);
  check_factorization(BuildingAutomorphism::identity(spec), bc, ball);
  check_factorization(BuildingAutomorphism::left_multiplication(spec, b.normal_form({{0, 2}, {1, 1}})), bc, ball);
  check_factorization(BuildingAutomorphism::panel_rotation(spec, Chamber{}, 1, Perm::transposition(3, 1, 2)), bc, ball);
  const auto f = factorize(BuildingAutomorphism::left_multiplication(spec, b.normal_form({{1, 2}})), bc, ball);
  CHECK(b.system().format(f.w) == "t");
  CHECK(f.certified_radius == 5);
  CHECK(to_json(b, f).contains("certified_radius"));
}

TEST_CASE("random factorizations") {
  std::mt19937_64 rng(20240611);
  for (const auto& spec : {dinf_building(3), spec_of(free3(), {3, 2, 3})}) {
    const auto bc = representatives(spec, 3);
    const ChamberBall ball(spec, 4);
    for (int i = 0; i < 60; ++i) check_factorization(random_element(ball, rng, 3), bc, ball);
  }
}

TEST_CASE("factorization out of range") {
  const auto spec = dinf_building(3);
  const auto bc = representatives(spec, 1);
  const ChamberBall ball(spec, 3);
  const auto g = BuildingAutomorphism::left_multiplication(spec, spec->normal_form({{0, 1}, {1, 1}}));
  CHECK_THROWS_AS(factorize(g, bc, ball), DepthError);
}

TEST_CASE("double cosets are disjoint") {
  const auto spec = dinf_building(3);
  const auto bc = representatives(spec, 3);
  const auto r = double_coset_disjointness_check(bc, ChamberBall(spec, 4), 99, 8);
  CHECK(r.symbolic);
  CHECK(r.sampled);
  CHECK(r.pairs == bc.representatives.size() * (bc.representatives.size() - 1) / 2);
  CHECK(r.samples == bc.representatives.size() * 8);
}

TEST_CASE("sampled automorphisms preserve Weyl distances") {
  const auto spec = spec_of(free3(), {3, 3, 2});
  const auto& b = *spec;
  const ChamberBall ball(spec, 3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_element(ball, rng, 2);
    const auto& c = ball.chambers()[pick(rng)];
    const auto& d = ball.chambers()[pick(rng)];
    CHECK(weyl_distance(b, g(c), g(d)) == weyl_distance(b, c, d));
  }
}

TEST_CASE("random stabilisers fix the base chamber") {
  const auto spec = dinf_building(4);
  const ChamberBall ball(spec, 3);
  std::mt19937_64 rng(3);
  std::set<Chamber> images;
  for (int i = 0; i < 50; ++i) {
    const auto k = random_chamber_stabilizer(ball, rng);
    CHECK(k.fixes(Chamber{}));
    images.insert(k(spec->normal_form({{0, 1}})));
  }
  CHECK(images.size() > 1);
}

TEST_CASE("contraction witness in a thick building") {
  const auto spec = dinf_building(3);
  const auto& sys = spec->system();
  std::vector<CoxElement> ws;
  auto w = sys.identity();
  for (int k = 0; k <= 3; ++k) {
    ws.push_back(w);
    w = sys.multiply(w, sys.parse("t s"));
  }
  const auto r = building_contraction_witness(ws, spec, 7);
  REQUIRE(r.certificate.has_value());
  const auto& cert = *r.certificate;
  CHECK(cert.holds);
  CHECK(cert.x_nontrivial);
  CHECK(sys.name(cert.s) == "s");
  CHECK(cert.steps.size() == 3);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    CHECK(cert.steps[i].in_wing_fixator);
    CHECK(cert.steps[i].fixes_ball);
    if (i > 0) CHECK(cert.steps[i].distance > cert.steps[i - 1].distance);
  }
  // Conjugates fix a growing ball, checked independently.
  const ChamberBall ball(spec, 7);
  const auto ap = ApartmentRef::standard(*spec);
  for (const auto& step : cert.steps) {
    const auto a = apartment_translation(spec, ap, step.w);
    const auto y = a * cert.x * a.inverse();
    for (const auto& c : ball.ball_around_base(step.distance - 1)) CHECK(y.fixes(c));
  }
  CHECK(to_json(*spec, r).is_object());
}

TEST_CASE("contraction witness edge cases") {
  const auto thin = dinf_building(2);
  const auto& sys = thin->system();
  const std::vector<CoxElement> ws{sys.identity(), sys.parse("t s"), sys.parse("t s t s")};
  const auto r = building_contraction_witness(ws, thin, 6);
  CHECK_FALSE(r.certificate.has_value());
  CHECK(r.reason == "trivial wing fixator");
  CHECK_THROWS_AS(building_contraction_witness({sys.identity()}, dinf_building(3), 4), InfeasibleError);
}
