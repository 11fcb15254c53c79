// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tdlc/building.hpp"
#include "tdlc/coxeter.hpp"
#include "tdlc/kak_building.hpp"
#include "tdlc/kak_tree.hpp"
#include "tdlc/padic.hpp"
#include "tdlc/universal_group.hpp"

#include "../support.hpp"

using namespace tdlc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ------------------------------------------------------------------ 1: p-adic

Outcome padic_example() {
  std::ostringstream note;
  bool formula = true;
  bool unipotent = true;
  bool bound = true;
  for (std::int64_t p : {2, 3, 5}) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(p));
    for (int i = 0; i < 100; ++i) {
      const auto h = random_matrix(rng, p);
      for (int n = 1; n <= 30; ++n) formula = formula && conjugation_formula_check(h, n);
    }
    const auto table = unipotent_contraction_check(30, p);
    unipotent = unipotent && table.all_equal_n;

    // One h per regime of the divergence argument: b != 0 alone, c != 0,
    // and a != d alone.
    const std::vector<std::pair<std::string, ProjMatrix>> regimes{
        {"(1 1; 0 1)", ProjMatrix(1, 1, 0, 1, p)},
        {"(1 0; 1 1)", ProjMatrix(1, 0, 1, 1, p)},
        {"diag(1, 1+p)", ProjMatrix(1, 0, 0, 1 + p, p)}};
    for (const auto& [name, h] : regimes) {
      const auto rep = perturbed_triviality_evidence(h, 30);
      if (!rep.diverges) bound = false;
      for (const auto& row : rep.rows) {
        if (!row.within_bound) {
          bound = false;
          note << " p=" << p << " h=" << name << " n=" << row.n << " v=" << *row.bottom_left
               << ">" << -(row.n / 3) << ";";
          break;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << "formula=" << formula << " unipotent=" << unipotent << " bound=" << bound;
  if (!bound) detail << " first violations:" << note.str();
  return {formula && unipotent && bound, detail.str()};
}

// ------------------------------------------------------------ 2: tree KAK

Outcome tree_kak() {
  const auto f = LocalGroup::symmetric(3);
  const auto k = enumerate_U1_stabilizer_ball(f, 2);
  const auto dec = enumerate_representatives(k, f, 2);
  std::vector<ColoredAutomorphism> population;
  for (const auto& u : words_within(3, 2)) {
    const auto t = ColoredAutomorphism::translation(3, u);
    for (const auto& kl : k.lifts) population.push_back(t * kl);
  }
  std::size_t verified = 0;
  for (const auto& g : population) {
    const auto fac = factorize(g, dec, 2);
    const auto& a = dec.representatives[fac.representative].a;
    if (fac.verified && (fac.k * a * fac.k_prime).agrees_with(g, 2)) ++verified;
  }
  const auto part = double_coset_partition(dec, population);
  std::ostringstream d;
  d << "|K|=" << k.size() << " reps=" << dec.representatives.size() << " factored=" << verified << "/"
    << population.size() << " disjoint=" << part.disjoint << " covers=" << part.covers;
  return {k.size() == 48 && verified == population.size() && part.disjoint && part.covers, d.str()};
}

// ------------------------------------------------------ 3: contraction law

Outcome tree_contraction() {
  const auto f = LocalGroup::symmetric(3);
  const auto k = enumerate_U1_stabilizer_ball(f, 2);
  const auto a = ColoredAutomorphism::translation(3, ColorWord{0, 1});
  std::vector<ColoredAutomorphism> seq;
  auto power = ColoredAutomorphism::identity(3);
  for (int i = 1; i <= 8; ++i) {
    power = a * power;
    seq.push_back(power);
  }
  const auto search = contraction_witness_search(seq, k, 1, 10);
  if (!search.certificate) return {false, "no certificate: " + search.reason};
  const auto& cert = *search.certificate;
  // Independent re-check on the radius-10 ball: x != id and a^i x a^-i
  // agrees with the identity on B(v, i).
  const auto ball = build_regular_ball(3, 10);
  const auto id = FiniteTreeAutomorphism::identity(ball);
  bool ok = !cert.witness.x.is_identity() && cert.indices.size() == seq.size();
  std::ostringstream d;
  d << "depths=";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto conj = (seq[i] * cert.witness.lift * seq[i].inverse()).restrict_to(ball);
    const auto depth = agreement_depth(conj, id, TreeBall::kBase);
    d << depth.depth << (i + 1 < seq.size() ? "," : "");
    if (depth.depth < static_cast<int>(i) + 1) ok = false;
  }
  d << " law_holds=" << cert.law_holds;
  return {ok && cert.law_holds, d.str()};
}

// --------------------------------------------------------------- 4: P_1

Outcome property_p1() {
  const auto k = enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), 3);
  const auto& ball = *k.ball;
  const VertexId v = TreeBall::kBase;
  const VertexId w = ball.vertex(v).children.front();
  const auto rep = check_property_Pk(k, v, w, 1);
  const auto fix = edge_fixator(k, v, w, 1);
  const auto side_w = half_tree_vertices(ball, HalfTreeRef{v, w, w});
  const auto side_v = half_tree_vertices(ball, HalfTreeRef{v, w, v});
  bool ok = rep.holds && rep.factorizations.size() == fix.size();
  for (const auto& hf : rep.factorizations) {
    const auto& g = fix.elements[hf.element];
    if (!(compose(hf.g2, hf.g1) == g)) ok = false;
    for (VertexId x : side_v) {
      if (hf.g1.image(x) != ball.address(x)) ok = false;
    }
    for (VertexId x : side_w) {
      if (hf.g2.image(x) != ball.address(x)) ok = false;
    }
  }
  std::ostringstream d;
  d << "|K|=" << k.size() << " |F_{1,e}|=" << fix.size() << " factorizations=" << rep.factorizations.size();
  return {ok, d.str()};
}

// ------------------------------------------------------ 5: word problem

Outcome coxeter_word_problem() {
  std::size_t systems = 0;
  std::size_t words = 0;
  std::size_t mismatches = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& sys : testing::all_systems(n)) {
      ++systems;
      testing::MoveClosure oracle(sys, 8);
      std::map<std::size_t, CoxWord> nf_of_class;
      std::map<CoxWord, std::size_t> class_of_nf;
      for (std::size_t id = 0; id < oracle.size(); ++id) {
        ++words;
        const auto nf = sys.normal_form(oracle.word(id)).word;
        const std::size_t cls = oracle.find(id);
        auto [it, fresh] = nf_of_class.emplace(cls, nf);
        if (!fresh && it->second != nf) ++mismatches;
        auto [jt, fresh2] = class_of_nf.emplace(nf, cls);
        if (!fresh2 && jt->second != cls) ++mismatches;
      }
    }
  }
  std::ostringstream d;
  d << "systems=" << systems << " words=" << words << " mismatches=" << mismatches;
  return {mismatches == 0, d.str()};
}

// --------------------------------------------------- 6: wall distances

Outcome wall_identity() {
  std::size_t checked = 0;
  bool ok = true;
  for (const auto& sys : {testing::dinf(), testing::free3()}) {
    for (const auto& w : enumerate_elements(sys, 6)) {
      for (Generator s = 0; s < sys.rank(); ++s) {
        const int bfs = testing::cayley_distance(sys, w, sys.generator_times(s, w));
        const int len = sys.conjugate_generator(w, s).length();
        ++checked;
        if (bfs != len || len % 2 != 1) ok = false;
      }
    }
  }
  return {ok, "pairs=" + std::to_string(checked)};
}

// ----------------------------------------------------- 7: finiteness

Outcome finiteness_claim() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& sys : {testing::dinf(), testing::free3()}) {
    for (int r = 1; r <= 4; ++r) {
      const std::size_t base = profile_bounded_set(sys, r, r).size();
      for (int l = r + 1; l <= 8; ++l) {
        if (profile_bounded_set(sys, l, r).size() != base) ok = false;
      }
      d << base << (r < 4 ? "," : ";");
    }
  }
  const auto sys = testing::dinf();
  const auto r3 = profile_bounded_set(sys, 10, 3);
  const std::vector<CoxElement> expected{sys.identity(), sys.generator(0), sys.generator(1)};
  if (r3 != expected) ok = false;
  d << " D_inf R=3: " << r3.size() << " elements";
  return {ok, "sizes " + d.str()};
}

// -------------------------------------------------- 8: building basics

Outcome building_combinatorics() {
  const auto spec = testing::dinf_building(3);
  const auto& b = *spec;
  const ChamberBall ball2(spec, 2);
  const std::size_t oracle = testing::chamber_count_oracle(b, 2);
  bool ok = ball2.size() == 13 && oracle == 13;

  std::size_t gate_checks = 0;
  const std::vector<std::vector<Generator>> subsets{{}, {0}, {1}, {0, 1}};
  for (int l = 0; l <= 3; ++l) {
    const ChamberBall ball(spec, l);
    for (const auto& c : ball.chambers()) {
      for (const auto& j : subsets) {
        std::vector<Chamber> residue;
        for (const auto& x : ball.chambers()) {
          if (in_residue(b, c, j, x)) residue.push_back(x);
        }
        for (const auto& d : ball.chambers()) {
          const auto p = project(b, c, j, d);
          if (!in_residue(b, c, j, p)) ok = false;
          for (const auto& x : residue) {
            ++gate_checks;
            if (gallery_distance(b, d, x) != gallery_distance(b, d, p) + gallery_distance(b, p, x)) ok = false;
          }
        }
      }
    }
  }

  const auto ap = ApartmentRef::standard(b);
  std::size_t panels = 0;
  for (int l = 0; l <= 4; ++l) {
    for (const auto& w : enumerate_elements(b.system(), l)) {
      if (w.length() != l) continue;
      const auto c = apartment_chamber(b, ap, w);
      for (Generator s = 0; s < b.system().rank(); ++s) {
        const auto pan = panel(b, c, s);
        const auto meet = std::count_if(pan.begin(), pan.end(),
                                        [&](const Chamber& x) { return in_apartment(b, ap, x); });
        ++panels;
        if (meet != 2) ok = false;
      }
    }
  }
  std::ostringstream d;
  d << "|B(C,2)|=" << ball2.size() << " oracle=" << oracle << " gate_checks=" << gate_checks
    << " apartment_panels=" << panels;
  return {ok, d.str()};
}

// ------------------------------------------------ 9: root fixes ball

Outcome root_fixes_ball() {
  const auto spec = testing::dinf_building(3);
  const auto& b = *spec;
  const auto& sys = b.system();
  const ChamberBall ball(spec, 3);
  const auto ap = ApartmentRef::standard(b);
  // Roots are identified by their apartment chambers within length 5.
  const auto probe = enumerate_elements(sys, 5);
  std::set<std::vector<bool>> seen;
  std::size_t roots = 0;
  std::size_t generators = 0;
  bool ok = true;
  for (const auto& u : enumerate_elements(sys, 3)) {
    for (Generator s = 0; s < sys.rank(); ++s) {
      const RootRef r{ap, u, s};
      std::vector<bool> key;
      for (const auto& v : probe) key.push_back(root_contains(b, r, apartment_chamber(b, ap, v)));
      if (!seen.insert(key).second) continue;
      int dist = 0;
      try {
        dist = dist_chamber_to_root(ball, Chamber{}, r);
      } catch (const DepthError&) {
        continue;
      }
      if (dist != 2) continue;
      ++roots;
      const auto rep = check_root_fixes_ball(ball, r, 1);
      generators += rep.generators;
      if (rep.status != RootFixStatus::Holds || rep.generators == 0) ok = false;
    }
  }
  std::ostringstream d;
  d << "roots at distance 2: " << roots << " generators checked: " << generators;
  return {ok && roots > 0, d.str()};
}

// --------------------------------------- 10: building KAK and contraction

Outcome building_kak() {
  const auto spec = testing::dinf_building(3);
  const auto& sys = spec->system();
  const ChamberBall ball(spec, 3);
  const auto bc = representatives(spec, 3);
  const auto cert = certify_representatives(bc, ball);
  const auto disj = double_coset_disjointness_check(bc, ball, 7);

  std::vector<CoxElement> ws;
  auto ts = sys.identity();
  for (int k = 0; k <= 3; ++k) {
    ws.push_back(ts);
    ts = sys.multiply(ts, sys.parse("t s"));
  }
  const auto res = building_contraction_witness(ws, spec, 8);
  std::vector<int> radii;
  bool x_ok = false;
  bool holds = false;
  if (res.certificate) {
    for (const auto& st : res.certificate->steps) radii.push_back(st.radius);
    x_ok = res.certificate->x_nontrivial;
    holds = res.certificate->holds;
  }
  std::ostringstream d;
  d << "reps=" << bc.representatives.size() << " delta_ok=" << cert.weyl_distance_ok
    << " disjoint=" << (disj.symbolic && disj.sampled) << " radii=";
  for (std::size_t i = 0; i < radii.size(); ++i) d << radii[i] << (i + 1 < radii.size() ? "," : "");
  d << " x_nontrivial=" << x_ok;
  const bool ok = cert.weyl_distance_ok && disj.symbolic && disj.sampled &&
                  radii == std::vector<int>{1, 3, 5} && x_ok && holds;
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 p-adic example reproduction", padic_example},
      {"2 tree KAK partition", tree_kak},
      {"3 contraction witness law", tree_contraction},
      {"4 property P1 certification", property_p1},
      {"5 Coxeter word-problem oracle equivalence", coxeter_word_problem},
      {"6 wall-distance identity", wall_identity},
      {"7 finiteness claim (finitary form)", finiteness_claim},
      {"8 building combinatorics", building_combinatorics},
      {"9 root fixes ball", root_fixes_ball},
      {"10 building KAK and contraction pipeline", building_kak},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %s (%.2fs) %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed;
}
