#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starclean/brute.hpp"
#include "starclean/errors.hpp"
#include "starclean/numtheory.hpp"
#include "starclean/witness.hpp"

using namespace starclean;

namespace {

std::vector<SLCStructure> small_slc() {
  std::vector<SLCStructure> out;
  for (int t = 1; t <= 5; ++t) {
    for (unsigned k = 1; k <= 2; ++k) {
      for (const std::vector<std::uint64_t>& a :
           {std::vector<std::uint64_t>{}, {2}, {3}, {4}, {5}, {7}, {2, 2}, {11}}) {
        SLCParams p{static_cast<Presentation>(t), k, t >= 3 ? 1U : 0U, t == 5 ? 1U : 0U, a};
        auto s = build_slc(p);
        if (s.group->order() <= 96) out.push_back(std::move(s));
      }
    }
  }
  return out;
}

template <Ring R>
StarCleanDecomposition<R> random_decomposition(const GroupRing<R>& gr, const std::vector<GRElem<R>>& proj,
                                               std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> coin(0, gr.ring().cardinality() - 1);
  GRElem<R> u;
  do {
    u = gr.zero();
    for (auto& c : u.c) c = gr.ring().element_at(coin(rng));
  } while (!gr.is_unit(u));
  return {u, proj[rng() % proj.size()]};
}

}  // namespace

TEST_CASE("two squares in Z/M[C_p]") {
  for (std::uint64_t m : {9, 25, 49}) {
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      GroupRing<ZmodN> gr(build_cyclic(p), ZmodN(m));
      const GroupIndex g = *gr.group().generator("c1");
      for (unsigned t = 0; t <= 6; ++t) {
        const auto c = two_squares(gr, g, p, t);
        CHECK(verify_two_squares(gr, g, c));
        CHECK(c.t == t);
      }
    }
  }
  GroupRing<GaloisField> gr(build_cyclic(3), GaloisField(3, 1));
  const auto c = two_squares(gr, *gr.group().generator("c1"), 3, 0);
  CHECK(gr.format(c.a) == "1");
}

TEST_CASE("annihilator pairs") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    GroupRing<ZmodN> gr(build_cyclic(p), ZmodN(25));
    const GroupIndex g = *gr.group().generator("c1");
    for (unsigned n = 1; n <= 6; ++n) {
      if ((nt::powmod(2, n, p) + 1) % p != 0) {
        CHECK_THROWS_AS(annihilator_pair(gr, g, p, n), HypothesisViolation);
        continue;
      }
      CAPTURE(p);
      CAPTURE(n);
      const auto [alpha, beta] = annihilator_pair(gr, g, p, n);
      const GroupIndex g2n = gr.group().power(g, static_cast<std::int64_t>(std::uint64_t{1} << n));
      auto lhs = gr.add(gr.add(gr.mul(alpha, alpha), gr.mul(beta, beta)), gr.basis(g2n));
      CHECK(gr.is_zero(gr.mul(lhs, gr.sub(gr.basis(g), gr.one()))));
    }
  }
}

TEST_CASE("hypotheses of the two squares recursion") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {3}});
  GroupRing<GaloisField> gr(q.group, GaloisField(5, 1));
  CHECK_THROWS_AS(two_squares(gr, q.x, 3, 1), HypothesisViolation);
  CHECK_THROWS_AS(two_squares(gr, q.abelian_generators[0], 5, 1), HypothesisViolation);
  CHECK_THROWS_AS(two_squares(gr, q.abelian_generators[0], 4, 1), HypothesisViolation);
  CHECK_NOTHROW(two_squares(gr, q.abelian_generators[0], 3, 2));
}

TEST_CASE("witness examples") {
  const auto d1 = build_slc({Presentation::D1, 1, 0, 0, {}});
  GroupRing<GaloisField> g1(d1.group, GaloisField(3, 1));
  auto w1 = generate_witness(g1, d1);
  REQUIRE(w1.witness);
  CHECK(w1.witness->which == WitnessCase::Type1);
  CHECK(w1.witness->gamma == g1.basis(d1.y));
  CHECK(w1.witness->tau_w == g1.one());
  CHECK(check_witness(g1, d1, *w1.witness).status == WitnessStatus::Valid);

  const auto q4 = build_slc({Presentation::D2, 1, 0, 0, {4}});
  GroupRing<GaloisField> g4(q4.group, GaloisField(3, 1));
  auto w4 = generate_witness(g4, q4);
  REQUIRE(w4.witness);
  CHECK(w4.witness->which == WitnessCase::Order4);
  const GroupIndex g = q4.abelian_generators[0];
  CHECK(q4.group->element_order(g) == 4);
  CHECK(w4.witness->gamma == g4.basis(q4.group->mul(q4.x, g)));
  CHECK(w4.witness->tau_w == g4.sub(g4.one(), g4.basis(q4.group->mul(g, g))));
  CHECK(check_witness(g4, q4, *w4.witness).status == WitnessStatus::Valid);

  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  GroupRing<Rationals> gq(q.group, Rationals{});
  auto wq = generate_witness(gq, q);
  CHECK_FALSE(wq.witness);
  REQUIRE(wq.equation);
  CHECK(wq.equation->status == SquaresStatus::NoSolution);

  const auto q3 = build_slc({Presentation::D2, 1, 0, 0, {3}});
  GroupRing<Rationals> gq3(q3.group, Rationals{});
  auto w3 = generate_witness(gq3, q3);
  REQUIRE(w3.witness);
  CHECK(w3.witness->which == WitnessCase::ExcludedPrime);
  const auto chk = check_witness(gq3, q3, *w3.witness);
  CHECK(chk.status == WitnessStatus::Valid);
  CHECK(chk.method == "symbolic");
}

TEST_CASE("a non-witness is rejected") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  GroupRing<GaloisField> gr(q.group, GaloisField(3, 1));
  NonCleanWitness<GaloisField> bad{gr.one(), gr.one(), WitnessCase::ThreeSquares, "gamma = 1"};
  CHECK(check_witness(gr, q, bad).status != WitnessStatus::Valid);
  NonCleanWitness<GaloisField> zero{gr.basis(q.x), gr.zero(), WitnessCase::ThreeSquares, "tau = 0"};
  CHECK(check_witness(gr, q, zero).status != WitnessStatus::Valid);
}

TEST_CASE("every generated witness is valid") {
  for (const auto& slc : small_slc()) {
    CAPTURE(slc.group->order());
    CAPTURE(to_string(slc.params.type));
    auto run = [&](auto ring) {
      using R = decltype(ring);
      GroupRing<R> gr(slc.group, ring);
      auto w = generate_witness(gr, slc);
      if (!slc.is_q8_times_abelian()) REQUIRE(w.witness);
      if (!w.witness) return;
      const auto chk = check_witness(gr, slc, *w.witness);
      CHECK(chk.status == WitnessStatus::Valid);
    };
    run(GaloisField(3, 1));
    run(ZmodN(9));
    run(GaloisField(5, 1));
    run(Rationals{});
  }
}

TEST_CASE("problem elements resist decomposition") {
  for (const auto& slc : small_slc()) {
    if (slc.group->order() > 16) continue;
    GroupRing<GaloisField> gr(slc.group, GaloisField(3, 1));
    auto w = generate_witness(gr, slc);
    REQUIRE(w.witness);
    const auto h = problem_element(gr, slc.s, *w.witness);
    CHECK_FALSE(element_star_clean(gr, canonical_involution(slc), h, slc.s));
  }
}

TEST_CASE("lifting decompositions through H x C2") {
  std::mt19937_64 rng(23);
  auto run = [&](auto ring, GroupPtr h, InvolutionMap sigma) {
    using R = decltype(ring);
    GroupRing<R> rh(h, ring);
    const auto ext = extend_c2(h, sigma);
    CHECK(ext.group->order() == 2 * h->order());
    CHECK(ext.sigma.is_valid());
    CHECK(ext.sigma(ext.a) == ext.a);
    GroupRing<R> rg(ext.group, ring);
    const auto proj = rh.projections(sigma, kDefaultBudget);
    for (int t = 0; t < 30; ++t) {
      const auto d = random_decomposition(rh, proj, rng);
      const auto lifted = lift_c2(rh, sigma, rg, ext, d);
      CHECK(validate_decomposition(rg, ext.sigma, rg.add(lifted.unit, lifted.projection), lifted));
      const auto q = random_decomposition(rh, proj, rng);
      const auto both = lift_c2(rh, sigma, rg, ext, d, std::optional{q});
      CHECK(validate_decomposition(rg, ext.sigma, rg.add(both.unit, both.projection), both));
    }
  };
  auto c2 = build_cyclic(2);
  run(GaloisField(3, 1), c2, identity_involution(c2));
  auto c3 = build_cyclic(3);
  run(GaloisField(5, 1), c3, classical_involution(c3));
  run(ZmodN(9), c3, classical_involution(c3));
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  GroupRing<GaloisField> gq(q.group, GaloisField(3, 1));
  const auto ext = extend_c2(q.group, canonical_involution(q));
  CHECK(ext.sigma.is_valid());
  StarCleanDecomposition<GaloisField> bogus{gq.zero(), gq.zero()};
  GroupRing<GaloisField> gg(ext.group, GaloisField(3, 1));
  CHECK_THROWS_AS(lift_c2(gq, canonical_involution(q), gg, ext, bogus), InvalidParameter);
}
