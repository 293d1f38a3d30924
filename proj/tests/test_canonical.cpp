#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "starclean/canonical.hpp"
#include "starclean/errors.hpp"

using namespace starclean;

namespace {

template <Ring R>
FCanonicalForm<R> random_form(const GroupRing<R>& gr, const SLCStructure& slc, std::mt19937_64& rng) {
  auto f = zero_form(gr, slc);
  std::uniform_int_distribution<std::uint64_t> coin(0, gr.ring().cardinality() - 1);
  for (auto& row : f.x) {
    for (auto& col : row) {
      for (auto& v : col) v = gr.ring().element_at(coin(rng));
    }
  }
  return f;
}

template <Ring R>
GRElem<R> times_one_minus_s(const GroupRing<R>& gr, const SLCStructure& slc, const GRElem<R>& a) {
  auto oms = gr.one();
  oms.c[slc.s] = gr.ring().neg(gr.ring().one());
  return gr.mul(a, oms);
}

template <Ring R>
std::set<std::vector<typename R::Elem>> as_set(const std::vector<GRElem<R>>& v) {
  std::set<std::vector<typename R::Elem>> s;
  for (const auto& e : v) s.insert(e.c);
  return s;
}

std::vector<SLCStructure> small_slc() {
  std::vector<SLCStructure> out;
  for (int t = 1; t <= 5; ++t) {
    for (unsigned k = 1; k <= 2; ++k) {
      for (const std::vector<std::uint64_t>& a : {std::vector<std::uint64_t>{}, {2}}) {
        SLCParams p{static_cast<Presentation>(t), k, t >= 3 ? 1U : 0U, t == 5 ? 1U : 0U, a};
        auto s = build_slc(p);
        if (s.group->order() <= 32) out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("forms of simple elements") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  GroupRing<GaloisField> gr(q.group, GaloisField(3, 1));
  const auto oms = times_one_minus_s(gr, q, gr.one());
  const auto f = decompose_f(gr, q, oms);
  auto expect = zero_form(gr, q);
  expect.x[0][0][0] = 1;
  CHECK(f == expect);
  CHECK(is_symmetric_f(gr, f));
  CHECK(involution_formula(gr, f) == f);

  const auto yf = decompose_f(gr, q, times_one_minus_s(gr, q, gr.basis(q.y)));
  auto expect_y = zero_form(gr, q);
  expect_y.x[2][0][0] = 1;
  CHECK(yf == expect_y);
  CHECK_FALSE(is_symmetric_f(gr, yf));
  CHECK(has_noncentral_part(gr, yf));

  const auto xf = decompose_f(gr, q, times_one_minus_s(gr, q, gr.basis(q.x)));
  auto neg = zero_form(gr, q);
  neg.x[1][0][0] = gr.ring().neg(1);
  CHECK(involution_formula(gr, xf) == neg);

  const auto pair = central_idempotents(gr, q.s);
  CHECK(is_symmetric_f(gr, decompose_f(gr, q, gr.mul(pair.e, oms))));
  CHECK_THROWS_AS(decompose_f(gr, q, gr.one()), InvalidParameter);
}

TEST_CASE("round trip and uniqueness") {
  std::mt19937_64 rng(17);
  for (const auto& slc : small_slc()) {
    GroupRing<GaloisField> gr(slc.group, GaloisField(5, 1));
    std::set<std::vector<std::uint64_t>> seen;
    std::set<std::vector<std::uint64_t>> seen_forms;
    for (int t = 0; t < 50; ++t) {
      const auto f = random_form(gr, slc, rng);
      const auto a = reassemble(gr, f);
      CHECK(in_f_component(gr, slc, a));
      CHECK(decompose_f(gr, slc, a) == f);
      CHECK(involution_formula(gr, involution_formula(gr, f)) == f);
      std::vector<std::uint64_t> flat;
      for (const auto& row : f.x)
        for (const auto& col : row) flat.insert(flat.end(), col.begin(), col.end());
      if (seen_forms.insert(flat).second) CHECK(seen.insert(a.c).second);
    }
  }
}

TEST_CASE("involution formula on all of (F3[Q8])f") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  GroupRing<GaloisField> gr(q.group, GaloisField(3, 1));
  const auto sigma = canonical_involution(q);
  std::size_t n = 0;
  gr.enumerate_constrained(gr.constraints(nullptr, Component::F, q.s), kDefaultBudget,
                           [&](const GRElem<GaloisField>& a) {
                             ++n;
                             CHECK(involution_formula(gr, decompose_f(gr, q, a)) ==
                                   decompose_f(gr, q, gr.apply_involution(sigma, a)));
                             return true;
                           },
                           "f component");
  CHECK(n == 81);
}

TEST_CASE("involution formula on random elements of larger carriers") {
  std::mt19937_64 rng(19);
  auto run = [&](const SLCStructure& slc, int samples) {
    GroupRing<GaloisField> gr(slc.group, GaloisField(5, 1));
    const auto sigma = canonical_involution(slc);
    for (int t = 0; t < samples; ++t) {
      const auto f = random_form(gr, slc, rng);
      CHECK(decompose_f(gr, slc, gr.apply_involution(sigma, reassemble(gr, f))) == involution_formula(gr, f));
    }
  };
  run(build_slc({Presentation::D2, 1, 0, 0, {3}}), 1000);
  for (const auto& slc : small_slc()) run(slc, 30);
}

TEST_CASE("projections of (RG)f") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  GroupRing<GaloisField> gr(q.group, GaloisField(3, 1));
  const auto fp = f_projections(gr, q);
  auto oms = times_one_minus_s(gr, q, gr.one());
  CHECK(as_set(fp) == as_set(std::vector{gr.zero(), gr.scalar_mul(2, oms)}));
  CHECK(as_set(fp) == as_set(gr.projections(canonical_involution(q), kDefaultBudget, Component::F, q.s)));

  for (const auto& slc : small_slc()) {
    CAPTURE(slc.group->order());
    GroupRing<GaloisField> g3(slc.group, GaloisField(3, 1));
    const auto sigma = canonical_involution(slc);
    const auto mine = f_projections(g3, slc);
    for (const auto& p : mine) CHECK(g3.is_projection(p, sigma));
    try {
      CHECK(as_set(mine) == as_set(g3.projections(sigma, std::uint64_t{1} << 24, Component::F, slc.s)));
    } catch (const BudgetExceeded&) {
    }
  }
}
