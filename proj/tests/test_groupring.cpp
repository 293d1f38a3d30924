#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "starclean/errors.hpp"
#include "starclean/groupring.hpp"

using namespace starclean;

namespace {

template <Ring R>
GRElem<R> random_elem(const GroupRing<R>& gr, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> coin(0, gr.ring().cardinality() - 1);
  auto a = gr.zero();
  for (auto& c : a.c) c = gr.ring().element_at(coin(rng));
  return a;
}

template <Ring R>
bool has_inverse_by_search(const GroupRing<R>& gr, const GRElem<R>& a) {
  bool found = false;
  gr.enumerate_elements(kDefaultBudget, [&](const GRElem<R>& b) {
    found = gr.mul(a, b) == gr.one();
    return !found;
  });
  return found;
}

const SLCStructure& q8() {
  static const SLCStructure s = build_slc({Presentation::D2, 1, 0, 0, {}});
  return s;
}

}  // namespace

TEST_CASE("basic identities in F3[Q8]") {
  const auto& q = q8();
  GroupRing<GaloisField> gr(q.group, GaloisField(3, 1));
  auto oms = gr.one();
  oms.c[q.s] = gr.ring().neg(1);
  CHECK(gr.mul(oms, oms) == gr.scalar_mul(2, oms));
  const auto xy = gr.mul(gr.basis(q.x), gr.basis(q.y));
  const auto yx = gr.mul(gr.basis(q.y), gr.basis(q.x));
  CHECK(xy != yx);
  CHECK(xy == gr.mul(gr.basis(q.s), yx));
  const auto pair = central_idempotents(gr, q.s);
  const auto canon = canonical_involution(q);
  CHECK(gr.is_projection(pair.e, canon));
  CHECK(gr.is_projection(pair.f, canon));
  CHECK(gr.is_projection(gr.zero(), canon));
  CHECK(gr.is_projection(gr.one(), canon));
  CHECK_FALSE(gr.is_idempotent(gr.basis(q.x)));
  CHECK(gr.is_zero(gr.mul(oms, pair.e)));
  CHECK_FALSE(gr.is_unit(gr.add(gr.one(), gr.basis(q.s))));
  CHECK_FALSE(gr.is_unit(pair.f));
  for (std::size_t g = 0; g < gr.dim(); ++g) {
    const auto gi = static_cast<GroupIndex>(g);
    CHECK(gr.is_unit(gr.basis(gi)));
    CHECK(gr.unit_inverse(gr.basis(gi)) == gr.basis(q.group->inverse(gi)));
  }
  CHECK(gr.format(oms) == "1 + 2*a");
}

TEST_CASE("F3[C2] counts") {
  GroupRing<GaloisField> gr(build_cyclic(2), GaloisField(3, 1));
  std::size_t elems = 0, units = 0;
  gr.enumerate_elements(kDefaultBudget, [&](const auto&) { return ++elems, true; });
  gr.enumerate_units(kDefaultBudget, [&](const auto&) { return ++units, true; });
  CHECK(elems == 9);
  CHECK(units == 4);
  CHECK(gr.idempotents(kDefaultBudget).size() == 4);
  CHECK(gr.projections(identity_involution(gr.group_ptr()), kDefaultBudget).size() == 4);
}

TEST_CASE("split into R(G/<s>) and (RG)f") {
  const auto& q = q8();
  GroupRing<GaloisField> gr(q.group, GaloisField(5, 1));
  CentralSplit<GaloisField> split(gr, q.s);
  const auto& f = split.idempotents().f;
  auto [q1, f1] = split.split(gr.one());
  CHECK(q1 == split.quotient_ring().one());
  CHECK(f1 == f);
  auto [qs, fs] = split.split(gr.basis(q.s));
  CHECK(qs == split.quotient_ring().one());
  CHECK(fs == gr.neg(f));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_elem(gr, rng);
    auto [qa, fa] = split.split(a);
    CHECK(split.reassemble(qa, fa) == a);
    CHECK(fa == gr.sub(a, gr.mul(a, split.idempotents().e)));
  }
}

TEST_CASE("involutions extend to ring involutions") {
  const auto q = build_slc({Presentation::D1, 2, 0, 0, {3}});
  GroupRing<ZmodN> gr(q.group, ZmodN(9));
  std::mt19937_64 rng(5);
  for (const auto& sigma : {canonical_involution(q), classical_involution(q.group)}) {
    for (int t = 0; t < 50; ++t) {
      const auto a = random_elem(gr, rng), b = random_elem(gr, rng);
      const auto k = gr.ring().element_at(rng() % 9);
      CHECK(gr.apply_involution(sigma, gr.add(a, gr.scalar_mul(k, b))) ==
            gr.add(gr.apply_involution(sigma, a), gr.scalar_mul(k, gr.apply_involution(sigma, b))));
      CHECK(gr.apply_involution(sigma, gr.mul(a, b)) ==
            gr.mul(gr.apply_involution(sigma, b), gr.apply_involution(sigma, a)));
      CHECK(gr.apply_involution(sigma, gr.apply_involution(sigma, a)) == a);
      std::set<GroupIndex> lhs, rhs;
      for (auto g : gr.support(gr.apply_involution(sigma, a))) lhs.insert(g);
      for (auto g : gr.support(a)) rhs.insert(sigma(g));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("unit test against exhaustive inverse search") {
  auto check_all = [](const auto& gr) {
    gr.enumerate_elements(kDefaultBudget, [&](const auto& a) {
      CHECK(gr.is_unit(a) == has_inverse_by_search(gr, a));
      return true;
    });
  };
  const std::vector<std::uint64_t> v4{2, 2};
  check_all(GroupRing<GaloisField>(build_abelian(v4), GaloisField(3, 1)));
  check_all(GroupRing<GaloisField>(build_cyclic(4), GaloisField(3, 1)));
  check_all(GroupRing<ZmodN>(build_cyclic(2), ZmodN(9)));
  check_all(GroupRing<ZmodN>(build_cyclic(2), ZmodN(15)));
  check_all(GroupRing<GaloisField>(build_abelian(v4), GaloisField(5, 1)));

  GroupRing<GaloisField> gr(q8().group, GaloisField(3, 1));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    const auto a = random_elem(gr, rng);
    CHECK(gr.is_unit(a) == has_inverse_by_search(gr, a));
  }
}

TEST_CASE("inverses and determinants") {
  GroupRing<ZmodN> gr(q8().group, ZmodN(9));
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_elem(gr, rng), b = random_elem(gr, rng);
    const auto& r = gr.ring();
    CHECK(gr.regular_determinant(gr.mul(a, b)) == r.mul(gr.regular_determinant(a), gr.regular_determinant(b)));
    if (auto inv = gr.unit_inverse(a)) {
      CHECK(gr.mul(a, *inv) == gr.one());
      CHECK(gr.mul(*inv, a) == gr.one());
    } else {
      CHECK_FALSE(gr.is_unit(a));
    }
  }
}

TEST_CASE("budget") {
  GroupRing<GaloisField> gr(q8().group, GaloisField(3, 1));
  CHECK_THROWS_AS(gr.enumerate_elements(1000, [](const auto&) { return true; }), BudgetExceeded);
  CHECK(power_string(3, 40) == "12157665459056928801");
}

TEST_CASE("idempotents via the e/f split match a direct scan") {
  GroupRing<GaloisField> gr(q8().group, GaloisField(3, 1));
  auto direct = gr.idempotents(kDefaultBudget);
  auto split = gr.idempotents(kDefaultBudget, q8().s);
  auto key = [](const auto& v) {
    std::set<std::vector<std::uint64_t>> s;
    for (const auto& e : v) s.insert(e.c);
    return s;
  };
  CHECK(direct.size() == split.size());
  CHECK(key(direct) == key(split));
}
