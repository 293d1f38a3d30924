#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "starclean/errors.hpp"
#include "starclean/groups.hpp"

using namespace starclean;

namespace {

std::size_t count_of_order(const FiniteGroup& g, std::size_t ord) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.order(); ++i) n += g.element_order(static_cast<GroupIndex>(i)) == ord;
  return n;
}

GroupPtr symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<GroupIndex> table;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < 6; ++a) {
    names.push_back("p" + std::to_string(a));
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table.push_back(static_cast<GroupIndex>(std::find(perms.begin(), perms.end(), c) - perms.begin()));
    }
  }
  names[0] = "1";
  return std::make_shared<FiniteGroup>(table, names, std::map<std::string, GroupIndex>{});
}

std::vector<SLCParams> small_slc_params() {
  std::vector<SLCParams> out;
  for (int t = 1; t <= 5; ++t) {
    for (unsigned k = 1; k <= 2; ++k) {
      SLCParams p;
      p.type = static_cast<Presentation>(t);
      p.k = k;
      if (t >= 3) p.k2 = 1;
      if (t == 5) p.k3 = 1;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("abelian groups") {
  const std::vector<std::uint64_t> c2{2}, v4{2, 2}, c7{7};
  CHECK(build_abelian(c2)->order() == 2);
  auto v = build_abelian(v4);
  CHECK(v->order() == 4);
  CHECK(v->exponent() == 2);
  CHECK(count_of_order(*build_abelian(c7), 7) == 6);
  CHECK(build_cyclic(1)->order() == 1);
  CHECK_THROWS_AS(build_cyclic(5000), CapacityError);
}

TEST_CASE("Q8 from D2 with k = 1") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  const auto& g = *q.group;
  CHECK(g.order() == 8);
  CHECK(count_of_order(g, 2) == 1);
  CHECK(g.element_order(q.x) == 4);
  CHECK(g.mul(q.x, q.x) == q.s);
  CHECK(g.mul(q.y, q.y) == q.s);
  CHECK(center(q.group).size() == 2);
  CHECK(commutator_subgroup(q.group).size() == 2);
  CHECK(commutator_subgroup(q.group).contains(q.s));
  CHECK(is_slc(q.group));
  CHECK(q.is_q8_times_abelian());
  CHECK(canonical_involution(q).image == classical_involution(q.group).image);
}

TEST_CASE("D1 with k = 1 is the dihedral group of order 8") {
  const auto d = build_slc({Presentation::D1, 1, 0, 0, {}});
  const auto& g = *d.group;
  REQUIRE(g.order() == 8);

  // Independent dihedral table on pairs (r^i t^e): (i,e)(j,f) = (i + (-1)^e j, e + f).
  auto dmul = [](std::pair<int, int> u, std::pair<int, int> v) {
    return std::pair<int, int>{((u.first + (u.second ? -v.first : v.first)) % 4 + 4) % 4, (u.second + v.second) % 2};
  };
  const std::pair<int, int> X{0, 1}, Y{1, 1}, S{2, 0}, E{0, 0};
  const std::array<std::pair<int, int>, 4> T{E, X, Y, dmul(X, Y)};
  std::vector<std::pair<int, int>> phi(8);
  for (std::size_t h = 0; h < 8; ++h) {
    const auto& c = d.coords[h];
    phi[h] = c.delta ? dmul(T[c.j], S) : T[c.j];
  }
  CHECK(std::set<std::pair<int, int>>(phi.begin(), phi.end()).size() == 8);
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      CHECK(phi[g.mul(static_cast<GroupIndex>(a), static_cast<GroupIndex>(b))] == dmul(phi[a], phi[b]));
    }
  }
  CHECK(center(d.group).size() == 2);
  CHECK(canonical_involution(d).image != classical_involution(d.group).image);
  CHECK(g.element_order(d.x) == 2);
}

TEST_CASE("D2 with k = 2") {
  const auto d = build_slc({Presentation::D2, 2, 0, 0, {}});
  CHECK(d.group->order() == 16);
  CHECK(d.s == d.group->power(d.a, 2));
  const auto z = center(d.group);
  CHECK(d.group->order() / z.size() == 4);
  const auto c = commutator_subgroup(d.group);
  CHECK(c.size() == 2);
  CHECK(c.contains(d.s));
}

TEST_CASE("direct products") {
  const std::vector<std::uint64_t> c2{2};
  auto v = direct_product(*build_cyclic(2), *build_cyclic(2));
  CHECK(v->order() == 4);
  CHECK(v->exponent() == 2);
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {3}});
  CHECK(q.group->order() == 24);
  CHECK(center(q.group).size() == 6);
  auto same = direct_product(*build_cyclic(5), *build_cyclic(1));
  auto c5 = build_cyclic(5);
  CHECK(same->order() == 5);
  for (std::size_t a = 0; a < 5; ++a) CHECK(same->element_order(static_cast<GroupIndex>(a)) == c5->element_order(static_cast<GroupIndex>(a)));
}

TEST_CASE("SLC tests on non-SLC groups") {
  CHECK_FALSE(is_slc(build_cyclic(4)));
  auto s3 = symmetric3();
  CHECK(center(s3).size() == 1);
  CHECK_FALSE(is_slc(s3));
  CHECK(commutator_subgroup(build_cyclic(6)).size() == 1);
  CHECK(center(build_cyclic(6)).size() == 6);
}

TEST_CASE("involutions on every small SLC group") {
  for (const auto& base : small_slc_params()) {
    for (const std::vector<std::uint64_t>& a : {std::vector<std::uint64_t>{}, {3}, {2}}) {
      auto p = base;
      p.abelian = a;
      SLCStructure slc;
      try {
        slc = build_slc(p);
      } catch (const CapacityError&) {
        continue;
      }
      CAPTURE(to_string(p.type));
      CAPTURE(p.k);
      CHECK(is_slc(slc.group));
      const auto comm = commutator_subgroup(slc.group);
      CHECK(comm.size() == 2);
      CHECK(comm.contains(slc.s));
      // center x transversal covers G bijectively
      std::set<GroupIndex> seen;
      for (GroupIndex t : slc.transversal) {
        for (GroupIndex z : slc.center.members) seen.insert(slc.group->mul(t, z));
      }
      CHECK(seen.size() == slc.group->order());
      CHECK(slc.center.size() * 4 == slc.group->order());
      CHECK(canonical_involution(slc).is_valid());
      CHECK(classical_involution(slc.group).is_valid());
    }
  }
}

TEST_CASE("identity involution on elementary abelian groups") {
  const std::vector<std::uint64_t> v{2, 2, 2};
  auto g = build_abelian(v);
  CHECK(classical_involution(g).image == identity_involution(g).image);
  CHECK(identity_involution(g).is_valid());
}

TEST_CASE("quotient by s") {
  const auto q = build_slc({Presentation::D2, 1, 0, 0, {}});
  auto quot = quotient_by_central_involution(q.group, q.s);
  CHECK(quot.quotient->order() == 4);
  CHECK(quot.quotient->exponent() == 2);
  CHECK(quot.coset_of[q.s] == quot.coset_of[q.group->identity()]);
}
