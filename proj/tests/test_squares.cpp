#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starclean/numtheory.hpp"
#include "starclean/squares.hpp"

using namespace starclean;

namespace {

/// Fewest nonzero coordinates of a solution by a plain triple loop, or -1.
template <class R>
int naive_min_support(const R& r) {
  const std::uint64_t q = r.cardinality();
  int best = -1;
  for (std::uint64_t i = 0; i < q; ++i) {
    for (std::uint64_t j = 0; j < q; ++j) {
      for (std::uint64_t k = 0; k < q; ++k) {
        const std::array<typename R::Elem, 3> v{r.element_at(i), r.element_at(j), r.element_at(k)};
        if (!verify_three_squares(r, v)) continue;
        const int sup = (i != 0) + (j != 0) + (k != 0);
        if (best < 0 || sup < best) best = sup;
      }
    }
  }
  return best;
}

template <class R>
void agree_with_naive(const R& r) {
  CAPTURE(r.name());
  const auto res = solve_three_squares(r);
  const int naive = naive_min_support(r);
  CHECK((res.status == SquaresStatus::Solution) == (naive >= 0));
  if (res.solution) {
    CHECK(verify_three_squares(r, *res.solution));
    int sup = 0;
    for (const auto& v : *res.solution) sup += !r.is_zero(v);
    CHECK(sup == naive);
  }
}

}  // namespace

TEST_CASE("small fields") {
  GaloisField f3(3, 1), f5(5, 1);
  auto r3 = solve_three_squares(f3);
  REQUIRE(r3.solution);
  CHECK(*r3.solution == std::array<std::uint64_t, 3>{1, 1, 0});
  auto r5 = solve_three_squares(f5);
  REQUIRE(r5.solution);
  CHECK(*r5.solution == std::array<std::uint64_t, 3>{2, 0, 0});
}

TEST_CASE("agreement with a naive triple loop for |R| <= 81") {
  for (std::uint64_t n = 3; n <= 81; n += 2) agree_with_naive(ZmodN(n));
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}}) {
    agree_with_naive(GaloisField(p, k));
  }
}

TEST_CASE("odd prime powers up to 343 always solve the equation") {
  for (std::uint64_t q = 3; q <= 343; q += 2) {
    if (!nt::prime_power(q)) continue;
    CAPTURE(q);
    const auto res = solve_three_squares(ZmodN(q));
    CHECK(res.status == SquaresStatus::Solution);
    REQUIRE(res.solution);
    CHECK(verify_three_squares(ZmodN(q), *res.solution));
  }
}

TEST_CASE("large Galois fields") {
  GaloisField big(1000003, 1);
  const auto res = solve_three_squares(big);
  REQUIRE(res.solution);
  CHECK(verify_three_squares(big, *res.solution));
  GaloisField ext(101, 4);
  const auto r2 = solve_three_squares(ext);
  REQUIRE(r2.solution);
  CHECK(verify_three_squares(ext, *r2.solution));
}

TEST_CASE("number fields") {
  CHECK(solve_three_squares(Rationals{}).status == SquaresStatus::NoSolution);
  Cyclotomic gi(4);
  const auto ri = solve_three_squares(gi);
  REQUIRE(ri.solution);
  CHECK((*ri.solution)[0] == gi.zeta_power(1));
  CHECK(verify_three_squares(gi, *ri.solution));
  CHECK(solve_three_squares(Cyclotomic(7)).status == SquaresStatus::NoSolution);
  CHECK(solve_three_squares(Cyclotomic(23)).status == SquaresStatus::NoSolution);
  for (std::uint64_t p : {3, 5, 11, 13}) {
    Cyclotomic f(p);
    const auto res = solve_three_squares(f);
    CHECK(res.status == SquaresStatus::Solution);
    if (res.solution) CHECK(verify_three_squares(f, *res.solution));
  }
}

TEST_CASE("level 2 primes give two squares at small height") {
  for (std::uint64_t p : {3, 5}) {
    CHECK(level_classify_prime(p) == Level::Level2);
    Cyclotomic f(p);
    const auto sol = two_squares_search(f, 8);
    REQUIRE(sol);
    CHECK(f.is_zero(f.add(f.one(), f.add(f.mul(sol->first, sol->first), f.mul(sol->second, sol->second)))));
  }
}

TEST_CASE("level table") {
  CHECK(level_classify_prime(3) == Level::Level2);
  CHECK(level_classify_prime(5) == Level::Level2);
  CHECK(level_classify_prime(7) == Level::Level4);
  CHECK(level_classify_prime(23) == Level::Level4);
  CHECK(level_classify_prime(17) == Level::TwoOrFour);
}
