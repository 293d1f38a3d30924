#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "starclean/coeff.hpp"

namespace starclean {

inline constexpr int kDefaultHeightBound = 8;
/// Square tables are built for finite rings up to this size.
inline constexpr std::uint64_t kSquareTableLimit = std::uint64_t{1} << 22;

enum class SquaresStatus { Solution, NoSolution, Unknown };
std::string to_string(SquaresStatus s);

/// Outcome of X^2 + Y^2 + Z^2 + 1 = 0. `basis` names how it was settled.
template <class R>
struct ThreeSquaresResult {
  SquaresStatus status = SquaresStatus::Unknown;
  std::optional<std::array<typename R::Elem, 3>> solution;
  std::string basis;
};

/// Type-erased form for reports.
struct ThreeSquaresReport {
  SquaresStatus status = SquaresStatus::Unknown;
  std::optional<std::array<std::string, 3>> solution;
  std::string basis;
  std::string ring;
};

enum class Level { Level2, Level4, TwoOrFour };
std::string to_string(Level l);

/// Level of Q(zeta_p) by p mod 8.
Level level_classify_prime(std::uint64_t p);

template <class R>
bool verify_three_squares(const R& ring, const std::array<typename R::Elem, 3>& v) {
  auto acc = ring.one();
  for (const auto& t : v) acc = ring.add(acc, ring.mul(t, t));
  return ring.is_zero(acc);
}

/**
 * Exhaustive search over a finite ring, sparsest first: (x,0,0), then (x,y,0),
 * then (x,y,z), each in increasing element-code order. Uses a table of square
 * roots, so the cost is O(|R|^2).
 */
template <class R>
  requires FiniteRing<R>
ThreeSquaresResult<R> three_squares_finite(const R& ring) {
  using E = typename R::Elem;
  const std::uint64_t q = ring.cardinality();
  ThreeSquaresResult<R> out;
  if (q > kSquareTableLimit) {
    out.basis = "ring too large for exhaustive search";
    return out;
  }
  constexpr std::uint64_t kNone = ~std::uint64_t{0};
  std::vector<std::uint64_t> root(q, kNone);
  std::vector<std::uint64_t> sq(q);
  for (std::uint64_t i = 0; i < q; ++i) {
    const E x = ring.element_at(i);
    sq[i] = ring.index_of(ring.mul(x, x));
    if (root[sq[i]] == kNone) root[sq[i]] = i;
  }
  const E minus_one = ring.neg(ring.one());
  auto found = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    out.status = SquaresStatus::Solution;
    out.solution = std::array<E, 3>{ring.element_at(a), ring.element_at(b), ring.element_at(c)};
    out.basis = "exhaustive";
    return out;
  };
  const std::uint64_t m1 = ring.index_of(minus_one);
  if (root[m1] != kNone) return found(root[m1], 0, 0);
  for (std::uint64_t x = 0; x < q; ++x) {
    const std::uint64_t need = ring.index_of(ring.sub(minus_one, ring.element_at(sq[x])));
    if (root[need] != kNone) return found(x, root[need], 0);
  }
  for (std::uint64_t x = 0; x < q; ++x) {
    const E rx = ring.sub(minus_one, ring.element_at(sq[x]));
    for (std::uint64_t y = 0; y < q; ++y) {
      const std::uint64_t need = ring.index_of(ring.sub(rx, ring.element_at(sq[y])));
      if (root[need] != kNone) return found(x, y, root[need]);
    }
  }
  out.status = SquaresStatus::NoSolution;
  out.basis = "exhaustive";
  return out;
}

/// Large finite fields: -1 is always a sum of two squares; find one by an Euler-criterion scan.
ThreeSquaresResult<GaloisField> three_squares_large_field(const GaloisField& f);

/**
 * x^2 + y^2 = -1 in Q(zeta_d), searched among vectors with integer (and, via
 * x^2 + y^2 = -4, half-integer) power-basis coordinates of L1 norm at most
 * height_bound. Enumeration is by increasing norm and capped at `max_candidates`.
 */
std::optional<std::pair<CycElem, CycElem>> two_squares_search(const Cyclotomic& f, int height_bound,
                                                              std::size_t max_candidates = 400000);

ThreeSquaresResult<Rationals> solve_three_squares(const Rationals& q, int height_bound = kDefaultHeightBound);
ThreeSquaresResult<Cyclotomic> solve_three_squares(const Cyclotomic& f, int height_bound = kDefaultHeightBound);
ThreeSquaresResult<ZmodN> solve_three_squares(const ZmodN& r, int height_bound = kDefaultHeightBound);
ThreeSquaresResult<GaloisField> solve_three_squares(const GaloisField& f, int height_bound = kDefaultHeightBound);

ThreeSquaresReport solve_three_squares(const CoefficientRing& ring, int height_bound = kDefaultHeightBound);

}  // namespace starclean
