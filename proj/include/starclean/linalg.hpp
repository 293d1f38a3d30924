#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "starclean/coeff.hpp"

namespace starclean {

template <Ring R>
struct Matrix {
  using E = typename R::Elem;
  std::size_t n = 0;  // square
  std::vector<E> a;

  E& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const E& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

template <class R>
concept HasBezout = requires(const R& r, typename R::Elem x) { r.bezout(x, x); };

/**
 * Triangularizes M in place (with the same row operations applied to `rhs`
 * when given) and returns the determinant. Over fields this is ordinary
 * pivoting; over Z/n it uses unimodular 2x2 Bezout steps, so the diagonal ends
 * up holding column gcds.
 */
template <Ring R>
typename R::Elem triangularize(const R& ring, Matrix<R>& m, std::vector<typename R::Elem>* rhs = nullptr) {
  using E = typename R::Elem;
  const std::size_t n = m.n;
  bool negate = false;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(m.at(i, c), m.at(j, c));
    if (rhs) std::swap((*rhs)[i], (*rhs)[j]);
    negate = !negate;
  };
  for (std::size_t k = 0; k < n; ++k) {
    bool use_bezout = false;
    if constexpr (HasBezout<R>) use_bezout = !ring.is_field();
    if (!use_bezout) {
      std::size_t piv = n;
      for (std::size_t i = k; i < n; ++i) {
        if (!ring.is_zero(m.at(i, k))) {
          piv = i;
          break;
        }
      }
      if (piv == n) continue;
      swap_rows(k, piv);
      const E inv = ring.inverse(m.at(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (ring.is_zero(m.at(i, k))) continue;
        const E factor = ring.mul(m.at(i, k), inv);
        for (std::size_t c = k; c < n; ++c) m.at(i, c) = ring.sub(m.at(i, c), ring.mul(factor, m.at(k, c)));
        if (rhs) (*rhs)[i] = ring.sub((*rhs)[i], ring.mul(factor, (*rhs)[k]));
      }
    } else if constexpr (HasBezout<R>) {
      for (std::size_t i = k + 1; i < n; ++i) {
        const E b = m.at(i, k);
        if (ring.is_zero(b)) continue;
        const E a = m.at(k, k);
        if (ring.is_zero(a)) {
          swap_rows(k, i);
          continue;
        }
        const auto st = ring.bezout(a, b);
        const E nb = ring.neg(st.b_over_g);
        for (std::size_t c = k; c < n; ++c) {
          const E rk = m.at(k, c), ri = m.at(i, c);
          m.at(k, c) = ring.add(ring.mul(st.u, rk), ring.mul(st.v, ri));
          m.at(i, c) = ring.add(ring.mul(nb, rk), ring.mul(st.a_over_g, ri));
        }
        if (rhs) {
          const E rk = (*rhs)[k], ri = (*rhs)[i];
          (*rhs)[k] = ring.add(ring.mul(st.u, rk), ring.mul(st.v, ri));
          (*rhs)[i] = ring.add(ring.mul(nb, rk), ring.mul(st.a_over_g, ri));
        }
      }
    }
  }
  E det = ring.one();
  for (std::size_t k = 0; k < n; ++k) det = ring.mul(det, m.at(k, k));
  return negate ? ring.neg(det) : det;
}

template <Ring R>
typename R::Elem determinant(const R& ring, Matrix<R> m) {
  return triangularize(ring, m);
}

/// Unique solution of M x = b when M is invertible, else nullopt.
template <Ring R>
std::optional<std::vector<typename R::Elem>> solve(const R& ring, Matrix<R> m, std::vector<typename R::Elem> b) {
  using E = typename R::Elem;
  const std::size_t n = m.n;
  triangularize(ring, m, &b);
  for (std::size_t k = 0; k < n; ++k) {
    if (!ring.is_unit(m.at(k, k))) return std::nullopt;
  }
  std::vector<E> x(n, ring.zero());
  for (std::size_t k = n; k-- > 0;) {
    E acc = b[k];
    for (std::size_t c = k + 1; c < n; ++c) acc = ring.sub(acc, ring.mul(m.at(k, c), x[c]));
    x[k] = ring.mul(acc, ring.inverse(m.at(k, k)));
  }
  return x;
}

}  // namespace starclean
