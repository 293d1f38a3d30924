#pragma once

#include <array>
#include <vector>

#include "starclean/groupring.hpp"

namespace starclean {

/**
 * alpha in (RG)f written as [sum_j (sum_i x_ij a^i) t_j](1-s), i < m/2.
 * x[j][i] is an element of RK stored as coefficients in kappa order.
 */
template <Ring R>
struct FCanonicalForm {
  const SLCStructure* slc = nullptr;
  std::array<std::vector<std::vector<typename R::Elem>>, 4> x;

  friend bool operator==(const FCanonicalForm& a, const FCanonicalForm& b) { return a.x == b.x; }
};

template <Ring R>
bool in_f_component(const GroupRing<R>& gr, const SLCStructure& slc, const GRElem<R>& a) {
  const auto& r = gr.ring();
  for (std::size_t g = 0; g < gr.dim(); ++g) {
    const GroupIndex sg = slc.group->mul(slc.s, static_cast<GroupIndex>(g));
    if (!r.is_zero(r.add(a.c[g], a.c[sg]))) return false;
  }
  return true;
}

template <Ring R>
FCanonicalForm<R> zero_form(const GroupRing<R>& gr, const SLCStructure& slc) {
  FCanonicalForm<R> f;
  f.slc = &slc;
  for (auto& row : f.x) {
    row.assign(slc.half_m(), std::vector<typename R::Elem>(slc.k_order(), gr.ring().zero()));
  }
  return f;
}

template <Ring R>
FCanonicalForm<R> decompose_f(const GroupRing<R>& gr, const SLCStructure& slc, const GRElem<R>& a) {
  if (gr.group_ptr() != slc.group) throw InvalidParameter("decompose_f: carrier group differs from the SLC structure");
  if (!in_f_component(gr, slc, a)) throw InvalidParameter("decompose_f: element is not in (RG)f");
  auto f = zero_form(gr, slc);
  for (unsigned j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < slc.half_m(); ++i) {
      for (std::size_t k = 0; k < slc.k_order(); ++k) f.x[j][i][k] = a.c[slc.element_at(j, i, k, 0)];
    }
  }
  return f;
}

template <Ring R>
GRElem<R> reassemble(const GroupRing<R>& gr, const FCanonicalForm<R>& f) {
  const auto& slc = *f.slc;
  auto a = gr.zero();
  for (unsigned j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < slc.half_m(); ++i) {
      for (std::size_t k = 0; k < slc.k_order(); ++k) {
        a.c[slc.element_at(j, i, k, 0)] = f.x[j][i][k];
        a.c[slc.element_at(j, i, k, 1)] = gr.ring().neg(f.x[j][i][k]);
      }
    }
  }
  return a;
}

/// Closed form of the canonical involution on (RG)f: rows 2..4 change sign.
template <Ring R>
FCanonicalForm<R> involution_formula(const GroupRing<R>& gr, const FCanonicalForm<R>& f) {
  auto out = f;
  for (unsigned j = 1; j < 4; ++j) {
    for (auto& col : out.x[j]) {
      for (auto& v : col) v = gr.ring().neg(v);
    }
  }
  return out;
}

template <Ring R>
bool is_symmetric_f(const GroupRing<R>& gr, const FCanonicalForm<R>& f) {
  for (unsigned j = 1; j < 4; ++j) {
    for (const auto& col : f.x[j]) {
      for (const auto& v : col) {
        if (!gr.ring().is_zero(v)) return false;
      }
    }
  }
  return true;
}

/// Some coefficient in rows 2..4 is nonzero.
template <Ring R>
bool has_noncentral_part(const GroupRing<R>& gr, const FCanonicalForm<R>& f) {
  return !is_symmetric_f(gr, f);
}

/**
 * Proj((RG)f) = { d(1-s) : d in span{a^i k : i < m/2}, d(1-s) = 2d^2(1-s) }.
 * The idempotency test is done after multiplying by (1-s), since d^2 may
 * leave the i < m/2 range.
 */
template <Ring R>
  requires FiniteRing<R>
std::vector<GRElem<R>> f_projections(const GroupRing<R>& gr, const SLCStructure& slc,
                                     std::uint64_t budget = kDefaultBudget) {
  const auto& r = gr.ring();
  const std::size_t params = slc.half_m() * slc.k_order();
  const std::uint64_t q = r.cardinality();
  checked_cardinality(q, params, budget, "f_projections");
  auto one_minus_s = gr.one();
  one_minus_s.c[slc.s] = r.neg(r.one());
  const auto two = r.from_int(2);

  std::vector<GRElem<R>> out;
  std::vector<std::uint64_t> digit(params, 0);
  while (true) {
    auto d = gr.zero();
    for (std::size_t i = 0; i < slc.half_m(); ++i) {
      for (std::size_t k = 0; k < slc.k_order(); ++k) {
        d.c[slc.element_at(0, i, k, 0)] = r.element_at(digit[i * slc.k_order() + k]);
      }
    }
    const auto p = gr.mul(d, one_minus_s);
    const auto twice_sq = gr.scalar_mul(two, gr.mul(gr.mul(d, d), one_minus_s));
    if (p == twice_sq) out.push_back(p);
    std::size_t i = 0;
    while (i < params && ++digit[i] == q) digit[i++] = 0;
    if (i == params) break;
  }
  return out;
}

}  // namespace starclean
