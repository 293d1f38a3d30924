#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "starclean/groupring.hpp"
#include "starclean/witness.hpp"

namespace starclean {

inline constexpr std::uint64_t kDefaultSampleCount = 100000;
/// Unit memo table (two bits per element) is kept up to this many elements.
inline constexpr std::uint64_t kUnitMemoLimit = std::uint64_t{1} << 26;

enum class BruteStatus { True, False, BudgetExceeded };

inline std::string to_string(BruteStatus s) {
  switch (s) {
    case BruteStatus::True: return "true";
    case BruteStatus::False: return "false";
    case BruteStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

template <Ring R>
struct BruteResult {
  BruteStatus status = BruteStatus::BudgetExceeded;
  std::optional<GRElem<R>> counterexample;
  bool sampled = false;
  std::uint64_t checked = 0;        // elements examined
  std::uint64_t candidates = 0;     // size of the idempotent / projection set
  std::string cardinality;          // |R|^|G|
  std::string note;
};

struct BruteOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t samples = kDefaultSampleCount;
  std::uint64_t seed = 1;
  /// Split idempotent enumeration by this central involution when set.
  std::optional<GroupIndex> s;
};

/**
 * Shared driver: every element a is tested for some q in `cands` with a - q a
 * unit. Full enumeration when |R|^|G| <= budget, otherwise stratified sampling
 * (equal share per value of the identity coefficient) with a seeded generator.
 * Stops at the first element with no decomposition.
 */
template <Ring R>
  requires FiniteRing<R>
BruteResult<R> brute_decompose(const GroupRing<R>& gr, const std::vector<GRElem<R>>& cands, const BruteOptions& opt) {
  const auto& r = gr.ring();
  const std::size_t n = gr.dim();
  const std::uint64_t q = r.cardinality();
  BruteResult<R> out;
  out.cardinality = power_string(q, n);
  out.candidates = cands.size();

  std::optional<std::uint64_t> total;
  try {
    total = checked_cardinality(q, n, opt.budget, "element enumeration");
  } catch (const BudgetExceeded&) {
  }

  // Unit memo by element index, only for full enumeration of moderate size.
  const bool memo = total && *total <= kUnitMemoLimit;
  std::vector<bool> known, unit;
  if (memo) {
    known.assign(*total, false);
    unit.assign(*total, false);
  }
  auto index_of = [&](const GRElem<R>& a) {
    std::uint64_t idx = 0;
    for (std::size_t g = n; g-- > 0;) idx = idx * q + r.index_of(a.c[g]);
    return idx;
  };
  auto is_unit = [&](const GRElem<R>& a) {
    if (!memo) return gr.is_unit(a);
    const std::uint64_t idx = index_of(a);
    if (!known[idx]) {
      known[idx] = true;
      unit[idx] = gr.is_unit(a);
    }
    return static_cast<bool>(unit[idx]);
  };
  auto decomposes = [&](const GRElem<R>& a) {
    for (const auto& c : cands) {
      if (is_unit(gr.sub(a, c))) return true;
    }
    return false;
  };

  if (total) {
    GRElem<R> a = gr.zero();
    std::vector<std::uint64_t> digit(n, 0);
    while (true) {
      ++out.checked;
      if (!decomposes(a)) {
        out.status = BruteStatus::False;
        out.counterexample = a;
        return out;
      }
      std::size_t i = 0;
      while (i < n) {
        digit[i] = (digit[i] + 1) % q;
        a.c[i] = r.element_at(digit[i]);
        if (digit[i] != 0) break;
        ++i;
      }
      if (i == n) break;
    }
    out.status = BruteStatus::True;
    return out;
  }

  out.sampled = true;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> coin(0, q - 1);
  const GroupIndex id = gr.group().identity();
  for (std::uint64_t stratum = 0; stratum < q; ++stratum) {
    const std::uint64_t share = opt.samples / q + (stratum < opt.samples % q ? 1 : 0);
    for (std::uint64_t k = 0; k < share; ++k) {
      GRElem<R> a = gr.zero();
      for (std::size_t g = 0; g < n; ++g) a.c[g] = r.element_at(coin(rng));
      a.c[id] = r.element_at(stratum);
      ++out.checked;
      if (!decomposes(a)) {
        out.status = BruteStatus::False;
        out.counterexample = a;
        return out;
      }
    }
  }
  out.status = BruteStatus::True;
  out.note = "sampled " + std::to_string(out.checked) + " of " + out.cardinality + " elements";
  return out;
}

/// Clean: every element is a unit plus an idempotent.
template <Ring R>
  requires FiniteRing<R>
BruteResult<R> brute_clean(const GroupRing<R>& gr, const BruteOptions& opt = {}) {
  std::vector<GRElem<R>> idem;
  try {
    idem = gr.idempotents(opt.budget, opt.s);
  } catch (const BudgetExceeded& e) {
    BruteResult<R> out;
    out.cardinality = e.cardinality();
    out.note = e.what();
    return out;
  }
  return brute_decompose(gr, idem, opt);
}

/// *-clean: every element is a unit plus a projection.
template <Ring R>
  requires FiniteRing<R>
BruteResult<R> brute_star_clean(const GroupRing<R>& gr, const InvolutionMap& sigma, const BruteOptions& opt = {}) {
  std::vector<GRElem<R>> proj;
  try {
    proj = gr.projections(sigma, opt.budget);
  } catch (const BudgetExceeded& e) {
    BruteResult<R> out;
    out.cardinality = e.cardinality();
    out.note = e.what();
    return out;
  }
  return brute_decompose(gr, proj, opt);
}

/**
 * A decomposition a = u + p, first in deterministic projection order, or none.
 * When s is given (central, order 2, fixed by sigma) the search runs
 * separately on the e and f components: a = u + p iff ae - p_e is a unit of
 * RGe and af - p_f a unit of RGf. On each side 0 and the component identity
 * are tried before the full projection enumeration.
 */
template <Ring R>
  requires FiniteRing<R>
std::optional<StarCleanDecomposition<R>> element_star_clean(const GroupRing<R>& gr, const InvolutionMap& sigma,
                                                            const GRElem<R>& a, std::optional<GroupIndex> s,
                                                            std::uint64_t budget = kDefaultBudget) {
  if (!s) {
    for (const auto& p : gr.projections(sigma, budget)) {
      const auto u = gr.sub(a, p);
      if (gr.is_unit(u)) return StarCleanDecomposition<R>{u, p};
    }
    return std::nullopt;
  }
  if (sigma(*s) != *s) throw InvalidParameter("element_star_clean: the involution must fix s");
  const auto pair = central_idempotents(gr, *s);
  auto side = [&](const GRElem<R>& comp_id, const GRElem<R>& other_id, Component comp) -> std::optional<GRElem<R>> {
    const auto part = gr.mul(a, comp_id);
    // Unit of the component iff adding the complementary idempotent gives a unit of RG.
    auto works = [&](const GRElem<R>& p) { return gr.is_unit(gr.add(gr.sub(part, p), other_id)); };
    for (const auto& p : {gr.zero(), comp_id}) {
      if (works(p)) return p;
    }
    for (const auto& p : gr.projections(sigma, budget, comp, s)) {
      if (works(p)) return p;
    }
    return std::nullopt;
  };
  auto pe = side(pair.e, pair.f, Component::E);
  if (!pe) return std::nullopt;
  auto pf = side(pair.f, pair.e, Component::F);
  if (!pf) return std::nullopt;
  const auto p = gr.add(*pe, *pf);
  return StarCleanDecomposition<R>{gr.sub(a, p), p};
}

}  // namespace starclean
