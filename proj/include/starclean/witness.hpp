#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starclean/canonical.hpp"
#include "starclean/numtheory.hpp"
#include "starclean/squares.hpp"

namespace starclean {

/// Default cap on |R|^|Z(G)| for the exhaustive condition-2 loop.
inline constexpr std::uint64_t kDefaultCondition2Budget = std::uint64_t{1} << 22;

// ---------------------------------------------------------------------------
// Sums of two squares in a commutative group ring

template <Ring R>
struct TwoSquaresCertificate {
  GRElem<R> a, b;
  unsigned t = 0;
};

template <Ring R>
void require_central_of_order(const GroupRing<R>& s, GroupIndex g, std::uint64_t p) {
  const auto& G = s.group();
  if (p < 3 || p % 2 == 0) throw HypothesisViolation("p must be odd and at least 3");
  if (G.power(g, static_cast<std::int64_t>(p)) != G.identity()) {
    throw HypothesisViolation("g^p != 1 for p = " + std::to_string(p));
  }
  for (std::size_t h = 0; h < G.order(); ++h) {
    if (G.mul(g, static_cast<GroupIndex>(h)) != G.mul(static_cast<GroupIndex>(h), g)) {
      throw HypothesisViolation("g is not central");
    }
  }
}

/// prod_{k=0..t} (1 + g^(2^k)).
template <Ring R>
GRElem<R> two_squares_target(const GroupRing<R>& s, GroupIndex g, unsigned t) {
  const auto& G = s.group();
  auto acc = s.one();
  GroupIndex h = g;
  for (unsigned k = 0; k <= t; ++k) {
    acc = s.mul(acc, s.add(s.one(), s.basis(h)));
    h = G.mul(h, h);
  }
  return acc;
}

template <Ring R>
bool verify_two_squares(const GroupRing<R>& s, GroupIndex g, const TwoSquaresCertificate<R>& c) {
  return s.add(s.mul(c.a, c.a), s.mul(c.b, c.b)) == two_squares_target(s, g, c.t);
}

/**
 * 1 + g = 1^2 + (g^((p+1)/2))^2, and from level t-1 to t with h = g^(2^(t-1)):
 * (a h + b)^2 + (b h - a)^2 = (a^2 + b^2)(1 + h^2).
 */
template <Ring R>
TwoSquaresCertificate<R> two_squares(const GroupRing<R>& s, GroupIndex g, std::uint64_t p, unsigned t) {
  require_central_of_order(s, g, p);
  const auto& G = s.group();
  TwoSquaresCertificate<R> c{s.one(), s.basis(G.power(g, static_cast<std::int64_t>((p + 1) / 2))), 0};
  GroupIndex h = g;
  for (unsigned level = 1; level <= t; ++level) {
    const auto bh = s.basis(h);
    auto a = s.add(s.mul(c.a, bh), c.b);
    auto b = s.sub(s.mul(c.b, bh), c.a);
    c = {std::move(a), std::move(b), level};
    h = G.mul(h, h);
  }
  if (!verify_two_squares(s, g, c)) throw std::logic_error("two_squares: certificate failed to verify");
  return c;
}

/// (alpha, beta) with (alpha^2 + beta^2 + g^(2^n))(g - 1) = 0, from the depth n-1 certificate.
template <Ring R>
std::pair<GRElem<R>, GRElem<R>> annihilator_pair(const GroupRing<R>& s, GroupIndex g, std::uint64_t p, unsigned n) {
  if (n < 1) throw HypothesisViolation("annihilator_pair: n must be >= 1");
  if ((nt::powmod(2, n, p) + 1) % p != 0) {
    throw HypothesisViolation(std::to_string(p) + " does not divide 2^" + std::to_string(n) + " + 1");
  }
  auto c = two_squares(s, g, p, n - 1);
  const auto& G = s.group();
  const GroupIndex g2n = G.power(g, static_cast<std::int64_t>(nt::powmod(2, n, p)));
  auto lhs = s.add(s.add(s.mul(c.a, c.a), s.mul(c.b, c.b)), s.basis(g2n));
  lhs = s.mul(lhs, s.sub(s.basis(g), s.one()));
  if (!s.is_zero(lhs)) throw std::logic_error("annihilator_pair: identity failed to verify");
  return {std::move(c.a), std::move(c.b)};
}

// ---------------------------------------------------------------------------
// Non-*-cleanness witnesses

enum class WitnessCase { Type1, Types3to5, Type2Large, Order4, ExcludedPrime, ThreeSquares };

inline std::string case_tag(WitnessCase c) {
  switch (c) {
    case WitnessCase::Type1: return "TheoremA.type1";
    case WitnessCase::Types3to5: return "TheoremA.types3-5";
    case WitnessCase::Type2Large: return "TheoremA.type2";
    case WitnessCase::Order4: return "TheoremA.1";
    case WitnessCase::ExcludedPrime: return "TheoremA.2";
    case WitnessCase::ThreeSquares: return "TheoremA.equation";
  }
  return "?";
}

template <Ring R>
struct NonCleanWitness {
  GRElem<R> gamma;
  GRElem<R> tau_w;
  WitnessCase which = WitnessCase::Type1;
  std::string detail;
};

enum class WitnessStatus { Valid, Condition1Fails, Condition2Fails, Undetermined };

inline std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Valid: return "Valid";
    case WitnessStatus::Condition1Fails: return "Condition1Fails";
    case WitnessStatus::Condition2Fails: return "Condition2Fails";
    case WitnessStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

template <Ring R>
struct WitnessCheck {
  WitnessStatus status = WitnessStatus::Undetermined;
  std::string method;                  // "exhaustive" or "symbolic"
  std::optional<GRElem<R>> counterexample;  // z for Condition2Fails
};

template <Ring R>
GRElem<R> one_minus_s(const GroupRing<R>& gr, GroupIndex s) {
  auto e = gr.one();
  e.c[s] = gr.ring().neg(gr.ring().one());
  return e;
}

/// h = 4^-1 (1 + gamma)(1 - s), the element with no *-clean decomposition.
template <Ring R>
GRElem<R> problem_element(const GroupRing<R>& gr, GroupIndex s, const NonCleanWitness<R>& w) {
  const auto& r = gr.ring();
  const auto quarter = r.inverse(r.from_int(4));
  return gr.scalar_mul(quarter, gr.mul(gr.add(gr.one(), w.gamma), one_minus_s(gr, s)));
}

namespace detail {

/// Condition 2 holds if 4^-1 gamma tau (1-s) has a nonzero non-central row.
template <Ring R>
bool symbolic_condition2(const GroupRing<R>& gr, const SLCStructure& slc, const GRElem<R>& target,
                         const GRElem<R>& tau) {
  for (GroupIndex g : gr.support(tau)) {
    if (!slc.center.contains(g)) return false;
  }
  return has_noncentral_part(gr, decompose_f(gr, slc, target));
}

/// Searches z in RZ(G) with z tau (1-s) = target. Odometer over coefficients, updated linearly.
template <Ring R>
  requires FiniteRing<R>
std::optional<GRElem<R>> exhaustive_condition2(const GroupRing<R>& gr, const SLCStructure& slc,
                                               const GRElem<R>& target, const GRElem<R>& tau) {
  const auto& r = gr.ring();
  const auto& zs = slc.center.members;
  const std::uint64_t q = r.cardinality();
  const auto oms = one_minus_s(gr, slc.s);
  std::vector<GRElem<R>> image;  // z_c tau (1-s) for each central basis element
  for (GroupIndex c : zs) image.push_back(gr.mul(gr.mul(gr.basis(c), tau), oms));
  std::vector<std::uint64_t> digit(zs.size(), 0);
  auto cur = gr.zero();
  auto step_add = [&](std::size_t pos, const typename R::Elem& delta) {
    for (std::size_t h = 0; h < cur.c.size(); ++h) {
      if (!r.is_zero(image[pos].c[h])) cur.c[h] = r.add(cur.c[h], r.mul(delta, image[pos].c[h]));
    }
  };
  while (true) {
    if (cur == target) {
      auto z = gr.zero();
      for (std::size_t i = 0; i < zs.size(); ++i) z.c[zs[i]] = r.element_at(digit[i]);
      return z;
    }
    std::size_t i = 0;
    while (i < digit.size()) {
      const auto before = r.element_at(digit[i]);
      digit[i] = (digit[i] + 1) % q;
      step_add(i, r.sub(r.element_at(digit[i]), before));
      if (digit[i] != 0) break;
      ++i;
    }
    if (i == digit.size()) return std::nullopt;
  }
}

}  // namespace detail

/**
 * Condition 1: (1 - gamma^2) tau (1 - s) = 0.
 * Condition 2: (z - 4^-1 gamma) tau (1 - s) != 0 for every z in RZ(G); by
 * exhaustive loop when |R|^|Z(G)| fits the budget, otherwise symbolically.
 */
template <Ring R>
WitnessCheck<R> check_witness(const GroupRing<R>& gr, const SLCStructure& slc, const NonCleanWitness<R>& w,
                              std::uint64_t budget = kDefaultCondition2Budget) {
  const auto& r = gr.ring();
  WitnessCheck<R> out;
  const auto oms = one_minus_s(gr, slc.s);
  const auto c1 = gr.mul(gr.mul(gr.sub(gr.one(), gr.mul(w.gamma, w.gamma)), w.tau_w), oms);
  if (!gr.is_zero(c1)) {
    out.status = WitnessStatus::Condition1Fails;
    out.method = "direct";
    return out;
  }
  const auto quarter = r.inverse(r.from_int(4));
  const auto target = gr.mul(gr.mul(gr.scalar_mul(quarter, w.gamma), w.tau_w), oms);

  if constexpr (FiniteRing<R>) {
    bool fits = true;
    try {
      checked_cardinality(r.cardinality(), slc.center.size(), budget, "condition 2");
    } catch (const BudgetExceeded&) {
      fits = false;
    }
    if (fits) {
      out.method = "exhaustive";
      if (auto z = detail::exhaustive_condition2(gr, slc, target, w.tau_w)) {
        out.status = WitnessStatus::Condition2Fails;
        out.counterexample = std::move(z);
      } else {
        out.status = WitnessStatus::Valid;
      }
      return out;
    }
  }
  out.method = "symbolic";
  out.status = detail::symbolic_condition2(gr, slc, target, w.tau_w) ? WitnessStatus::Valid
                                                                       : WitnessStatus::Undetermined;
  return out;
}

template <Ring R>
struct WitnessOutcome {
  std::optional<NonCleanWitness<R>> witness;
  /// Three-squares status when the search reached the last case.
  std::optional<ThreeSquaresResult<R>> equation;
};

/// First element of K of the given order, in kappa order.
inline std::optional<GroupIndex> first_of_order(const SLCStructure& slc, std::size_t order) {
  for (GroupIndex k : slc.k_elements) {
    if (slc.group->element_order(k) == order) return k;
  }
  return std::nullopt;
}

/// Tries the six constructions in order and returns the first that applies.
template <Ring R>
WitnessOutcome<R> generate_witness(const GroupRing<R>& gr, const SLCStructure& slc,
                                   int height_bound = kDefaultHeightBound) {
  const auto& G = *slc.group;
  const auto& r = gr.ring();
  WitnessOutcome<R> out;
  auto make = [&](GRElem<R> gamma, GRElem<R> tau, WitnessCase c, std::string detail) {
    out.witness = NonCleanWitness<R>{std::move(gamma), std::move(tau), c, std::move(detail)};
    return out;
  };

  switch (slc.params.type) {
    case Presentation::D1:
      return make(gr.basis(slc.y), gr.one(), WitnessCase::Type1, "gamma = y, tau = 1");
    case Presentation::D3:
    case Presentation::D4:
    case Presentation::D5: {
      const std::size_t ord = G.element_order(slc.y);
      auto tau = gr.zero();
      const GroupIndex y2 = G.mul(slc.y, slc.y);
      GroupIndex cur = G.identity();
      for (std::size_t i = 0; i < ord / 2; ++i) {
        tau.c[cur] = r.add(tau.c[cur], r.one());
        cur = G.mul(cur, y2);
      }
      return make(gr.basis(slc.y), std::move(tau), WitnessCase::Types3to5,
                  "gamma = y, tau = sum of y^(2i), ord(y) = " + std::to_string(ord));
    }
    case Presentation::D2:
      break;
  }
  if (slc.m() >= 4) {
    const GroupIndex g = G.mul(G.mul(slc.x, slc.y), G.power(slc.a, static_cast<std::int64_t>((slc.m() - 4) / 4)));
    return make(gr.basis(g), gr.one(), WitnessCase::Type2Large,
                "gamma = x*y*a^" + std::to_string((slc.m() - 4) / 4) + ", tau = 1");
  }
  if (auto g = first_of_order(slc, 4)) {
    const GroupIndex g2 = G.mul(*g, *g);
    auto tau = gr.sub(gr.one(), gr.basis(g2));
    return make(gr.basis(G.mul(slc.x, *g)), std::move(tau), WitnessCase::Order4,
                "gamma = x*g, tau = 1 - g^2, g = " + G.name(*g));
  }
  const std::size_t a_order = slc.k_order();
  for (auto [p, e] : nt::factorize(a_order)) {
    (void)e;
    if (p == 2) continue;
    const auto n = nt::exists_n_dividing(p);
    if (!n) continue;
    const GroupIndex g = *first_of_order(slc, p);
    auto [alpha, beta] = annihilator_pair(gr, g, p, static_cast<unsigned>(*n));
    const std::uint64_t ex = (nt::powmod(2, *n - 1, p) + 1) % p;
    const GroupIndex gx = G.mul(G.power(g, static_cast<std::int64_t>(ex)), slc.x);
    const GroupIndex gy = G.mul(G.power(g, static_cast<std::int64_t>(ex)), slc.y);
    auto gamma = gr.add(gr.mul(alpha, gr.basis(gx)), gr.mul(beta, gr.basis(gy)));
    auto tau = gr.sub(gr.basis(g), gr.one());
    return make(std::move(gamma), std::move(tau), WitnessCase::ExcludedPrime,
                "p = " + std::to_string(p) + ", n = " + std::to_string(*n) + ", g = " + G.name(g));
  }
  auto eq = solve_three_squares(r, height_bound);
  out.equation = eq;
  if (eq.status == SquaresStatus::Solution && eq.solution) {
    const auto& v = *eq.solution;
    const GroupIndex xy = G.mul(slc.x, slc.y);
    auto lin = gr.add(gr.add(gr.scalar_basis(v[0], slc.x), gr.scalar_basis(v[1], slc.y)), gr.scalar_basis(v[2], xy));
    auto gamma = gr.scalar_mul(r.inverse(r.from_int(2)), gr.mul(lin, one_minus_s(gr, slc.s)));
    return make(std::move(gamma), gr.one(), WitnessCase::ThreeSquares,
                "(a1, a2, a3) = (" + r.format(v[0]) + ", " + r.format(v[1]) + ", " + r.format(v[2]) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// *-clean decompositions and the C2 extension

template <Ring R>
struct StarCleanDecomposition {
  GRElem<R> unit;
  GRElem<R> projection;
};

template <Ring R>
bool validate_decomposition(const GroupRing<R>& gr, const InvolutionMap& sigma, const GRElem<R>& target,
                            const StarCleanDecomposition<R>& d) {
  return gr.add(d.unit, d.projection) == target && gr.is_projection(d.projection, sigma) && gr.is_unit(d.unit);
}

/// G = H x C2 with the involution of H extended by a* = a. Index of (h, a^e) is 2h + e.
struct C2Extension {
  GroupPtr group;
  GroupIndex a = 0;
  std::vector<GroupIndex> embed;  // H -> G
  InvolutionMap sigma;
};

C2Extension extend_c2(const GroupPtr& h, const InvolutionMap& sigma_h);

/**
 * Lifts decompositions from RH to R[H x C2] through
 * RG = RH (1+a)/2 + RH (1-a)/2. `delta` decomposes r2 (the (1-a)/2 side),
 * `quotient` decomposes r1 (the (1+a)/2 side); its default 0 = (-1) + 1 gives
 * the lift of (r2/2)(1-a) = (u2/2)(1-a) + (p2/2)(1-a) inside the ideal.
 */
template <Ring R>
StarCleanDecomposition<R> lift_c2(const GroupRing<R>& rh, const InvolutionMap& sigma_h, const GroupRing<R>& rg,
                                  const C2Extension& ext, const StarCleanDecomposition<R>& delta,
                                  std::optional<StarCleanDecomposition<R>> quotient = std::nullopt) {
  const auto& r = rh.ring();
  auto r2 = rh.add(delta.unit, delta.projection);
  if (!validate_decomposition(rh, sigma_h, r2, delta)) throw InvalidParameter("lift_c2: invalid input decomposition");
  if (!quotient) quotient = StarCleanDecomposition<R>{rh.neg(rh.one()), rh.one()};
  auto r1 = rh.add(quotient->unit, quotient->projection);
  if (!validate_decomposition(rh, sigma_h, r1, *quotient)) {
    throw InvalidParameter("lift_c2: invalid quotient-side decomposition");
  }
  const auto half = r.inverse(r.from_int(2));
  auto lift = [&](const GRElem<R>& x) {
    auto y = rg.zero();
    for (std::size_t h = 0; h < rh.dim(); ++h) y.c[ext.embed[h]] = x.c[h];
    return y;
  };
  auto plus = rg.scalar_mul(half, rg.add(rg.one(), rg.basis(ext.a)));
  auto minus = rg.scalar_mul(half, rg.sub(rg.one(), rg.basis(ext.a)));
  StarCleanDecomposition<R> out{
      rg.add(rg.mul(lift(quotient->unit), plus), rg.mul(lift(delta.unit), minus)),
      rg.add(rg.mul(lift(quotient->projection), plus), rg.mul(lift(delta.projection), minus))};
  const auto target = rg.add(rg.mul(lift(r1), plus), rg.mul(lift(r2), minus));
  if (!validate_decomposition(rg, ext.sigma, target, out)) throw std::logic_error("lift_c2: lifted decomposition invalid");
  return out;
}

}  // namespace starclean
