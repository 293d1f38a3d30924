#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starclean/coeff.hpp"
#include "starclean/errors.hpp"
#include "starclean/groups.hpp"
#include "starclean/linalg.hpp"

namespace starclean {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

/// Dense coefficient vector indexed by group element.
template <Ring R>
struct GRElem {
  std::vector<typename R::Elem> c;
  friend bool operator==(const GRElem&, const GRElem&) = default;
};

/// |R|^k as a decimal string.
inline std::string power_string(std::uint64_t base, std::size_t k) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), base, k);
  return v.get_str();
}

/// |R|^k if it fits under `budget`, else throws BudgetExceeded.
inline std::uint64_t checked_cardinality(std::uint64_t base, std::size_t k, std::uint64_t budget,
                                         const std::string& what) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (base != 0 && v > budget / base) throw BudgetExceeded(what, power_string(base, k));
    v *= base;
  }
  if (v > budget) throw BudgetExceeded(what, power_string(base, k));
  return v;
}

/**
 * Linear constraints c[h] = sign * c[g] on coefficient vectors, solved by a
 * union-find with parity. Classes that force c = -c are pinned to zero (2 is a
 * unit). Used to parametrize *-symmetric vectors and the e/f components.
 */
class SignedClasses {
 public:
  explicit SignedClasses(std::size_t n) : parent_(n), parity_(n, 0), forced_zero_(n, false) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  /// Imposes c[h] = (negative ? -1 : 1) * c[g].
  void relate(std::size_t g, std::size_t h, bool negative) {
    auto [rg, pg] = find(g);
    auto [rh, ph] = find(h);
    const std::uint8_t want = static_cast<std::uint8_t>(pg ^ ph ^ (negative ? 1 : 0));
    if (rg == rh) {
      if (want) forced_zero_[rg] = true;
      return;
    }
    parent_[rh] = rg;
    parity_[rh] = want;
    if (forced_zero_[rh]) forced_zero_[rg] = true;
  }

  /// Free parameters (class roots in increasing order) and, per index, (param, negative) or none.
  struct Layout {
    std::vector<std::size_t> roots;
    std::vector<std::optional<std::pair<std::size_t, bool>>> slot;
  };
  Layout layout() {
    Layout l;
    const std::size_t n = parent_.size();
    std::vector<std::size_t> param_of(n, SIZE_MAX);
    l.slot.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto [r, p] = find(i);
      if (forced_zero_[r]) continue;
      if (param_of[r] == SIZE_MAX) {
        param_of[r] = l.roots.size();
        l.roots.push_back(r);
      }
      l.slot[i] = std::make_pair(param_of[r], p != 0);
    }
    return l;
  }

 private:
  std::pair<std::size_t, std::uint8_t> find(std::size_t g) {
    std::uint8_t par = 0;
    std::size_t r = g;
    while (parent_[r] != r) {
      par ^= parity_[r];
      r = parent_[r];
    }
    // Path compression with parity fix-up.
    std::size_t cur = g;
    std::uint8_t acc = par;
    while (parent_[cur] != cur) {
      const std::size_t next = parent_[cur];
      const std::uint8_t pc = parity_[cur];
      parent_[cur] = r;
      parity_[cur] = acc;
      acc ^= pc;
      cur = next;
    }
    return {r, par};
  }

  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> parity_;
  std::vector<bool> forced_zero_;
};

/// Which central component to restrict an enumeration to.
enum class Component { Whole, E, F };

template <Ring R>
class GroupRing {
 public:
  using Coeff = typename R::Elem;
  using Elem = GRElem<R>;

  GroupRing(GroupPtr g, R ring) : group_(std::move(g)), ring_(std::move(ring)) {}

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const R& ring() const { return ring_; }
  std::size_t dim() const { return group_->order(); }

  Elem zero() const { return Elem{std::vector<Coeff>(dim(), ring_.zero())}; }
  Elem one() const { return basis(group_->identity()); }
  Elem basis(GroupIndex g) const { return scalar_basis(ring_.one(), g); }
  Elem scalar_basis(const Coeff& c, GroupIndex g) const {
    Elem e = zero();
    e.c[g] = c;
    return e;
  }
  Elem scalar(const Coeff& c) const { return scalar_basis(c, group_->identity()); }

  void check(const Elem& a) const {
    if (a.c.size() != dim()) throw InvalidParameter("group ring element does not belong to this carrier");
  }

  Elem add(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    Elem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = ring_.add(r.c[i], b.c[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    Elem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = ring_.sub(r.c[i], b.c[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    check(a);
    Elem r = a;
    for (auto& x : r.c) x = ring_.neg(x);
    return r;
  }
  Elem scalar_mul(const Coeff& k, const Elem& a) const {
    check(a);
    Elem r = a;
    for (auto& x : r.c) x = ring_.mul(k, x);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    const std::size_t n = dim();
    Elem r = zero();
    std::vector<GroupIndex> sb;
    for (std::size_t h = 0; h < n; ++h) {
      if (!ring_.is_zero(b.c[h])) sb.push_back(static_cast<GroupIndex>(h));
    }
    for (std::size_t g = 0; g < n; ++g) {
      if (ring_.is_zero(a.c[g])) continue;
      for (GroupIndex h : sb) {
        const GroupIndex gh = group_->mul(static_cast<GroupIndex>(g), h);
        r.c[gh] = ring_.add(r.c[gh], ring_.mul(a.c[g], b.c[h]));
      }
    }
    return r;
  }
  Elem pow(Elem a, unsigned e) const {
    Elem r = one();
    while (e > 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }

  bool is_zero(const Elem& a) const {
    for (const auto& x : a.c) {
      if (!ring_.is_zero(x)) return false;
    }
    return true;
  }

  std::vector<GroupIndex> support(const Elem& a) const {
    std::vector<GroupIndex> s;
    for (std::size_t g = 0; g < a.c.size(); ++g) {
      if (!ring_.is_zero(a.c[g])) s.push_back(static_cast<GroupIndex>(g));
    }
    return s;
  }

  /// sum a_g g  ->  sum a_g sigma(g).
  Elem apply_involution(const InvolutionMap& sigma, const Elem& a) const {
    check(a);
    if (sigma.image.size() != dim()) throw InvalidParameter("involution is defined on a different group");
    Elem r = zero();
    for (std::size_t g = 0; g < dim(); ++g) r.c[sigma(static_cast<GroupIndex>(g))] = a.c[g];
    return r;
  }

  bool is_idempotent(const Elem& a) const { return mul(a, a) == a; }
  bool is_projection(const Elem& a, const InvolutionMap& sigma) const {
    return apply_involution(sigma, a) == a && is_idempotent(a);
  }

  /// Matrix of beta -> a*beta: M[h][g] = a_{h g^-1}.
  Matrix<R> regular_matrix(const Elem& a) const {
    check(a);
    const std::size_t n = dim();
    Matrix<R> m{n, std::vector<Coeff>(n * n, ring_.zero())};
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t g = 0; g < n; ++g) {
        m.at(h, g) = a.c[group_->mul(static_cast<GroupIndex>(h), group_->inverse(static_cast<GroupIndex>(g)))];
      }
    }
    return m;
  }
  Coeff regular_determinant(const Elem& a) const { return determinant(ring_, regular_matrix(a)); }
  bool is_unit(const Elem& a) const { return ring_.is_unit(regular_determinant(a)); }
  std::optional<Elem> unit_inverse(const Elem& a) const {
    std::vector<Coeff> rhs(dim(), ring_.zero());
    rhs[group_->identity()] = ring_.one();
    auto x = solve(ring_, regular_matrix(a), std::move(rhs));
    if (!x) return std::nullopt;
    return Elem{std::move(*x)};
  }

  std::string format(const Elem& a) const {
    std::string out;
    for (std::size_t g = 0; g < a.c.size(); ++g) {
      if (ring_.is_zero(a.c[g])) continue;
      std::string coef = ring_.format(a.c[g]);
      bool negative = false;
      if (coef.find_first_of(" +") != std::string::npos || coef.find('-', 1) != std::string::npos) {
        coef = "(" + coef + ")";
      } else if (coef.front() == '-') {
        negative = true;
        coef.erase(0, 1);
      }
      const std::string& name = group_->name(static_cast<GroupIndex>(g));
      std::string term = name == "1" ? coef : (coef == "1" ? name : coef + "*" + name);
      if (out.empty()) {
        out = negative ? "-" + term : term;
      } else {
        out += (negative ? " - " : " + ") + term;
      }
    }
    return out.empty() ? "0" : out;
  }

  // ---- Enumeration over finite coefficient rings ----

  /// Elements whose coefficients obey `classes`, built from a parameter vector of ring indices.
  Elem from_params(const SignedClasses::Layout& l, const std::vector<std::uint64_t>& params) const
    requires FiniteRing<R>
  {
    Elem e = zero();
    for (std::size_t g = 0; g < dim(); ++g) {
      if (!l.slot[g]) continue;
      const auto [p, negative] = *l.slot[g];
      const Coeff v = ring_.element_at(params[p]);
      e.c[g] = negative ? ring_.neg(v) : v;
    }
    return e;
  }

  /// Visits every element satisfying the constraints (odometer order). Stops if visit returns false.
  bool enumerate_constrained(SignedClasses classes, std::uint64_t budget, const std::function<bool(const Elem&)>& visit,
                             const std::string& what) const
    requires FiniteRing<R>
  {
    const auto l = classes.layout();
    const std::uint64_t q = ring_.cardinality();
    checked_cardinality(q, l.roots.size(), budget, what);
    std::vector<std::uint64_t> params(l.roots.size(), 0);
    while (true) {
      if (!visit(from_params(l, params))) return false;
      std::size_t i = 0;
      while (i < params.size() && ++params[i] == q) params[i++] = 0;
      if (i == params.size()) return true;
    }
  }

  /// Constraint system: c_{sigma(g)} = c_g if sigma given; c_{s g} = +-c_g for the e/f component.
  SignedClasses constraints(const InvolutionMap* sigma, Component comp, std::optional<GroupIndex> s) const {
    SignedClasses cls(dim());
    if (sigma) {
      for (std::size_t g = 0; g < dim(); ++g) cls.relate(g, (*sigma)(static_cast<GroupIndex>(g)), false);
    }
    if (comp != Component::Whole) {
      if (!s) throw InvalidParameter("component split requires the central involution s");
      for (std::size_t g = 0; g < dim(); ++g) {
        cls.relate(g, group_->mul(*s, static_cast<GroupIndex>(g)), comp == Component::F);
      }
    }
    return cls;
  }

  /// Every element, in index order sum c_g q^g.
  bool enumerate_elements(std::uint64_t budget, const std::function<bool(const Elem&)>& visit) const
    requires FiniteRing<R>
  {
    return enumerate_constrained(SignedClasses(dim()), budget, visit, "element enumeration");
  }

  bool enumerate_units(std::uint64_t budget, const std::function<bool(const Elem&)>& visit) const
    requires FiniteRing<R>
  {
    return enumerate_elements(budget, [&](const Elem& a) { return is_unit(a) ? visit(a) : true; });
  }

  /// Projections of the whole ring or of one central component (filters *-symmetric vectors).
  std::vector<Elem> projections(const InvolutionMap& sigma, std::uint64_t budget, Component comp = Component::Whole,
                                std::optional<GroupIndex> s = std::nullopt) const
    requires FiniteRing<R>
  {
    std::vector<Elem> out;
    enumerate_constrained(
        constraints(&sigma, comp, s), budget,
        [&](const Elem& a) {
          if (is_idempotent(a)) out.push_back(a);
          return true;
        },
        "projection enumeration");
    return out;
  }

  /// Idempotents. With s given, enumerates the e and f components separately and sums.
  std::vector<Elem> idempotents(std::uint64_t budget, std::optional<GroupIndex> s = std::nullopt) const
    requires FiniteRing<R>
  {
    auto collect = [&](Component comp) {
      std::vector<Elem> out;
      enumerate_constrained(
          constraints(nullptr, comp, s), budget,
          [&](const Elem& a) {
            if (is_idempotent(a)) out.push_back(a);
            return true;
          },
          "idempotent enumeration");
      return out;
    };
    if (!s) return collect(Component::Whole);
    const auto pe = collect(Component::E);
    const auto pf = collect(Component::F);
    std::vector<Elem> out;
    out.reserve(pe.size() * pf.size());
    for (const auto& a : pe) {
      for (const auto& b : pf) out.push_back(add(a, b));
    }
    return out;
  }

 private:
  GroupPtr group_;
  R ring_;
};

/// e = (1+s)/2, f = (1-s)/2.
template <Ring R>
struct CentralIdempotentPair {
  GRElem<R> e, f;
};

template <Ring R>
CentralIdempotentPair<R> central_idempotents(const GroupRing<R>& gr, GroupIndex s) {
  const auto& r = gr.ring();
  const auto half = r.inverse(r.from_int(2));
  auto e = gr.scalar(half);
  auto f = gr.scalar(half);
  e.c[s] = r.add(e.c[s], half);
  f.c[s] = r.sub(f.c[s], half);
  return {e, f};
}

/**
 * RG = R(G/<s>) + (RG)f. The e-side is carried to the quotient by
 * a*e -> sum (a_g + a_{gs}) g<s>; its inverse sends g<s> to rep(g<s>)*e.
 */
template <Ring R>
class CentralSplit {
 public:
  using Elem = GRElem<R>;

  CentralSplit(const GroupRing<R>& gr, GroupIndex s)
      : gr_(gr), s_(s), quot_(quotient_by_central_involution(gr.group_ptr(), s)), qr_(quot_.quotient, gr.ring()),
        pair_(central_idempotents(gr, s)) {}

  const GroupRing<R>& quotient_ring() const { return qr_; }
  const CentralQuotient& quotient() const { return quot_; }
  const CentralIdempotentPair<R>& idempotents() const { return pair_; }

  std::pair<Elem, Elem> split(const Elem& a) const {
    const auto& r = gr_.ring();
    Elem q = qr_.zero();
    for (std::size_t g = 0; g < gr_.dim(); ++g) {
      const auto c = quot_.coset_of[g];
      q.c[c] = r.add(q.c[c], a.c[g]);
    }
    return {q, gr_.mul(a, pair_.f)};
  }

  Elem reassemble(const Elem& quotient_part, const Elem& f_part) const {
    Elem lifted = gr_.zero();
    for (std::size_t c = 0; c < qr_.dim(); ++c) lifted.c[quot_.representative[c]] = quotient_part.c[c];
    return gr_.add(gr_.mul(lifted, pair_.e), f_part);
  }

 private:
  const GroupRing<R>& gr_;
  GroupIndex s_;
  CentralQuotient quot_;
  GroupRing<R> qr_;
  CentralIdempotentPair<R> pair_;
};

}  // namespace starclean
