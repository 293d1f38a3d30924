#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace starclean {

/**
 * Exact commutative coefficient rings in which 2 is a unit.
 *
 * Every ring class is a cheap-to-copy context object; its elements are plain
 * values (`Elem`) that are always kept in canonical reduced form, so `==` on
 * elements is ring equality.
 */
template <class R>
concept Ring = requires(const R& r, const typename R::Elem& a, std::int64_t n) {
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.from_int(n) } -> std::same_as<typename R::Elem>;
  { r.add(a, a) } -> std::same_as<typename R::Elem>;
  { r.sub(a, a) } -> std::same_as<typename R::Elem>;
  { r.neg(a) } -> std::same_as<typename R::Elem>;
  { r.mul(a, a) } -> std::same_as<typename R::Elem>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.is_unit(a) } -> std::same_as<bool>;
  { r.inverse(a) } -> std::same_as<typename R::Elem>;
  { r.is_field() } -> std::same_as<bool>;
  { r.is_finite() } -> std::same_as<bool>;
  { r.characteristic() } -> std::same_as<std::uint64_t>;
  { r.format(a) } -> std::same_as<std::string>;
  { r.name() } -> std::same_as<std::string>;
};

/// Rings with a finite, enumerable element set.
template <class R>
concept FiniteRing = Ring<R> && requires(const R& r, const typename R::Elem& a, std::uint64_t i) {
  { r.cardinality() } -> std::same_as<std::uint64_t>;
  { r.element_at(i) } -> std::same_as<typename R::Elem>;
  { r.index_of(a) } -> std::same_as<std::uint64_t>;
};

/// Z/nZ for odd n >= 3.
class ZmodN {
 public:
  using Elem = std::uint32_t;

  explicit ZmodN(std::uint64_t n);

  std::uint32_t modulus() const { return n_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(n_);
    return static_cast<Elem>(r < 0 ? r + n_ : r);
  }
  Elem add(Elem a, Elem b) const {
    const std::uint32_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + n_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : n_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % n_);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_unit(Elem a) const;
  Elem inverse(Elem a) const;
  bool is_field() const { return is_prime_; }
  bool is_finite() const { return true; }
  bool is_local() const { return is_local_; }
  std::uint64_t characteristic() const { return n_; }
  std::uint64_t cardinality() const { return n_; }
  Elem element_at(std::uint64_t i) const { return static_cast<Elem>(i); }
  std::uint64_t index_of(Elem a) const { return a; }
  std::string format(Elem a) const { return std::to_string(a); }
  Elem parse(std::string_view text) const;
  std::string name() const { return "Z/" + std::to_string(n_); }

  /// Unimodular column step for elimination over a non-field:
  /// g = u*a + v*b with g = gcd(a, b) taken on representatives.
  struct Step {
    Elem g, u, v, a_over_g, b_over_g;
  };
  Step bezout(Elem a, Elem b) const;

 private:
  std::uint32_t n_;
  bool is_prime_;
  bool is_local_;
};

/**
 * GF(p^k) for odd prime p as F_p[t]/(f) with f the least monic irreducible of
 * degree k, least in the order of its lower coefficients read as a base-p
 * number. Elements are encoded as base-p integers sum c_i p^i.
 */
class GaloisField {
 public:
  using Elem = std::uint64_t;

  GaloisField(std::uint64_t p, unsigned k);

  std::uint64_t prime() const { return p_; }
  unsigned degree() const { return k_; }
  /// Monic modulus, coefficients low to high (size k + 1).
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool is_unit(Elem a) const { return a != 0; }
  Elem inverse(Elem a) const;
  bool is_field() const { return true; }
  bool is_finite() const { return true; }
  std::uint64_t characteristic() const { return p_; }
  std::uint64_t cardinality() const { return q_; }
  Elem element_at(std::uint64_t i) const { return i; }
  std::uint64_t index_of(Elem a) const { return a; }
  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;
  std::string name() const;

  /// The class of t in F_p[t]/(f).
  Elem generator_t() const { return k_ > 1 ? p_ : 0; }
  bool is_square(Elem a) const;
  /// A square root of a square (Tonelli-Shanks); nullopt for non-squares.
  std::optional<Elem> sqrt(Elem a) const;
  /// An element of exact multiplicative order d; requires d | q - 1.
  Elem root_of_unity(std::uint64_t d) const;

 private:
  struct Tables;
  std::vector<std::uint64_t> digits(Elem a) const;
  Elem undigits(const std::vector<std::uint64_t>& d) const;
  Elem poly_mul(Elem a, Elem b) const;

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::shared_ptr<const Tables> tables_;
};

/// Q with GMP rationals.
class Rationals {
 public:
  using Elem = mpq_class;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const { return mpq_class(static_cast<long>(v)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_unit(const Elem& a) const { return sgn(a) != 0; }
  Elem inverse(const Elem& a) const;
  bool is_field() const { return true; }
  bool is_finite() const { return false; }
  std::uint64_t characteristic() const { return 0; }
  std::string format(const Elem& a) const { return a.get_str(); }
  Elem parse(std::string_view text) const;
  std::string name() const { return "Q"; }
};

/// Element of Q(zeta_d): coefficients in the power basis 1, z, ..., z^(phi(d)-1).
struct CycElem {
  std::vector<mpq_class> c;
  friend bool operator==(const CycElem&, const CycElem&) = default;
};

/// Q(zeta_d) = Q[z]/(Phi_d(z)) for d >= 3.
class Cyclotomic {
 public:
  using Elem = CycElem;

  explicit Cyclotomic(std::uint64_t d);

  std::uint64_t order() const { return d_; }
  std::size_t dimension() const { return phi_.size() - 1; }
  const std::vector<std::int64_t>& phi() const { return phi_; }

  Elem zero() const { return CycElem{std::vector<mpq_class>(dimension())}; }
  Elem one() const { return from_int(1); }
  Elem from_int(std::int64_t v) const;
  Elem from_rational(const mpq_class& v) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  bool is_unit(const Elem& a) const { return !is_zero(a); }
  Elem inverse(const Elem& a) const;
  bool is_field() const { return true; }
  bool is_finite() const { return false; }
  std::uint64_t characteristic() const { return 0; }
  std::string format(const Elem& a) const;
  Elem parse(std::string_view text) const;
  std::string name() const { return "Q(zeta" + std::to_string(d_) + ")"; }

  /// zeta_d^e for any integer e.
  Elem zeta_power(std::int64_t e) const;
  /// Reduce an arbitrary-length coefficient vector modulo Phi_d.
  Elem reduce(std::vector<mpq_class> coeffs) const;

 private:
  std::uint64_t d_;
  std::vector<std::int64_t> phi_;
};

static_assert(FiniteRing<ZmodN>);
static_assert(FiniteRing<GaloisField>);
static_assert(Ring<Rationals>);
static_assert(Ring<Cyclotomic>);

/// A coefficient ring chosen at run time.
using CoefficientRing = std::variant<ZmodN, GaloisField, Rationals, Cyclotomic>;

/// Parses `Z/9`, `F3`, `F3^2`, `Q`, `Q(zeta7)`. Rejects rings where 2 is not a unit.
CoefficientRing make_ring(std::string_view spec);
std::string ring_name(const CoefficientRing& ring);
bool ring_is_field(const CoefficientRing& ring);
std::uint64_t ring_characteristic(const CoefficientRing& ring);

/// Integer coefficients of Phi_d, low degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t d);

/// F(zeta_d). Q and Q(zeta_e) go to Q(zeta_lcm); GF(p^k) goes to GF(p^(k*ord_d(p^k))).
/// Errors when char(F) divides d or F is not a field.
CoefficientRing extend_with_root(const CoefficientRing& field, std::uint64_t d);

/// [F(zeta_d) : F].
std::uint64_t extension_degree(const CoefficientRing& field, std::uint64_t d);

}  // namespace starclean
