#include "starclean/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include "starclean/errors.hpp"
#include "starclean/numtheory.hpp"

namespace starclean {

// ---------------------------------------------------------------------------
// Z/n

ZmodN::ZmodN(std::uint64_t n) {
  if (n < 3) throw InvalidParameter("Z/n requires n >= 3");
  if (n % 2 == 0) throw InvalidParameter("Z/" + std::to_string(n) + ": 2 must be a unit (n must be odd)");
  if (n >= (std::uint64_t{1} << 31)) throw CapacityError("Z/n modulus too large");
  n_ = static_cast<std::uint32_t>(n);
  is_prime_ = nt::is_prime(n);
  is_local_ = nt::prime_power(n).has_value();
}

bool ZmodN::is_unit(Elem a) const { return nt::gcd(a, n_) == 1; }

ZmodN::Elem ZmodN::inverse(Elem a) const {
  auto [g, u, v] = nt::extended_gcd(a, n_);
  (void)v;
  if (g != 1) throw InvalidParameter(std::to_string(a) + " is not a unit in " + name());
  return from_int(u);
}

ZmodN::Step ZmodN::bezout(Elem a, Elem b) const {
  auto [g, u, v] = nt::extended_gcd(a, b);
  return Step{from_int(g), from_int(u), from_int(v), from_int(static_cast<std::int64_t>(a) / g),
              from_int(static_cast<std::int64_t>(b) / g)};
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::int64_t parse_int(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("expected an integer", 0);
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected an integer in '" + t + "'", 0);
  }
  if (pos != t.size()) throw ParseError("trailing characters in '" + t + "'", pos);
  return v;
}

mpq_class parse_rational(std::string_view text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty()) throw ParseError("expected a rational", 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0))) {
      throw ParseError("invalid rational '" + t + "'", i);
    }
  }
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw ParseError("invalid rational '" + t + "'", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + t + "'", 0);
  q.canonicalize();
  return q;
}

/// Splits "a + b*v^2 - c*v" into signed terms.
std::vector<std::string> split_terms(std::string_view text) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '+' || c == '-') && depth == 0 && !cur.empty() && cur.back() != '^' && cur.back() != '/') {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  if (!cur.empty()) terms.push_back(cur);
  return terms;
}

/// Parses a polynomial in `var` with rational coefficients: exponent -> coefficient.
std::map<std::uint64_t, mpq_class> parse_poly(std::string_view text, const std::string& var) {
  std::map<std::uint64_t, mpq_class> out;
  for (std::string term : split_terms(text)) {
    mpq_class sign = 1;
    if (term.front() == '+' || term.front() == '-') {
      if (term.front() == '-') sign = -1;
      term.erase(0, 1);
    }
    if (term.empty()) throw ParseError("empty term", 0);
    const std::size_t vpos = term.find(var);
    std::uint64_t e = 0;
    mpq_class coef = 1;
    if (vpos == std::string::npos) {
      coef = parse_rational(term);
    } else {
      std::string head = term.substr(0, vpos);
      std::string tail = term.substr(vpos + var.size());
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError("expected '*' before " + var, vpos);
        head.pop_back();
        coef = parse_rational(head);
      }
      if (tail.empty()) {
        e = 1;
      } else {
        if (tail.front() != '^') throw ParseError("expected '^' after " + var, vpos + var.size());
        const std::int64_t ev = parse_int(tail.substr(1));
        if (ev < 0) throw ParseError("negative exponent", vpos);
        e = static_cast<std::uint64_t>(ev);
      }
    }
    out[e] += sign * coef;
  }
  return out;
}

std::string format_term(const std::string& coef_abs, std::uint64_t e, const std::string& var) {
  if (e == 0) return coef_abs;
  std::string mono = e == 1 ? var : var + "^" + std::to_string(e);
  return coef_abs == "1" ? mono : coef_abs + "*" + mono;
}

// Polynomials over F_p, low degree first, trimmed.
using PolyP = std::vector<std::uint64_t>;

void trim_poly(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& m, std::uint64_t p) {
  trim_poly(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = nt::powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t c = nt::mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - nt::mulmod(c, m[i], p)) % p;
    }
    trim_poly(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + nt::mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(r), m, p);
}

PolyP poly_powmod(PolyP base, std::uint64_t e, const PolyP& m, std::uint64_t p) {
  PolyP result{1};
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1U) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1U;
  }
  return result;
}

PolyP poly_gcd(PolyP a, PolyP b, std::uint64_t p) {
  trim_poly(a);
  trim_poly(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test, f monic of degree k.
bool is_irreducible(const PolyP& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  const PolyP x{0, 1};
  // x^(p^i) mod f by repeated p-th powering.
  auto frobenius_iter = [&](std::uint64_t times) {
    PolyP cur = poly_mod(x, f, p);
    for (std::uint64_t i = 0; i < times; ++i) cur = poly_powmod(cur, p, f, p);
    return cur;
  };
  auto minus_x = [&](PolyP a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim_poly(a);
    return a;
  };
  if (!minus_x(frobenius_iter(k)).empty()) return false;
  for (auto [r, e] : nt::factorize(k)) {
    (void)e;
    PolyP g = poly_gcd(f, minus_x(frobenius_iter(k / r)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

ZmodN::Elem ZmodN::parse(std::string_view text) const { return from_int(parse_int(text)); }

// ---------------------------------------------------------------------------
// GF(p^k)

struct GaloisField::Tables {
  std::vector<std::uint32_t> exp;   // size q - 1
  std::vector<std::uint32_t> log;   // size q, log[0] unused
  std::vector<std::uint16_t> add;   // q*q when small
  std::vector<std::uint32_t> neg;   // size q
};

namespace {
constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 20;
constexpr std::uint64_t kAddTableLimit = 512;
}  // namespace

GaloisField::GaloisField(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  if (p == 2) throw InvalidParameter("F2^k: 2 must be a unit (characteristic must be odd)");
  if (!nt::is_prime(p)) throw InvalidParameter("F" + std::to_string(p) + "^k: p must be prime");
  if (k < 1) throw InvalidParameter("field degree must be >= 1");
  auto q = nt::checked_pow(p, k, std::uint64_t{1} << 62);
  if (!q) throw CapacityError("field too large");
  q_ = *q;

  // Least monic irreducible of degree k.
  if (k == 1) {
    modulus_ = {0, 1};
  } else {
    const std::uint64_t lower = q_;
    for (std::uint64_t code = 0; code < lower; ++code) {
      PolyP f(k + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < k; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[k] = 1;
      if (f[0] == 0) continue;
      if (is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }

  if (q_ <= kLogTableLimit) {
    auto t = std::make_shared<Tables>();
    // Generator of the multiplicative group: smallest element of order q - 1.
    const auto factors = nt::factorize(q_ - 1);
    Elem gen = 0;
    for (Elem cand = 1; cand < q_ && gen == 0; ++cand) {
      bool primitive = true;
      for (auto [r, e] : factors) {
        (void)e;
        if (pow(cand, (q_ - 1) / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = cand;
    }
    t->exp.resize(q_ - 1);
    t->log.assign(q_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      t->exp[i] = static_cast<std::uint32_t>(cur);
      t->log[cur] = static_cast<std::uint32_t>(i);
      cur = poly_mul(cur, gen);
    }
    t->neg.resize(q_);
    for (Elem a = 0; a < q_; ++a) t->neg[a] = static_cast<std::uint32_t>(neg(a));
    if (q_ <= kAddTableLimit) {
      t->add.resize(q_ * q_);
      for (Elem a = 0; a < q_; ++a) {
        for (Elem b = 0; b < q_; ++b) t->add[a * q_ + b] = static_cast<std::uint16_t>(add(a, b));
      }
    }
    tables_ = std::move(t);
  }
}

std::vector<std::uint64_t> GaloisField::digits(Elem a) const {
  std::vector<std::uint64_t> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

GaloisField::Elem GaloisField::undigits(const std::vector<std::uint64_t>& d) const {
  Elem a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
  return a;
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (k_ == 1) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (tables_ && !tables_->add.empty()) return tables_->add[a * q_ + b];
  Elem result = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    result += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return result;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  if (tables_ && !tables_->neg.empty()) return tables_->neg[a];
  Elem result = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    result += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return result;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GaloisField::Elem GaloisField::poly_mul(Elem a, Elem b) const {
  if (k_ == 1) return nt::mulmod(a, b, p_);
  PolyP pa = digits(a), pb = digits(b);
  trim_poly(pa);
  trim_poly(pb);
  PolyP r = poly_mulmod(pa, pb, modulus_, p_);
  r.resize(k_, 0);
  return undigits(r);
}

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return nt::mulmod(a, b, p_);
  if (tables_) {
    std::uint64_t e = std::uint64_t{tables_->log[a]} + tables_->log[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return tables_->exp[e];
  }
  return poly_mul(a, b);
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e > 0) {
    if (e & 1U) result = tables_ ? mul(result, a) : poly_mul(result, a);
    a = tables_ ? mul(a, a) : poly_mul(a, a);
    e >>= 1U;
  }
  return result;
}

GaloisField::Elem GaloisField::inverse(Elem a) const {
  if (a == 0) throw InvalidParameter("0 is not a unit in " + name());
  if (tables_) {
    const std::uint32_t l = tables_->log[a];
    return tables_->exp[l == 0 ? 0 : (q_ - 1) - l];
  }
  return pow(a, q_ - 2);
}

bool GaloisField::is_square(Elem a) const { return a == 0 || pow(a, (q_ - 1) / 2) == 1; }

std::optional<GaloisField::Elem> GaloisField::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks in the cyclic group of order q - 1 = 2^s * t.
  std::uint64_t t = q_ - 1;
  unsigned s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Elem z = 2;
  while (is_square(z)) ++z;
  Elem c = pow(z, t);
  Elem x = pow(a, (t + 1) / 2);
  Elem b = pow(a, t);
  unsigned m = s;
  while (b != 1) {
    unsigned i = 0;
    Elem b2 = b;
    while (b2 != 1) {
      b2 = mul(b2, b2);
      ++i;
    }
    Elem w = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) w = mul(w, w);
    x = mul(x, w);
    c = mul(w, w);
    b = mul(b, c);
    m = i;
  }
  return x;
}

GaloisField::Elem GaloisField::root_of_unity(std::uint64_t d) const {
  if (d == 0 || (q_ - 1) % d != 0) {
    throw InvalidParameter(name() + " has no primitive " + std::to_string(d) + "-th root of unity");
  }
  if (d == 1) return 1;
  const auto factors = nt::factorize(d);
  for (Elem cand = 1; cand < q_; ++cand) {
    const Elem r = pow(cand, (q_ - 1) / d);
    bool exact = true;
    for (auto [l, e] : factors) {
      (void)e;
      if (pow(r, d / l) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) return r;
  }
  throw InvalidParameter("root_of_unity: not found");
}

std::string GaloisField::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto d = digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += format_term(std::to_string(d[i]), i, "t");
  }
  return out;
}

GaloisField::Elem GaloisField::parse(std::string_view text) const {
  if (k_ == 1) return from_int(parse_int(text));
  std::vector<std::uint64_t> d(k_, 0);
  PolyP poly;
  for (const auto& [e, coef] : parse_poly(text, "t")) {
    if (coef.get_den() != 1) throw ParseError("non-integer coefficient in GF element", 0);
    if (poly.size() <= e) poly.resize(e + 1, 0);
    const mpz_class r = coef.get_num() % mpz_class(static_cast<unsigned long>(p_));
    std::int64_t rv = r.get_si();
    if (rv < 0) rv += static_cast<std::int64_t>(p_);
    poly[e] = static_cast<std::uint64_t>(rv);
  }
  poly = poly_mod(poly, modulus_, p_);
  for (std::size_t i = 0; i < poly.size(); ++i) d[i] = poly[i];
  return undigits(d);
}

std::string GaloisField::name() const {
  return k_ == 1 ? "F" + std::to_string(p_) : "F" + std::to_string(p_) + "^" + std::to_string(k_);
}

// ---------------------------------------------------------------------------
// Q

Rationals::Elem Rationals::inverse(const Elem& a) const {
  if (sgn(a) == 0) throw InvalidParameter("0 is not a unit in Q");
  return 1 / a;
}

Rationals::Elem Rationals::parse(std::string_view text) const { return parse_rational(text); }

// ---------------------------------------------------------------------------
// Phi_d

std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t d) {
  if (d == 0) throw InvalidParameter("cyclotomic_polynomial: d must be >= 1");
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  // x^d - 1 divided by Phi_e for every proper divisor e.
  std::vector<std::int64_t> num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (std::uint64_t e : nt::divisors(d)) {
    if (e == d) continue;
    const auto den = cyclotomic_polynomial(e);  // monic
    const std::size_t dn = den.size() - 1;
    std::vector<std::int64_t> quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
      const std::int64_t c = num[i];
      quot[i - dn] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i) {
      if (num[i] != 0) throw std::logic_error("cyclotomic_polynomial: inexact division");
    }
    num = std::move(quot);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, num);
  return num;
}

// ---------------------------------------------------------------------------
// Q(zeta_d)

Cyclotomic::Cyclotomic(std::uint64_t d) : d_(d) {
  if (d < 3) throw InvalidParameter("Q(zeta_d) with d < 3 is Q itself");
  if (nt::euler_phi(d) > 4096) throw CapacityError("cyclotomic degree too large");
  phi_ = cyclotomic_polynomial(d);
}

Cyclotomic::Elem Cyclotomic::from_int(std::int64_t v) const { return from_rational(mpq_class(static_cast<long>(v))); }

Cyclotomic::Elem Cyclotomic::from_rational(const mpq_class& v) const {
  Elem e = zero();
  e.c[0] = v;
  return e;
}

Cyclotomic::Elem Cyclotomic::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Cyclotomic::Elem Cyclotomic::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

Cyclotomic::Elem Cyclotomic::neg(const Elem& a) const {
  Elem r = a;
  for (auto& v : r.c) v = -v;
  return r;
}

Cyclotomic::Elem Cyclotomic::reduce(std::vector<mpq_class> c) const {
  const std::size_t n = dimension();
  for (std::size_t i = c.size(); i-- > n;) {
    if (sgn(c[i]) == 0) continue;
    const mpq_class lead = c[i];
    for (std::size_t j = 0; j <= n; ++j) {
      if (phi_[j] != 0) c[i - n + j] -= lead * phi_[j];
    }
  }
  c.resize(n);
  return CycElem{std::move(c)};
}

Cyclotomic::Elem Cyclotomic::mul(const Elem& a, const Elem& b) const {
  const std::size_t n = dimension();
  std::vector<mpq_class> r(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.c[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b.c[j]) != 0) r[i + j] += a.c[i] * b.c[j];
    }
  }
  return reduce(std::move(r));
}

bool Cyclotomic::is_zero(const Elem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

Cyclotomic::Elem Cyclotomic::inverse(const Elem& a) const {
  if (is_zero(a)) throw InvalidParameter("0 is not a unit in " + name());
  // Extended Euclid in Q[z] on (a, Phi_d); tracks the cofactor of a.
  using Poly = std::vector<mpq_class>;
  auto trim = [](Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  };
  Poly r0(phi_.begin(), phi_.end());
  Poly r1 = a.c;
  trim(r1);
  Poly s0{}, s1{1};
  while (!(r1.size() == 1)) {
    // r0 = q * r1 + rem
    Poly rem = r0;
    Poly q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const std::size_t shift = rem.size() - r1.size();
      const mpq_class c = rem.back() / r1.back();
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= c * r1[j];
      trim(rem);
    }
    // s2 = s0 - q * s1
    Poly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    }
    Poly s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::logic_error("Cyclotomic::inverse: Phi_d not irreducible?");
  }
  const mpq_class c = r1[0];
  for (auto& v : s1) v /= c;
  return reduce(std::move(s1));
}

Cyclotomic::Elem Cyclotomic::zeta_power(std::int64_t e) const {
  std::int64_t r = e % static_cast<std::int64_t>(d_);
  if (r < 0) r += static_cast<std::int64_t>(d_);
  std::vector<mpq_class> c(static_cast<std::size_t>(r) + 1);
  c[static_cast<std::size_t>(r)] = 1;
  return reduce(std::move(c));
}

std::string Cyclotomic::format(const Elem& a) const {
  std::string out;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    const int sg = sgn(a.c[i]);
    if (sg == 0) continue;
    const mpq_class absval = abs(a.c[i]);
    const std::string term = format_term(absval.get_str(), i, "z");
    if (out.empty()) {
      out = (sg < 0 ? "-" : "") + term;
    } else {
      out += (sg < 0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

Cyclotomic::Elem Cyclotomic::parse(std::string_view text) const {
  std::vector<mpq_class> c;
  for (const auto& [e, coef] : parse_poly(text, "z")) {
    if (c.size() <= e) c.resize(e + 1);
    c[e] += coef;
  }
  if (c.size() < dimension()) c.resize(dimension());
  return reduce(std::move(c));
}

// ---------------------------------------------------------------------------
// Dynamic rings

CoefficientRing make_ring(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  if (spec == "Q") return Rationals{};
  if (spec.rfind("Q(zeta", 0) == 0) {
    if (spec.back() != ')') throw ParseError("expected ')' in ring spec '" + spec + "'", spec.size());
    const std::int64_t d = parse_int(spec.substr(6, spec.size() - 7));
    if (d < 1) throw InvalidParameter("Q(zeta_d) requires d >= 1");
    if (d <= 2) return Rationals{};
    return Cyclotomic(static_cast<std::uint64_t>(d));
  }
  if (spec.rfind("Z/", 0) == 0) {
    const std::int64_t n = parse_int(spec.substr(2));
    if (n < 1) throw InvalidParameter("Z/n requires n >= 1");
    return ZmodN(static_cast<std::uint64_t>(n));
  }
  if (!spec.empty() && spec.front() == 'F') {
    const std::size_t caret = spec.find('^');
    const std::int64_t p = parse_int(spec.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    std::int64_t k = 1;
    if (caret != std::string::npos) k = parse_int(spec.substr(caret + 1));
    if (p < 2 || k < 1) throw InvalidParameter("invalid field spec '" + spec + "'");
    return GaloisField(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
  }
  throw ParseError("unrecognized ring spec '" + spec + "'", 0);
}

std::string ring_name(const CoefficientRing& ring) {
  return std::visit([](const auto& r) { return r.name(); }, ring);
}

bool ring_is_field(const CoefficientRing& ring) {
  return std::visit([](const auto& r) { return r.is_field(); }, ring);
}

std::uint64_t ring_characteristic(const CoefficientRing& ring) {
  return std::visit([](const auto& r) { return r.characteristic(); }, ring);
}

std::uint64_t extension_degree(const CoefficientRing& field, std::uint64_t d) {
  if (d == 0) throw InvalidParameter("extension_degree: d must be >= 1");
  return std::visit(
      [&](const auto& r) -> std::uint64_t {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Rationals>) {
          return nt::euler_phi(d);
        } else if constexpr (std::is_same_v<R, Cyclotomic>) {
          const std::uint64_t e = r.order();
          return nt::euler_phi(nt::lcm(d, e)) / nt::euler_phi(e);
        } else if constexpr (std::is_same_v<R, GaloisField>) {
          if (d % r.prime() == 0) throw InvalidParameter("characteristic divides d");
          return nt::multiplicative_order(r.cardinality() % d, d);
        } else {
          if (!r.is_field()) throw InvalidParameter(r.name() + " is not a field");
          if (d % r.modulus() == 0) throw InvalidParameter("characteristic divides d");
          return nt::multiplicative_order(r.modulus() % d, d);
        }
      },
      field);
}

CoefficientRing extend_with_root(const CoefficientRing& field, std::uint64_t d) {
  if (d == 0) throw InvalidParameter("extend_with_root: d must be >= 1");
  return std::visit(
      [&](const auto& r) -> CoefficientRing {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Rationals>) {
          if (d <= 2) return r;
          return Cyclotomic(d);
        } else if constexpr (std::is_same_v<R, Cyclotomic>) {
          const std::uint64_t l = nt::lcm(d, r.order());
          if (nt::euler_phi(l) == nt::euler_phi(r.order())) return r;
          return Cyclotomic(l);
        } else if constexpr (std::is_same_v<R, GaloisField>) {
          if (d % r.prime() == 0) {
            throw InvalidParameter("characteristic " + std::to_string(r.prime()) + " divides " + std::to_string(d));
          }
          const std::uint64_t ord = nt::multiplicative_order(r.cardinality() % d, d);
          if (ord == 1) return r;
          return GaloisField(r.prime(), static_cast<unsigned>(r.degree() * ord));
        } else {
          if (!r.is_field()) throw InvalidParameter(r.name() + " is not a field");
          if (d % r.modulus() == 0) {
            throw InvalidParameter("characteristic " + std::to_string(r.modulus()) + " divides " + std::to_string(d));
          }
          const std::uint64_t ord = nt::multiplicative_order(r.modulus() % d, d);
          if (ord == 1) return r;
          return GaloisField(r.modulus(), static_cast<unsigned>(ord));
        }
      },
      field);
}

}  // namespace starclean
