#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace starclean::nt {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// a*b mod m without overflow for m < 2^63.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Checked integer power; nullopt on overflow of `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t limit = UINT64_MAX);

bool is_prime(std::uint64_t n);

/// Prime factorization as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1 and m >= 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Primes strictly below `bound`.
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

/// If prime power p^k returns (p, k).
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

/// Extended Euclid on signed integers: returns (g, u, v) with u*a + v*b = g.
struct Bezout {
  std::int64_t g;
  std::int64_t u;
  std::int64_t v;
};
Bezout extended_gcd(std::int64_t a, std::int64_t b);

/// Least n >= 1 with p | 2^n + 1, which exists iff ord_p(2) is even; then n = ord_p(2)/2.
std::optional<std::uint64_t> exists_n_dividing(std::uint64_t p);

}  // namespace starclean::nt
