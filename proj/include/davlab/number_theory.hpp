#pragma once

#include <cstdint>
#include <optional>

namespace davlab {

bool is_prime(std::int64_t n);

/// Non-negative residue of x modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t x, std::int64_t m) {
  const auto r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t base, int exp);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

/// Inverse of x modulo m, if gcd(x, m) = 1.
std::optional<std::int64_t> inverse_mod(std::int64_t x, std::int64_t m);

/// k with n = p^k, if n is a power of p.
std::optional<int> log_exact(std::int64_t n, std::int64_t p);

/// Euler's criterion; x must be nonzero mod the odd prime p.
bool is_quadratic_residue(std::int64_t x, std::int64_t p);

/// Least q >= 2 that is a quadratic non-residue modulo the odd prime p.
/// Throws PreconditionError for even or non-prime p, and ConsistencyError if
/// the result is not a prime below sqrt(p) + 1.
std::int64_t least_qnr(std::int64_t p);

/// x/2 modulo an odd modulus, i.e. x * (modulus + 1)/2. Resolves exponents
/// such as c^(1/2) against o(c). Throws PreconditionError on even modulus.
std::int64_t half_exponent(std::int64_t x, std::int64_t modulus);

} // namespace davlab
