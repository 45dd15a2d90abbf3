#include "davlab/number_theory.hpp"

#include "davlab/errors.hpp"

#include <limits>
#include <string>
#include <utility>

namespace davlab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t ipow(std::int64_t base, int exp) {
  // Saturates at INT64_MAX so oversized descriptors fail the order cap.
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) return kMax;
    r *= base;
  }
  return r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>((__int128)result * base % m);
    base = static_cast<std::int64_t>((__int128)base * base % m);
    exp >>= 1;
  }
  return result;
}

std::optional<std::int64_t> inverse_mod(std::int64_t x, std::int64_t m) {
  std::int64_t a = mod(x, m), b = m, u = 1, v = 0;
  while (b != 0) {
    const auto t = a / b;
    a -= t * b;
    std::swap(a, b);
    u -= t * v;
    std::swap(u, v);
  }
  if (a != 1) return std::nullopt;
  return mod(u, m);
}

std::optional<int> log_exact(std::int64_t n, std::int64_t p) {
  if (n < 1 || p < 2) return std::nullopt;
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

bool is_quadratic_residue(std::int64_t x, std::int64_t p) {
  return pow_mod(x, (p - 1) / 2, p) == 1;
}

std::int64_t least_qnr(std::int64_t p) {
  if (p < 3 || !is_prime(p))
    throw PreconditionError("least_qnr: " + std::to_string(p) + " is not an odd prime");
  std::int64_t q = 2;
  while (pow_mod(q, (p - 1) / 2, p) != p - 1) ++q;
  // n_p is prime and n_p < sqrt(p) + 1, i.e. (n_p - 1)^2 < p.
  if (!is_prime(q) || (q - 1) * (q - 1) >= p)
    throw ConsistencyError("least_qnr bound violated for p = " + std::to_string(p));
  return q;
}

std::int64_t half_exponent(std::int64_t x, std::int64_t modulus) {
  if (modulus % 2 == 0)
    throw PreconditionError("half_exponent: modulus " + std::to_string(modulus) + " is even");
  return static_cast<std::int64_t>((__int128)mod(x, modulus) * ((modulus + 1) / 2) % modulus);
}

} // namespace davlab
