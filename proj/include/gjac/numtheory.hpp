#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gjac {

bool is_prime(std::uint64_t n);

/// Prime factorization by trial division, ascending primes with exponents.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

/// All positive divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Largest power of the prime p dividing n (n > 0).
std::uint64_t prime_part(std::uint64_t n, std::uint64_t p);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace gjac
