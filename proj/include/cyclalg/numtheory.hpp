#pragma once

#include <cstdint>
#include <vector>

namespace cyclalg {

bool is_prime(std::uint64_t n);

// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// base^exp, throwing Errc::Overflow past `limit`.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp,
                          std::uint64_t limit = UINT64_MAX);

// Non-negative residue of x mod m (m > 0).
std::int64_t mod_floor(std::int64_t x, std::int64_t m);

// Inverse of a mod m; throws Errc::BadInput when gcd(a, m) != 1.
std::int64_t mod_inv(std::int64_t a, std::int64_t m);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace cyclalg
