#pragma once

#include <cstdint>
#include <vector>

namespace xyz {

/// Eratosthenes sieve; returns all primes <= n in increasing order.
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Largest prime factor of n; lpf(1) = 1 by convention.
std::uint64_t largest_prime_factor(std::uint64_t n);

/// k-th prime, 1-based (nth_prime(1) == 2).
std::uint64_t nth_prime(std::uint64_t k);

struct PrimePower {
  std::uint64_t p;
  int e;
};

std::vector<PrimePower> factorize(std::uint64_t n);

int mobius(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Splits q = q0*q1 with q0 the y-smooth part and q1 carrying all prime
/// factors > y.
void smooth_split(std::uint64_t q, std::uint64_t y, std::uint64_t& q0,
                  std::uint64_t& q1);

std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace xyz
