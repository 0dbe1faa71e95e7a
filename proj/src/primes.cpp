#include "smoothxyz/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xyz {

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  if (n > (1ull << 32)) throw std::invalid_argument("primes_up_to: n too large");
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (comp[p]) continue;
    for (std::uint64_t m = p * p; m <= n; m += p) comp[m] = true;
  }
  for (std::uint64_t p = 2; p <= n; ++p)
    if (!comp[p]) out.push_back(static_cast<std::uint32_t>(p));
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("largest_prime_factor: n must be >= 1");
  std::uint64_t best = 1;
  while (n % 2 == 0) {
    best = 2;
    n /= 2;
  }
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    while (n % d == 0) {
      best = d;
      n /= d;
    }
  }
  if (n > 1) best = n;
  return best;
}

std::uint64_t nth_prime(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("nth_prime: k is 1-based");
  // p_k < k(log k + log log k) for k >= 6; small k handled by the floor.
  double kd = static_cast<double>(k);
  std::uint64_t bound = 16;
  if (k >= 6) {
    double lk = std::log(kd);
    bound = static_cast<std::uint64_t>(kd * (lk + std::log(lk)) + 8);
  }
  for (;;) {
    auto ps = primes_up_to(bound);
    if (ps.size() >= k) return ps[k - 1];
    bound *= 2;
  }
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> f;
  auto strip = [&](std::uint64_t p) {
    if (n % p) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  };
  strip(2);
  for (std::uint64_t d = 3; d * d <= n; d += 2) strip(d);
  if (n > 1) f.push_back({n, 1});
  return f;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
    (void)p;
  }
  return sign;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (const auto& [p, e] : factorize(n)) {
    r -= r / p;
    (void)e;
  }
  return r;
}

void smooth_split(std::uint64_t q, std::uint64_t y, std::uint64_t& q0,
                  std::uint64_t& q1) {
  q0 = 1;
  q1 = 1;
  for (const auto& [p, e] : factorize(q)) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    (p <= y ? q0 : q1) *= pe;
  }
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ds{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t m = ds.size();
    std::uint64_t pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pe);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace xyz
