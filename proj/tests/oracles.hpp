// Independent brute-force oracles used to freeze expected values. These stay
// deliberately naive and must not share code paths with the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

// y-smooth by trial division.
inline bool is_smooth(std::uint64_t n, std::uint64_t y) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      if (d > y) return false;
      n /= d;
    }
  return n == 1 || n <= y;
}

inline std::vector<std::uint64_t> smooth_set(std::uint64_t x, std::uint64_t y) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (is_smooth(n, y)) v.push_back(n);
  return v;
}

inline std::uint64_t psi(std::uint64_t x, std::uint64_t y) {
  return smooth_set(x, y).size();
}

// Psi by the recurrence Psi(x, p_k) = sum_j Psi(x / p_k^j, p_{k-1}).
inline std::uint64_t psi_recurrence(std::uint64_t x,
                                    const std::vector<std::uint64_t>& primes,
                                    std::size_t k) {
  if (x == 0) return 0;
  if (k == 0) return 1;  // only n = 1
  std::uint64_t p = primes[k - 1];
  std::uint64_t total = 0;
  for (std::uint64_t v = 1;; v *= p) {
    total += psi_recurrence(x / v, primes, k - 1);
    if (v > x / p) break;
  }
  return total;
}

// Ordered triples X+Y=Z <= H, all y-smooth, optional gcd filter: cubic-naive.
inline std::uint64_t count_triples(std::uint64_t H, std::uint64_t y,
                                   bool primitive) {
  std::uint64_t c = 0;
  for (std::uint64_t X = 1; X < H; ++X)
    for (std::uint64_t Y = 1; X + Y <= H; ++Y) {
      std::uint64_t Z = X + Y;
      if (!is_smooth(X, y) || !is_smooth(Y, y) || !is_smooth(Z, y)) continue;
      if (primitive && std::gcd(std::gcd(X, Y), Z) != 1) continue;
      ++c;
    }
  return c;
}

template <class Phi>
double weighted_triples(double x, std::uint64_t y, const Phi& phi,
                        bool primitive) {
  double total = 0.0;
  std::uint64_t H = static_cast<std::uint64_t>(x) + 1;
  for (std::uint64_t X = 1; X < H; ++X)
    for (std::uint64_t Y = 1; X + Y <= H; ++Y) {
      std::uint64_t Z = X + Y;
      if (!is_smooth(X, y) || !is_smooth(Y, y) || !is_smooth(Z, y)) continue;
      if (primitive && std::gcd(std::gcd(X, Y), Z) != 1) continue;
      total += phi(X / x) * phi(Y / x) * phi(Z / x);
    }
  return total;
}

// 2-D midpoint Riemann sum for the sharp archimedean integral.
inline double s_infinity_midpoint(double c, int n) {
  double h = 1.0 / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double t1 = (i + 0.5) * h, t2 = (j + 0.5) * h;
      if (t1 + t2 > 1.0) continue;
      acc += std::pow(t1 * t2 * (t1 + t2), c - 1.0);
    }
  return c * c * c * acc * h * h;
}

// Truncated smooth Dirichlet series sum_{n in S(y), n <= N} n^{-s}.
inline std::complex<double> smooth_series(std::complex<double> s,
                                          std::uint64_t y, std::uint64_t N) {
  std::complex<double> acc = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n)
    if (is_smooth(n, y)) acc += std::exp(-s * std::log((double)n));
  return acc;
}

// Best rational approximation by exhaustive denominator search.
inline void best_rational(double alpha, std::uint64_t Q, std::uint64_t& a,
                          std::uint64_t& q) {
  double best = 1e300;
  for (std::uint64_t qq = 1; qq <= Q; ++qq) {
    double num = std::round(alpha * qq);
    double err = std::abs(alpha - num / qq);
    if (err < best - 1e-18) {
      best = err;
      a = static_cast<std::uint64_t>(num);
      q = qq;
    }
  }
}

// Direct O(M Psi) DFT value E(m/M) for testing the FFT pass.
template <class Phi>
std::complex<double> exp_sum_direct(const std::vector<std::uint64_t>& members,
                                    double x, double alpha, const Phi& phi) {
  std::complex<double> acc = 0.0;
  for (auto n : members) {
    double w = phi(n / x);
    if (w == 0.0) continue;
    double ph = 6.283185307179586 * std::fmod(n * alpha, 1.0);
    acc += w * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return acc;
}

}  // namespace oracle
