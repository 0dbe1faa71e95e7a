#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace xyz {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// e(x) = exp(2*pi*i*x)
inline std::complex<double> e_of(double x) {
  double a = kTwoPi * x;
  return {std::cos(a), std::sin(a)};
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double t = v - carry;
    double s = sum + t;
    carry = (s - sum) - t;
    sum = s;
  }
  double value() const { return sum; }
};

struct KahanComplex {
  Kahan re, im;
  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

namespace detail {
// Fixed block decomposition so the result is identical for any thread count:
// each block is summed serially with compensation, block totals are combined
// in index order.
inline constexpr std::size_t kSumBlock = 4096;
}  // namespace detail

template <class F>
double blocked_sum(std::size_t n, F&& term) {
  std::size_t nblocks = (n + detail::kSumBlock - 1) / detail::kSumBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    std::size_t lo = static_cast<std::size_t>(b) * detail::kSumBlock;
    std::size_t hi = lo + detail::kSumBlock;
    if (hi > n) hi = n;
    Kahan acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(b)] = acc.value();
  }
  Kahan total;
  for (double v : partial) total.add(v);
  return total.value();
}

template <class F>
std::complex<double> blocked_sum_complex(std::size_t n, F&& term) {
  std::size_t nblocks = (n + detail::kSumBlock - 1) / detail::kSumBlock;
  std::vector<std::complex<double>> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    std::size_t lo = static_cast<std::size_t>(b) * detail::kSumBlock;
    std::size_t hi = lo + detail::kSumBlock;
    if (hi > n) hi = n;
    KahanComplex acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(b)] = acc.value();
  }
  KahanComplex total;
  for (auto v : partial) total.add(v);
  return total.value();
}

}  // namespace xyz
