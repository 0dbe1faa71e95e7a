#include "smoothxyz/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace xyz {

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)))
    throw std::invalid_argument("fft_radix2: size must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    std::size_t half = len >> 1;
#pragma omp parallel for schedule(static) if (n >= (1u << 16))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n);
         i += static_cast<std::int64_t>(len)) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < half; ++k) {
        if ((k & 255) == 0)  // resync the twiddle recurrence
          w = std::complex<double>(std::cos(ang * static_cast<double>(k)),
                                   std::sin(ang * static_cast<double>(k)));
        auto u = a[i + k];
        auto v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

}  // namespace xyz
