#pragma once

#include <complex>
#include <vector>

namespace xyz {

/// In-place iterative radix-2 DIT FFT; a.size() must be a power of two.
/// Forward kernel uses e^{-2*pi*i/N}.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse = false);

}  // namespace xyz
