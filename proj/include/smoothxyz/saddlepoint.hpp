#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace xyz {

/// zeta(s; y) = prod_{p<=y} (1 - p^{-s})^{-1}, Re(s) > 0.
std::complex<double> zeta_partial(std::complex<double> s, std::uint64_t y);

/// log zeta(c; y) for real c > 0, summed in the log domain (never overflows
/// for the zeta value itself).
double log_zeta_partial(double c, std::uint64_t y);

/// j-th derivative of log zeta(.; y) at c:
///   phi_1(c;y) = -sum_{p<=y} log p / (p^c - 1)
///   phi_2(c;y) =  sum_{p<=y} p^c (log p)^2 / (p^c - 1)^2
double phi_j(double c, std::uint64_t y, int j);

struct SaddleData {
  double x = 0, y = 0;
  double c = 0;           // unique solution of -phi_1(c;y) = log x
  double phi1 = 0, phi2 = 0;
  double log_zeta_c = 0;  // log zeta(c;y)
  double zeta_c = 0;      // exp(log_zeta_c); +inf if out of double range
  double psi_estimate = 0;
  double log_psi_estimate = 0;
  double u = 0;           // log x / log y
  double kappa = 0;       // log y / log log x
};

/// Solves -phi_1(c;y) = log x by bisection on [1e-6, 10] followed by Newton
/// polish; residual <= 1e-9 * log x.
SaddleData solve_saddle(double x, std::uint64_t y);

/// x^c zeta(c;y) / (c sqrt(2 pi phi_2(c;y))) at the saddle point.
double psi_ht_estimate(double x, std::uint64_t y);
double psi_ht_estimate(const SaddleData& sd);

struct PerronResult {
  double value = 0;             // (1/2pi) Re int zeta(c+it;y) x^{c+it}/(c+it) dt
  double abs_value = 0;         // same integrand in absolute value
  double integrand_at_zero = 0; // x^c zeta(c;y)/c
};

/// Truncated Perron integral over the saddle segment |t| <= 1/log y,
/// adaptive Simpson with relative tolerance 1e-8 and a 64-node floor.
PerronResult psi_perron_truncated(double x, std::uint64_t y);

/// Dickman rho on [0, 20]: rho = 1 on [0,1], then u rho'(u) = -rho(u-1)
/// integrated with step 1e-3 (trapezoidal, linear history interpolation).
double dickman_rho(double u);

/// |zeta(c+i tau; y) / zeta(c; y)| sampled on a tau grid (diagnostic).
std::vector<std::pair<double, double>> zeta_ratio_profile(
    double x, std::uint64_t y, const std::vector<double>& tau_grid);

/// Elementary two-term formula for log Psi(x,y) (order-of-magnitude
/// diagnostic only).
double log_psi_elementary(double x, double y);

}  // namespace xyz
