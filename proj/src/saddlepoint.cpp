#include "smoothxyz/saddlepoint.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "smoothxyz/numutil.hpp"
#include "smoothxyz/primes.hpp"
#include "smoothxyz/quadrature.hpp"

namespace xyz {

namespace {

// log p for p <= y, cached for the most recent few bounds.
const std::vector<double>& prime_logs(std::uint64_t y) {
  static std::mutex mu;
  static std::vector<std::pair<std::uint64_t, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (auto& [yy, v] : cache)
    if (yy == y) return v;
  std::vector<double> logs;
  for (std::uint32_t p : primes_up_to(y)) logs.push_back(std::log(p));
  cache.emplace_back(y, std::move(logs));
  if (cache.size() > 8) cache.erase(cache.begin());
  return cache.back().second;
}

double phi1_impl(double c, const std::vector<double>& logs) {
  Kahan acc;
  for (double lp : logs) acc.add(lp / std::expm1(c * lp));
  return -acc.value();
}

double phi2_impl(double c, const std::vector<double>& logs) {
  Kahan acc;
  for (double lp : logs) {
    double em = std::expm1(c * lp);          // p^c - 1
    double pc = em + 1.0;                    // p^c
    acc.add(pc * lp * lp / (em * em));
  }
  return acc.value();
}

double log_zeta_impl(double c, const std::vector<double>& logs) {
  Kahan acc;
  for (double lp : logs) acc.add(-std::log1p(-std::exp(-c * lp)));
  return acc.value();
}

}  // namespace

std::complex<double> zeta_partial(std::complex<double> s, std::uint64_t y) {
  if (s.real() <= 0.0)
    throw std::invalid_argument("zeta_partial: Re(s) must be > 0");
  KahanComplex acc;
  for (double lp : prime_logs(y)) {
    std::complex<double> pminus_s = std::exp(-s * lp);
    acc.add(-std::log(1.0 - pminus_s));
  }
  return std::exp(acc.value());
}

double log_zeta_partial(double c, std::uint64_t y) {
  if (c <= 0.0) throw std::invalid_argument("log_zeta_partial: c must be > 0");
  return log_zeta_impl(c, prime_logs(y));
}

double phi_j(double c, std::uint64_t y, int j) {
  if (c <= 0.0) throw std::invalid_argument("phi_j: c must be > 0");
  const auto& logs = prime_logs(y);
  if (j == 1) return phi1_impl(c, logs);
  if (j == 2) return phi2_impl(c, logs);
  throw std::invalid_argument("phi_j: j must be 1 or 2");
}

SaddleData solve_saddle(double x, std::uint64_t y) {
  if (!(x >= static_cast<double>(y)) || y < 2)
    throw std::invalid_argument("solve_saddle: need x >= y >= 2");
  const auto& logs = prime_logs(y);
  const double lx = std::log(x);

  double lo = 1e-6, hi = 10.0;
  if (-phi1_impl(lo, logs) < lx)
    throw std::runtime_error(
        "solve_saddle: log x exceeds -phi_1(1e-6; y); widen the bracket");
  // -phi_1 is strictly decreasing in c; find the sign change, then polish.
  while (-phi1_impl(hi, logs) > lx) hi *= 2.0;
  while (hi - lo > 1e-6) {
    double mid = 0.5 * (lo + hi);
    if (-phi1_impl(mid, logs) > lx)
      lo = mid;
    else
      hi = mid;
  }
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < 5; ++it) {
    double f = -phi1_impl(c, logs) - lx;  // f' = -phi_2 < 0
    double step = f / phi2_impl(c, logs);
    double next = c + step;
    if (next <= 0.0) next = 0.5 * c;
    c = next;
    if (std::abs(f) <= 1e-12 * lx) break;
  }

  SaddleData sd;
  sd.x = x;
  sd.y = static_cast<double>(y);
  sd.c = c;
  sd.phi1 = phi1_impl(c, logs);
  sd.phi2 = phi2_impl(c, logs);
  sd.log_zeta_c = log_zeta_impl(c, logs);
  sd.zeta_c = std::exp(sd.log_zeta_c);
  sd.u = lx / std::log(static_cast<double>(y));
  sd.kappa = std::log(static_cast<double>(y)) / std::log(lx);
  sd.log_psi_estimate = c * lx + sd.log_zeta_c - std::log(c) -
                        0.5 * std::log(2.0 * M_PI * sd.phi2);
  sd.psi_estimate = std::exp(sd.log_psi_estimate);

  if (std::abs(-sd.phi1 - lx) > 1e-9 * lx)
    throw std::runtime_error("solve_saddle: residual tolerance not met");
  return sd;
}

double psi_ht_estimate(const SaddleData& sd) { return sd.psi_estimate; }

double psi_ht_estimate(double x, std::uint64_t y) {
  return solve_saddle(x, y).psi_estimate;
}

PerronResult psi_perron_truncated(double x, std::uint64_t y) {
  SaddleData sd = solve_saddle(x, y);
  const auto& logs = prime_logs(y);
  const double c = sd.c;
  const double lx = std::log(x);
  const double T = 1.0 / std::log(static_cast<double>(y));

  // Everything relative to the peak A = x^c zeta(c;y): the integrand is
  // A * (zeta(c+it;y)/zeta(c;y)) * e^{it log x} / (c+it).
  auto relative = [&](double t) -> std::complex<double> {
    KahanComplex acc;
    for (double lp : logs) {
      std::complex<double> num = -std::log(1.0 - std::exp(-std::complex<double>(c, t) * lp));
      acc.add(num + std::log1p(-std::exp(-c * lp)));
    }
    std::complex<double> ratio = std::exp(acc.value());
    return ratio * std::exp(std::complex<double>(0.0, t * lx)) /
           std::complex<double>(c, t);
  };

  // Node floor of 64 via an initial composite pass, then adaptive refinement.
  std::complex<double> coarse = composite_simpson(relative, -T, T, 64);
  std::complex<double> fine = adaptive_simpson_complex(
      relative, -T, T, 1e-8, 1e-12 * std::abs(coarse), 24);
  double abs_part = adaptive_simpson(
      [&](double t) { return std::abs(relative(t)); }, -T, T, 1e-8, 1e-12, 24);

  double logA = c * lx + sd.log_zeta_c;
  PerronResult out;
  out.value = std::exp(logA) * fine.real() / (2.0 * M_PI);
  out.abs_value = std::exp(logA) * abs_part / (2.0 * M_PI);
  out.integrand_at_zero = std::exp(logA) / c;
  if (!(std::isfinite(out.value)))
    throw std::runtime_error("psi_perron_truncated: quadrature did not converge");
  return out;
}

double dickman_rho(double u) {
  if (u < 0.0 || u > 20.0)
    throw std::invalid_argument("dickman_rho: u must be in [0, 20]");
  if (u <= 1.0) return 1.0;

  static const std::vector<double> table = [] {
    constexpr double h = 1e-3;
    constexpr int n = 20000;  // grid over [0, 20]
    std::vector<double> rho(n + 1);
    for (int k = 0; k <= 1000; ++k) rho[k] = 1.0;
    // rho'(u) = -rho(u-1)/u; u-1 always lands exactly on the grid.
    for (int k = 1000; k < n; ++k) {
      double d_left = -rho[k - 1000] / (k * h);
      double d_right = -rho[k + 1 - 1000] / ((k + 1) * h);
      rho[k + 1] = rho[k] + 0.5 * h * (d_left + d_right);
    }
    return rho;
  }();

  double pos = u * 1000.0;
  int k = static_cast<int>(pos);
  if (k >= 20000) return table[20000];
  double frac = pos - k;
  return table[k] * (1.0 - frac) + table[k + 1] * frac;
}

std::vector<std::pair<double, double>> zeta_ratio_profile(
    double x, std::uint64_t y, const std::vector<double>& tau_grid) {
  SaddleData sd = solve_saddle(x, y);
  const auto& logs = prime_logs(y);
  std::vector<std::pair<double, double>> rows;
  rows.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    KahanComplex acc;
    for (double lp : logs) {
      acc.add(-std::log(1.0 - std::exp(-std::complex<double>(sd.c, tau) * lp)) +
              std::log1p(-std::exp(-sd.c * lp)));
    }
    rows.emplace_back(tau, std::abs(std::exp(acc.value())));
  }
  return rows;
}

double log_psi_elementary(double x, double y) {
  double lx = std::log(x), ly = std::log(y);
  return (lx / ly) * std::log1p(y / lx) + (y / ly) * std::log1p(lx / y);
}

}  // namespace xyz
