#pragma once

#include <cstdint>

#include "smoothxyz/weightfn.hpp"

namespace xyz {

/// Riemann zeta for real s > 1 (Euler-Maclaurin, 10 correction terms).
double riemann_zeta_real(double s);

/// zeta(s) - 1 without cancellation, real s > 1.
double riemann_zeta_minus_one(double s);

/// Prime zeta P(s) = sum_p p^{-s} = sum_k mu(k)/k log zeta(ks), s > 1.
double prime_zeta(double s);

/// sum_{p > P} p^{-s}, exact via prime zeta minus the finite head.
double prime_zeta_tail(double s, std::uint64_t P);

/// Archimedean singular integral
///   c^3 * int int_{t1,t2>=0, t1+t2<=1} (t1 t2 (t1+t2))^{c-1} dt1 dt2,
/// 2-D adaptive quadrature after the corner substitution t = tau^{1/c};
/// requires c > 1/3.
double s_infinity_sharp(double c);

/// Weighted variant c^3 int int Phi(t1) Phi(t2) Phi(t1+t2) (...)^{c-1};
/// defined for every real c since the support avoids 0.
double s_infinity_weighted(double c, const WeightFn& phi);

/// A truncated Euler product with the tail past prime_cutoff restored to
/// machine precision through prime-zeta sums of the log-factor expansion;
/// tail_bound is a certified bound on the remaining error of `value`.
struct TruncatedProduct {
  double value = 0;
  double log_value = 0;
  double tail_bound = 0;
  std::uint64_t prime_cutoff = 0;
};

/// Non-archimedean singular series
///   prod_{p<=y} (1 + (p-1)/(p(p^{3c-1}-1)) ((p-p^c)/(p-1))^3)
///   * prod_{p>y} (1 - 1/(p-1)^2),        c > 1/3.
TruncatedProduct s_f(double c, std::uint64_t y, std::uint64_t prime_cutoff = 0);

/// Primitive variant: the p<=y factors also carry (1 - p^{1-3c}).
TruncatedProduct s_f_star(double c, std::uint64_t y,
                          std::uint64_t prime_cutoff = 0);

/// y -> infinity limits over all primes: c > 2/3 resp. c > 1/2.
TruncatedProduct s_f_limit(double c, std::uint64_t prime_cutoff = 0);
TruncatedProduct s_f_star_limit(double c, std::uint64_t prime_cutoff = 0);

struct EulerIdentityCheck {
  double lhs = 0;  // s_f_star_limit(c)
  double rhs = 0;  // s_f_limit(c) / zeta(3c-1)
  double relative_gap = 0;
};

/// The Euler-product identity relating the limit products through zeta(3c-1);
/// both sides evaluated independently. Requires c > 2/3.
EulerIdentityCheck euler_identity_check(double c, std::uint64_t prime_cutoff = 0);

/// 1/zeta(2 - 3/kappa) for kappa > 3; 0 for 1 < kappa <= 3 (conjectured
/// second branch). kappa <= 1 rejected.
double relative_density(double kappa);

}  // namespace xyz
