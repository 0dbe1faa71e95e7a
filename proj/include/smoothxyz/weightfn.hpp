#pragma once

#include <array>
#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace xyz {

/// Smooth compactly supported weight on (0, infinity). The plateau family
/// Phi_eps is 0 outside [eps, 1-eps], 1 on [2*eps, 1-2*eps], with
/// C^infinity ramps built from the mollifier exp(-1/(t(1-t))).
class WeightFn {
 public:
  double a() const { return a_; }  // support [a, b]
  double b() const { return b_; }
  double epsilon() const { return eps_; }
  const std::string& family() const { return family_; }

  double operator()(double w) const;

  /// k-th derivative, 0 <= k <= 8; deriv(0, w) == (*this)(w).
  double deriv(int k, double w) const;

 private:
  friend WeightFn make_plateau(double eps);
  double a_ = 0, b_ = 0, eps_ = 0;
  std::string family_;
};

/// Phi_eps for 0 < eps < 1/8.
WeightFn make_plateau(double eps);

/// Transform Phi^(s, lambda) = int_0^inf Phi(w) e(lambda w) w^{s-1} dw,
/// oscillation-aware composite quadrature (>= 20 nodes per period of both
/// e(lambda w) and w^{i Im s}).
std::complex<double> phi_transform(const WeightFn& phi,
                                   std::complex<double> s, double lambda);

/// Measured decay-envelope constants K_k: |Phi^(c+it,lambda)| <=
/// K_k ((1+|lambda|)/|t|)^k on the calibration grid, per reference lambda.
/// Cached in a JSON sidecar keyed by (family, eps) under the directory
/// named by SMOOTHXYZ_CACHE_DIR (computed fresh when unset).
struct TransformEnvelope {
  static constexpr int kMaxOrder = 6;
  std::vector<double> lambdas;                       // reference grid
  std::vector<std::array<double, kMaxOrder + 1>> K;  // K[i][k], k = 1..kMaxOrder
  /// Safety-scaled constant usable for any |lambda| <= nearest grid point.
  double constant(int k, double lambda) const;
};

const TransformEnvelope& envelope_for(const WeightFn& phi);

struct PlancherelCheck {
  double lhs = 0, rhs = 0, gap = 0;  // gap is relative
};

/// Lemma-style L^2 identity: (1/2pi) int |Phi^(c+it,lambda)|^2 dt ==
/// int Phi(w)^2 w^{2c-1} dw, lhs truncated with an envelope-certified tail.
PlancherelCheck plancherel_check(const WeightFn& phi, double c, double lambda);

struct MellinInversionCheck {
  std::complex<double> reconstructed;
  std::complex<double> direct;
  double gap = 0;  // absolute
};

/// Reconstructs e(lambda w) Phi(w) from the inverse Mellin line integral at
/// Re(s) = c and compares with direct evaluation.
MellinInversionCheck mellin_inversion_check(const WeightFn& phi, double c,
                                            double lambda, double w);

struct L1TransformBound {
  double integral = 0;   // int |Phi^(c+it,lambda)| (1+|t|)^delta dt
  double reference = 0;  // (1+|lambda|)^{1/2+delta+0.01}
  double ratio = 0;
};

/// Report-only diagnostic for the L^1 transform bound.
L1TransformBound l1_transform_bound(const WeightFn& phi, double c,
                                    double delta, double lambda);

struct IncompleteGammaCheck {
  std::complex<double> lhs;          // int_0^1 e^{lambda x} x^{s-1} dx
  std::complex<double> rhs;          // (-lambda)^{-s} gamma(s, -lambda)
  double gap = 0;                    // |lhs - rhs|
  std::complex<double> kummer_m;     // M(s, s+1, lambda)
  std::complex<double> kummer_alt;   // e^lambda M(1, s+1, lambda)
  double kummer_gap = 0;
  bool series_converged = true;      // flagged false for |lambda| > 50
};

/// Sharp-cutoff exponential-weight transform vs the incomplete gamma
/// function, plus the Kummer transformation identity; lambda < 0 real.
IncompleteGammaCheck incomplete_gamma_identity(std::complex<double> s,
                                               double lambda);

/// gamma(s, z) by the stable all-positive series z^s e^{-z} sum z^n/(s)_{n+1}.
std::complex<double> lower_incomplete_gamma(std::complex<double> s, double z);

/// Kummer's M(a, b, z) by truncated series.
std::complex<double> kummer_m(std::complex<double> a, std::complex<double> b,
                              std::complex<double> z);

}  // namespace xyz
