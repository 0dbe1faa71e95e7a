#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "smoothxyz/smoothset.hpp"
#include "smoothxyz/weightfn.hpp"

namespace xyz {

/// E(x, y; alpha) = sum_{n in S(y)} e(n alpha) Phi(n/x). The SmoothSet must
/// cover [1, b*x] for Phi's support [a, b].
std::complex<double> exp_sum(const SmoothSet& s, double x, double alpha,
                             const WeightFn& phi);

/// Plain single-threaded reference of the same sum (testing/benchmarks).
std::complex<double> exp_sum_serial(const SmoothSet& s, double x, double alpha,
                                    const WeightFn& phi);

struct RationalApprox {
  std::uint64_t a = 0, q = 1;
  double gamma = 0;            // alpha - a/q
  std::uint64_t q0 = 1, q1 = 1;  // q = q0*q1, q0 y-smooth, q1 rough
};

/// Dirichlet approximation via continued-fraction convergents: q <= Q,
/// gcd(a,q)=1, |gamma| <= 1/(qQ); q is split against the smoothness bound y.
RationalApprox dirichlet_approx(double alpha, std::uint64_t Q, std::uint64_t y);

/// Local main term M(x, y; q, gamma) =
///   sum_{n in S(y)} mu(q/(q,n))/phi(q/(q,n)) e(n gamma) Phi(n/x).
std::complex<double> local_main_term(const SmoothSet& s, double x,
                                     std::uint64_t q, double gamma,
                                     const WeightFn& phi);

/// H(s; q0) = q0^{-s} prod_{p | q0} (1 - (p^s - 1)/(p - 1)).
std::complex<double> h_factor(std::complex<double> s, std::uint64_t q0);

struct MainTermPrediction {
  std::complex<double> value;
  double c0 = 0;          // 1 - 1/kappa
  double psi = 0;         // Psi(x, y) used
  bool psi_exact_used = false;
};

/// The major-arc main-term prediction
///   mu(q1)/phi(q1) * H(c0; q0) * c0 * Phi^(c0, gamma x) * Psi(x, y),
/// with Psi exact when x is within budget, else the saddle-point estimate.
MainTermPrediction theorem23_prediction(double x, std::uint64_t y,
                                        std::uint64_t q, double gamma,
                                        const WeightFn& phi,
                                        std::uint64_t exact_budget = 100'000'000);

struct MajorArc {
  std::uint64_t a = 0, q = 1;
  double lo = 0, hi = 0;      // subinterval of [0,1]
  bool wrap_piece = false;    // half of the merged arc at 0/1
};

struct ArcDecomposition {
  double x = 0, delta = 0, half_width = 0;
  std::uint64_t q_max = 0;
  std::vector<MajorArc> major;               // sorted by lo, pairwise disjoint
  std::vector<std::pair<double, double>> minor;  // complement in [0,1]
  double major_measure = 0;

  bool on_major(double alpha) const;
};

/// Major/minor arc partition: arcs |alpha - a/q| <= x^{delta-1} for
/// q <= x^{1/4}; the wrap-around pair at 0 and 1 is merged. Throws if the
/// arcs overlap (x too small).
ArcDecomposition arcs_partition(double x, double delta);

/// (1/M) sum_{m=0}^{M-1} E(m/M)^2 E(-m/M) via one FFT over the weighted
/// indicator vector; equals the weighted solution count exactly when
/// M > 2*x*b (no wrap-around in Z/M). M must be a power of two.
double circle_identity_discrete(const SmoothSet& s, double x,
                                const WeightFn& phi, std::uint64_t M);

struct MinorArcSample {
  double alpha = 0;
  double abs_e = 0;
  double envelope = 0;  // x^{3/4 + 0.05}
};

/// |E| sampled on the minor arcs (report-only).
std::vector<MinorArcSample> minor_arc_profile(const SmoothSet& s, double x,
                                              const WeightFn& phi,
                                              double delta, int samples,
                                              std::uint64_t seed);

}  // namespace xyz
