#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "smoothxyz/smoothset.hpp"
#include "smoothxyz/weightfn.hpp"

namespace xyz {

/// Ordered triples (X, Y, Z), X, Y >= 1, X+Y = Z <= H, all y-smooth.
std::uint64_t count_all(std::uint64_t H, std::uint64_t y,
                        std::uint64_t budget = 10'000'000);
std::uint64_t count_all(const SmoothSet& s);

/// Same with gcd(X, Y, Z) = 1.
std::uint64_t count_primitive(std::uint64_t H, std::uint64_t y,
                              std::uint64_t budget = 10'000'000);
std::uint64_t count_primitive(const SmoothSet& s);

struct OrderedSplit {
  std::uint64_t ordered = 0;
  std::uint64_t unordered_strict = 0;  // X < Y
  std::uint64_t diagonal = 0;          // X == Y
};
OrderedSplit count_all_split(const SmoothSet& s);

/// Weighted counts sum Phi(X/x) Phi(Y/x) Phi(Z/x) over (ordered) solutions;
/// the set must cover [1, b*x].
double weighted_count(const SmoothSet& s, double x, const WeightFn& phi);
double weighted_primitive_count(const SmoothSet& s, double x,
                                const WeightFn& phi);

/// Single-threaded reference of the pair scan (testing/benchmarks).
double weighted_count_serial(const SmoothSet& s, double x, const WeightFn& phi);

struct SieveIdentityResult {
  double n_star = 0;          // N*(x, y; Phi)
  double inclusion_sum = 0;   // sum_{d | P_z} mu(d) N(x/d, y; Phi)
  double lhs_gap = 0;         // |n_star - inclusion_sum|
  double rhs_bound = 0;       // sum_{z < p <= y} N(x/p, y; |Phi|)
  bool pass = false;
  double z = 0;
  std::uint64_t P_z = 1;
};

/// Inclusion-exclusion sieve inequality with z = (1/2) log y; both sides
/// fully enumerated (Phi is the nonnegative plateau family, so |Phi| = Phi).
SieveIdentityResult sieve_identity_check(const SmoothSet& s, double x,
                                         const WeightFn& phi);

struct SolutionReport {
  double x = 0, y = 0, kappa = 0, c = 0;
  double n_all = 0, n_primitive = 0;  // weighted exact enumerations
  double main_term_all = 0, main_term_primitive = 0;
  double s_inf_weighted = 0, s_f_value = 0, s_f_star_value = 0, tail_bound = 0;
  double ratio_primitive = 0;
  double predicted_density = 0;  // 1/zeta(2-3/kappa), 0 for kappa <= 3
  bool psi_exact_used = false;
  double psi_used = 0;
  std::string ordering = "ordered";

  nlohmann::json to_json() const;  // includes a schema_version field
};

/// Exact weighted counts next to the singular-series main terms.
SolutionReport main_term_report(double x, std::uint64_t y, const WeightFn& phi,
                                std::uint64_t budget = 10'000'000);

struct SUnitCount {
  std::uint64_t s = 0;
  std::uint64_t p_s = 0;  // s-th prime
  std::uint64_t count = 0;
  double reference = 0;  // exp(s^{1/8})
};

/// Primitive X+Y=Z solutions with all prime factors among the first s primes.
SUnitCount sunit_count(std::uint64_t s, std::uint64_t H,
                       std::uint64_t budget = 10'000'000);

/// log(max prime of XYZ) / log log max(X, Y, Z); rejects max <= 2.
double smoothness_exponent(const Triple& t);

struct HeuristicEstimate {
  double p_value = 0;      // Psi(H, (log H)^kappa)^3 / H
  bool psi_exact_used = false;
  std::uint64_t K = 0;
  double pi_y = 0;
  double binom_lower = 0;  // C(pi,K) C(pi-K,K) C(pi-2K,K)
  double log_binom = 0;    // natural log of the same
  bool feasible = true;    // false when K > pi(y)/3
};

/// Density heuristic plus the triple-binomial construction lower bound.
HeuristicEstimate heuristic_estimate(std::uint64_t H, double kappa,
                                     std::uint64_t budget = 100'000'000);

}  // namespace xyz
