#include "smoothxyz/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "boost/multiprecision/cpp_int.hpp"
#include "smoothxyz/errors.hpp"
#include "smoothxyz/numutil.hpp"
#include "smoothxyz/primes.hpp"
#include "smoothxyz/saddlepoint.hpp"
#include "smoothxyz/singular.hpp"

namespace xyz {

namespace {

SmoothSet sieve_for_count(std::uint64_t H, std::uint64_t y,
                          std::uint64_t budget) {
  if (H > budget) throw budget_error("solution count: H exceeds budget");
  SieveOptions opt;
  opt.max_x = std::max<std::uint64_t>(budget, H);
  return sieve_smooth(H, y, opt);
}

// Ordered pair scan: loop X <= Y over members, Z = X+Y membership test,
// doubling non-diagonal pairs. `primitive` adds the gcd filter.
std::uint64_t pair_scan(const SmoothSet& s, bool primitive) {
  const auto& m = s.members();
  const std::uint64_t H = s.x();
  std::uint64_t total = 0;
  std::int64_t n = static_cast<std::int64_t>(m.size());
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total)
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t X = m[i];
    if (2 * X > H) continue;
    for (std::int64_t j = i; j < n; ++j) {
      std::uint64_t Y = m[j];
      std::uint64_t Z = X + Y;
      if (Z > H) break;
      if (!s.contains(Z)) continue;
      if (primitive && std::gcd(X, Y) != 1) continue;
      total += (i == j) ? 1 : 2;
    }
  }
  return total;
}

}  // namespace

std::uint64_t count_all(const SmoothSet& s) { return pair_scan(s, false); }
std::uint64_t count_primitive(const SmoothSet& s) { return pair_scan(s, true); }

std::uint64_t count_all(std::uint64_t H, std::uint64_t y,
                        std::uint64_t budget) {
  return count_all(sieve_for_count(H, y, budget));
}

std::uint64_t count_primitive(std::uint64_t H, std::uint64_t y,
                              std::uint64_t budget) {
  return count_primitive(sieve_for_count(H, y, budget));
}

OrderedSplit count_all_split(const SmoothSet& s) {
  OrderedSplit out;
  const auto& m = s.members();
  const std::uint64_t H = s.x();
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::uint64_t X = m[i];
    if (2 * X > H) break;
    for (std::size_t j = i; j < m.size(); ++j) {
      std::uint64_t Z = X + m[j];
      if (Z > H) break;
      if (!s.contains(Z)) continue;
      if (i == j)
        ++out.diagonal;
      else
        ++out.unordered_strict;
    }
  }
  out.ordered = 2 * out.unordered_strict + out.diagonal;
  return out;
}

namespace {

double weighted_scan(const SmoothSet& s, double x, const WeightFn& phi,
                     bool primitive, bool parallel) {
  double lo = phi.a() * x, hi = phi.b() * x;
  const auto& m = s.members();
  if (static_cast<double>(s.x()) < std::floor(hi))
    throw std::invalid_argument("weighted count: smooth set too small");
  auto first = std::lower_bound(m.begin(), m.end(),
                                static_cast<std::uint64_t>(lo));
  auto last = std::upper_bound(m.begin(), m.end(),
                               static_cast<std::uint64_t>(hi) + 1);
  std::size_t base = static_cast<std::size_t>(first - m.begin());
  std::size_t count = static_cast<std::size_t>(last - first);

  // per-X contributions in fixed blocks, combined in index order
  std::size_t nblocks = (count + 63) / 64;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    Kahan acc;
    std::size_t ilo = base + static_cast<std::size_t>(b) * 64;
    std::size_t ihi = std::min(ilo + 64, base + count);
    for (std::size_t i = ilo; i < ihi; ++i) {
      std::uint64_t X = m[i];
      double wx = phi(static_cast<double>(X) / x);
      if (wx == 0.0) continue;
      for (std::size_t j = i; j < base + count; ++j) {
        std::uint64_t Y = m[j];
        std::uint64_t Z = X + Y;
        if (static_cast<double>(Z) > hi) break;
        if (!s.contains(Z)) continue;
        if (primitive && std::gcd(X, Y) != 1) continue;
        double w = wx * phi(static_cast<double>(Y) / x) *
                   phi(static_cast<double>(Z) / x);
        acc.add((i == j) ? w : 2.0 * w);
      }
    }
    partial[static_cast<std::size_t>(b)] = acc.value();
  }
  Kahan total;
  for (double v : partial) total.add(v);
  return total.value();
}

}  // namespace

double weighted_count(const SmoothSet& s, double x, const WeightFn& phi) {
  return weighted_scan(s, x, phi, false, true);
}

double weighted_primitive_count(const SmoothSet& s, double x,
                                const WeightFn& phi) {
  return weighted_scan(s, x, phi, true, true);
}

double weighted_count_serial(const SmoothSet& s, double x,
                             const WeightFn& phi) {
  return weighted_scan(s, x, phi, false, false);
}

SieveIdentityResult sieve_identity_check(const SmoothSet& s, double x,
                                         const WeightFn& phi) {
  SieveIdentityResult out;
  std::uint64_t y = s.y();
  out.z = 0.5 * std::log(static_cast<double>(y));
  out.P_z = 1;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(out.z)))
    out.P_z *= p;

  out.n_star = weighted_primitive_count(s, x, phi);
  Kahan incl;
  for (std::uint64_t d : divisors(out.P_z))
    incl.add(mobius(d) * weighted_count(s, x / static_cast<double>(d), phi));
  out.inclusion_sum = incl.value();
  out.lhs_gap = std::abs(out.n_star - out.inclusion_sum);

  Kahan rhs;
  for (std::uint32_t p : primes_up_to(y))
    if (static_cast<double>(p) > out.z)
      rhs.add(weighted_count(s, x / static_cast<double>(p), phi));
  out.rhs_bound = rhs.value();
  out.pass = out.lhs_gap <= out.rhs_bound + 1e-9 * (1.0 + out.rhs_bound);
  return out;
}

nlohmann::json SolutionReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["x"] = x;
  j["y"] = y;
  j["kappa"] = kappa;
  j["c"] = c;
  j["n_all"] = n_all;
  j["n_primitive"] = n_primitive;
  j["main_term_all"] = main_term_all;
  j["main_term_primitive"] = main_term_primitive;
  j["s_inf_weighted"] = s_inf_weighted;
  j["s_f"] = s_f_value;
  j["s_f_star"] = s_f_star_value;
  j["tail_bound"] = tail_bound;
  j["ratio_primitive"] = ratio_primitive;
  j["predicted_density"] = predicted_density;
  j["psi_exact_used"] = psi_exact_used;
  j["psi_used"] = psi_used;
  j["ordering"] = ordering;
  return j;
}

SolutionReport main_term_report(double x, std::uint64_t y, const WeightFn& phi,
                                std::uint64_t budget) {
  SolutionReport r;
  r.x = x;
  r.y = static_cast<double>(y);
  r.kappa = std::log(r.y) / std::log(std::log(x));
  r.c = 1.0 - 1.0 / r.kappa;

  std::uint64_t span = static_cast<std::uint64_t>(x * phi.b()) + 1;
  if (span > budget) throw budget_error("main_term_report: x exceeds budget");
  SieveOptions opt;
  opt.max_x = std::max(budget, span);
  SmoothSet s = sieve_smooth(span, y, opt);
  r.n_all = weighted_count(s, x, phi);
  r.n_primitive = weighted_primitive_count(s, x, phi);
  r.ratio_primitive = (r.n_all > 0) ? r.n_primitive / r.n_all : 0.0;

  if (x <= static_cast<double>(budget)) {
    r.psi_used =
        static_cast<double>(psi_exact(static_cast<std::uint64_t>(x), y, opt));
    r.psi_exact_used = true;
  } else {
    r.psi_used = psi_ht_estimate(x, y);
    r.psi_exact_used = false;
  }

  r.s_inf_weighted = s_infinity_weighted(r.c, phi);
  TruncatedProduct f = s_f(r.c, y);
  TruncatedProduct fs = s_f_star(r.c, y);
  r.s_f_value = f.value;
  r.s_f_star_value = fs.value;
  r.tail_bound = std::max(f.tail_bound, fs.tail_bound);
  double bulk = r.s_inf_weighted * r.psi_used * r.psi_used * r.psi_used / x;
  r.main_term_all = bulk * f.value;
  r.main_term_primitive = bulk * fs.value;
  r.predicted_density = (r.kappa > 3.0) ? relative_density(r.kappa) : 0.0;
  return r;
}

SUnitCount sunit_count(std::uint64_t s, std::uint64_t H, std::uint64_t budget) {
  if (s == 0) throw std::invalid_argument("sunit_count: s >= 1");
  SUnitCount out;
  out.s = s;
  out.p_s = nth_prime(s);
  out.count = count_primitive(H, out.p_s, budget);
  out.reference = std::exp(std::pow(static_cast<double>(s), 0.125));
  return out;
}

double smoothness_exponent(const Triple& t) {
  std::uint64_t mx = std::max({t.X, t.Y, t.Z});
  if (mx <= 2)
    throw std::invalid_argument(
        "smoothness_exponent: max(X,Y,Z) must be >= 3 (log log positivity)");
  std::uint64_t p = std::max({largest_prime_factor(t.X),
                              largest_prime_factor(t.Y),
                              largest_prime_factor(t.Z)});
  return std::log(static_cast<double>(p)) /
         std::log(std::log(static_cast<double>(mx)));
}

HeuristicEstimate heuristic_estimate(std::uint64_t H, double kappa,
                                     std::uint64_t budget) {
  if (!(kappa > 1.0))
    throw std::invalid_argument("heuristic_estimate: kappa > 1");
  HeuristicEstimate out;
  double lH = std::log(static_cast<double>(H));
  double yr = std::pow(lH, kappa);
  std::uint64_t y = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(yr));

  double psi;
  if (H <= budget) {
    SieveOptions opt;
    opt.max_x = budget;
    psi = static_cast<double>(psi_exact(H, y, opt));
    out.psi_exact_used = true;
  } else {
    psi = psi_ht_estimate(static_cast<double>(H), y);
    out.psi_exact_used = false;
  }
  out.p_value = psi * psi * psi / static_cast<double>(H);

  out.K = static_cast<std::uint64_t>(lH / (kappa * std::log(lH)));
  if (y > budget) throw budget_error("heuristic_estimate: y exceeds budget");
  std::uint64_t pi_y = primes_up_to(y).size();
  out.pi_y = static_cast<double>(pi_y);
  if (out.K == 0) {
    out.binom_lower = 1.0;  // empty products
    out.log_binom = 0.0;
    return out;
  }
  if (3 * out.K > pi_y) {
    out.feasible = false;  // not enough primes for three disjoint K-sets
    out.binom_lower = 0.0;
    out.log_binom = -std::numeric_limits<double>::infinity();
    return out;
  }
  using boost::multiprecision::cpp_int;
  auto binom = [](std::uint64_t n, std::uint64_t k) {
    cpp_int r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
      r *= n - i;
      r /= i + 1;
    }
    return r;
  };
  cpp_int total = binom(pi_y, out.K) * binom(pi_y - out.K, out.K) *
                  binom(pi_y - 2 * out.K, out.K);
  out.binom_lower = total.convert_to<double>();
  // log via lgamma for the report column (exact big-int value may overflow double)
  auto lbinom = [](double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  };
  out.log_binom = lbinom(out.pi_y, double(out.K)) +
                  lbinom(out.pi_y - double(out.K), double(out.K)) +
                  lbinom(out.pi_y - 2.0 * double(out.K), double(out.K));
  return out;
}

}  // namespace xyz
