#include "smoothxyz/singular.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "smoothxyz/numutil.hpp"
#include "smoothxyz/primes.hpp"
#include "smoothxyz/quadrature.hpp"

namespace xyz {

// ---------------------------------------------------------------------------
// zeta / prime zeta
// ---------------------------------------------------------------------------
namespace {

// B_{2k}/(2k)! for the Euler-Maclaurin correction, k = 1..10.
constexpr double kBernoulliOverFact[10] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -1.0 / 1.8924375803183791606e9,
    1.0 / 7.47242496e10,
    -1.0 / 2.950130727918164224e12,
    1.0 / 1.1646782814350067249e14,
    -1.0 / 4.5979787224074726105e15,
};

double zeta_m1_em(double s) {
  constexpr int N = 32;
  Kahan acc;
  for (int n = 2; n < N; ++n) acc.add(std::pow(n, -s));
  acc.add(std::pow(N, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(N, -s));
  double rising = s;  // s (s+1) ... running product
  double npow = std::pow(N, -s - 1.0);
  for (int k = 0; k < 10; ++k) {
    acc.add(kBernoulliOverFact[k] * rising * npow);
    rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    npow /= static_cast<double>(N) * N;
  }
  return acc.value();
}

const std::vector<std::uint32_t>& cached_primes(std::uint64_t P) {
  static std::mutex mu;
  static std::vector<std::pair<std::uint64_t, std::vector<std::uint32_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (auto& [pp, v] : cache)
    if (pp >= P) return v;
  cache.emplace_back(P, primes_up_to(P));
  if (cache.size() > 4) cache.erase(cache.begin());
  return cache.back().second;
}

}  // namespace

double riemann_zeta_minus_one(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta: s must be > 1");
  if (s > 64.0) {
    // the direct sum is already exact to double precision here
    Kahan acc;
    for (int n = 2; n <= 64; ++n) acc.add(std::pow(n, -s));
    return acc.value();
  }
  return zeta_m1_em(s);
}

double riemann_zeta_real(double s) { return 1.0 + riemann_zeta_minus_one(s); }

double prime_zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("prime_zeta: s must be > 1");
  static const int kMu[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0,
                            -1, 1, 1, 0, -1, 0, -1, 0, 1, 1, -1, 0, 0,
                            1, 0, 0, -1, -1, -1, 0, 1, 1, 1, 0, -1, 1,
                            1, 0, -1, -1, -1, 0, 0, 1, -1, 0, 0, 0};
  Kahan acc;
  for (int k = 1; k <= 50; ++k) {
    if (kMu[k] == 0) continue;
    double zm1 = riemann_zeta_minus_one(k * s);
    if (zm1 < 1e-300) break;
    acc.add(kMu[k] * std::log1p(zm1) / k);
  }
  return acc.value();
}

double prime_zeta_tail(double s, std::uint64_t P) {
  double total = prime_zeta(s);
  Kahan head;
  for (std::uint32_t p : cached_primes(P)) {
    if (p > P) break;
    head.add(std::pow(static_cast<double>(p), -s));
  }
  return total - head.value();
}

// ---------------------------------------------------------------------------
// Archimedean singular integral
// ---------------------------------------------------------------------------
double s_infinity_sharp(double c) {
  if (!(c > 1.0 / 3.0 + 1e-3))
    throw std::invalid_argument("s_infinity_sharp: diverges at c = 1/3");
  const double ic = 1.0 / c;

  // Corner substitution t = tau^{1/c} on both axes turns the integrand into
  // (a^{1/c} + b^{1/c})^{c-1} / c^2 over {a^{1/c}+b^{1/c} <= 1}.
  auto inner = [&](double a) {
    double a1c = std::pow(a, ic);
    double bmax = std::pow(1.0 - a1c, c);
    if (!(bmax > 0.0)) return 0.0;
    return adaptive_simpson(
        [&](double b) {
          double r = a1c + std::pow(b, ic);
          return std::pow(r, c - 1.0);
        },
        0.0, bmax, 1e-10, 1e-14, 26);
  };

  // For c < 1/2 the inner integral blows up like a^{2-1/c} as a -> 0; one
  // more power substitution a = tau^m flattens it.
  double m = (c < 0.6) ? c / (3.0 * c - 1.0) + 0.5 : 1.0;
  double I = adaptive_simpson(
      [&](double tau) {
        double a = std::pow(tau, m);
        return inner(a) * m * std::pow(tau, m - 1.0);
      },
      1e-12, 1.0, 1e-9, 1e-13, 26);
  return c * I;
}

double s_infinity_weighted(double c, const WeightFn& phi) {
  const double a = phi.a(), b = phi.b();
  auto inner = [&](double t1) {
    double p1 = phi(t1);
    double hi = b - t1;
    if (p1 == 0.0 || hi <= a) return 0.0;
    return adaptive_simpson(
        [&](double t2) {
          double w = p1 * phi(t2) * phi(t1 + t2);
          if (w == 0.0) return 0.0;
          return w * std::pow(t1 * t2 * (t1 + t2), c - 1.0);
        },
        a, hi, 1e-10, 1e-14, 24);
  };
  double I = adaptive_simpson(inner, a, b, 1e-9, 1e-13, 24);
  return c * c * c * I;
}

// ---------------------------------------------------------------------------
// Euler products with prime-zeta tail restoration
// ---------------------------------------------------------------------------
namespace {

constexpr double kEmax = 8.0;  // expansion terms kept up to exponent 8

// One monomial coef * p^{-(a*c + b)} of a log-factor expansion.
struct Mono {
  int a, b;
  double coef;
};

// Kept terms plus a certified bound: |f(p) - terms(p)| <= dropped * p^{-kEmax}
// for all p >= 2 (every truncated piece has exponent > kEmax).
struct Expansion {
  std::vector<Mono> terms;
  double dropped = 0.0;

  double exponent(const Mono& m, double c) const { return m.a * c + m.b; }

  double coef_norm() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.coef);
    return s;
  }

  double min_exponent(double c) const {
    double e = 1e300;
    for (const auto& t : terms) e = std::min(e, exponent(t, c));
    return e;
  }

  void add(int a, int b, double coef, double c) {
    if (coef == 0.0) return;
    if (a * c + b > kEmax) {
      dropped += std::abs(coef);
      return;
    }
    for (auto& t : terms)
      if (t.a == a && t.b == b) {
        t.coef += coef;
        return;
      }
    terms.push_back({a, b, coef});
  }
};

Expansion mul(const Expansion& x, const Expansion& y, double c) {
  Expansion r;
  for (const auto& tx : x.terms)
    for (const auto& ty : y.terms)
      r.add(tx.a + ty.a, tx.b + ty.b, tx.coef * ty.coef, c);
  r.dropped += x.dropped * (y.coef_norm() + y.dropped) +
               y.dropped * x.coef_norm();
  return r;
}

// log(1 + S) for an expansion S with min exponent > 0; requires the caller
// to ensure |S(p)| <= 1/2 on the tail range.
Expansion log1p_expansion(Expansion s, double c) {
  std::erase_if(s.terms, [](const Mono& m) { return m.coef == 0.0; });
  double emin = s.min_exponent(c);
  if (!(emin > 0.0))
    throw std::logic_error("log1p_expansion: nonpositive leading exponent");
  Expansion total = s;
  Expansion power = s;
  int kmax = static_cast<int>(kEmax / emin) + 1;
  for (int k = 2; k <= kmax; ++k) {
    power = mul(power, s, c);
    double sign = (k % 2) ? 1.0 : -1.0;
    for (const auto& t : power.terms) total.add(t.a, t.b, sign * t.coef / k, c);
    total.dropped += power.dropped / k;
  }
  // series remainder past kmax: |S|^{kmax+1}/(1-|S|) <= 2 A^{kmax+1} p^{-emax}
  double A = s.coef_norm() + s.dropped;
  total.dropped += 2.0 * std::pow(A, kmax + 1);
  return total;
}

// (1 - w/h)^3 as monomials, exact.
Expansion cubed_term(double c) {
  Expansion e;
  e.add(0, 0, 1.0, c);
  e.add(-1, 1, -3.0, c);
  e.add(-2, 2, 3.0, c);
  e.add(-3, 3, -1.0, c);
  return e;
}

// (1 - w)^{-2} truncated at j <= 8 with a certified remainder.
Expansion inv_one_minus_w_sq(double c) {
  Expansion e;
  for (int j = 0; j <= 8; ++j) e.add(0, j, j + 1.0, c);
  e.dropped += 24.0;  // sum_{j>8} (j+1) p^{-j} <= 24 p^{-9} for p >= 2
  return e;
}

// sum_{m>=1} (h^3/w)^m = 1/(p^{3c-1} - 1), truncated by exponent.
Expansion geometric_h3w(double c) {
  Expansion e;
  int mmax = static_cast<int>(kEmax / (3.0 * c - 1.0)) + 1;
  for (int m = 1; m <= mmax; ++m) e.add(3 * m, -m, 1.0, c);
  e.dropped += 2.0;  // remainder of the geometric series, p^{-(3c-1)} <= 1/2
  return e;
}

// log-factor expansion of the (1 - 1/(p-1)^2) tail factor.
Expansion tail_factor_logexp(double c) {
  Expansion s;
  for (int j = 2; j <= 8; ++j) s.add(0, j, -(j - 1.0), c);
  s.dropped += 20.0;  // sum_{j>8} (j-1) p^{-j} for p >= 2
  return log1p_expansion(s, c);
}

// log-factor expansion for the full-product factor of s_f_limit.
Expansion f_limit_logexp(double c) {
  Expansion s = mul(mul(cubed_term(c), inv_one_minus_w_sq(c), c),
                    geometric_h3w(c), c);
  return log1p_expansion(s, c);
}

// log-factor expansion for the factor of s_f_star_limit.
Expansion f_star_limit_logexp(double c) {
  Expansion g = mul(cubed_term(c), inv_one_minus_w_sq(c), c);
  g.add(0, 0, -1.0, c);  // subtract 1
  Expansion t;
  t.add(3, -1, 1.0, c);  // p^{1-3c}
  Expansion s = mul(t, g, c);
  return log1p_expansion(s, c);
}

// Sum of an expansion over all primes > P via prime-zeta tails, plus the
// certified bound on everything truncated.
struct TailSum {
  double value = 0.0;
  double bound = 0.0;
};

TailSum sum_over_tail(const Expansion& e, double c, std::uint64_t P) {
  // sanity: the log1p smallness condition on the tail range
  double emin = e.min_exponent(c);
  double A = e.coef_norm() + e.dropped;
  if (!(A * std::pow(static_cast<double>(P), -emin) < 0.5))
    throw std::logic_error("sum_over_tail: cutoff too small for the expansion");
  TailSum out;
  Kahan acc;
  for (const auto& t : e.terms)
    acc.add(t.coef * prime_zeta_tail(t.a * c + t.b, P));
  out.value = acc.value();
  out.bound = e.dropped * prime_zeta_tail(kEmax, P);
  return out;
}

// Direct per-prime factors.
double log_f_factor(double c, double p) {
  // 1 + (p-1)/(p(p^{3c-1}-1)) * ((p-p^c)/(p-1))^3
  double lp = std::log(p);
  double denom = std::expm1((3.0 * c - 1.0) * lp);      // p^{3c-1} - 1
  double q = -p * std::expm1((c - 1.0) * lp) / (p - 1.0);  // (p-p^c)/(p-1)
  return std::log1p((p - 1.0) / (p * denom) * q * q * q);
}

double log_one_minus_p1m3c(double c, double p) {
  return std::log1p(-std::exp((1.0 - 3.0 * c) * std::log(p)));
}

double log_tail_factor(double p) {
  double t = 1.0 / (p - 1.0);
  return std::log1p(-t * t);
}

double log_f_star_limit_factor(double c, double p) {
  double lp = std::log(p);
  double q = -p * std::expm1((c - 1.0) * lp) / (p - 1.0);
  double inner = (p - 1.0) / p * q * q * q - 1.0;
  return std::log1p(std::exp((1.0 - 3.0 * c) * lp) * inner);
}

std::uint64_t default_cutoff(std::uint64_t y) {
  return std::max<std::uint64_t>(y, 1'000'000);
}

TruncatedProduct assemble(double log_head, const TailSum& tail,
                          std::uint64_t P) {
  TruncatedProduct out;
  out.log_value = log_head + tail.value;
  out.value = std::exp(out.log_value);
  out.tail_bound = tail.bound + 1e-15 * (1.0 + std::abs(out.log_value));
  out.prime_cutoff = P;
  return out;
}

}  // namespace

TruncatedProduct s_f(double c, std::uint64_t y, std::uint64_t prime_cutoff) {
  if (!(c > 1.0 / 3.0 + 1e-3))
    throw std::invalid_argument("s_f: requires c > 1/3 (pole at 3c-1 = 0)");
  if (y < 2) throw std::invalid_argument("s_f: y >= 2");
  std::uint64_t P = prime_cutoff ? prime_cutoff : default_cutoff(y);
  if (P < y) throw std::invalid_argument("s_f: prime_cutoff must be >= y");
  Kahan head;
  for (std::uint32_t p : cached_primes(P)) {
    if (p > P) break;
    head.add(p <= y ? log_f_factor(c, p) : log_tail_factor(p));
  }
  return assemble(head.value(), sum_over_tail(tail_factor_logexp(c), c, P), P);
}

TruncatedProduct s_f_star(double c, std::uint64_t y,
                          std::uint64_t prime_cutoff) {
  if (!(c > 1.0 / 3.0 + 1e-3))
    throw std::invalid_argument("s_f_star: requires c > 1/3");
  if (y < 2) throw std::invalid_argument("s_f_star: y >= 2");
  std::uint64_t P = prime_cutoff ? prime_cutoff : default_cutoff(y);
  if (P < y) throw std::invalid_argument("s_f_star: prime_cutoff must be >= y");
  Kahan head;
  for (std::uint32_t p : cached_primes(P)) {
    if (p > P) break;
    if (p <= y)
      head.add(log_f_factor(c, p) + log_one_minus_p1m3c(c, p));
    else
      head.add(log_tail_factor(p));
  }
  return assemble(head.value(), sum_over_tail(tail_factor_logexp(c), c, P), P);
}

TruncatedProduct s_f_limit(double c, std::uint64_t prime_cutoff) {
  if (!(c > 2.0 / 3.0 + 1e-3 && c <= 1.0))
    throw std::invalid_argument("s_f_limit: requires 2/3 < c <= 1");
  std::uint64_t P = prime_cutoff ? prime_cutoff : 1'000'000;
  Kahan head;
  for (std::uint32_t p : cached_primes(P)) {
    if (p > P) break;
    head.add(log_f_factor(c, p));
  }
  return assemble(head.value(), sum_over_tail(f_limit_logexp(c), c, P), P);
}

TruncatedProduct s_f_star_limit(double c, std::uint64_t prime_cutoff) {
  if (!(c > 0.5 + 1e-3 && c <= 1.0))
    throw std::invalid_argument("s_f_star_limit: requires 1/2 < c <= 1");
  std::uint64_t P = prime_cutoff ? prime_cutoff : 1'000'000;
  Kahan head;
  for (std::uint32_t p : cached_primes(P)) {
    if (p > P) break;
    head.add(log_f_star_limit_factor(c, p));
  }
  return assemble(head.value(), sum_over_tail(f_star_limit_logexp(c), c, P), P);
}

EulerIdentityCheck euler_identity_check(double c, std::uint64_t prime_cutoff) {
  if (!(c > 2.0 / 3.0 + 1e-3))
    throw std::invalid_argument("euler_identity_check: requires c > 2/3");
  EulerIdentityCheck out;
  out.lhs = s_f_star_limit(c, prime_cutoff).value;
  out.rhs = s_f_limit(c, prime_cutoff).value / riemann_zeta_real(3.0 * c - 1.0);
  out.relative_gap = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

double relative_density(double kappa) {
  if (!(kappa > 1.0))
    throw std::invalid_argument("relative_density: kappa must be > 1");
  if (kappa <= 3.0) return 0.0;  // conjectured second branch
  return 1.0 / riemann_zeta_real(2.0 - 3.0 / kappa);
}

}  // namespace xyz
