#include "smoothxyz/circle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "smoothxyz/fft.hpp"
#include "smoothxyz/numutil.hpp"
#include "smoothxyz/primes.hpp"
#include "smoothxyz/saddlepoint.hpp"

namespace xyz {

namespace {

void require_cover(const SmoothSet& s, double x, const WeightFn& phi) {
  double need = x * phi.b();
  if (static_cast<double>(s.x()) < std::floor(need))
    throw std::invalid_argument(
        "smooth set does not cover the weight support [a*x, b*x]");
}

}  // namespace

std::complex<double> exp_sum(const SmoothSet& s, double x, double alpha,
                             const WeightFn& phi) {
  require_cover(s, x, phi);
  const auto& m = s.members();
  return blocked_sum_complex(m.size(), [&](std::size_t i) {
    double w = phi(static_cast<double>(m[i]) / x);
    if (w == 0.0) return std::complex<double>(0.0, 0.0);
    double frac = static_cast<double>(m[i]) * alpha;
    return w * e_of(frac - std::floor(frac));
  });
}

std::complex<double> exp_sum_serial(const SmoothSet& s, double x, double alpha,
                                    const WeightFn& phi) {
  require_cover(s, x, phi);
  KahanComplex acc;
  for (std::uint64_t n : s.members()) {
    double w = phi(static_cast<double>(n) / x);
    if (w == 0.0) continue;
    double frac = static_cast<double>(n) * alpha;
    acc.add(w * e_of(frac - std::floor(frac)));
  }
  return acc.value();
}

RationalApprox dirichlet_approx(double alpha, std::uint64_t Q,
                                std::uint64_t y) {
  if (Q < 2) throw std::invalid_argument("dirichlet_approx: Q >= 2");
  // continued-fraction convergents p_k/q_k until the denominator passes Q
  double x = alpha;
  std::uint64_t p0 = 1, q0 = 0;  // p_{-1}/q_{-1}
  std::uint64_t p1 = static_cast<std::uint64_t>(std::floor(alpha));
  std::uint64_t q1 = 1;
  x -= std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (x < 1e-15) break;
    x = 1.0 / x;
    std::uint64_t ai = static_cast<std::uint64_t>(std::floor(x));
    x -= std::floor(x);
    if (ai > (std::uint64_t(1) << 60) / std::max<std::uint64_t>(q1, 1)) break;
    std::uint64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > Q) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  RationalApprox r;
  r.a = p1;
  r.q = q1;
  r.gamma = alpha - static_cast<double>(p1) / static_cast<double>(q1);
  smooth_split(r.q, y, r.q0, r.q1);
  return r;
}

std::complex<double> local_main_term(const SmoothSet& s, double x,
                                     std::uint64_t q, double gamma,
                                     const WeightFn& phi) {
  require_cover(s, x, phi);
  // weight mu(q/d)/phi(q/d) per divisor d = gcd(q, n)
  std::map<std::uint64_t, double> wt;
  for (std::uint64_t d : divisors(q))
    wt[d] = static_cast<double>(mobius(q / d)) /
            static_cast<double>(euler_phi(q / d));
  const auto& m = s.members();
  return blocked_sum_complex(m.size(), [&](std::size_t i) {
    double w = phi(static_cast<double>(m[i]) / x);
    if (w == 0.0) return std::complex<double>(0.0, 0.0);
    double coef = wt.find(std::gcd(m[i], q))->second;
    if (coef == 0.0) return std::complex<double>(0.0, 0.0);
    double frac = static_cast<double>(m[i]) * gamma;
    return coef * w * e_of(frac - std::floor(frac));
  });
}

std::complex<double> h_factor(std::complex<double> s, std::uint64_t q0) {
  if (s.real() <= 0.0) throw std::invalid_argument("h_factor: Re(s) > 0");
  std::complex<double> r =
      std::exp(-s * std::log(static_cast<double>(q0)));
  for (const auto& [p, e] : factorize(q0)) {
    std::complex<double> ps = std::exp(s * std::log(static_cast<double>(p)));
    r *= 1.0 - (ps - 1.0) / static_cast<double>(p - 1);
    (void)e;
  }
  return r;
}

MainTermPrediction theorem23_prediction(double x, std::uint64_t y,
                                        std::uint64_t q, double gamma,
                                        const WeightFn& phi,
                                        std::uint64_t exact_budget) {
  MainTermPrediction out;
  double kappa = std::log(static_cast<double>(y)) / std::log(std::log(x));
  out.c0 = 1.0 - 1.0 / kappa;
  std::uint64_t q0, q1;
  smooth_split(q, y, q0, q1);
  if (x <= static_cast<double>(exact_budget)) {
    out.psi = static_cast<double>(
        psi_exact(static_cast<std::uint64_t>(x), y));
    out.psi_exact_used = true;
  } else {
    out.psi = psi_ht_estimate(x, y);
    out.psi_exact_used = false;
  }
  double mu1 = static_cast<double>(mobius(q1));
  if (mu1 == 0.0) {
    out.value = 0.0;
    return out;
  }
  std::complex<double> hval = h_factor({out.c0, 0.0}, q0);
  std::complex<double> transform = phi_transform(phi, {out.c0, 0.0}, gamma * x);
  out.value = mu1 / static_cast<double>(euler_phi(q1)) * hval * out.c0 *
              transform * out.psi;
  return out;
}

bool ArcDecomposition::on_major(double alpha) const {
  for (const auto& arc : major)
    if (alpha >= arc.lo && alpha <= arc.hi) return true;
  return false;
}

ArcDecomposition arcs_partition(double x, double delta) {
  if (!(delta > 0.0 && delta < 0.25))
    throw std::invalid_argument("arcs_partition: delta in (0, 1/4)");
  if (!(x >= 16.0)) throw std::invalid_argument("arcs_partition: x >= 16");
  ArcDecomposition dec;
  dec.x = x;
  dec.delta = delta;
  dec.half_width = std::pow(x, delta - 1.0);
  dec.q_max = static_cast<std::uint64_t>(std::pow(x, 0.25));

  double w = dec.half_width;
  // q = 1: the pair [0, w] and [1-w, 1] merged (one arc on R/Z)
  dec.major.push_back({0, 1, 0.0, w, true});
  dec.major.push_back({1, 1, 1.0 - w, 1.0, true});
  for (std::uint64_t q = 2; q <= dec.q_max; ++q)
    for (std::uint64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      double center = static_cast<double>(a) / static_cast<double>(q);
      dec.major.push_back({a, q, center - w, center + w, false});
    }
  std::sort(dec.major.begin(), dec.major.end(),
            [](const MajorArc& l, const MajorArc& r) { return l.lo < r.lo; });
  for (std::size_t i = 1; i < dec.major.size(); ++i)
    if (dec.major[i].lo < dec.major[i - 1].hi)
      throw std::runtime_error("arcs_partition: arcs overlap (x too small)");

  double measure = 0.0;
  double cursor = 0.0;
  for (const auto& arc : dec.major) {
    measure += arc.hi - arc.lo;
    if (arc.lo > cursor) dec.minor.emplace_back(cursor, arc.lo);
    cursor = arc.hi;
  }
  if (cursor < 1.0) dec.minor.emplace_back(cursor, 1.0);
  dec.major_measure = measure;
  return dec;
}

double circle_identity_discrete(const SmoothSet& s, double x,
                                const WeightFn& phi, std::uint64_t M) {
  if (M == 0 || (M & (M - 1)))
    throw std::invalid_argument("circle_identity_discrete: M must be 2^k");
  double bx = x * phi.b();
  if (static_cast<double>(M) <= 2.0 * bx)
    throw std::invalid_argument(
        "circle_identity_discrete: need M > 2*x*b to avoid wrap-around");
  require_cover(s, x, phi);

  std::vector<std::complex<double>> v(M, 0.0);
  for (std::uint64_t n : s.members()) {
    if (static_cast<double>(n) > bx) break;
    v[n] = phi(static_cast<double>(n) / x);
  }
  fft_radix2(v, /*inverse=*/false);
  // forward bin F[m] = conj(E(m/M)); for real input sum |E|^2 E = sum |F|^2 conj(F)
  KahanComplex acc;
  for (std::uint64_t m = 0; m < M; ++m) {
    double a2 = std::norm(v[m]);
    acc.add(a2 * std::conj(v[m]));
  }
  return acc.value().real() / static_cast<double>(M);
}

std::vector<MinorArcSample> minor_arc_profile(const SmoothSet& s, double x,
                                              const WeightFn& phi,
                                              double delta, int samples,
                                              std::uint64_t seed) {
  ArcDecomposition dec = arcs_partition(x, delta);
  double total = 0.0;
  for (auto& [lo, hi] : dec.minor) total += hi - lo;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, total);
  std::vector<MinorArcSample> rows;
  rows.reserve(samples);
  double envelope = std::pow(x, 0.75 + 0.05);
  for (int i = 0; i < samples; ++i) {
    double r = unif(rng);
    double alpha = 0.0;
    for (auto& [lo, hi] : dec.minor) {
      if (r <= hi - lo) {
        alpha = lo + r;
        break;
      }
      r -= hi - lo;
    }
    rows.push_back({alpha, std::abs(exp_sum(s, x, alpha, phi)), envelope});
  }
  return rows;
}

}  // namespace xyz
