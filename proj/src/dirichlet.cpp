#include "smoothxyz/dirichlet.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "smoothxyz/numutil.hpp"
#include "smoothxyz/primes.hpp"

namespace xyz {

namespace detail {

// One cyclic (or, for 2^k with k>=3, the <-1> x <5>) component of (Z/q)^*.
struct GroupComponent {
  std::uint64_t pk = 1;           // prime power
  std::vector<std::uint64_t> orders;
  // dlog[r] = exponent vector index of residue r (packed); 2^k with k>=3
  // stores two coordinates, everything else one.
  std::vector<std::uint32_t> dlog0, dlog1;
};

struct CharacterGroup {
  std::uint64_t q = 1;
  std::uint64_t phi = 1;
  std::vector<GroupComponent> comps;
  std::vector<std::uint64_t> all_orders;  // flattened component orders
};

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, base = b % m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t primitive_root(std::uint64_t p, std::uint64_t pk,
                             std::uint64_t phi) {
  // smallest generator of (Z/p^k)^*, p odd
  auto fac = factorize(phi);
  for (std::uint64_t g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& [pp, e] : fac) {
      if (pow_mod(g, phi / pp, pk) == 1) {
        ok = false;
        break;
      }
      (void)e;
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

GroupComponent build_component(std::uint64_t p, int e) {
  GroupComponent c;
  c.pk = 1;
  for (int i = 0; i < e; ++i) c.pk *= p;
  if (p == 2) {
    if (e == 1) return c;  // trivial group
    if (e == 2) {
      c.orders = {2};
      c.dlog0.assign(c.pk, 0);
      c.dlog0[3] = 1;  // (Z/4)^* = <3>
      return c;
    }
    // (Z/2^k)^* = <-1> x <5>
    std::uint64_t half = c.pk >> 2;  // order of 5
    c.orders = {2, half};
    c.dlog0.assign(c.pk, 0);
    c.dlog1.assign(c.pk, 0);
    std::uint64_t v = 1;
    for (std::uint64_t j = 0; j < half; ++j) {
      c.dlog0[v] = 0;
      c.dlog1[v] = static_cast<std::uint32_t>(j);
      std::uint64_t neg = c.pk - v;
      c.dlog0[neg] = 1;
      c.dlog1[neg] = static_cast<std::uint32_t>(j);
      v = v * 5 % c.pk;
    }
    return c;
  }
  std::uint64_t phi = c.pk / p * (p - 1);
  std::uint64_t g = primitive_root(p, c.pk, phi);
  c.orders = {phi};
  c.dlog0.assign(c.pk, 0);
  std::uint64_t v = 1;
  for (std::uint64_t j = 0; j < phi; ++j) {
    c.dlog0[v] = static_cast<std::uint32_t>(j);
    v = v * g % c.pk;
  }
  return c;
}

std::shared_ptr<const CharacterGroup> group_for(std::uint64_t q) {
  static std::mutex mu;
  static std::vector<std::pair<std::uint64_t,
                               std::shared_ptr<const CharacterGroup>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  for (auto& [qq, g] : cache)
    if (qq == q) return g;
  auto grp = std::make_shared<CharacterGroup>();
  grp->q = q;
  grp->phi = euler_phi(q);
  for (const auto& [p, e] : factorize(q)) {
    GroupComponent c = build_component(p, e);
    if (!c.orders.empty()) {
      for (std::uint64_t o : c.orders) grp->all_orders.push_back(o);
      grp->comps.push_back(std::move(c));
    }
  }
  cache.emplace_back(q, grp);
  if (cache.size() > 32) cache.erase(cache.begin());
  return cache.back().second;
}

}  // namespace
}  // namespace detail

std::vector<DirichletCharacter> characters_mod(std::uint64_t q) {
  if (q == 0 || q > 1'000'000)
    throw std::invalid_argument("characters_mod: need 1 <= q <= 10^6");
  auto grp = detail::group_for(q);
  std::size_t ncoords = grp->all_orders.size();
  std::vector<DirichletCharacter> chars;
  chars.reserve(grp->phi);
  std::vector<std::uint64_t> e(ncoords, 0);
  for (std::size_t idx = 0;; ++idx) {
    DirichletCharacter chi;
    chi.group_ = grp;
    chi.exponents_ = e;
    chi.index_ = idx;
    chars.push_back(std::move(chi));
    // odometer over exponent vectors
    std::size_t pos = 0;
    while (pos < ncoords && ++e[pos] == grp->all_orders[pos]) {
      e[pos] = 0;
      ++pos;
    }
    if (pos == ncoords) break;
  }
  if (chars.size() != grp->phi)
    throw std::logic_error("characters_mod: enumeration size mismatch");
  return chars;
}

std::uint64_t DirichletCharacter::modulus() const { return group_->q; }

bool DirichletCharacter::principal() const {
  for (std::uint64_t v : exponents_)
    if (v) return false;
  return true;
}

int DirichletCharacter::parity() const {
  if (group_->q <= 2) return 1;
  return std::abs((*this)(group_->q - 1).real() - 1.0) < 1e-9 ? 1 : -1;
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  const auto& g = *group_;
  std::uint64_t r = n % g.q;
  if (g.q == 1) return {1.0, 0.0};
  if (std::gcd(r, g.q) != 1) return {0.0, 0.0};
  double angle = 0.0;
  std::size_t coord = 0;
  for (const auto& c : g.comps) {
    std::uint64_t rc = r % c.pk;
    if (c.orders.size() == 2) {
      angle += static_cast<double>(exponents_[coord] * c.dlog0[rc]) /
               static_cast<double>(c.orders[0]);
      angle += static_cast<double>(exponents_[coord + 1]) *
               static_cast<double>(c.dlog1[rc]) /
               static_cast<double>(c.orders[1]);
      coord += 2;
    } else {
      angle += static_cast<double>(exponents_[coord]) *
               static_cast<double>(c.dlog0[rc]) /
               static_cast<double>(c.orders[0]);
      coord += 1;
    }
  }
  return e_of(angle - std::floor(angle));
}

std::vector<std::complex<double>> DirichletCharacter::values() const {
  std::vector<std::complex<double>> v(group_->q);
  for (std::uint64_t n = 0; n < group_->q; ++n) v[n] = (*this)(n);
  if (group_->q == 1) v[0] = 1.0;
  return v;
}

std::uint64_t DirichletCharacter::conductor() const {
  if (conductor_) return conductor_;
  std::uint64_t q = group_->q;
  // smallest d | q with chi(n) = 1 whenever n = 1 (mod d), gcd(n, q) = 1
  for (std::uint64_t d : divisors(q)) {
    bool ok = true;
    for (std::uint64_t n = 1; n < q && ok; n += d) {
      if (std::gcd(n, q) != 1) continue;
      if (std::abs((*this)(n) - std::complex<double>(1.0, 0.0)) > 1e-9)
        ok = false;
    }
    if (ok) {
      conductor_ = d;
      return d;
    }
  }
  conductor_ = q;
  return q;
}

DirichletCharacter induced_from(const DirichletCharacter& chi) {
  std::uint64_t qp = chi.conductor();
  std::uint64_t q = chi.modulus();
  if (qp == q) return chi;
  // chi'(n) = chi(m) for any m = n (mod q') with gcd(m, q) = 1
  auto cands = characters_mod(qp);
  for (const auto& cand : cands) {
    bool match = true;
    for (std::uint64_t n = 0; n < qp && match; ++n) {
      if (std::gcd(n, qp) != 1) continue;
      std::uint64_t m = n;
      while (std::gcd(m, q) != 1) m += qp;
      if (std::abs(cand(n) - chi(m)) > 1e-9) match = false;
    }
    if (match) return cand;
  }
  throw std::logic_error("induced_from: inducing character not found");
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  std::uint64_t q = chi.modulus();
  KahanComplex acc;
  for (std::uint64_t b = 0; b < q; ++b) {
    auto v = chi(b);
    if (v != std::complex<double>(0.0, 0.0))
      acc.add(v * e_of(static_cast<double>(b) / static_cast<double>(q)));
  }
  if (q == 1) return {1.0, 0.0};
  return acc.value();
}

AdditiveDecomposition additive_decomposition_check(std::uint64_t n,
                                                   std::uint64_t a,
                                                   std::uint64_t q) {
  if (q == 0 || std::gcd(a, q) != 1)
    throw std::invalid_argument("additive_decomposition_check: gcd(a,q)=1");
  std::uint64_t d = std::gcd(n, q);
  std::uint64_t m = n / d, qd = q / d;
  AdditiveDecomposition out;
  std::uint64_t an_mod_q = static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * n % q);
  out.lhs = e_of(static_cast<double>(an_mod_q) / static_cast<double>(q));
  KahanComplex acc;
  for (const auto& chi : characters_mod(qd)) {
    auto tau_conj = std::conj(gauss_sum(chi));
    acc.add(tau_conj * chi(m % qd * (a % qd) % qd));
  }
  out.rhs = acc.value() / static_cast<double>(euler_phi(qd));
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

double gauss_norm_identity(std::uint64_t q, std::uint64_t d) {
  if (d == 0 || q % d != 0)
    throw std::invalid_argument("gauss_norm_identity: d must divide q");
  std::uint64_t qd = q / d;
  Kahan acc;
  for (const auto& chi : characters_mod(qd)) {
    double t = std::abs(gauss_sum(chi));
    acc.add(t * t);
  }
  double ph = static_cast<double>(euler_phi(qd));
  return acc.value() / (ph * ph);
}

std::complex<double> partial_L(std::complex<double> s,
                               const DirichletCharacter& chi,
                               std::uint64_t y) {
  if (s.real() <= 0.0)
    throw std::invalid_argument("partial_L: Re(s) must be > 0");
  KahanComplex acc;
  for (std::uint32_t p : primes_up_to(y)) {
    auto cp = chi(p);
    if (cp == std::complex<double>(0.0, 0.0)) continue;
    acc.add(-std::log(1.0 - cp * std::exp(-s * std::log(double(p)))));
  }
  return std::exp(acc.value());
}

std::complex<double> twisted_lambda_sum(double u,
                                        const DirichletCharacter& chi,
                                        double t) {
  if (u > 1e8) throw std::invalid_argument("twisted_lambda_sum: u <= 1e8");
  if (u < 2.0) return {0.0, 0.0};
  KahanComplex acc;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(u))) {
    double lp = std::log(double(p));
    auto cp = chi(p);
    std::complex<double> cpk = cp;
    for (double pk = p; pk <= u; pk *= p) {
      if (cp != std::complex<double>(0.0, 0.0))
        acc.add(lp * cpk * std::exp(std::complex<double>(0.0, -t * std::log(pk))));
      cpk *= cp;
    }
  }
  return acc.value();
}

std::vector<LindelofRow> lindelof_diagnostic(
    const DirichletCharacter& chi, std::uint64_t y,
    const std::vector<std::complex<double>>& s_grid) {
  std::vector<LindelofRow> rows;
  rows.reserve(s_grid.size());
  double q = static_cast<double>(chi.modulus());
  double ly = std::log(static_cast<double>(y));
  for (auto s : s_grid) {
    LindelofRow r;
    r.s = s;
    r.abs_L = std::abs(partial_L(s, chi, y));
    r.reference = std::pow(q * std::abs(s), 0.1);
    r.envelope = std::exp(std::pow(double(y), 1.0 - s.real()) /
                          ((1.0 + std::abs(s.imag())) * ly)) *
                 std::pow(std::abs(s), 0.1);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace xyz
