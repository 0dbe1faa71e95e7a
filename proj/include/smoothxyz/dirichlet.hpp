#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace xyz {

namespace detail {
struct CharacterGroup;
}

/// A Dirichlet character mod q, represented by exponents against fixed CRT
/// generators of (Z/q)^*; values are materialized lazily.
class DirichletCharacter {
 public:
  std::uint64_t modulus() const;
  bool principal() const;
  std::uint64_t conductor() const;  // computed on first use, cached
  bool primitive() const { return conductor() == modulus(); }
  int parity() const;  // chi(-1), +1 or -1

  std::complex<double> operator()(std::uint64_t n) const;

  /// Full value table chi(0..q-1).
  std::vector<std::complex<double>> values() const;

  /// Index within characters_mod(q) enumeration order.
  std::size_t index() const { return index_; }

 private:
  friend std::vector<DirichletCharacter> characters_mod(std::uint64_t q);
  std::shared_ptr<const detail::CharacterGroup> group_;
  std::vector<std::uint64_t> exponents_;
  std::size_t index_ = 0;
  mutable std::uint64_t conductor_ = 0;  // 0 = not yet computed
};

/// All phi(q) characters mod q via CRT decomposition of (Z/q)^*.
std::vector<DirichletCharacter> characters_mod(std::uint64_t q);

/// The primitive character inducing chi (chi itself when already primitive).
DirichletCharacter induced_from(const DirichletCharacter& chi);

/// tau(chi) = sum_{b mod q} chi(b) e(b/q), direct O(q) summation.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

struct AdditiveDecomposition {
  std::complex<double> lhs;  // e(an/q)
  std::complex<double> rhs;  // (1/phi(q/d)) sum_chi tau(conj chi) chi(ma)
  double gap = 0;
};

/// Additive-to-multiplicative character decomposition of e(an/q) with
/// d = gcd(n, q); requires gcd(a, q) = 1.
AdditiveDecomposition additive_decomposition_check(std::uint64_t n,
                                                   std::uint64_t a,
                                                   std::uint64_t q);

/// (1/phi(q/d)^2) sum_{chi mod q/d} |tau(chi)|^2; equals 1.
double gauss_norm_identity(std::uint64_t q, std::uint64_t d);

/// L(s, chi; y) = prod_{p<=y} (1 - chi(p) p^{-s})^{-1}, Re(s) > 0.
std::complex<double> partial_L(std::complex<double> s,
                               const DirichletCharacter& chi, std::uint64_t y);

/// sum_{n<=u} Lambda(n) chi(n) n^{-it} over prime powers.
std::complex<double> twisted_lambda_sum(double u, const DirichletCharacter& chi,
                                        double t);

struct LindelofRow {
  std::complex<double> s;
  double abs_L = 0;
  double reference = 0;  // (q |s|)^{0.1}
  double envelope = 0;   // exp(y^{1-sigma}/((1+|t|) log y)) |s|^{0.1}
};

/// Measured |L(s,chi;y)| against Lindelof-style reference columns
/// (report-only; nothing is asserted).
std::vector<LindelofRow> lindelof_diagnostic(
    const DirichletCharacter& chi, std::uint64_t y,
    const std::vector<std::complex<double>>& s_grid);

}  // namespace xyz
