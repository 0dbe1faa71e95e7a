#include "smoothxyz/quadrature.hpp"

#include <cmath>
#include <cstdlib>

namespace xyz {

namespace {

template <class T>
T simpson(T fa, T fm, T fb, double h) {
  return (h / 6.0) * (fa + 4.0 * fm + fb);
}

template <class T, class F>
T adapt(const F& f, double a, double m, double b, T fa, T fm, T fb, T whole,
        double rel, double abs, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  T flm = f(lm), frm = f(rm);
  T left = simpson(fa, flm, fm, m - a);
  T right = simpson(fm, frm, fb, b - m);
  T delta = left + right - whole;
  if (depth <= 0 ||
      std::abs(delta) <= 15.0 * (rel * std::abs(left + right) + abs))
    return left + right + delta / 15.0;
  return adapt(f, a, lm, m, fa, flm, fm, left, rel, 0.5 * abs, depth - 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, rel, 0.5 * abs, depth - 1);
}

template <class T, class F>
T adaptive(const F& f, double a, double b, double rel, double abs,
           int max_depth) {
  if (a == b) return T{};
  double m = 0.5 * (a + b);
  T fa = f(a), fm = f(m), fb = f(b);
  T whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, m, b, fa, fm, fb, whole, rel, abs, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_tol,
                        int max_depth) {
  return adaptive<double>(f, a, b, rel_tol, abs_tol, max_depth);
}

std::complex<double> adaptive_simpson_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol, double abs_tol, int max_depth) {
  return adaptive<std::complex<double>>(f, a, b, rel_tol, abs_tol, max_depth);
}

std::complex<double> composite_simpson(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n) {
  if (n < 2) n = 2;
  if (n % 2) ++n;
  double h = (b - a) / n;
  std::complex<double> acc = f(a) + f(b);
  for (int i = 1; i < n; ++i)
    acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

std::complex<double> refining_simpson(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n0, double rel_tol, double abs_tol, int max_doublings) {
  std::complex<double> prev = composite_simpson(f, a, b, n0);
  for (int k = 0; k < max_doublings; ++k) {
    n0 *= 2;
    std::complex<double> cur = composite_simpson(f, a, b, n0);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + abs_tol) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace xyz
