#pragma once

#include <complex>
#include <functional>

namespace xyz {

/// Recursive adaptive Simpson on [a,b]. Tolerance is applied as
/// |err| <= rel*|I| + abs on each panel (standard 15x Richardson test).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-10,
                        double abs_tol = 1e-14, int max_depth = 30);

std::complex<double> adaptive_simpson_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 30);

/// Composite Simpson with n (even) intervals.
std::complex<double> composite_simpson(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n);

/// Composite Simpson starting from n0 intervals, doubling until the result
/// moves by less than rel*|I| + abs (or max_doublings is hit).
std::complex<double> refining_simpson(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n0, double rel_tol = 1e-9, double abs_tol = 1e-14,
    int max_doublings = 8);

}  // namespace xyz
