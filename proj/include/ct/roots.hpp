#pragma once

#include <complex>
#include <vector>

#include "ct/polynomial.hpp"

namespace ct {

// All complex roots of p, in a canonical order (by real part, then imaginary
// part).  Companion-matrix eigenvalues refined by a few Newton steps; each
// root satisfies |p(z)| <= tol * sum_k |a_k||z|^k or RootFindingFailure is
// thrown with the offending residuals.
std::vector<std::complex<double>> complex_roots(const CPoly& p, double tol = 1e-10);

inline std::vector<std::complex<double>> complex_roots(const QPoly& p, double tol = 1e-10) {
    return complex_roots(to_complex(p), tol);
}

// Deterministic pairwise (cascade) summation.
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v);
double pairwise_sum(const std::vector<double>& v);

} // namespace ct
