#pragma once

#include <complex>

#include "ct/polynomial.hpp"
#include "ct/rational_function.hpp"

namespace ct {

// Result of the trace computation for phi and h: the unique degree-<n coset
// representative m(x) of phi'(x) h(x) in Q[x]/(phi), the top coefficient
// b_{n-1}, the leading coefficient a_n of phi, and their exact quotient,
// which equals the sum of h over all complex roots of phi.
struct TraceReport {
    QPoly coset_rep;
    Rational b_top;  // coefficient of x^{n-1} in coset_rep
    Rational a_lead; // leading coefficient of phi
    Rational value;  // b_top / a_lead = sum_i h(x_i)
};

// The degree-<n representative of phi'*h mod phi, computed as
// phi' * h.num * (h.den)^{-1} mod phi.  Requires phi square-free and
// gcd(h.den, phi) constant.
QPoly coset_representative(const QPoly& phi, const RationalFn& h);

TraceReport trace_sum(const QPoly& phi, const RationalFn& h);

// Brute-force check: sum h over the numerically computed roots of phi.
std::complex<double> numeric_trace_oracle(const QPoly& phi, const RationalFn& h, double tol = 1e-10);

} // namespace ct
