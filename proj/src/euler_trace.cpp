#include "ct/euler_trace.hpp"

#include <cmath>

#include "ct/roots.hpp"

namespace ct {

QPoly coset_representative(const QPoly& phi, const RationalFn& h) {
    if (phi.degree() < 1) throw Error("coset_representative: phi must have positive degree");
    if (!is_squarefree(phi))
        throw RepeatedRoots("phi has a repeated root; trace formula requires distinct roots");
    QPoly inv_den;
    try {
        inv_den = mod_inverse(h.den(), phi);
    } catch (const NotInvertible&) {
        throw NotInvertible("h is undefined at a root of phi (denominator shares a factor with phi)");
    }
    return poly_mod(phi.derivative() * h.num() * inv_den, phi);
}

TraceReport trace_sum(const QPoly& phi, const RationalFn& h) {
    QPoly rep = coset_representative(phi, h);
    const int n = phi.degree();
    TraceReport r;
    r.coset_rep = rep;
    r.b_top = rep.coeff(n - 1);
    r.a_lead = phi.lc();
    r.value = r.b_top / r.a_lead;
    return r;
}

std::complex<double> numeric_trace_oracle(const QPoly& phi, const RationalFn& h, double tol) {
    if (!is_squarefree(phi))
        throw RepeatedRoots("numeric_trace_oracle: phi must be square-free");
    auto roots = complex_roots(phi, tol);
    CPoly num = to_complex(h.num()), den = to_complex(h.den());
    std::vector<std::complex<double>> vals;
    vals.reserve(roots.size());
    for (const auto& z : roots) {
        std::complex<double> d = den.eval(z);
        double scale = 0.0, pw = 1.0, az = std::abs(z);
        for (const auto& c : den.coeffs()) {
            scale += std::abs(c) * pw;
            pw *= az;
        }
        if (std::abs(d) <= 1e-13 * (scale + 1e-300))
            throw EvaluationAtPole("h evaluated at (numerical) pole while summing over roots");
        vals.push_back(num.eval(z) / d);
    }
    return pairwise_sum(vals);
}

} // namespace ct
