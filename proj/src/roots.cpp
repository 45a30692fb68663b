#include "ct/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ct {

namespace {

using cd = std::complex<double>;

double residual_scale(const CPoly& p, const cd& z) {
    double az = std::abs(z), pw = 1.0, s = 0.0;
    for (const auto& c : p.coeffs()) {
        s += std::abs(c) * pw;
        pw *= az;
    }
    return s + 1e-300;
}

void sort_canonical(std::vector<cd>& roots) {
    std::sort(roots.begin(), roots.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

void check_residuals(const CPoly& p, const std::vector<cd>& roots, double tol) {
    std::ostringstream bad;
    bool ok = true;
    for (const cd& z : roots) {
        double r = std::abs(p.eval(z));
        if (r > tol * residual_scale(p, z)) {
            ok = false;
            bad << " |p(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)|=" << r;
        }
    }
    if (!ok) throw RootFindingFailure("root residuals exceed tolerance:" + bad.str());
}

template <class Scalar, class Matrix>
Matrix companion(const std::vector<Scalar>& monic_low, int n) {
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, n - 1) = -monic_low[i];
        if (i + 1 < n) m(i + 1, i) = Scalar(1);
    }
    return m;
}

// Roots of a polynomial with real coefficients.  The real Schur form hands
// back eigenvalues in exactly conjugate pairs, and 1x1 blocks are exactly
// real, so the conjugate-pair structure of the root set is preserved
// bit-for-bit; near-caustic image counts stay even.
std::vector<cd> roots_real_coeffs(const std::vector<double>& coeffs, int nzero, const CPoly& p) {
    const int n = static_cast<int>(coeffs.size()) - 1 - nzero;
    std::vector<cd> roots(nzero, cd(0.0, 0.0));
    if (n == 0) return roots;

    const double lead = coeffs.back();
    std::vector<double> monic(n);
    for (int i = 0; i < n; ++i) monic[i] = coeffs[nzero + i] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion<double, Eigen::MatrixXd>(monic, n), false);
    if (solver.info() != Eigen::Success)
        throw RootFindingFailure("companion-matrix eigenvalue iteration failed to converge");

    // real derivative for the real Newton steps
    std::vector<double> rc(p.coeffs().size());
    for (std::size_t i = 0; i < rc.size(); ++i) rc[i] = p.coeffs()[i].real();
    auto eval_real = [&](const std::vector<double>& c, double x) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    std::vector<double> rdc(rc.size() > 1 ? rc.size() - 1 : 0);
    for (std::size_t i = 1; i < rc.size(); ++i) rdc[i - 1] = rc[i] * static_cast<double>(i);

    const CPoly dp = p.derivative();
    for (int i = 0; i < n; ++i) {
        cd z = solver.eigenvalues()(i);
        if (z.imag() == 0.0) {
            double x = z.real();
            for (int it = 0; it < 3; ++it) {
                double d = eval_real(rdc, x);
                if (std::abs(d) < 1e-300) break;
                double x2 = x - eval_real(rc, x) / d;
                if (!std::isfinite(x2)) break;
                if (std::abs(eval_real(rc, x2)) < std::abs(eval_real(rc, x))) x = x2; else break;
            }
            roots.emplace_back(x, 0.0);
        } else if (z.imag() > 0.0) {
            for (int it = 0; it < 3; ++it) {
                cd d = dp.eval(z);
                if (std::abs(d) < 1e-300) break;
                cd z2 = z - p.eval(z) / d;
                if (!std::isfinite(z2.real()) || !std::isfinite(z2.imag())) break;
                if (std::abs(p.eval(z2)) < std::abs(p.eval(z))) z = z2; else break;
            }
            roots.push_back(z);
            roots.push_back(std::conj(z)); // mirror, exactly conjugate
        }
    }
    if (static_cast<int>(roots.size()) != n + nzero)
        throw RootFindingFailure("eigenvalue conjugate pairing produced a wrong root count");
    return roots;
}

std::vector<cd> roots_complex_coeffs(const std::vector<cd>& coeffs, int nzero, const CPoly& p) {
    const int n = static_cast<int>(coeffs.size()) - 1 - nzero;
    std::vector<cd> roots(nzero, cd(0.0, 0.0));
    if (n == 0) return roots;

    const cd lead = coeffs.back();
    std::vector<cd> monic(n);
    for (int i = 0; i < n; ++i) monic[i] = coeffs[nzero + i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(
        companion<cd, Eigen::MatrixXcd>(monic, n), false);
    if (solver.info() != Eigen::Success)
        throw RootFindingFailure("companion-matrix eigenvalue iteration failed to converge");

    const CPoly dp = p.derivative();
    for (int i = 0; i < n; ++i) {
        cd z = solver.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            cd d = dp.eval(z);
            if (std::abs(d) < 1e-300) break;
            cd z2 = z - p.eval(z) / d;
            if (!std::isfinite(z2.real()) || !std::isfinite(z2.imag())) break;
            if (std::abs(p.eval(z2)) < std::abs(p.eval(z))) z = z2; else break;
        }
        roots.push_back(z);
    }
    return roots;
}

} // namespace

std::vector<cd> complex_roots(const CPoly& p, double tol) {
    const int deg = p.degree();
    if (deg < 1) throw Error("complex_roots: degree must be at least 1");

    // Exact zero roots split off first; they are common (s1 = 0 targets) and
    // deflating them keeps the companion matrix well scaled.
    const std::vector<cd>& coeffs = p.coeffs();
    int nzero = 0;
    while (nzero < deg && coeffs[nzero] == cd(0.0, 0.0)) ++nzero;

    bool real_input = true;
    for (const cd& c : coeffs)
        if (c.imag() != 0.0) { real_input = false; break; }

    std::vector<cd> roots;
    if (real_input) {
        std::vector<double> rc(coeffs.size());
        for (std::size_t i = 0; i < rc.size(); ++i) rc[i] = coeffs[i].real();
        roots = roots_real_coeffs(rc, nzero, p);
    } else {
        roots = roots_complex_coeffs(coeffs, nzero, p);
    }

    sort_canonical(roots);
    check_residuals(p, roots, tol);
    return roots;
}

namespace {

template <class T>
T pairwise_impl(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi == lo) return T{};
    if (hi - lo == 1) return v[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_impl(v, lo, mid) + pairwise_impl(v, mid, hi);
}

} // namespace

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_impl(v, 0, v.size());
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_impl(v, 0, v.size()); }

} // namespace ct
