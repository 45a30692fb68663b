#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ct/errors.hpp"
#include "ct/rational.hpp"

namespace ct {

namespace detail {

template <class S, class K>
S scalar_cast(const K& v) {
    return static_cast<S>(v);
}
template <>
inline double scalar_cast<double, Rational>(const Rational& v) {
    return to_double(v);
}
template <>
inline std::complex<double> scalar_cast<std::complex<double>, Rational>(const Rational& v) {
    return {to_double(v), 0.0};
}

inline bool scalar_is_zero(const Rational& v) { return v == 0; }
inline bool scalar_is_zero(const std::complex<double>& v) { return v == std::complex<double>(0.0, 0.0); }
inline bool scalar_is_zero(double v) { return v == 0.0; }

} // namespace detail

// Dense univariate polynomial over a field K.  Coefficients are stored in
// ascending order (index = degree of term); the zero polynomial is the empty
// list and the leading coefficient is nonzero otherwise.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
    // v * x^deg
    static Poly monomial(int deg, const K& v) {
        std::vector<K> c(deg + 1, K(0));
        c[deg] = v;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
        return c_[i];
    }
    const K& lc() const {
        if (is_zero()) throw Error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<K>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        std::vector<K> c(c_);
        for (auto& v : c) v = -v;
        return Poly(std::move(c));
    }

    Poly operator+(const Poly& o) const {
        std::vector<K> c(std::max(c_.size(), o.c_.size()), K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
        return Poly(std::move(c));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<K> c(c_.size() + o.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(c));
    }

    Poly operator*(const K& s) const {
        std::vector<K> c(c_);
        for (auto& v : c) v = v * s;
        return Poly(std::move(c));
    }
    Poly operator/(const K& s) const {
        if (detail::scalar_is_zero(s)) throw DivisionByZeroPoly("scalar division by zero");
        std::vector<K> c(c_);
        for (auto& v : c) v = v / s;
        return Poly(std::move(c));
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * K(static_cast<long>(i));
        return Poly(std::move(c));
    }

    Poly monic() const {
        if (is_zero()) throw Error("monic of zero polynomial");
        return *this / lc();
    }

    // Horner evaluation; S may be a wider scalar than K (e.g. complex<double>
    // evaluation of an exact polynomial).
    template <class S>
    S eval(const S& x) const {
        S acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + detail::scalar_cast<S, K>(*it);
        return acc;
    }

private:
    std::vector<K> c_;

    void trim() {
        while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
    }
};

using QPoly = Poly<Rational>;
using CPoly = Poly<std::complex<double>>;

template <class K>
Poly<K> operator*(const K& s, const Poly<K>& p) {
    return p * s;
}

inline CPoly to_complex(const QPoly& p) {
    std::vector<std::complex<double>> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(to_double(q), 0.0);
    return CPoly(std::move(c));
}

// Euclidean division: a = q*b + r with deg r < deg b.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw DivisionByZeroPoly("polynomial division by zero polynomial");
    std::vector<K> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {{}, a};
    std::vector<K> quot(a.degree() - db + 1, K(0));
    const K& blc = b.lc();
    for (int i = a.degree(); i >= db; --i) {
        if (detail::scalar_is_zero(rem[i])) continue;
        K f = rem[i] / blc;
        quot[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
        rem[i] = K(0); // exact cancellation of the leading term
    }
    return {Poly<K>(std::move(quot)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& b) {
    return divmod(a, b).second;
}

// Monic gcd.  Remainders are renormalized to monic at every step, which keeps
// rational coefficient growth in check.
inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? QPoly{} : r.monic();
    }
    if (a.is_zero()) return a;
    return a.monic();
}

struct ExtGcd {
    QPoly g, u, v; // u*a + v*b = g, g monic
};

// Extended Euclid with the gcd normalized monic, so coset representatives
// downstream are unique.
inline ExtGcd extended_gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("extended_gcd(0, 0)");
    QPoly r0 = a, r1 = b;
    QPoly u0 = QPoly::constant(1), u1{};
    QPoly v0{}, v1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        QPoly u2 = u0 - q * u1;
        QPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    Rational s = r0.lc();
    return {r0 / s, u0 / s, v0 / s};
}

// Inverse of b modulo phi; requires gcd(b, phi) constant.  Failure means b
// vanishes at a root of phi (degenerate/caustic input downstream).
inline QPoly mod_inverse(const QPoly& b, const QPoly& phi) {
    if (phi.degree() < 1) throw Error("mod_inverse: modulus must have positive degree");
    ExtGcd e = extended_gcd(b, phi);
    if (e.g.degree() != 0)
        throw NotInvertible("polynomial not invertible modulo phi (common factor of degree " +
                            std::to_string(e.g.degree()) + ")");
    return poly_mod(e.u, phi);
}

// Univariate resultant via the Euclidean remainder sequence.
inline Rational resultant(QPoly a, QPoly b) {
    if (a.is_zero() || b.is_zero()) return 0;
    Rational res = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) res = -res;
        std::swap(a, b);
    }
    while (b.degree() > 0) {
        QPoly r = divmod(a, b).second;
        int da = a.degree(), db = b.degree(), dr = r.degree();
        if (r.is_zero()) return 0;
        Rational lcb = b.lc();
        Rational pw = 1;
        for (int i = 0; i < da - dr; ++i) pw *= lcb;
        if ((da & 1) && (db & 1)) pw = -pw;
        res *= pw;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant here
    Rational pw = 1;
    for (int i = 0; i < a.degree(); ++i) pw *= b.lc();
    return res * pw;
}

// disc(phi) = (-1)^{n(n-1)/2} res(phi, phi') / lc(phi); zero iff repeated root.
inline Rational discriminant(const QPoly& phi) {
    int n = phi.degree();
    if (n < 2) throw DegreeTooSmall("discriminant requires degree >= 2");
    Rational r = resultant(phi, phi.derivative()) / phi.lc();
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r;
}

inline bool is_squarefree(const QPoly& phi) {
    if (phi.degree() < 2) return true;
    return poly_gcd(phi, phi.derivative()).degree() == 0;
}

template <class K>
std::string to_string(const Poly<K>& p, const char* var = "x") {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        K c = p.coeff(i);
        if (detail::scalar_is_zero(c)) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (i >= 1) os << "*" << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

} // namespace ct
