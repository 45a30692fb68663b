#pragma once

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ct/polynomial.hpp"

namespace ct {

enum class Var { x, y };

inline const char* var_name(Var v) { return v == Var::x ? "x" : "y"; }

// Sparse bivariate polynomial over Rational: (i, j) -> coefficient of x^i y^j.
// No zero coefficients are stored; the map key order makes iteration (and
// hence printing and hashing) deterministic.
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;

    static BiPoly constant(const Rational& v) {
        BiPoly p;
        p.add_term(0, 0, v);
        return p;
    }
    static BiPoly term(int i, int j, const Rational& v) {
        BiPoly p;
        p.add_term(i, j, v);
        return p;
    }
    static BiPoly var_x() { return term(1, 0, 1); }
    static BiPoly var_y() { return term(0, 1, 1); }

    void add_term(int i, int j, const Rational& v) {
        if (v == 0) return;
        auto key = Key{i, j};
        auto it = t_.find(key);
        if (it == t_.end()) {
            t_.emplace(key, v);
        } else {
            it->second += v;
            if (it->second == 0) t_.erase(it);
        }
    }

    bool is_zero() const { return t_.empty(); }
    const std::map<Key, Rational>& terms() const { return t_; }

    int degree_in(Var v) const {
        int d = -1;
        for (const auto& [k, c] : t_) d = std::max(d, v == Var::x ? k.first : k.second);
        return d;
    }

    bool operator==(const BiPoly& o) const { return t_ == o.t_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly operator-() const {
        BiPoly r;
        for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
        return r;
    }
    BiPoly operator+(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
        return r;
    }
    BiPoly operator-(const BiPoly& o) const { return *this + (-o); }
    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        for (const auto& [ka, ca] : t_)
            for (const auto& [kb, cb] : o.t_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    BiPoly operator*(const Rational& s) const {
        if (s == 0) return {};
        BiPoly r;
        for (const auto& [k, c] : t_) r.t_.emplace(k, c * s);
        return r;
    }
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }

    BiPoly dx() const {
        BiPoly r;
        for (const auto& [k, c] : t_)
            if (k.first > 0) r.add_term(k.first - 1, k.second, c * k.first);
        return r;
    }
    BiPoly dy() const {
        BiPoly r;
        for (const auto& [k, c] : t_)
            if (k.second > 0) r.add_term(k.first, k.second - 1, c * k.second);
        return r;
    }

    template <class S>
    S eval(const S& x, const S& y) const {
        int dx_ = std::max(0, degree_in(Var::x)), dy_ = std::max(0, degree_in(Var::y));
        std::vector<S> px(dx_ + 1), py(dy_ + 1);
        px[0] = S(1);
        for (int i = 1; i <= dx_; ++i) px[i] = px[i - 1] * x;
        py[0] = S(1);
        for (int j = 1; j <= dy_; ++j) py[j] = py[j - 1] * y;
        S acc{};
        for (const auto& [k, c] : t_)
            acc += detail::scalar_cast<S, Rational>(c) * px[k.first] * py[k.second];
        return acc;
    }

    // Substitute x -> sx, y -> sy (polynomial composition).
    BiPoly compose(const BiPoly& sx, const BiPoly& sy) const {
        int dxm = std::max(0, degree_in(Var::x)), dym = std::max(0, degree_in(Var::y));
        std::vector<BiPoly> px(dxm + 1), py(dym + 1);
        px[0] = BiPoly::constant(1);
        for (int i = 1; i <= dxm; ++i) px[i] = px[i - 1] * sx;
        py[0] = BiPoly::constant(1);
        for (int j = 1; j <= dym; ++j) py[j] = py[j - 1] * sy;
        BiPoly acc;
        for (const auto& [k, c] : t_) acc += px[k.first] * py[k.second] * c;
        return acc;
    }

    // Coefficients with respect to `v`; entry i is a univariate polynomial in
    // the other variable.
    std::vector<QPoly> coeffs_in(Var v) const {
        int d = degree_in(v);
        if (d < 0) return {};
        std::vector<std::vector<Rational>> rows(d + 1);
        for (const auto& [k, c] : t_) {
            int outer = v == Var::x ? k.first : k.second;
            int inner = v == Var::x ? k.second : k.first;
            auto& row = rows[outer];
            if (static_cast<int>(row.size()) <= inner) row.resize(inner + 1, Rational(0));
            row[inner] = c;
        }
        std::vector<QPoly> out;
        out.reserve(rows.size());
        for (auto& r : rows) out.emplace_back(std::move(r));
        return out;
    }

    // Extract a univariate polynomial in `v`; the other variable must not
    // occur.
    QPoly univariate_in(Var v) const {
        Var other = v == Var::x ? Var::y : Var::x;
        if (degree_in(other) > 0) throw Error("bipoly is not univariate in " + std::string(var_name(v)));
        std::vector<Rational> c(std::max(0, degree_in(v)) + 1, Rational(0));
        for (const auto& [k, coef] : t_) c[v == Var::x ? k.first : k.second] = coef;
        return QPoly(std::move(c));
    }

    static BiPoly from_poly(const QPoly& p, Var v) {
        BiPoly r;
        for (int i = 0; i <= p.degree(); ++i) {
            if (v == Var::x)
                r.add_term(i, 0, p.coeff(i));
            else
                r.add_term(0, i, p.coeff(i));
        }
        return r;
    }

private:
    std::map<Key, Rational> t_;
};

inline BiPoly operator*(const Rational& s, const BiPoly& p) { return p * s; }

// det Hess F = F_xx F_yy - F_xy^2
inline BiPoly hessian_determinant(const BiPoly& f) {
    BiPoly fx = f.dx(), fy = f.dy();
    return fx.dx() * fy.dy() - fx.dy() * fx.dy();
}

namespace detail {

inline bool is_zero_entry(const Rational& v) { return v == 0; }
inline bool is_zero_entry(const QPoly& p) { return p.is_zero(); }
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline QPoly exact_div(const QPoly& a, const QPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("non-exact division in fraction-free elimination");
    return q;
}

template <class T>
T ring_one() {
    if constexpr (std::is_same_v<T, QPoly>)
        return QPoly::constant(1);
    else
        return T(1);
}

// Bareiss fraction-free determinant; entries stay in the ring (every division
// is exact).
template <class T>
T bareiss_det(std::vector<std::vector<T>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) throw Error("determinant of empty matrix");
    T prev = ring_one<T>();
    bool neg = false;
    for (int k = 0; k + 1 < n; ++k) {
        if (is_zero_entry(m[k][k])) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!is_zero_entry(m[i][k])) { p = i; break; }
            if (p < 0) return T{};
            std::swap(m[k], m[p]);
            neg = !neg;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    return neg ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

} // namespace detail

// Sylvester resultant eliminating `eliminate`; the result is univariate in the
// other variable.  Both inputs must have positive degree in the eliminated
// variable.
inline QPoly resultant(const BiPoly& p, const BiPoly& q, Var eliminate) {
    int dp = p.degree_in(eliminate), dq = q.degree_in(eliminate);
    if (dp < 1) throw DegenerateResultant("resultant: first input has no positive degree in " +
                                          std::string(var_name(eliminate)));
    if (dq < 1) throw DegenerateResultant("resultant: second input has no positive degree in " +
                                          std::string(var_name(eliminate)));
    auto pc = p.coeffs_in(eliminate), qc = q.coeffs_in(eliminate);
    const int n = dp + dq;
    std::vector<std::vector<QPoly>> m(n, std::vector<QPoly>(n));
    for (int r = 0; r < dq; ++r)
        for (int i = 0; i <= dp; ++i) m[r][r + dp - i] = pc[i];
    for (int r = 0; r < dp; ++r)
        for (int i = 0; i <= dq; ++i) m[dq + r][r + dq - i] = qc[i];
    return detail::bareiss_det(std::move(m));
}

inline std::string to_string(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (k.first) os << "*x" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
        if (k.second) os << "*y" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    }
    return os.str();
}

} // namespace ct
