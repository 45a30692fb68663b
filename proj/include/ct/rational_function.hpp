#pragma once

#include <utility>

#include "ct/polynomial.hpp"

namespace ct {

// Quotient of exact polynomials, kept gcd-reduced with a monic denominator.
class RationalFn {
public:
    RationalFn() : num_{}, den_(QPoly::constant(1)) {}

    RationalFn(QPoly num, QPoly den) {
        if (den.is_zero()) throw DivisionByZeroPoly("rational function with zero denominator");
        if (num.is_zero()) {
            num_ = {};
            den_ = QPoly::constant(1);
            return;
        }
        QPoly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = divmod(num, g).first;
            den = divmod(den, g).first;
        }
        Rational s = den.lc();
        num_ = num / s;
        den_ = den / s;
    }

    static RationalFn from_poly(QPoly p) { return RationalFn(std::move(p), QPoly::constant(1)); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }

    RationalFn operator+(const RationalFn& o) const {
        return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFn operator-(const RationalFn& o) const {
        return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFn operator*(const RationalFn& o) const {
        return RationalFn(num_ * o.num_, den_ * o.den_);
    }
    RationalFn operator*(const Rational& s) const { return RationalFn(num_ * s, den_); }

    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

    template <class S>
    S eval(const S& x) const {
        return num_.eval(x) / den_.eval(x);
    }

private:
    QPoly num_, den_;
};

inline std::string to_string(const RationalFn& h, const char* var = "x") {
    return "(" + to_string(h.num(), var) + ") / (" + to_string(h.den(), var) + ")";
}

} // namespace ct
