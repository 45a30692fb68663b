#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "ct/errors.hpp"

namespace ct {

// Exact rational coefficients. GMP keeps values canonical (den > 0, gcd = 1)
// across arithmetic; only raw num/den construction needs an explicit
// canonicalize, which the helpers below take care of.
using Rational = mpq_class;
using Integer = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Every finite double is a dyadic rational, so this conversion is exact.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw UsageError("non-finite value cannot be converted to a rational");
    return mpq_class(v);
}

inline Rational make_rational(long num, long den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

struct ParsedRational {
    Rational value;
    bool exact = true; // false when the input was written as a decimal/float
};

// Accepts "p/q", integers, and decimal notation ("1.25", "3e-2").  Decimal
// inputs convert exactly (base-10 expansion) but are flagged inexact so
// reports can advertise that the caller supplied a float.
ParsedRational parse_rational(std::string_view text);

inline ParsedRational parse_rational(std::string_view text) {
    auto fail = [&] { throw UsageError("cannot parse rational: '" + std::string(text) + "'"); };
    if (text.empty()) fail();

    std::string s(text);
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty()) fail();
        Integer num, den;
        if (num.set_str(ns, 10) != 0 || den.set_str(ds, 10) != 0) fail();
        if (den == 0) throw UsageError("rational with zero denominator: '" + s + "'");
        Rational q(num, den);
        q.canonicalize();
        return {q, true};
    }

    bool has_dot = s.find('.') != std::string::npos;
    bool has_exp = s.find_first_of("eE") != std::string::npos;
    if (!has_dot && !has_exp) {
        Integer num;
        if (num.set_str(s, 10) != 0) fail();
        return {Rational(num), true};
    }

    // decimal form: [sign] digits [. digits] [ (e|E) [sign] digits ]
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    std::string digits;
    long frac_digits = 0, exp10 = 0;
    bool any = false;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) { digits += s[i++]; any = true; }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            digits += s[i++];
            ++frac_digits;
            any = true;
        }
    }
    if (!any) fail();
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        if (i >= s.size()) fail();
        long e = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) e = e * 10 + (s[i++] - '0');
        exp10 = eneg ? -e : e;
    }
    if (i != s.size()) fail();

    Integer num;
    if (digits.empty() || num.set_str(digits, 10) != 0) fail();
    if (neg) num = -num;
    long net = exp10 - frac_digits;
    if (std::labs(net) > 100000) throw UsageError("decimal exponent out of range: '" + s + "'");
    Rational q(num);
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, (unsigned long)std::labs(net));
    if (net >= 0)
        q *= Rational(pow10);
    else
        q /= Rational(pow10);
    return {q, false};
}

} // namespace ct
