#pragma once

#include <cstdint>
#include <random>

#include "ct/rational.hpp"

namespace ct {

// Seeded draws for the randomized suites.  mt19937_64 output is specified by
// the standard and the reductions below avoid std::uniform_*_distribution,
// whose results are implementation-defined; identical seeds therefore give
// identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    long int_in(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // numerator in [-mag, mag], denominator in [1, max_den]
    Rational rational(long mag = 10, long max_den = 6) {
        return make_rational(int_in(-mag, mag), int_in(1, max_den));
    }

    Rational nonzero_rational(long mag = 10, long max_den = 6) {
        for (;;) {
            Rational q = rational(mag, max_den);
            if (q != 0) return q;
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace ct
