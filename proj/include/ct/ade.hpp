#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ct/bipoly.hpp"
#include "ct/rational_function.hpp"

namespace ct {

enum class FamilyKind { A, D, E6, E7, E8 };

// Which ADE family, its index, and the germ sign choices.
//   A_n (n >= 2): sign1 = sign of x^{n+1}, sign2 = sign of y^2
//   D_n (n >= 4): sign1 = sign of y^{n-1}
//   E6:           sign1 = sign of y^4
//   E7, E8:       no sign freedom
struct FamilySpec {
    FamilyKind kind = FamilyKind::A;
    int n = 2;
    int sign1 = +1;
    int sign2 = +1;

    // Grammar: A<n>[++|+-|-+|--], D<n>[+|-], E6[+|-], E7, E8.
    // Defaults are ++ / +.
    static FamilySpec parse(const std::string& text);
    std::string str() const;

    // Degree of the elimination polynomial = maximum number of images.
    int max_images() const;
    Var elimination_var() const { return kind == FamilyKind::A ? Var::x : Var::y; }
    // Number of unfolding coefficients c.
    int param_count() const;
};

// Unfolding coefficients.  A_n: (c3..c_{n-1}); D_n: (c2..c_{n-2});
// E6: (c1,c2,c3); E7: (c1..c4); E8: (c1..c5).
struct Params {
    std::vector<Rational> c;
};

struct SourcePoint {
    Rational s1, s2;
    bool exact = true; // false when the caller supplied float input
};

// Throws UsageError on an index/sign/parameter-count mismatch.
void validate(const FamilySpec& spec, const Params& params);

// F_{c,s}, the germ plus unfolding (constant term omitted).
BiPoly potential(const FamilySpec& spec, const Params& params, const SourcePoint& s);

// F is affine in the target point: F = f0 + s1*m1 + s2*m2.  This split is what
// makes "substitute s = f(x,y) into grad F" a polynomial operation.
struct AffinePotential {
    BiPoly f0, m1, m2;
};
AffinePotential potential_affine(const FamilySpec& spec, const Params& params);

// The induced map between planes; lensed images of s are the solutions of
// lens_map(x,y) = s.  Does not depend on s.
std::pair<BiPoly, BiPoly> lens_map(const FamilySpec& spec, const Params& params);

// det of the 2x2 matrix of partial derivatives of lens_map.
BiPoly jacobian_determinant(const FamilySpec& spec, const Params& params);

// Hand-coded elimination polynomial phi in the family's elimination variable;
// its roots are one coordinate of every pre-image of s.
QPoly eliminate(const FamilySpec& spec, const Params& params, const SourcePoint& s);

// Resultant-based elimination of (f1 - s1, f2 - s2); independent oracle for
// eliminate(), equal to it up to a nonzero constant factor.
QPoly eliminate_by_resultant(const FamilySpec& spec, const Params& params, const SourcePoint& s);

// The denominator polynomial (in the elimination variable) of the
// back-substitution; constant 1 for A_n.
QPoly backsub_denominator(const FamilySpec& spec, const Params& params);

// Recover the full pre-image (x, y) from a root of phi.  Throws
// DenominatorVanishes when the family denominator is ~0 at the root.
std::pair<std::complex<double>, std::complex<double>>
back_substitute(const FamilySpec& spec, const Params& params, const SourcePoint& s,
                const std::complex<double>& root, double tol = 1e-9);

// Signed magnification as a function of the elimination variable:
// 1/M = det(Jac f) expressed along the image set.
RationalFn magnification_fn(const FamilySpec& spec, const Params& params, const SourcePoint& s);

// Closed-form coset representative of phi' * M mod phi, where known:
// A_n: sign2/2; D_n: 2y; E7: -(c1+3y^2); E8: -(c1+2c4 y+3c5 y^2).
// E6 has no closed form here; the trace engine derives it.
std::optional<QPoly> expected_coset_rep(const FamilySpec& spec, const Params& params);

} // namespace ct
