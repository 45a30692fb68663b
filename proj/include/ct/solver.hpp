#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ct/ade.hpp"

namespace ct {

struct PreImage {
    std::complex<double> x, y;
    std::complex<double> magnification;
    bool is_real = false;
};

struct DegenerateRoot {
    std::complex<double> root;
    double den_abs = 0.0;
};

struct SolveReport {
    FamilySpec spec;
    Params params;
    SourcePoint s;
    std::vector<PreImage> images;          // one per non-degenerate root of phi
    std::vector<DegenerateRoot> degenerate; // roots where the x-denominator ~ 0
    int n_real = 0;
    double sum_real = 0.0;                 // pairwise sum of real-image magnifications
    std::complex<double> sum_all;          // pairwise sum over all listed pre-images
    double min_abs_detjac = 0.0;
    double min_root_sep = 0.0;             // closest root pair, relative to root scale
    bool caustic_flag = false;
    double caustic_witness = 0.0;
};

// Solve lens_map(x,y) = s: all deg(phi) pre-images, signed magnifications
// 1/det(Jac f) at each, the real subset, and the signed sums.  Near-caustic
// targets are flagged, not rejected.
SolveReport solve_images(const FamilySpec& spec, const Params& params, const SourcePoint& s,
                         double tol = 1e-9);

// (sum over real images, sum over all images), recomputed from the report.
std::pair<double, std::complex<double>> signed_sums(const SolveReport& report);

struct CausticCheck {
    bool flag = false;
    double witness = 0.0; // min of the normalized root-separation product and min |det Jac|
};

// s lies (numerically) on a caustic: phi has a repeated root, or det Jac
// vanishes at an image.
CausticCheck is_caustic(const FamilySpec& spec, const Params& params, const SourcePoint& s,
                        double tol = 1e-9);

// JSON object with fields {family, params, s, images, n_real, sum_real,
// sum_all, min_abs_detjac, caustic_flag, degenerate, inexact_input}.
std::string report_to_json(const SolveReport& report, int indent = 2);

} // namespace ct
