#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ct/ade.hpp"

namespace ct {

// One random draw of (params, s) with the resulting coset representative of
// phi' * M modulo phi and its top coefficient b_{n-1}.
struct CosetDraw {
    std::vector<std::string> params;
    std::string s1, s2;
    std::vector<std::string> coset_rep; // ascending coefficients, exact
    std::string b_top;
    bool ok = false;
};

struct CosetInstanceResult {
    FamilySpec spec;
    int draws = 0;
    int failures = 0;
    std::vector<CosetDraw> records;
};

struct CosetSuiteResult {
    std::uint64_t seed = 0;
    bool all_ok = true;
    std::vector<CosetInstanceResult> instances;
    std::vector<std::string> notes;
};

// Exact verification of the coset identities, `draws` random rational
// parameter draws per family instance: A_n -> sign2/2, D_n -> 2y,
// E7 -> -(c1+3y^2), E8 -> -(c1+2c4 y+3c5 y^2), all with b_{n-1} = 0 exactly;
// E6 -> derived representative of degree <= 5 with b_5 = 0 exactly.
// Draws that land on degenerate configurations (repeated roots, vanishing
// reduction denominators) are redrawn deterministically.
CosetSuiteResult run_coset_suite(const std::vector<FamilySpec>& instances, int draws,
                                 std::uint64_t seed);

// All sign/index variants of one family letter within [n_lo, n_hi] (ignored
// for E6/E7/E8).
std::vector<FamilySpec> family_instances(FamilyKind kind, int n_lo, int n_hi);

std::string coset_suite_to_json(const CosetSuiteResult& result, int indent = 2);

} // namespace ct
