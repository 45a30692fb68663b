#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ct/solver.hpp"

namespace ct {

// Closed source-plane rectangle sampled with `resolution` points per axis
// (endpoints included).
struct GridSpec {
    Rational s1_lo, s1_hi;
    Rational s2_lo, s2_hi;
    int resolution = 2;
};

struct RegionCell {
    SourcePoint s;
    int n_real = 0;
    double sum_real = 0.0;
    bool caustic_flag = false;
    int n_degenerate = 0;
};

// Row-major: s2 varies over rows, s1 over columns; cell index = i2*res + i1.
struct RegionMap {
    GridSpec grid;
    std::vector<RegionCell> cells;
};

struct MapOptions {
    double tol = 1e-9;
    // Near-caustic cell detection probes the numeric discriminant at the cell
    // and one cell step along each axis: a sign change means the caustic
    // crosses within the probe step, and |disc| below caustic_kappa times the
    // local disc variation means it is within about that many cells.
    double caustic_kappa = 1.0;
    // Cells are independent; with threads > 1 rows are evaluated concurrently
    // and written into their fixed row-major slots, so the output is
    // byte-identical to a serial run.
    int threads = 1;
};

RegionMap map_source_plane(const FamilySpec& spec, const Params& params, const GridSpec& grid,
                           const MapOptions& opt = {});

// CSV with header s1,s2,n_real,sum_real,caustic_flag.
std::string region_csv(const RegionMap& map);

struct MaxImageWitness {
    FamilySpec spec;
    Params params;
    SourcePoint s;
    int n_real = 0;
    int target = 0;
    bool found = false;
    int attempts = 0;
};

struct WitnessOptions {
    std::uint64_t seed = 12345;
    int budget = 10000; // solve budget for the randomized search
    bool use_anchors = true;
    double tol = 1e-9;
};

// A point of the maximum-image region, with parameters.  A_n is synthesized
// deterministically by prescribing real roots; D_n uses a root-prescription
// anchor; E6/E7/E8 use known anchor configurations.  Randomized search with
// source dilation is the fallback.
MaxImageWitness find_max_image_witness(const FamilySpec& spec, const WitnessOptions& opt = {});

struct Window {
    double x_lo, x_hi, y_lo, y_hi;
};

// Zero locus of det Jac f in the domain window: sign-change scan with linear
// edge interpolation.  Points come out in grid scan order.
std::vector<std::pair<double, double>> critical_curve(const FamilySpec& spec, const Params& params,
                                                      const Window& window, int resolution);

// Image of the critical curve under lens_map.
std::vector<std::pair<double, double>> caustic(const FamilySpec& spec, const Params& params,
                                               const Window& window, int resolution);

// CSV point list with the given two-column header.
std::string points_csv(const std::vector<std::pair<double, double>>& pts, const std::string& h1,
                       const std::string& h2);

std::string witness_to_json(const MaxImageWitness& w, int indent = 2);

} // namespace ct
