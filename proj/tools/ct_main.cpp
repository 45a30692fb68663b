// ct: construct ADE caustic families, solve for lensed images, verify
// magnification sum rules, and map source-plane image-count regions.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ct/euler_trace.hpp"
#include "ct/format.hpp"
#include "ct/jsonio.hpp"
#include "ct/region.hpp"
#include "ct/solver.hpp"
#include "ct/verify.hpp"

namespace {

using namespace ct;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

struct RationalList {
    std::vector<Rational> values;
    bool exact = true;
};

RationalList parse_rational_list(const std::string& text) {
    RationalList out;
    if (text.empty()) return out;
    for (const auto& tok : split(text, ',')) {
        ParsedRational p = parse_rational(tok);
        out.values.push_back(p.value);
        out.exact = out.exact && p.exact;
    }
    return out;
}

QPoly poly_from_list(const std::string& text) {
    RationalList list = parse_rational_list(text);
    return QPoly(std::move(list.values));
}

SourcePoint parse_source(const std::string& text) {
    RationalList l = parse_rational_list(text);
    if (l.values.size() != 2) throw UsageError("--source expects two comma-separated values");
    return {l.values[0], l.values[1], l.exact};
}

// "lo:hi:res" (square) or "lo1:hi1:lo2:hi2:res"
GridSpec parse_grid(const std::string& text) {
    auto parts = split(text, ':');
    GridSpec g;
    if (parts.size() == 3) {
        g.s1_lo = g.s2_lo = parse_rational(parts[0]).value;
        g.s1_hi = g.s2_hi = parse_rational(parts[1]).value;
        g.resolution = std::stoi(parts[2]);
    } else if (parts.size() == 5) {
        g.s1_lo = parse_rational(parts[0]).value;
        g.s1_hi = parse_rational(parts[1]).value;
        g.s2_lo = parse_rational(parts[2]).value;
        g.s2_hi = parse_rational(parts[3]).value;
        g.resolution = std::stoi(parts[4]);
    } else {
        throw UsageError("--grid expects lo:hi:res or lo1:hi1:lo2:hi2:res");
    }
    if (g.resolution < 2) throw UsageError("grid resolution must be at least 2");
    return g;
}

Window parse_window(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() != 4) throw UsageError("--window expects x0:x1:y0:y1");
    return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3])};
}

// Full output is assembled in memory first so a failure never leaves a
// partial file behind.
void emit(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file: " + path);
    out << payload;
}

double default_tol() {
    if (const char* env = std::getenv("CT_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw UsageError("CT_TOL is not a number");
        }
    }
    return 1e-9;
}

Params params_for(const FamilySpec& spec, const std::string& text) {
    Params params;
    params.c = parse_rational_list(text).values;
    if (static_cast<int>(params.c.size()) != spec.param_count())
        throw UsageError("family " + spec.str() + " takes " + std::to_string(spec.param_count()) +
                         " unfolding coefficients, got " + std::to_string(params.c.size()));
    return params;
}

int cmd_verify(const std::string& family, const std::string& nrange, int draws,
               std::uint64_t seed, const std::string& output) {
    std::vector<FamilySpec> instances;
    if (family == "A" || family == "D" || family == "E6" || family == "E7" || family == "E8") {
        int lo = 2, hi = 12;
        if (!nrange.empty()) {
            auto parts = split(nrange, '.');
            // accept "lo..hi" or a single value
            std::vector<std::string> nums;
            for (const auto& p : parts)
                if (!p.empty()) nums.push_back(p);
            if (nums.size() == 1) {
                lo = hi = std::stoi(nums[0]);
            } else if (nums.size() == 2) {
                lo = std::stoi(nums[0]);
                hi = std::stoi(nums[1]);
            } else {
                throw UsageError("--n expects n or lo..hi");
            }
        }
        FamilyKind kind = family == "A"    ? FamilyKind::A
                          : family == "D"  ? FamilyKind::D
                          : family == "E6" ? FamilyKind::E6
                          : family == "E7" ? FamilyKind::E7
                                           : FamilyKind::E8;
        instances = family_instances(kind, lo, hi);
        if (instances.empty())
            throw UsageError("no valid family instances in the requested range");
    } else {
        if (!nrange.empty()) throw UsageError("--n cannot be combined with a fully specified family");
        instances.push_back(FamilySpec::parse(family));
    }
    CosetSuiteResult result = run_coset_suite(instances, draws, seed);
    emit(coset_suite_to_json(result), output);
    return result.all_ok ? 0 : 1;
}

int cmd_images(const std::string& family, const std::string& params_text,
               const std::string& source, double tol, const std::string& output) {
    FamilySpec spec = FamilySpec::parse(family);
    Params params = params_for(spec, params_text);
    SourcePoint s = parse_source(source);
    SolveReport rep = solve_images(spec, params, s, tol);
    emit(report_to_json(rep), output);
    return 0;
}

int cmd_trace(const std::string& phi_text, const std::string& num_text,
              const std::string& den_text, double tol, const std::string& output) {
    QPoly phi = poly_from_list(phi_text);
    if (phi.degree() < 1) throw UsageError("--phi must have positive degree");
    RationalFn h(poly_from_list(num_text), poly_from_list(den_text));
    TraceReport rep = trace_sum(phi, h);

    Json j;
    Json coset = Json::array();
    for (int i = 0; i <= rep.coset_rep.degree(); ++i)
        coset.push_back(json_rational(rep.coset_rep.coeff(i)));
    j["coset_rep"] = coset;
    j["b_top"] = json_rational(rep.b_top);
    j["a_lead"] = json_rational(rep.a_lead);
    j["value"] = json_rational(rep.value);
    j["value_double"] = to_double(rep.value);
    try {
        j["numeric_oracle"] = json_complex(numeric_trace_oracle(phi, h, tol));
    } catch (const Error& e) {
        j["numeric_oracle"] = nullptr;
        j["numeric_oracle_error"] = e.what();
    }
    emit(j.dump(2), output);
    return 0;
}

int cmd_map(const std::string& family, const std::string& params_text, const std::string& grid_text,
            double tol, int threads, const std::string& output, const std::string& critical_out,
            const std::string& caustic_out, const std::string& window_text, int curve_res) {
    FamilySpec spec = FamilySpec::parse(family);
    Params params = params_for(spec, params_text);
    if (!grid_text.empty()) {
        GridSpec grid = parse_grid(grid_text);
        MapOptions opt;
        opt.tol = tol;
        opt.threads = threads;
        emit(region_csv(map_source_plane(spec, params, grid, opt)), output);
    }
    if (!critical_out.empty() || !caustic_out.empty()) {
        if (window_text.empty()) throw UsageError("curve extraction needs --window");
        Window w = parse_window(window_text);
        if (!critical_out.empty())
            emit(points_csv(critical_curve(spec, params, w, curve_res), "x", "y"), critical_out);
        if (!caustic_out.empty())
            emit(points_csv(caustic(spec, params, w, curve_res), "s1", "s2"), caustic_out);
    }
    return 0;
}

int cmd_witness(const std::string& family, std::uint64_t seed, int budget, bool no_anchors,
                double tol, const std::string& output) {
    WitnessOptions opt;
    opt.seed = seed;
    opt.budget = budget;
    opt.use_anchors = !no_anchors;
    opt.tol = tol;
    MaxImageWitness w = find_max_image_witness(FamilySpec::parse(family), opt);
    emit(witness_to_json(w), output);
    return w.found ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ADE caustic families: images, magnification sums, Euler traces, region maps"};
    app.require_subcommand(1);

    std::string family, params_text, source_text, nrange, output;
    std::string phi_text, hnum_text, hden_text("1");
    std::string grid_text, window_text, critical_out, caustic_out;
    int draws = 100, budget = 10000, curve_res = 201, threads = 1;
    std::uint64_t seed = 12345;
    bool no_anchors = false;
    double tol = 1e-9; // overridden by CT_TOL unless --tol is given
    std::vector<CLI::Option*> tol_opts;

    auto* verify = app.add_subcommand("verify", "exact coset-identity suite");
    verify->add_option("--family", family, "family letter (A, D, E6, E7, E8) or full spec like A5+-")
        ->required();
    verify->add_option("--n", nrange, "index range lo..hi (family letter form only)");
    verify->add_option("--draws", draws, "random draws per instance")->capture_default_str();
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify->add_option("--output,-o", output, "output path (default stdout)");

    auto* images = app.add_subcommand("images", "solve all pre-images of a target point");
    images->add_option("--family", family)->required();
    images->add_option("--params", params_text, "comma-separated unfolding coefficients");
    images->add_option("--source", source_text, "target point s1,s2")->required();
    tol_opts.push_back(images->add_option("--tol", tol, "tolerance")->capture_default_str());
    images->add_option("--output,-o", output);

    auto* trace = app.add_subcommand("trace", "Euler trace of a rational function over roots of phi");
    trace->add_option("--phi", phi_text, "phi coefficients, ascending")->required();
    trace->add_option("--h-num", hnum_text, "numerator coefficients, ascending")->required();
    trace->add_option("--h-den", hden_text, "denominator coefficients, ascending")
        ->capture_default_str();
    tol_opts.push_back(trace->add_option("--tol", tol)->capture_default_str());
    trace->add_option("--output,-o", output);

    auto* map = app.add_subcommand("map", "image-count map over the source plane; caustic curves");
    map->add_option("--family", family)->required();
    map->add_option("--params", params_text);
    map->add_option("--grid", grid_text, "lo:hi:res or lo1:hi1:lo2:hi2:res");
    tol_opts.push_back(map->add_option("--tol", tol)->capture_default_str());
    map->add_option("--output,-o", output, "region CSV path (default stdout)");
    map->add_option("--critical-curve", critical_out, "write critical-curve CSV here");
    map->add_option("--caustic", caustic_out, "write caustic CSV here");
    map->add_option("--window", window_text, "domain window x0:x1:y0:y1 for curve extraction");
    map->add_option("--curve-res", curve_res, "curve scan resolution")->capture_default_str();
    map->add_option("--threads", threads, "worker threads for the sweep (output is identical)")
        ->capture_default_str();

    auto* witness = app.add_subcommand("witness", "find a maximum-image configuration");
    witness->add_option("--family", family)->required();
    witness->add_option("--seed", seed)->capture_default_str();
    witness->add_option("--budget", budget)->capture_default_str();
    witness->add_flag("--no-anchors", no_anchors, "skip anchors, randomized search only");
    tol_opts.push_back(witness->add_option("--tol", tol)->capture_default_str());
    witness->add_option("--output,-o", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        bool tol_given = false;
        for (const auto* opt : tol_opts) tol_given = tol_given || opt->count() > 0;
        if (!tol_given) tol = default_tol();
        if (verify->parsed()) return cmd_verify(family, nrange, draws, seed, output);
        if (images->parsed()) return cmd_images(family, params_text, source_text, tol, output);
        if (trace->parsed()) return cmd_trace(phi_text, hnum_text, hden_text, tol, output);
        if (map->parsed())
            return cmd_map(family, params_text, grid_text, tol, threads, output, critical_out,
                           caustic_out, window_text, curve_res);
        if (witness->parsed())
            return cmd_witness(family, seed, budget, no_anchors, tol, output);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
