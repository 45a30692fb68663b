// Acceptance suite: one line per criterion, exit nonzero on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "ct/euler_trace.hpp"
#include "ct/region.hpp"
#include "ct/rng.hpp"
#include "ct/solver.hpp"
#include "ct/verify.hpp"

using namespace ct;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "    FAILED: " << what << "\n";
        }
    }
};

Params random_params(Rng& rng, const FamilySpec& spec, long mag = 10, long max_den = 4) {
    Params p;
    for (int i = 0; i < spec.param_count(); ++i) p.c.push_back(rng.rational(mag, max_den));
    return p;
}

std::vector<FamilySpec> all_family_variants(int a_hi, int d_hi) {
    std::vector<FamilySpec> out = family_instances(FamilyKind::A, 2, a_hi);
    auto d = family_instances(FamilyKind::D, 4, d_hi);
    out.insert(out.end(), d.begin(), d.end());
    for (FamilyKind k : {FamilyKind::E6, FamilyKind::E7, FamilyKind::E8}) {
        auto e = family_instances(k, 0, 0);
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

// --- criterion 1: exact coset identities --------------------------------

bool criterion1(std::ostream& os) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    CosetSuiteResult res = run_coset_suite(all_family_variants(12, 12), 100, 20250810);
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(res.all_ok, "some coset identity failed");
    for (const auto& inst : res.instances)
        if (inst.failures)
            c.detail << "    " << inst.spec.str() << ": " << inst.failures << " failures\n";
    c.require(secs < 60.0, "runtime exceeded 60 s");
    os << c.detail.str();
    os << "    (" << res.instances.size() << " family instances x 100 draws, " << secs << " s)\n";
    return c.ok;
}

// --- criterion 2: magnification sum rule, numerically ---------------------

bool criterion2(std::ostream& os) {
    Check c;
    Rng rng(77);
    std::vector<FamilySpec> specs = all_family_variants(10, 10);
    for (const auto& spec : specs) {
        int done = 0;
        while (done < 50) {
            Params params = random_params(rng, spec, 5, 2);
            SourcePoint s{rng.rational(5, 2), rng.rational(5, 2), true};
            SolveReport rep;
            try {
                rep = solve_images(spec, params, s);
            } catch (const Error&) {
                continue;
            }
            if (rep.caustic_flag || !rep.degenerate.empty()) continue;
            double scale = 1.0;
            for (const auto& img : rep.images) scale = std::max(scale, std::abs(img.magnification));
            if (!(std::abs(rep.sum_all) <= 1e-8 * scale)) {
                c.require(false, spec.str() + ": |sum_all| = " + std::to_string(std::abs(rep.sum_all)) +
                                     " at scale " + std::to_string(scale));
                break;
            }
            ++done;
        }
    }

    // maximum-image witnesses
    std::vector<FamilySpec> wspecs;
    for (int n = 2; n <= 10; ++n) wspecs.push_back({FamilyKind::A, n, +1, +1});
    wspecs.push_back({FamilyKind::A, 5, -1, -1});
    for (int n = 4; n <= 10; ++n)
        for (int sign : {+1, -1}) wspecs.push_back({FamilyKind::D, n, sign, +1});
    wspecs.push_back({FamilyKind::E6, 6, +1, +1});
    wspecs.push_back({FamilyKind::E6, 6, -1, +1});
    wspecs.push_back({FamilyKind::E7, 7, +1, +1});
    wspecs.push_back({FamilyKind::E8, 8, +1, +1});
    for (const auto& spec : wspecs) {
        MaxImageWitness w = find_max_image_witness(spec);
        if (!w.found || w.n_real != spec.max_images()) {
            c.require(false, spec.str() + ": witness not found (best " + std::to_string(w.n_real) +
                                 "/" + std::to_string(spec.max_images()) + ")");
            continue;
        }
        SolveReport rep = solve_images(spec, w.params, w.s);
        double scale = 1.0;
        for (const auto& img : rep.images) scale = std::max(scale, std::abs(img.magnification));
        c.require(rep.n_real == spec.max_images(), spec.str() + ": witness lost images on re-solve");
        c.require(std::abs(rep.sum_real) <= 1e-8 * scale,
                  spec.str() + ": |sum_real| = " + std::to_string(std::abs(rep.sum_real)));
    }
    os << c.detail.str();
    return c.ok;
}

// --- criterion 3: trace engine vs numeric oracle -------------------------

bool criterion3(std::ostream& os) {
    Check c;
    Rng rng(909);
    int done = 0;
    while (done < 200) {
        int deg = 2 + static_cast<int>(rng.below(11)); // 2..12
        std::vector<Rational> coeffs;
        for (int i = 0; i <= deg; ++i) coeffs.push_back(rng.rational(10, 4));
        QPoly phi(std::move(coeffs));
        if (phi.degree() < 2 || !is_squarefree(phi)) continue;
        QPoly num, den;
        {
            std::vector<Rational> nc, dc;
            int dn = static_cast<int>(rng.below(5)), dd = static_cast<int>(rng.below(4));
            for (int i = 0; i <= dn; ++i) nc.push_back(rng.rational(10, 4));
            for (int i = 0; i <= dd; ++i) dc.push_back(rng.rational(10, 4));
            num = QPoly(std::move(nc));
            den = QPoly(std::move(dc));
        }
        if (den.is_zero() || poly_gcd(den, phi).degree() != 0) continue;
        RationalFn h(num, den);
        TraceReport exact = trace_sum(phi, h);
        std::complex<double> approx;
        try {
            approx = numeric_trace_oracle(phi, h);
        } catch (const Error&) {
            continue;
        }
        double want = to_double(exact.value);
        if (!(std::abs(approx - std::complex<double>(want, 0.0)) <= 1e-8 * (1.0 + std::abs(want)))) {
            c.require(false, "trace mismatch at draw " + std::to_string(done));
            break;
        }
        ++done;
    }
    os << c.detail.str();
    return c.ok;
}

// --- criterion 4: elimination resultant oracle ----------------------------

bool criterion4(std::ostream& os) {
    Check c;
    Rng rng(404);
    std::vector<FamilySpec> specs;
    for (int n = 4; n <= 9; ++n)
        for (int sign : {+1, -1}) specs.push_back({FamilyKind::D, n, sign, +1});
    specs.push_back({FamilyKind::E6, 6, +1, +1});
    specs.push_back({FamilyKind::E6, 6, -1, +1});
    specs.push_back({FamilyKind::E7, 7, +1, +1});
    specs.push_back({FamilyKind::E8, 8, +1, +1});

    for (const auto& spec : specs) {
        int done = 0, adjudicated = 0;
        while (done < 20) {
            Params params = random_params(rng, spec, 8, 3);
            if ((spec.kind == FamilyKind::E6 || spec.kind == FamilyKind::E8) && params.c[0] == 0)
                params.c[0] = 1; // keep the second component of positive x-degree
            SourcePoint s{rng.rational(8, 3), rng.rational(8, 3), true};
            QPoly hand = eliminate(spec, params, s);
            QPoly res;
            try {
                res = eliminate_by_resultant(spec, params, s);
            } catch (const DegenerateResultant&) {
                continue;
            }
            if (res.is_zero() || hand * res.lc() != res * hand.lc()) {
                c.require(false, spec.str() + ": resultant disagrees with hand-coded phi");
                break;
            }
            if (spec.kind == FamilyKind::E8) {
                const Rational& c5 = params.c[4];
                Rational implied = res.coeff(7) / res.coeff(8) * Rational(75);
                if (implied != 9 * c5 * c5 * c5) {
                    c.require(false, "E8 y^7 coefficient is not 9 c5^3");
                    break;
                }
                if (c5 != 0 && c5 != 1 && c5 != -1 && implied != 9 * c5) ++adjudicated;
            }
            ++done;
        }
        if (spec.kind == FamilyKind::E8)
            c.require(adjudicated > 0, "no E8 draw separated 9 c5^3 from 9 c5");
    }
    os << c.detail.str();
    return c.ok;
}

// --- criterion 5: structural identities, exact ---------------------------

bool criterion5(std::ostream& os) {
    Check c;
    Rng rng(505);
    for (const auto& spec : all_family_variants(12, 12)) {
        for (int draw = 0; draw < 3; ++draw) {
            Params params = random_params(rng, spec);
            SourcePoint s{rng.rational(), rng.rational(), true};

            BiPoly hd = hessian_determinant(potential(spec, params, s));
            BiPoly jd = jacobian_determinant(spec, params);
            if (spec.kind == FamilyKind::A) {
                BiPoly ysub = BiPoly::constant(s.s2 * Rational(spec.sign2) / 2);
                jd = jd.compose(BiPoly::var_x(), ysub);
            }
            c.require(hd == jd, spec.str() + ": det Hess F != det Jac f");

            auto ap = potential_affine(spec, params);
            auto [f1, f2] = lens_map(spec, params);
            BiPoly gx = ap.f0.dx() + f1 * ap.m1.dx() + f2 * ap.m2.dx();
            BiPoly gy = ap.f0.dy() + f1 * ap.m1.dy() + f2 * ap.m2.dy();
            c.require(gx.is_zero() && gy.is_zero(), spec.str() + ": gradient identity failed");

            if (spec.kind == FamilyKind::A) {
                BiPoly raw = BiPoly::term(spec.n + 1, 0, Rational(spec.sign1)) +
                             BiPoly::term(0, 2, Rational(spec.sign2));
                for (int k = 3; k <= spec.n - 1; ++k) raw += BiPoly::term(k, 0, params.c[k - 3]);
                raw += BiPoly::term(2, 0, s.s2);
                raw += BiPoly::term(1, 0, -s.s1);
                BiPoly shifted = hessian_determinant(raw).compose(
                    BiPoly::var_x(), BiPoly::var_y() + BiPoly::constant(s.s2 / 2));
                c.require(shifted == hd, spec.str() + ": Hessian shift invariance failed");
            }
        }
    }
    os << c.detail.str();
    return c.ok;
}

// --- criterion 6: known-case regression ----------------------------------

bool criterion6(std::ostream& os) {
    Check c;
    // A2 fold, two-image region
    SolveReport a2 = solve_images({FamilyKind::A, 2, +1, +1}, Params{}, {Rational(1), Rational(0), true});
    c.require(a2.n_real == 2, "A2: expected 2 real images");
    c.require(std::abs(a2.sum_real) <= 1e-10, "A2: fold sum != 0");

    // A3 cusp at s = (0, -2): M = {1/16, -1/8, 1/16}
    SolveReport a3 = solve_images({FamilyKind::A, 3, +1, +1}, Params{}, {Rational(0), Rational(-2), true});
    c.require(a3.n_real == 3, "A3: expected 3 real images");
    if (a3.images.size() == 3) {
        c.require(std::abs(a3.images[0].magnification.real() - 1.0 / 16) <= 1e-10, "A3: M_1 != 1/16");
        c.require(std::abs(a3.images[1].magnification.real() + 1.0 / 8) <= 1e-10, "A3: M_2 != -1/8");
        c.require(std::abs(a3.images[2].magnification.real() - 1.0 / 16) <= 1e-10, "A3: M_3 != 1/16");
    }
    c.require(std::abs(a3.sum_real) <= 1e-10, "A3: cusp sum != 0");

    // D4+ at s = (1/2, 1), c2 = 0: M = {1/2, 1/2, -1/2, -1/2}
    SolveReport d4 = solve_images({FamilyKind::D, 4, +1, +1}, Params{{Rational(0)}},
                                  {make_rational(1, 2), Rational(1), true});
    c.require(d4.n_real == 4, "D4+: expected 4 real images");
    std::vector<double> mags;
    for (const auto& img : d4.images) mags.push_back(img.magnification.real());
    std::sort(mags.begin(), mags.end());
    if (mags.size() == 4) {
        c.require(std::abs(mags[0] + 0.5) <= 1e-10 && std::abs(mags[1] + 0.5) <= 1e-10 &&
                      std::abs(mags[2] - 0.5) <= 1e-10 && std::abs(mags[3] - 0.5) <= 1e-10,
                  "D4+: magnifications are not {1/2, 1/2, -1/2, -1/2}");
    }
    c.require(std::abs(d4.sum_real) <= 1e-10, "D4+: sum != 0");
    os << c.detail.str();
    return c.ok;
}

// --- criterion 7: region-map consistency ----------------------------------

bool criterion7(std::ostream& os) {
    Check c;
    const int res = 61;
    GridSpec g{Rational(-2), Rational(2), Rational(-2), Rational(2), res};
    RegionMap a2 = map_source_plane({FamilyKind::A, 2, +1, +1}, Params{}, g);
    const double cellw = 4.0 / (res - 1);
    for (int row = 0; row < res; ++row) {
        double s2 = to_double(a2.cells[static_cast<std::size_t>(row) * res].s.s2);
        double boundary = -s2 * s2 / 3.0;
        if (boundary < -2.0 + cellw) continue;
        bool found = false;
        for (int col = 0; col + 1 < res; ++col) {
            const auto& a = a2.cells[static_cast<std::size_t>(row) * res + col];
            const auto& b = a2.cells[static_cast<std::size_t>(row) * res + col + 1];
            if (a.n_real == 0 && b.n_real == 2) {
                double transition = 0.5 * (to_double(a.s.s1) + to_double(b.s.s1));
                c.require(std::abs(transition - boundary) <= cellw,
                          "A2 boundary off by more than one cell at s2 = " + std::to_string(s2));
                found = true;
                break;
            }
        }
        c.require(found, "A2: no 0 -> 2 transition found in row");
    }

    struct Case {
        FamilySpec spec;
        Params params;
    };
    std::vector<Case> cases = {
        {{FamilyKind::A, 2, +1, +1}, Params{}},
        {{FamilyKind::A, 3, +1, +1}, Params{}},
        {{FamilyKind::D, 4, +1, +1}, Params{{Rational(0)}}},
        {{FamilyKind::D, 4, -1, +1}, Params{{Rational(1)}}},
        {{FamilyKind::E7, 7, +1, +1},
         Params{{Rational(-2), Rational(3), Rational(2), Rational(-1)}}},
    };
    for (const auto& cs : cases) {
        const int r2 = 31;
        RegionMap map = map_source_plane(cs.spec, cs.params,
                                         {Rational(-2), Rational(2), Rational(-2), Rational(2), r2});
        int deg = cs.spec.max_images();
        for (const auto& cell : map.cells) {
            if (cell.n_degenerate > 0) continue;
            if ((deg - cell.n_real) % 2 != 0) {
                c.require(false, cs.spec.str() + ": parity violated at a cell");
                break;
            }
        }
        for (int row = 0; row < r2; ++row)
            for (int col = 0; col + 1 < r2; ++col) {
                const auto& a = map.cells[static_cast<std::size_t>(row) * r2 + col];
                const auto& b = map.cells[static_cast<std::size_t>(row) * r2 + col + 1];
                if (a.n_degenerate || b.n_degenerate) continue;
                if (a.n_real != b.n_real && !(a.caustic_flag || b.caustic_flag)) {
                    c.require(false, cs.spec.str() + ": unflagged region boundary in a row");
                    row = r2;
                    break;
                }
            }
    }
    os << c.detail.str();
    return c.ok;
}

// --- criterion 8: determinism --------------------------------------------

bool criterion8(std::ostream& os) {
    Check c;
    {
        std::vector<FamilySpec> specs = family_instances(FamilyKind::A, 2, 4);
        auto e8 = family_instances(FamilyKind::E8, 0, 0);
        specs.insert(specs.end(), e8.begin(), e8.end());
        std::string r1 = coset_suite_to_json(run_coset_suite(specs, 10, 7));
        std::string r2 = coset_suite_to_json(run_coset_suite(specs, 10, 7));
        c.require(r1 == r2, "coset suite JSON not byte-identical");
    }
    {
        FamilySpec spec{FamilyKind::D, 4, +1, +1};
        Params params{{Rational(0)}};
        SourcePoint s{make_rational(1, 2), Rational(1), true};
        c.require(report_to_json(solve_images(spec, params, s)) ==
                      report_to_json(solve_images(spec, params, s)),
                  "solve report JSON not byte-identical");
        GridSpec g{Rational(-2), Rational(2), Rational(-2), Rational(2), 21};
        c.require(region_csv(map_source_plane(spec, params, g)) ==
                      region_csv(map_source_plane(spec, params, g)),
                  "region CSV not byte-identical");
    }
    {
        WitnessOptions opt;
        opt.seed = 99;
        c.require(witness_to_json(find_max_image_witness(FamilySpec::parse("E8"), opt)) ==
                      witness_to_json(find_max_image_witness(FamilySpec::parse("E8"), opt)),
                  "witness JSON not byte-identical");
        WitnessOptions rnd;
        rnd.seed = 99;
        rnd.use_anchors = false;
        c.require(witness_to_json(find_max_image_witness(FamilySpec::parse("D4+"), rnd)) ==
                      witness_to_json(find_max_image_witness(FamilySpec::parse("D4+"), rnd)),
                  "randomized witness JSON not byte-identical");
    }
    os << c.detail.str();
    return c.ok;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::ostream&)> run;
    };
    std::vector<Criterion> criteria = {
        {"1. exact coset identities (A2..A12 x4, D4..D12 x2, E6+-, E7, E8; 100 draws)", criterion1},
        {"2. numeric sum rule: sum_all ~ 0 off-caustic; max-image witnesses sum_real ~ 0", criterion2},
        {"3. Euler trace engine vs numeric oracle (200 draws, deg <= 12)", criterion3},
        {"4. elimination equals Sylvester resultant (D4..D9, E6, E7, E8; E8 y^7 = 9 c5^3)", criterion4},
        {"5. structural identities: det Hess = det Jac, gradient, A_n shift", criterion5},
        {"6. known-case regression: A2 fold, A3 cusp, D4+ hyperbolic umbilic", criterion6},
        {"7. region map: A2 boundary within one cell; parity invariant", criterion7},
        {"8. determinism: repeated runs are byte-identical", criterion8},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail << "    exception: " << e.what() << "\n";
        }
        std::cout << (ok ? "PASS" : "FAIL") << "  " << criterion.name << "\n" << detail.str();
        std::cout.flush();
        if (!ok) ++failures;
    }
    if (failures) std::cout << failures << " criteria FAILED\n";
    else std::cout << "all criteria passed\n";
    return failures ? 1 : 0;
}
