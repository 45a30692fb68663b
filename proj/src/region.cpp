#include "ct/region.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "ct/format.hpp"
#include "ct/jsonio.hpp"
#include "ct/rng.hpp"
#include "ct/roots.hpp"

namespace ct {

namespace {

// Product of squared root differences of phi at s; proportional to the
// discriminant and exactly real for a conjugate-symmetric root set.  Returns
// 0.0 when the roots cannot be computed (treated as on-caustic).
double disc_proxy(const FamilySpec& spec, const Params& params, const SourcePoint& s) {
    QPoly phi = eliminate(spec, params, s);
    std::vector<std::complex<double>> roots;
    try {
        roots = complex_roots(phi);
    } catch (const Error&) {
        return 0.0;
    }
    std::complex<double> prod(1.0, 0.0);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            std::complex<double> d = roots[i] - roots[j];
            prod *= d * d;
        }
    return prod.real();
}

} // namespace

RegionMap map_source_plane(const FamilySpec& spec, const Params& params, const GridSpec& grid,
                           const MapOptions& opt) {
    validate(spec, params);
    if (grid.resolution < 2) throw UsageError("grid resolution must be at least 2");
    const int res = grid.resolution;
    Rational d1 = (grid.s1_hi - grid.s1_lo) / (res - 1);
    Rational d2 = (grid.s2_hi - grid.s2_lo) / (res - 1);

    RegionMap map;
    map.grid = grid;
    map.cells.resize(static_cast<std::size_t>(res) * res);

    // Cells are independent and land in fixed row-major slots, so evaluation
    // order (serial or threaded) cannot change the output.
    auto eval_cell = [&](int i2, int i1) {
        SourcePoint s{grid.s1_lo + d1 * i1, grid.s2_lo + d2 * i2, true};
        RegionCell cell;
        cell.s = s;
        SolveReport rep = solve_images(spec, params, s, opt.tol);
        cell.n_real = rep.n_real;
        cell.sum_real = rep.sum_real;
        cell.n_degenerate = static_cast<int>(rep.degenerate.size());

        double d0 = disc_proxy(spec, params, s);
        double dr = disc_proxy(spec, params, {s.s1 + d1, s.s2, true});
        double du = disc_proxy(spec, params, {s.s1, s.s2 + d2, true});
        bool sign_change = d0 == 0.0 || dr == 0.0 || du == 0.0 ||
                           std::signbit(dr) != std::signbit(d0) ||
                           std::signbit(du) != std::signbit(d0);
        bool near = std::abs(d0) <= opt.caustic_kappa * (std::abs(dr - d0) + std::abs(du - d0));
        cell.caustic_flag = rep.caustic_flag || sign_change || near;
        map.cells[static_cast<std::size_t>(i2) * res + i1] = std::move(cell);
    };

    if (opt.threads <= 1) {
        for (int i2 = 0; i2 < res; ++i2)
            for (int i1 = 0; i1 < res; ++i1) eval_cell(i2, i1);
        return map;
    }

    std::atomic<int> next_row{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            int i2 = next_row.fetch_add(1);
            if (i2 >= res) return;
            try {
                for (int i1 = 0; i1 < res; ++i1) eval_cell(i2, i1);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(opt.threads, res); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return map;
}

std::string region_csv(const RegionMap& map) {
    std::ostringstream os;
    os << "s1,s2,n_real,sum_real,caustic_flag\n";
    for (const auto& cell : map.cells) {
        os << format_double(to_double(cell.s.s1)) << ',' << format_double(to_double(cell.s.s2))
           << ',' << cell.n_real << ',' << format_double(cell.sum_real) << ','
           << (cell.caustic_flag ? 1 : 0) << '\n';
    }
    return os.str();
}

namespace {

// Multiply out prod (t - r_i) over exact rationals.
QPoly poly_from_roots(const std::vector<Rational>& roots) {
    QPoly p = QPoly::constant(1);
    for (const auto& r : roots) p = p * QPoly({-r, 1});
    return p;
}

// A_n: the x^{n-1} coefficient of phi is structurally absent, so any root set
// summing to zero can be realized exactly; read the parameters off the
// expanded polynomial.
bool anchor_A(const FamilySpec& spec, Params& params, SourcePoint& s) {
    const int n = spec.n;
    std::vector<Rational> roots;
    for (int k = 1; k <= n / 2; ++k) {
        roots.emplace_back(k);
        roots.emplace_back(-k);
    }
    if (n % 2) roots.emplace_back(0);
    QPoly target = poly_from_roots(roots) * Rational(spec.sign1 * (n + 1));
    if (n >= 3 && target.coeff(n - 1) != 0) return false;
    params.c.clear();
    for (int k = 3; k <= n - 1; ++k) params.c.push_back(target.coeff(k - 1) / k);
    s.s1 = -target.coeff(0);
    s.s2 = target.coeff(1) / 2;
    s.exact = true;
    return true;
}

// D_n: prescribe roots with e_{n-1} = 0 (no y^1 term) and a constant term of
// the right sign; s1 is the square root of that constant, taken as a double
// and therefore exact as a rational.
bool anchor_D(const FamilySpec& spec, Params& params, SourcePoint& s) {
    const int n = spec.n;
    const int e = spec.sign1;
    std::vector<Rational> roots;
    auto add_pair = [&](const Rational& v) {
        roots.push_back(v);
        roots.push_back(-v);
    };
    if (n % 2 == 0) {
        int sym_sign = ((n / 2) % 2 == 0) ? +1 : -1;
        if (e == sym_sign) {
            for (int k = 1; k <= n / 2; ++k) add_pair(Rational(k));
        } else {
            roots = {Rational(2), Rational(3), Rational(6), Rational(-1)};
            for (int k = 1; k <= (n - 4) / 2; ++k) add_pair(make_rational(2 * k + 1, 2));
        }
    } else {
        int p = (n - 3) / 2;
        bool minus_triple = e * ((p % 2) ? -1 : +1) > 0;
        if (minus_triple)
            roots = {Rational(2), Rational(3), make_rational(-6, 5)};
        else
            roots = {Rational(-2), Rational(-3), make_rational(6, 5)};
        for (int k = 1; k <= p; ++k) add_pair(make_rational(2 * k + 1, 2));
    }
    QPoly target = poly_from_roots(roots) * Rational(4 * e * (n - 1));
    if (target.coeff(1) != 0 || target.coeff(0) <= 0) return false;
    params.c.clear();
    for (int k = 2; k <= n - 2; ++k) params.c.push_back(target.coeff(k + 1) / (4 * k));
    s.s2 = -target.coeff(2) / 4;
    s.s1 = rational_from_double(std::sqrt(to_double(target.coeff(0))));
    s.exact = false; // s1 is a floating square root
    return true;
}

bool anchor_E(const FamilySpec& spec, Params& params, SourcePoint& s) {
    auto q = [](long n, long d) { return make_rational(n, d); };
    switch (spec.kind) {
    case FamilyKind::E6:
        params.c = {q(1, 10), Rational(-2 * spec.sign1), Rational(0)};
        s = {Rational(3), q(1, 10), true};
        return true;
    case FamilyKind::E7:
        params.c = {Rational(-2), Rational(3), Rational(2), Rational(-1)};
        s = {q(5, 2), Rational(6), true};
        return true;
    case FamilyKind::E8:
        params.c = {q(1, 10), Rational(0), Rational(-5), Rational(0), Rational(0)};
        s = {Rational(3), Rational(-1), true};
        return true;
    default: return false;
    }
}

bool witness_ok(const SolveReport& rep, int target) {
    return rep.n_real == target && rep.degenerate.empty() && !rep.caustic_flag;
}

} // namespace

MaxImageWitness find_max_image_witness(const FamilySpec& spec, const WitnessOptions& opt) {
    validate(spec, Params{std::vector<Rational>(spec.param_count(), Rational(0))});
    MaxImageWitness w;
    w.spec = spec;
    w.target = spec.max_images();

    if (opt.use_anchors) {
        Params params;
        SourcePoint s{0, 0};
        bool have = false;
        switch (spec.kind) {
        case FamilyKind::A: have = anchor_A(spec, params, s); break;
        case FamilyKind::D: have = anchor_D(spec, params, s); break;
        default: have = anchor_E(spec, params, s); break;
        }
        if (have) {
            SolveReport rep = solve_images(spec, params, s, opt.tol);
            ++w.attempts;
            if (witness_ok(rep, w.target)) {
                w.params = params;
                w.s = s;
                w.n_real = rep.n_real;
                w.found = true;
                return w;
            }
        }
    }

    // Randomized fallback: fresh draws with small rational coefficients,
    // interleaved with dilations of the best source point found so far.
    Rng rng(opt.seed);
    Params best_params;
    SourcePoint best_s{0, 0};
    int best_n = -1;
    const Rational lambdas[4] = {make_rational(1, 3), make_rational(1, 2), Rational(2), Rational(3)};
    while (w.attempts < opt.budget) {
        Params params;
        SourcePoint s{0, 0};
        if (best_n >= 0 && rng.below(4) == 0) {
            params = best_params;
            const Rational& lam = lambdas[rng.below(4)];
            s = best_s;
            s.s1 *= lam;
            s.s2 *= lam;
        } else {
            for (int i = 0; i < spec.param_count(); ++i) params.c.push_back(rng.rational(6, 2));
            s.s1 = rng.rational(12, 2);
            s.s2 = rng.rational(12, 2);
        }
        ++w.attempts;
        SolveReport rep;
        try {
            rep = solve_images(spec, params, s, opt.tol);
        } catch (const Error&) {
            continue;
        }
        if (rep.n_real > best_n && rep.degenerate.empty()) {
            best_n = rep.n_real;
            best_params = params;
            best_s = s;
        }
        if (witness_ok(rep, w.target)) {
            w.params = params;
            w.s = s;
            w.n_real = rep.n_real;
            w.found = true;
            return w;
        }
    }
    w.params = best_params;
    w.s = best_s;
    w.n_real = std::max(best_n, 0);
    w.found = false;
    return w;
}

std::vector<std::pair<double, double>> critical_curve(const FamilySpec& spec, const Params& params,
                                                      const Window& window, int resolution) {
    validate(spec, params);
    if (resolution < 2) throw UsageError("curve resolution must be at least 2");
    const BiPoly detjac = jacobian_determinant(spec, params);
    const int res = resolution;
    const double dx = (window.x_hi - window.x_lo) / (res - 1);
    const double dy = (window.y_hi - window.y_lo) / (res - 1);

    std::vector<double> val(static_cast<std::size_t>(res) * res);
    auto at = [&](int i, int j) -> double& { return val[static_cast<std::size_t>(j) * res + i]; };
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            std::complex<double> v =
                detjac.eval(std::complex<double>(window.x_lo + i * dx, 0.0),
                            std::complex<double>(window.y_lo + j * dy, 0.0));
            at(i, j) = v.real();
        }

    std::vector<std::pair<double, double>> pts;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i)
            if (at(i, j) == 0.0) pts.emplace_back(window.x_lo + i * dx, window.y_lo + j * dy);
    // horizontal edges, then vertical, in scan order
    for (int j = 0; j < res; ++j)
        for (int i = 0; i + 1 < res; ++i) {
            double a = at(i, j), b = at(i + 1, j);
            if (a * b < 0.0) {
                double t = a / (a - b);
                pts.emplace_back(window.x_lo + (i + t) * dx, window.y_lo + j * dy);
            }
        }
    for (int j = 0; j + 1 < res; ++j)
        for (int i = 0; i < res; ++i) {
            double a = at(i, j), b = at(i, j + 1);
            if (a * b < 0.0) {
                double t = a / (a - b);
                pts.emplace_back(window.x_lo + i * dx, window.y_lo + (j + t) * dy);
            }
        }
    return pts;
}

std::vector<std::pair<double, double>> caustic(const FamilySpec& spec, const Params& params,
                                               const Window& window, int resolution) {
    auto crit = critical_curve(spec, params, window, resolution);
    auto [f1, f2] = lens_map(spec, params);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(crit.size());
    for (const auto& [x, y] : crit) {
        std::complex<double> cx(x, 0.0), cy(y, 0.0);
        pts.emplace_back(f1.eval(cx, cy).real(), f2.eval(cx, cy).real());
    }
    return pts;
}

std::string points_csv(const std::vector<std::pair<double, double>>& pts, const std::string& h1,
                       const std::string& h2) {
    std::ostringstream os;
    os << h1 << ',' << h2 << '\n';
    for (const auto& [a, b] : pts) os << format_double(a) << ',' << format_double(b) << '\n';
    return os.str();
}

std::string witness_to_json(const MaxImageWitness& w, int indent) {
    Json j;
    j["family"] = w.spec.str();
    Json params = Json::array();
    for (const auto& c : w.params.c) params.push_back(json_rational(c));
    j["params"] = params;
    j["s"] = Json::array({json_rational(w.s.s1), json_rational(w.s.s2)});
    j["n_real"] = w.n_real;
    j["target"] = w.target;
    j["found"] = w.found;
    j["attempts"] = w.attempts;
    j["inexact_input"] = !w.s.exact;
    return j.dump(indent);
}

} // namespace ct
