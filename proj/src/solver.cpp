#include "ct/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ct/jsonio.hpp"
#include "ct/roots.hpp"

namespace ct {

namespace {

using cd = std::complex<double>;

bool nearly_real(const cd& z, double tol) { return std::abs(z.imag()) <= tol * (1.0 + std::abs(z)); }

} // namespace

SolveReport solve_images(const FamilySpec& spec, const Params& params, const SourcePoint& s,
                         double tol) {
    validate(spec, params);
    SolveReport rep;
    rep.spec = spec;
    rep.params = params;
    rep.s = s;

    const QPoly phi = eliminate(spec, params, s);
    if (phi.degree() != spec.max_images())
        throw Error("elimination polynomial has unexpected degree"); // leading coeff is a nonzero constant
    const bool repeated_exact = !is_squarefree(phi);

    const double root_tol = std::max(1e-10, 0.1 * tol);
    const auto roots = complex_roots(phi, root_tol);

    const BiPoly detjac = jacobian_determinant(spec, params);

    double min_sep = std::numeric_limits<double>::infinity(), max_abs = 0.0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        max_abs = std::max(max_abs, std::abs(roots[i]));
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            min_sep = std::min(min_sep, std::abs(roots[i] - roots[j]));
    }
    const double min_sep_rel = roots.size() > 1 ? min_sep / (1.0 + max_abs)
                                                : std::numeric_limits<double>::infinity();

    double min_jac = std::numeric_limits<double>::infinity();
    for (const cd& r : roots) {
        cd x, y;
        try {
            std::tie(x, y) = back_substitute(spec, params, s, r, tol);
        } catch (const DenominatorVanishes&) {
            CPoly den = to_complex(backsub_denominator(spec, params));
            rep.degenerate.push_back({r, std::abs(den.eval(r))});
            continue;
        }
        PreImage img;
        img.x = x;
        img.y = y;
        cd dj = detjac.eval(x, y);
        img.magnification = 1.0 / dj;
        min_jac = std::min(min_jac, std::abs(dj));
        // A real critical image (det Jac = 0, infinite magnification) is still
        // a real pre-image; the magnification realness check only makes sense
        // when the value is finite.
        bool mag_finite =
            std::isfinite(img.magnification.real()) && std::isfinite(img.magnification.imag());
        img.is_real = nearly_real(x, tol) && nearly_real(y, tol) &&
                      (!mag_finite || nearly_real(img.magnification, tol));
        rep.images.push_back(img);
    }

    std::vector<cd> mags;
    std::vector<double> real_mags;
    for (const auto& img : rep.images) {
        mags.push_back(img.magnification);
        if (img.is_real) real_mags.push_back(img.magnification.real());
    }
    rep.n_real = static_cast<int>(real_mags.size());
    rep.sum_all = pairwise_sum(mags);
    rep.sum_real = pairwise_sum(real_mags);
    rep.min_abs_detjac = rep.images.empty() ? 0.0 : min_jac;
    rep.min_root_sep = min_sep_rel;

    rep.caustic_witness = std::min(min_sep_rel, min_jac);
    rep.caustic_flag = repeated_exact || min_sep_rel <= std::sqrt(tol) || min_jac <= tol;
    return rep;
}

std::pair<double, cd> signed_sums(const SolveReport& report) {
    std::vector<cd> mags;
    std::vector<double> real_mags;
    for (const auto& img : report.images) {
        mags.push_back(img.magnification);
        if (img.is_real) real_mags.push_back(img.magnification.real());
    }
    return {pairwise_sum(real_mags), pairwise_sum(mags)};
}

CausticCheck is_caustic(const FamilySpec& spec, const Params& params, const SourcePoint& s,
                        double tol) {
    SolveReport rep = solve_images(spec, params, s, tol);
    return {rep.caustic_flag, rep.caustic_witness};
}

std::string report_to_json(const SolveReport& report, int indent) {
    Json j;
    j["family"] = report.spec.str();
    Json params = Json::array();
    for (const auto& c : report.params.c) params.push_back(json_rational(c));
    j["params"] = params;
    j["s"] = Json::array({json_rational(report.s.s1), json_rational(report.s.s2)});
    Json images = Json::array();
    for (const auto& img : report.images) {
        Json ji;
        ji["x"] = json_complex(img.x);
        ji["y"] = json_complex(img.y);
        ji["mag"] = json_complex(img.magnification);
        ji["real"] = img.is_real;
        images.push_back(ji);
    }
    j["images"] = images;
    j["n_real"] = report.n_real;
    j["sum_real"] = report.sum_real;
    j["sum_all"] = json_complex(report.sum_all);
    j["min_abs_detjac"] = report.min_abs_detjac;
    j["caustic_flag"] = report.caustic_flag;
    Json degs = Json::array();
    for (const auto& d : report.degenerate) {
        Json jd;
        jd["root"] = json_complex(d.root);
        jd["den_abs"] = d.den_abs;
        degs.push_back(jd);
    }
    j["degenerate"] = degs;
    j["inexact_input"] = !report.s.exact;
    return j.dump(indent);
}

} // namespace ct
