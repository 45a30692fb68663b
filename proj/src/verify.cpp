#include "ct/verify.hpp"

#include <sstream>

#include "ct/euler_trace.hpp"
#include "ct/jsonio.hpp"
#include "ct/rng.hpp"

namespace ct {

namespace {

bool proportional(const QPoly& p, const QPoly& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    return p * q.lc() == q * p.lc();
}

std::vector<std::string> poly_strings(const QPoly& p) {
    std::vector<std::string> out;
    for (int i = 0; i <= p.degree(); ++i) out.push_back(to_string(p.coeff(i)));
    return out;
}

// Confirms the y^7 coefficient of phi_E8 (9 c5^3) against the Sylvester
// elimination at a c5 where 9c5 and 9c5^3 differ.
std::string e8_erratum_note() {
    FamilySpec spec{FamilyKind::E8, 8, +1, +1};
    Params params{{Rational(1), Rational(1), Rational(1), Rational(1), Rational(2)}};
    SourcePoint s{make_rational(1, 3), make_rational(-2, 5), true};
    QPoly hand = eliminate(spec, params, s);
    QPoly res = eliminate_by_resultant(spec, params, s);
    const Rational c5 = params.c[4];
    Rational implied_y7 = res.coeff(7) / res.coeff(8) * hand.coeff(8); // scale to lc 75
    bool cubic_ok = proportional(hand, res) && implied_y7 == 9 * c5 * c5 * c5;
    bool linear_would = implied_y7 == 9 * c5;
    std::ostringstream os;
    os << "phi_E8 y^7 coefficient: 9*c5^3 "
       << (cubic_ok ? "confirmed" : "NOT confirmed") << " by resultant elimination at c5=2"
       << (linear_would ? " (ambiguous draw)" : " (9*c5 ruled out)");
    if (!cubic_ok) throw Error("E8 y^7 coefficient check failed against the resultant oracle");
    return os.str();
}

} // namespace

std::vector<FamilySpec> family_instances(FamilyKind kind, int n_lo, int n_hi) {
    std::vector<FamilySpec> out;
    switch (kind) {
    case FamilyKind::A:
        for (int n = std::max(2, n_lo); n <= n_hi; ++n)
            for (int s1 : {+1, -1})
                for (int s2 : {+1, -1}) out.push_back({FamilyKind::A, n, s1, s2});
        break;
    case FamilyKind::D:
        for (int n = std::max(4, n_lo); n <= n_hi; ++n)
            for (int s1 : {+1, -1}) out.push_back({FamilyKind::D, n, s1, +1});
        break;
    case FamilyKind::E6:
        for (int s1 : {+1, -1}) out.push_back({FamilyKind::E6, 6, s1, +1});
        break;
    case FamilyKind::E7: out.push_back({FamilyKind::E7, 7, +1, +1}); break;
    case FamilyKind::E8: out.push_back({FamilyKind::E8, 8, +1, +1}); break;
    }
    return out;
}

CosetSuiteResult run_coset_suite(const std::vector<FamilySpec>& instances, int draws,
                                 std::uint64_t seed) {
    CosetSuiteResult result;
    result.seed = seed;
    Rng rng(seed);

    for (const FamilySpec& spec : instances) {
        CosetInstanceResult inst;
        inst.spec = spec;
        const int n = spec.max_images();
        for (int d = 0; d < draws; ++d) {
            // redraw on degenerate configurations; they are measure zero but
            // random rationals do occasionally hit them
            for (int attempt = 0;; ++attempt) {
                if (attempt > 1000) throw Error("coset suite: too many degenerate draws");
                Params params;
                for (int i = 0; i < spec.param_count(); ++i) params.c.push_back(rng.rational(10, 4));
                SourcePoint s{rng.rational(10, 4), rng.rational(10, 4), true};
                QPoly phi, rep;
                RationalFn mag;
                try {
                    phi = eliminate(spec, params, s);
                    if (!is_squarefree(phi)) continue;
                    mag = magnification_fn(spec, params, s);
                    rep = coset_representative(phi, mag);
                } catch (const NotInvertible&) {
                    continue;
                } catch (const DenominatorVanishes&) {
                    continue;
                } catch (const RepeatedRoots&) {
                    continue;
                }

                CosetDraw record;
                for (const auto& c : params.c) record.params.push_back(to_string(c));
                record.s1 = to_string(s.s1);
                record.s2 = to_string(s.s2);
                record.coset_rep = poly_strings(rep);
                Rational b_top = rep.coeff(n - 1);
                record.b_top = to_string(b_top);

                bool ok = (b_top == 0);
                if (auto expect = expected_coset_rep(spec, params)) {
                    ok = ok && (rep == *expect);
                } else {
                    ok = ok && rep.degree() <= n - 2; // E6: derived rep, b_5 = 0
                }
                record.ok = ok;
                if (!ok) ++inst.failures;
                inst.records.push_back(std::move(record));
                ++inst.draws;
                break;
            }
        }
        if (inst.failures > 0) result.all_ok = false;
        if (spec.kind == FamilyKind::E8) result.notes.push_back(e8_erratum_note());
        result.instances.push_back(std::move(inst));
    }
    return result;
}

std::string coset_suite_to_json(const CosetSuiteResult& result, int indent) {
    Json j;
    j["seed"] = result.seed;
    j["all_ok"] = result.all_ok;
    Json insts = Json::array();
    for (const auto& inst : result.instances) {
        Json ji;
        ji["family"] = inst.spec.str();
        ji["draws"] = inst.draws;
        ji["failures"] = inst.failures;
        Json recs = Json::array();
        for (const auto& r : inst.records) {
            Json jr;
            jr["params"] = r.params;
            jr["s"] = Json::array({r.s1, r.s2});
            jr["m"] = r.coset_rep;
            jr["b_top"] = r.b_top;
            jr["ok"] = r.ok;
            recs.push_back(std::move(jr));
        }
        ji["records"] = std::move(recs);
        insts.push_back(std::move(ji));
    }
    j["instances"] = std::move(insts);
    j["notes"] = result.notes;
    return j.dump(indent);
}

} // namespace ct
