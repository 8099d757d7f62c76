#pragma once

// Identity harnesses over instance bundles.
//
//   refinement           zeta^{(-1)^{n-1}} * tau(M) == tau(X) up to +/-t^k
//   main                 sum t^k Fix(f^k) - (-1)^n t (log tau)' ==
//                        sum t^k sum_i (-1)^i tr(A_i^k) + m, m an integer
//   zeta-forms           orbit product == exp of the fixed point series
//   w-identity           d^T W + W d^T == t for the Morse chain homotopy
//   homology-orders      tau(X) == alternating product of homology orders
//                        up to rational * t^k
//   meng-taubes          rho(det P) == det d^1, rho of the orbit product ==
//                        zeta, and the SW series matches the cover torsion
//   leading-coefficient  lowest coefficients of tau(M) and tau(X) agree
//
// Outcomes: a check whose hypothesis fails (non-acyclic complex, missing
// block) is not-applicable with a reason; fail always carries both witnesses.

#include "torsionlab/cover.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/morse.hpp"
#include "torsionlab/novikov.hpp"
#include "torsionlab/orbits.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

struct VerificationReport {
    enum class Outcome { Pass, Fail, NotApplicable };
    std::string check;
    Outcome outcome = Outcome::NotApplicable;
    std::string reason;
    Json witnesses = Json::object();
    std::optional<long> m;
};

inline const char* outcome_name(VerificationReport::Outcome o) {
    switch (o) {
        case VerificationReport::Outcome::Pass: return "pass";
        case VerificationReport::Outcome::Fail: return "fail";
        default: return "not-applicable";
    }
}

inline Json report_to_json(const VerificationReport& r) {
    Json out;
    out["check"] = r.check;
    out["outcome"] = outcome_name(r.outcome);
    if (!r.reason.empty()) out["reason"] = r.reason;
    out["witnesses"] = r.witnesses;
    if (r.m) out["m"] = *r.m;
    return out;
}

inline long effective_order(const InstanceBundle& b, long fallback) {
    return b.truncation >= 2 ? b.truncation : fallback;
}

namespace detail {

inline VerificationReport not_applicable(const std::string& check, const std::string& reason) {
    VerificationReport r;
    r.check = check;
    r.reason = reason;
    return r;
}

// True when s equals sign * t^j * (series of f) for some sign in {+1,-1} and
// integer j, on the series' trusted range.
inline bool series_matches_unit_multiple(const TruncatedSeries& s, const RationalFunction& f,
                                         Json& detail_out) {
    if (f.is_zero()) return s.is_zero();
    if (s.is_zero()) return false; // trusted-zero series vs nonzero function
    long first = s.coeffs().begin()->first;
    long shift = first - f.offset();
    Rat lead = Rat(f.num().coeff(0)) / Rat(f.den().coeff(0));
    Rat ratio = s.coeffs().begin()->second / lead;
    if (ratio != 1 && ratio != -1) {
        detail_out["mismatch"] = "leading ratio " + rat_to_string(ratio) + " is not a sign";
        return false;
    }
    RationalFunction g = f * RationalFunction::t_power(shift) * RationalFunction(ratio);
    TruncatedSeries expanded = series_expand(g, s.precision());
    detail_out["shift"] = shift;
    detail_out["sign"] = ratio == 1 ? 1 : -1;
    return agree(s, expanded);
}

} // namespace detail

inline VerificationReport verify_refinement(const InstanceBundle& b) {
    VerificationReport r;
    r.check = "refinement";
    if (!b.morse) return detail::not_applicable(r.check, "no morse block");
    if (!b.orbits) return detail::not_applicable(r.check, "no orbits block");
    if (!b.cover) return detail::not_applicable(r.check, "no cover block");
    try {
        MorseComplex mc = build_morse_complex(*b.morse);
        TorsionResult tau_m = morse_torsion(mc);
        RationalFunction zeta = zeta_rational(*b.orbits);
        int exponent = (b.dimension - 1) % 2 == 0 ? 1 : -1;
        RationalFunction lhs_value = zeta.pow(exponent) * tau_m.value;
        UnitClass lhs = normalize_unit_class(lhs_value, Ambiguity::PlusMinusTk);
        TorsionResult rhs = cover_torsion(*b.cover);
        r.witnesses["lhs"] = write_unit_class(lhs);
        r.witnesses["rhs"] = write_unit_class(rhs.torsion);
        r.outcome = lhs == rhs.torsion ? VerificationReport::Outcome::Pass : VerificationReport::Outcome::Fail;
        if (r.outcome == VerificationReport::Outcome::Fail) r.reason = "unit classes differ";
    } catch (const NotApplicable& e) {
        return detail::not_applicable(r.check, e.what());
    }
    return r;
}

inline VerificationReport verify_main(const InstanceBundle& b, long fallback_order) {
    VerificationReport r;
    r.check = "main";
    if (!b.morse) return detail::not_applicable(r.check, "no morse block");
    if (!b.orbits) return detail::not_applicable(r.check, "no orbits block");
    if (!b.cover) return detail::not_applicable(r.check, "no cover block");
    const long n_order = effective_order(b, fallback_order);
    if (n_order < 2) return detail::not_applicable(r.check, "truncation order must be >= 2");
    try {
        MorseComplex mc = build_morse_complex(*b.morse);
        TorsionResult tau_m = morse_torsion(mc);

        FixCounts fc = fix_counts(*b.orbits, n_order);
        TruncatedSeries fix_series(0, n_order + 1);
        for (long k = 1; k <= n_order; ++k) fix_series.add_term(k, Rat(fc.counts[size_t(k - 1)]));

        const RationalFunction tau = tau_m.value;
        RationalFunction log_deriv = RationalFunction::t_power(1) * tau.derivative() / tau;
        int sign = b.dimension % 2 == 0 ? 1 : -1; // (-1)^n
        TruncatedSeries lhs = fix_series - series_expand(log_deriv, n_order + 1).scaled(Rat(sign));

        HomologySummary summary = homology_summary(*b.cover);
        TruncatedSeries rhs = lefschetz_series(summary, n_order);

        r.witnesses["lhs"] = write_series(lhs);
        r.witnesses["rhs"] = write_series(rhs);
        TruncatedSeries diff = lhs - rhs;
        long hi = diff.precision();
        bool constant = true;
        for (long e = std::min(diff.lower(), long(0)); e < hi; ++e)
            if (e != 0 && diff.coeff(e) != 0) constant = false;
        Rat c0 = diff.coeff(0);
        if (constant && is_integer(c0)) {
            r.outcome = VerificationReport::Outcome::Pass;
            r.m = long(numerator(c0).convert_to<long long>());
        } else {
            r.outcome = VerificationReport::Outcome::Fail;
            r.reason = constant ? "constant discrepancy is not an integer" : "difference is not constant";
        }
    } catch (const NotApplicable& e) {
        return detail::not_applicable(r.check, e.what());
    }
    return r;
}

inline VerificationReport verify_zeta_forms(const InstanceBundle& b, long fallback_order) {
    VerificationReport r;
    r.check = "zeta-forms";
    if (!b.orbits) return detail::not_applicable(r.check, "no orbits block");
    const long n_order = std::max<long>(2, effective_order(b, fallback_order));
    ZetaProduct zp = zeta_product(*b.orbits, n_order);
    TruncatedSeries ze = zeta_exp(fix_counts(*b.orbits, n_order));
    r.witnesses["product"] = write_series(zp.series);
    r.witnesses["exp"] = write_series(ze);
    bool leading_one = zp.series.coeff(0) == 1 && ze.coeff(0) == 1;
    r.outcome = agree(zp.series, ze) && leading_one ? VerificationReport::Outcome::Pass
                                                    : VerificationReport::Outcome::Fail;
    if (r.outcome == VerificationReport::Outcome::Fail)
        r.reason = leading_one ? "series disagree" : "zeta does not have leading coefficient 1";
    return r;
}

inline VerificationReport verify_w_identity(const InstanceBundle& b) {
    VerificationReport r;
    r.check = "w-identity";
    if (!b.morse) return detail::not_applicable(r.check, "no morse block");
    try {
        MorseComplex mc = build_morse_complex(*b.morse);
        std::vector<QtMatrix> w = chain_homotopy_W(mc);
        Json dims = Json::array();
        for (auto& wi : w) dims.push_back(Json::array({wi.rows(), wi.cols()}));
        r.witnesses["w_blocks"] = std::move(dims);
        r.witnesses["identity"] = "d^T W + W d^T = t";
        r.outcome = w_identity_holds(mc, w) ? VerificationReport::Outcome::Pass
                                            : VerificationReport::Outcome::Fail;
        if (r.outcome == VerificationReport::Outcome::Fail) r.reason = "chain homotopy identity fails";
    } catch (const NotApplicable& e) {
        return detail::not_applicable(r.check, e.what());
    }
    return r;
}

inline VerificationReport verify_homology_orders(const InstanceBundle& b) {
    VerificationReport r;
    r.check = "homology-orders";
    if (!b.cover) return detail::not_applicable(r.check, "no cover block");
    try {
        TorsionResult tau = cover_torsion(*b.cover);
        HomologySummary summary = homology_summary(*b.cover);
        auto product = alternating_order_product(*b.cover, summary);
        if (!product)
            return detail::not_applicable(r.check, "a homology order vanishes (free summand)");
        UnitClass lhs = normalize_unit_class(tau.value, Ambiguity::RationalTk);
        UnitClass rhs = normalize_unit_class(*product, Ambiguity::RationalTk);
        r.witnesses["torsion"] = write_unit_class(lhs);
        r.witnesses["order_product"] = write_unit_class(rhs);
        r.outcome = lhs == rhs ? VerificationReport::Outcome::Pass : VerificationReport::Outcome::Fail;
        if (r.outcome == VerificationReport::Outcome::Fail)
            r.reason = "torsion and homology order product differ";
    } catch (const NotApplicable& e) {
        return detail::not_applicable(r.check, e.what());
    }
    return r;
}

inline VerificationReport verify_meng_taubes(const InstanceBundle& b) {
    VerificationReport r;
    r.check = "meng-taubes";
    if (!b.novikov) return detail::not_applicable(r.check, "no novikov block");
    const NovikovInstance& nv = *b.novikov;
    try {
        Json sub = Json::object();
        bool all_pass = true;
        bool any_applicable = false;

        // rho(det P) against det(d^1) of the Morse block, when shapes line up.
        GroupRingElement det_p = nv.path_matrix.determinant();
        if (b.morse && b.morse->dimension >= 2) {
            MorseComplex mc = build_morse_complex(*b.morse);
            const ZPolyMatrix& d1 = mc.differentials()[1];
            if (d1.rows() == d1.cols() && d1.rows() == nv.path_matrix.size()) {
                any_applicable = true;
                ZPoly lhs = rho_specialize(det_p, nv.weights);
                ZPoly rhs = determinant(d1);
                sub["det_p"] = Json{{"rho_det_p", wire::write_poly(lhs)}, {"det_d1", wire::write_poly(rhs)}};
                if (lhs != rhs) all_pass = false;
            }
        }

        // rho of the orbit product against the zeta of the grading-projected
        // orbit set.
        {
            any_applicable = true;
            NovikovElement product = orbit_novikov_product(nv.orbits, nv.weights, nv.precision);
            TruncatedSeries lhs = rho_specialize(product);
            OrbitSet projected;
            for (auto& o : nv.orbits.orbits)
                projected.orbits.push_back(Orbit{grading_of(nv.weights, *o.homology_class), o.sign, {}});
            TruncatedSeries rhs = zeta_product(projected, nv.precision).series;
            sub["orbit_product"] = Json{{"rho", write_series(lhs)}, {"zeta", write_series(rhs)}};
            if (!agree(lhs, rhs)) all_pass = false;
        }

        // SW series against the cover torsion: equal up to +/-t^k when the
        // cover is acyclic, and zero exactly when it is not.
        NovikovElement invariant = i_eta(nv.orbits, nv.path_matrix, nv.weights, nv.precision);
        TruncatedSeries sw = sw_series(invariant, nv.chi_sigma);
        sub["sw"] = write_series(sw);
        if (b.cover) {
            any_applicable = true;
            if (is_acyclic(*b.cover)) {
                TorsionResult tau = cover_torsion(*b.cover);
                Json detail_out = Json::object();
                bool ok = detail::series_matches_unit_multiple(sw, tau.value, detail_out);
                sub["cover"] = Json{{"torsion", write_unit_class(tau.torsion)}, {"match", detail_out}};
                if (!ok) all_pass = false;
            } else {
                bool sw_zero = sw.is_zero();
                sub["cover"] = Json{{"torsion", nullptr}, {"sw_zero", sw_zero}};
                if (!sw_zero) all_pass = false;
            }
        }

        r.witnesses = std::move(sub);
        if (!any_applicable) return detail::not_applicable(r.check, "no comparable blocks");
        r.outcome = all_pass ? VerificationReport::Outcome::Pass : VerificationReport::Outcome::Fail;
        if (!all_pass) r.reason = "a consistency sub-check failed";
    } catch (const NotApplicable& e) {
        return detail::not_applicable(r.check, e.what());
    }
    return r;
}

inline VerificationReport verify_leading_coefficient(const InstanceBundle& b) {
    VerificationReport r;
    r.check = "leading-coefficient";
    if (!b.morse) return detail::not_applicable(r.check, "no morse block");
    if (!b.cover) return detail::not_applicable(r.check, "no cover block");
    try {
        MorseComplex mc = build_morse_complex(*b.morse);
        TorsionResult tau_m = morse_torsion(mc);
        TorsionResult tau_x = cover_torsion(*b.cover);
        auto lead = [](const UnitClass& u) {
            return u.scalar * Rat(u.num.leading_coeff()) / Rat(u.den.leading_coeff());
        };
        Rat lm = lead(tau_m.torsion), lx = lead(tau_x.torsion);
        r.witnesses["morse"] = rat_to_string(lm);
        r.witnesses["cover"] = rat_to_string(lx);
        r.outcome = lm == lx ? VerificationReport::Outcome::Pass : VerificationReport::Outcome::Fail;
        if (r.outcome == VerificationReport::Outcome::Fail) r.reason = "leading coefficients differ";
    } catch (const NotApplicable& e) {
        return detail::not_applicable(r.check, e.what());
    }
    return r;
}

// Every check whose blocks are present, in a fixed order.
inline std::vector<VerificationReport> verify_all(const InstanceBundle& b, long fallback_order) {
    std::vector<VerificationReport> out;
    if (b.morse && b.orbits && b.cover) out.push_back(verify_refinement(b));
    if (b.morse && b.orbits && b.cover) out.push_back(verify_main(b, fallback_order));
    if (b.orbits) out.push_back(verify_zeta_forms(b, fallback_order));
    if (b.morse) out.push_back(verify_w_identity(b));
    if (b.cover) out.push_back(verify_homology_orders(b));
    if (b.novikov) out.push_back(verify_meng_taubes(b));
    if (b.morse && b.cover) out.push_back(verify_leading_coefficient(b));
    return out;
}

// Machine-readable suite over files; parse failures become report entries and
// the suite continues.
inline Json run_suite(const std::vector<std::string>& paths, long fallback_order) {
    Json out = Json::array();
    for (auto& path : paths) {
        try {
            InstanceBundle b = load_instance(path);
            for (auto& rep : verify_all(b, fallback_order)) {
                Json e = report_to_json(rep);
                e["file"] = path;
                out.push_back(std::move(e));
            }
        } catch (const ParseError& e) {
            Json entry;
            entry["file"] = path;
            entry["check"] = "parse";
            entry["outcome"] = "fail";
            entry["reason"] = e.what();
            entry["witnesses"] = Json::object();
            out.push_back(std::move(entry));
        }
    }
    return out;
}

} // namespace torsionlab
