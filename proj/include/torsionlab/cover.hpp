#pragma once

// Homology of the infinite cyclic cover, presented as a based complex over
// Z[t,1/t]. Each degree's homology over Q[t,1/t] is split into invariant
// factors plus a free rank; the torsion part carries the matrix A of the
// downward deck transformation, normalized so that det(1 - t A) equals the
// product of the invariant factors up to a nonzero rational times t^k.

#include "torsionlab/complex.hpp"
#include "torsionlab/series.hpp"
#include "torsionlab/smith.hpp"
#include "torsionlab/unit_class.hpp"

#include <optional>
#include <vector>

namespace torsionlab {

struct HomologyDegree {
    std::vector<ZPoly> invariant_factors;   // canonical: primitive, positive lowest coefficient
    int free_rank = 0;
    std::vector<std::vector<Rat>> action;   // deck transformation on the torsion part, block companion
    int torsion_dim() const { return int(action.size()); }
};

struct HomologySummary {
    std::vector<HomologyDegree> degrees;
};

namespace detail {

// Power sums of the roots of a monic polynomial t^d + a[1] t^{d-1} + ... + a[d],
// via Newton's identities. Returns p_1..p_order.
inline std::vector<Rat> newton_power_sums(const std::vector<Rat>& a, long order) {
    const long d = long(a.size()) - 1;
    std::vector<Rat> p(size_t(order) + 1, Rat(0));
    for (long k = 1; k <= order; ++k) {
        Rat acc(0);
        for (long i = 1; i <= std::min(k - 1, d); ++i) acc += a[size_t(i)] * p[size_t(k - i)];
        if (k <= d) acc += Rat(k) * a[size_t(k)];
        p[size_t(k)] = -acc;
    }
    return std::vector<Rat>(p.begin() + 1, p.end());
}

// Coefficients of monic(rev(p)) for a canonical invariant factor p: ascending,
// a[0] = constant term, a[d] = 1 after the reversal is made monic.
inline std::vector<Rat> monic_reversal(const ZPoly& p) {
    if (p.is_zero() || p.min_exp() != 0) throw Error("invariant factor must have a nonzero constant term");
    const long d = p.max_exp();
    const Rat c0(p.coeff(0));
    std::vector<Rat> a(size_t(d) + 1);
    for (long i = 0; i <= d; ++i) a[size_t(d - i)] = Rat(p.coeff(d - i)) / c0; // rev coeff i is p's coeff d-i
    return a;
}

inline void append_companion_block(std::vector<std::vector<Rat>>& action, const std::vector<Rat>& monic) {
    const int d = int(monic.size()) - 1;
    const int base = int(action.size());
    for (auto& row : action) row.resize(row.size() + size_t(d), Rat(0));
    for (int i = 0; i < d; ++i) action.emplace_back(size_t(base + d), Rat(0));
    for (int i = 1; i < d; ++i) action[size_t(base + i)][size_t(base + i - 1)] = Rat(1);
    // monic[] holds descending coefficients, so the t^i coefficient is monic[d - i].
    for (int i = 0; i < d; ++i) action[size_t(base + i)][size_t(base + d - 1)] = -monic[size_t(d - i)];
}

inline ZPoly canonical_factor_product(const std::vector<ZPoly>& factors) {
    ZPoly prod = ZPoly::one();
    for (auto& f : factors) prod = prod * f;
    return normalize_unit_z(prod);
}

} // namespace detail

// Invariant factors, free rank and deck action in one degree of the complex.
// The kernel of the outgoing map is read off the Smith form of that map; the
// incoming map expressed in kernel coordinates presents the homology module.
inline HomologySummary homology_summary(const BasedComplex& c) {
    const int m = c.top_degree();
    HomologySummary summary;
    for (int i = 0; i <= m; ++i) {
        const int n = c.ranks()[size_t(i)];
        QtMatrix outgoing = [&] {
            if (c.direction() == Direction::Up) return i < m ? c.differentials()[size_t(i)] : QtMatrix(0, n);
            return i > 0 ? c.differentials()[size_t(i - 1)] : QtMatrix(0, n);
        }();
        QtMatrix incoming = [&] {
            if (c.direction() == Direction::Up) return i > 0 ? c.differentials()[size_t(i - 1)] : QtMatrix(n, 0);
            return i < m ? c.differentials()[size_t(i)] : QtMatrix(n, 0);
        }();

        QPolyMatrix out_poly(outgoing.rows(), outgoing.cols());
        for (int r = 0; r < outgoing.rows(); ++r)
            for (int j = 0; j < outgoing.cols(); ++j) {
                if (!outgoing.at(r, j).is_laurent_polynomial())
                    throw Error("cover differential has a non-polynomial entry");
                out_poly.at(r, j) = outgoing.at(r, j).as_qpoly();
            }
        SmithForm sf = smith_normal_form(out_poly);
        int r = 0;
        while (r < int(sf.diag.size()) && !sf.diag[size_t(r)].is_zero()) ++r;

        QtMatrix coords = inverse(to_field_matrix(sf.right)) * incoming;
        for (int row = 0; row < r; ++row)
            for (int j = 0; j < coords.cols(); ++j)
                if (!coords.at(row, j).is_zero())
                    throw Error("incoming differential does not land in the kernel (d^2 check failed)");
        QPolyMatrix presentation(n - r, coords.cols());
        for (int row = r; row < n; ++row)
            for (int j = 0; j < coords.cols(); ++j) {
                const RationalFunction& e = coords.at(row, j);
                if (!e.is_laurent_polynomial())
                    throw Error("kernel coordinates are not Laurent polynomials");
                presentation.at(row - r, j) = e.as_qpoly();
            }

        HomologyDegree deg;
        SmithForm hs = smith_normal_form(presentation);
        int nonzero = 0;
        for (auto& dentry : hs.diag)
            if (!dentry.is_zero()) {
                ++nonzero;
                ZPoly fac = primitive_part(dentry);
                if (!fac.is_one()) deg.invariant_factors.push_back(fac);
            }
        deg.free_rank = (n - r) - nonzero;
        for (auto& fac : deg.invariant_factors)
            detail::append_companion_block(deg.action, detail::monic_reversal(fac));

        if (!deg.invariant_factors.empty()) {
            // det(1 - t A) must recover the invariant factor product up to a
            // rational multiple of t^k; this pins the orientation of A.
            const int dim = deg.torsion_dim();
            QPolyMatrix one_minus_ta(dim, dim);
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    QPoly entry = a == b ? QPoly::one() : QPoly::zero();
                    entry = entry - QPoly::monomial(deg.action[size_t(a)][size_t(b)], 1);
                    one_minus_ta.at(a, b) = entry;
                }
            ZPoly det_part = primitive_part(determinant(one_minus_ta));
            ZPoly prod = detail::canonical_factor_product(deg.invariant_factors);
            if (det_part != prod) throw Error("deck action failed the det(1 - tA) consistency check");
        }
        summary.degrees.push_back(std::move(deg));
    }
    return summary;
}

// Order of the homology in one degree: the invariant factor product, or
// nothing when a free summand makes the order zero.
inline std::optional<ZPoly> homology_order(const HomologyDegree& deg) {
    if (deg.free_rank > 0) return std::nullopt;
    return detail::canonical_factor_product(deg.invariant_factors);
}

// prod_i ord(H_i)^{e_i} with the same exponent rule as the torsion of the
// complex; nothing when some order vanishes. Matches the torsion up to a
// nonzero rational times t^k.
inline std::optional<RationalFunction> alternating_order_product(const BasedComplex& c,
                                                                 const HomologySummary& summary) {
    const int m = c.top_degree();
    RationalFunction result(1);
    for (int i = 0; i <= m; ++i) {
        auto ord = homology_order(summary.degrees[size_t(i)]);
        if (!ord) return std::nullopt;
        const int e = c.direction() == Direction::Up ? (i % 2 == 0 ? 1 : -1)
                                                     : ((m - i) % 2 == 0 ? 1 : -1);
        result = result * RationalFunction(*ord).pow(e);
    }
    return result;
}

// sum_{k>=1} t^k sum_i (-1)^i tr(A_i^k) = Tr(t A (1 - t A)^{-1}) with signs,
// expanded to the requested order. Needs every degree to be pure torsion.
inline TruncatedSeries lefschetz_series(const HomologySummary& summary, long order) {
    if (order < 1) throw Error("trace expansion needs order >= 1");
    for (auto& deg : summary.degrees)
        if (deg.free_rank > 0)
            throw NotApplicable("homology has a free summand: trace expansion undefined");
    std::vector<Rat> totals(size_t(order), Rat(0));
    int sign = 1;
    for (auto& deg : summary.degrees) {
        for (auto& fac : deg.invariant_factors) {
            auto sums = detail::newton_power_sums(detail::monic_reversal(fac), order);
            for (long k = 1; k <= order; ++k)
                totals[size_t(k - 1)] += Rat(sign) * sums[size_t(k - 1)];
        }
        sign = -sign;
    }
    TruncatedSeries s(0, order + 1);
    for (long k = 1; k <= order; ++k) s.add_term(k, totals[size_t(k - 1)]);
    return s;
}

// gcd of the maximal minors of an integer presentation matrix whose rows
// index the module generators. Nothing means the order is zero (the module
// has a free summand).
inline std::optional<ZPoly> fitting_order(const ZPolyMatrix& presentation) {
    const int n = presentation.rows();
    if (n == 0) return ZPoly::one();
    if (presentation.cols() < n) return std::nullopt;
    ZPoly g = ZPoly::zero();
    enumerate_minors(presentation, n, [&](const std::vector<int>&, const std::vector<int>&, const ZPoly& det) {
        g = gcd_laurent(g, det);
        return !g.is_one(); // a unit gcd cannot change further
    });
    if (g.is_zero()) return std::nullopt;
    return g;
}

// Torsion of the cover complex; bases are integral so the ambiguity class is
// sign times t^k.
inline TorsionResult cover_torsion(const BasedComplex& c) {
    if (!c.has_integer_entries()) throw ParseError("cover complex entries must be integer Laurent polynomials");
    return torsion(c, Ambiguity::PlusMinusTk);
}

} // namespace torsionlab
