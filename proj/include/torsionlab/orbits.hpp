#pragma once

// Closed orbit data for the return map of a fibered flow. Each orbit carries
// its period k and a sign; the zeta function is both the finite Euler-style
// product prod (1 - t^k)^{-sign} and exp(sum_m Fix(f^m) t^m / m), and the two
// must agree wherever both are trusted.

#include "torsionlab/rational_function.hpp"
#include "torsionlab/series.hpp"

#include <optional>
#include <vector>

namespace torsionlab {

struct Orbit {
    long period = 1;
    int sign = 1;
    std::optional<std::vector<long>> homology_class; // used only by the Novikov-side invariant
};

struct OrbitSet {
    std::vector<Orbit> orbits;

    void validate() const {
        for (auto& o : orbits) {
            if (o.period < 1) throw ParseError("orbit period must be a positive integer");
            if (o.sign != 1 && o.sign != -1) throw ParseError("orbit sign must be +1 or -1");
        }
    }
};

struct FixCounts {
    std::vector<Int> counts; // counts[m-1] = Fix(f^m), m = 1..order
    long order() const { return long(counts.size()); }
};

// Fix(f^m) = sum over orbits with period dividing m of period * sign.
inline FixCounts fix_counts(const OrbitSet& os, long order) {
    os.validate();
    if (order < 1) throw Error("fixed point counts need order >= 1");
    FixCounts fc;
    fc.counts.assign(size_t(order), Int(0));
    for (auto& o : os.orbits)
        for (long m = o.period; m <= order; m += o.period) fc.counts[size_t(m - 1)] += Int(o.period) * o.sign;
    return fc;
}

struct ZetaProduct {
    RationalFunction rational;
    TruncatedSeries series;
};

// prod over orbits of (1 - t^k)^{-sign}, as an exact rational function.
inline RationalFunction zeta_rational(const OrbitSet& os) {
    os.validate();
    RationalFunction zeta(1);
    for (auto& o : os.orbits) {
        RationalFunction factor = RationalFunction(1) - RationalFunction::t_power(o.period);
        zeta = zeta * factor.pow(-o.sign);
    }
    return zeta;
}

inline ZetaProduct zeta_product(const OrbitSet& os, long order) {
    if (order < 1) throw Error("zeta expansion needs order >= 1");
    RationalFunction zeta = zeta_rational(os);
    return ZetaProduct{zeta, series_expand(zeta, order)};
}

inline TruncatedSeries zeta_exp(const FixCounts& fc) {
    if (fc.order() < 1) throw Error("zeta exponential needs at least one fixed point count");
    TruncatedSeries s(1, fc.order() + 1);
    for (long m = 1; m <= fc.order(); ++m) s.add_term(m, Rat(fc.counts[size_t(m - 1)]) / m);
    return series_exp(s);
}

} // namespace torsionlab
