#pragma once

// Torsion invariants are defined only up to a unit group: +/- t^k for
// integral complexes, (nonzero rational) * t^k after tensoring with Q.
// UnitClass is the canonical representative: f = sign * t^a * c * p/q with
// c a positive rational and p, q primitive integer polynomials with nonzero
// constant term and positive lowest coefficient. The ambiguity flag decides
// which of sign, t^a, c are discarded.

#include "torsionlab/rational_function.hpp"

namespace torsionlab {

enum class Ambiguity {
    PlusMinusTk, // +/- t^k: scalar survives
    RationalTk,  // (nonzero rational) * t^k: scalar dropped
};

inline const char* ambiguity_name(Ambiguity a) {
    return a == Ambiguity::PlusMinusTk ? "pm_tk" : "rational_tk";
}

struct UnitClass {
    Rat scalar{1};  // positive; fixed to 1 under RationalTk
    ZPoly num;      // primitive, nonzero constant term, positive lowest coefficient
    ZPoly den;      // same normal form
    Ambiguity ambiguity{Ambiguity::PlusMinusTk};

    friend bool operator==(const UnitClass& a, const UnitClass& b) {
        return a.ambiguity == b.ambiguity && a.scalar == b.scalar && a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const UnitClass& a, const UnitClass& b) { return !(a == b); }

    // A representative rational function of the class.
    RationalFunction representative() const {
        RationalFunction f(num, den);
        return f * RationalFunction(scalar);
    }

    std::string str() const {
        std::string s = "[" + rat_to_string(scalar) + " * (" + num.str() + ")";
        if (!den.is_one()) s += "/(" + den.str() + ")";
        s += " mod ";
        s += ambiguity == Ambiguity::PlusMinusTk ? "+/-t^k" : "q*t^k";
        return s + "]";
    }
};

inline UnitClass normalize_unit_class(const RationalFunction& f, Ambiguity amb) {
    if (f.is_zero()) throw Error("unit class of zero");
    UnitClass u;
    u.ambiguity = amb;
    ZPoly p = primitive_part(f.num());
    if (p.leading_coeff() < 0) p = -p;
    ZPoly q = primitive_part(f.den()); // den's lowest coefficient is positive already
    u.num = p;
    u.den = q;
    if (amb == Ambiguity::PlusMinusTk) {
        Int cn = content(f.num());
        Int cd = content(f.den());
        if (cn < 0) cn = -cn;
        u.scalar = Rat(cn, cd);
    } else {
        u.scalar = Rat(1);
    }
    return u;
}

} // namespace torsionlab
