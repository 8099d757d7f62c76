#pragma once

// Elements of Q(t) stored as an exact reduced fraction of integer Laurent
// polynomials: value = t^offset * num / den, where num and den have lowest
// exponent 0, gcd(num, den) = 1 in Z[t] (polynomial factors and integer
// content both cancelled), and den has positive lowest coefficient.
// The zero element is num = 0, den = 1, offset = 0.

#include "torsionlab/laurent.hpp"

#include <string>

namespace torsionlab {

class RationalFunction {
public:
    RationalFunction() : m_num(ZPoly::zero()), m_den(ZPoly::one()), m_offset(0) {}

    explicit RationalFunction(const ZPoly& p) : m_num(p), m_den(ZPoly::one()), m_offset(0) { reduce(); }
    explicit RationalFunction(const Int& n) : RationalFunction(ZPoly(n)) {}
    explicit RationalFunction(long n) : RationalFunction(ZPoly(Int(n))) {}
    explicit RationalFunction(const Rat& q)
        : m_num(ZPoly(numerator(q))), m_den(ZPoly(denominator(q))), m_offset(0) {
        reduce();
    }

    RationalFunction(const ZPoly& num, const ZPoly& den) : m_num(num), m_den(den), m_offset(0) {
        if (den.is_zero()) throw Error("rational function with zero denominator");
        reduce();
    }

    explicit RationalFunction(const QPoly& p) : m_den(ZPoly::one()), m_offset(0) {
        Rat c = content(p);
        if (c == 0) {
            m_num = ZPoly::zero();
        } else {
            m_num = primitive_part(p).scaled(numerator(c));
            m_den = ZPoly(denominator(c));
        }
        reduce();
    }

    static RationalFunction t_power(long k) {
        RationalFunction f(ZPoly::one());
        f.m_offset = k;
        return f;
    }

    const ZPoly& num() const { return m_num; }
    const ZPoly& den() const { return m_den; }
    long offset() const { return m_offset; }

    bool is_zero() const { return m_num.is_zero(); }
    bool is_one() const { return m_offset == 0 && m_num.is_one() && m_den.is_one(); }

    // den is a positive integer constant, i.e. the value lies in Q[t,1/t].
    bool is_laurent_polynomial() const { return m_den.is_constant(); }

    QPoly as_qpoly() const {
        if (!is_laurent_polynomial()) throw Error("rational function " + str() + " is not a Laurent polynomial");
        Rat inv_den(Int(1), m_den.coeff(0));
        QPoly::Terms t;
        for (auto& [e, c] : m_num.terms()) t[e + m_offset] = Rat(c) * inv_den;
        return QPoly::from_terms(std::move(t));
    }

    // Integer Laurent polynomial if den == 1.
    ZPoly as_zpoly() const { return to_zpoly(as_qpoly()); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.m_num = -r.m_num;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        long m = std::min(a.m_offset, b.m_offset);
        ZPoly num = a.m_num.shifted(a.m_offset - m) * b.m_den + b.m_num.shifted(b.m_offset - m) * a.m_den;
        RationalFunction r(num, a.m_den * b.m_den);
        r.m_offset += m;
        r.reduce_offset_only();
        return r;
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        // Cross-reduce before multiplying to keep intermediates small.
        RationalFunction r;
        ZPoly g1 = gcd_laurent(a.m_num, b.m_den);
        ZPoly g2 = gcd_laurent(b.m_num, a.m_den);
        ZPoly na = g1.is_zero() ? a.m_num : exact_or_self(a.m_num, g1);
        ZPoly db = g1.is_zero() ? b.m_den : exact_or_self(b.m_den, g1);
        ZPoly nb = g2.is_zero() ? b.m_num : exact_or_self(b.m_num, g2);
        ZPoly da = g2.is_zero() ? a.m_den : exact_or_self(a.m_den, g2);
        r.m_num = na * nb;
        r.m_den = da * db;
        r.m_offset = a.m_offset + b.m_offset;
        r.reduce();
        return r;
    }

    RationalFunction inverse() const {
        if (is_zero()) throw Error("inverse of zero rational function");
        RationalFunction r;
        r.m_num = m_den;
        r.m_den = m_num;
        r.m_offset = -m_offset;
        r.reduce();
        return r;
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        RationalFunction r(Int(1)), base = *this;
        auto m = static_cast<unsigned long>(n);
        while (m) {
            if (m & 1) r *= base;
            base = base * base;
            m >>= 1;
        }
        return r;
    }

    // d/dt of the exact value.
    RationalFunction derivative() const {
        if (is_zero()) return RationalFunction();
        ZPoly p = m_num.shifted(m_offset);
        ZPoly dnum = p.derivative() * m_den - p * m_den.derivative();
        return RationalFunction(dnum, m_den * m_den);
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.m_offset == b.m_offset && a.m_num == b.m_num && a.m_den == b.m_den;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (m_offset != 0) s += "t^" + std::to_string(m_offset) + "*";
        s += "(" + m_num.str() + ")";
        if (!m_den.is_one()) s += "/(" + m_den.str() + ")";
        return s;
    }

private:
    static ZPoly exact_or_self(const ZPoly& p, const ZPoly& g) {
        return g.is_one() ? p : exact_divide(p, g);
    }

    void reduce_offset_only() {
        if (m_num.is_zero()) {
            m_den = ZPoly::one();
            m_offset = 0;
        }
    }

    void reduce() {
        if (m_num.is_zero()) {
            m_den = ZPoly::one();
            m_offset = 0;
            return;
        }
        m_offset += m_num.min_exp() - m_den.min_exp();
        m_num = m_num.shifted(-m_num.min_exp());
        m_den = m_den.shifted(-m_den.min_exp());
        ZPoly g = gcd_laurent(m_num, m_den);
        if (!g.is_one()) {
            m_num = exact_divide(m_num, g);
            m_den = exact_divide(m_den, g);
        }
        if (m_den.leading_coeff() < 0) {
            m_num = -m_num;
            m_den = -m_den;
        }
    }

    ZPoly m_num;
    ZPoly m_den;
    long m_offset;
};

} // namespace torsionlab
