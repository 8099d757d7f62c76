#pragma once

// Laurent polynomials in one variable t over an exact coefficient ring
// (Int or Rat). Exponents may be negative; the zero polynomial stores no
// terms. All operations are exact.

#include "torsionlab/numeric.hpp"

#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace torsionlab {

template <class C>
class LaurentPoly {
public:
    using Coeff = C;
    using Terms = std::map<long, C>; // exponent -> nonzero coefficient

    LaurentPoly() = default;
    explicit LaurentPoly(const C& c) {
        if (c != 0) m_terms[0] = c;
    }
    explicit LaurentPoly(long ic) : LaurentPoly(C(ic)) {}

    static LaurentPoly monomial(const C& c, long exp) {
        LaurentPoly p;
        if (c != 0) p.m_terms[exp] = c;
        return p;
    }
    static LaurentPoly t(long exp = 1) { return monomial(C(1), exp); }
    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(C(1)); }

    static LaurentPoly from_terms(Terms terms) {
        LaurentPoly p;
        for (auto& [e, c] : terms)
            if (c != 0) p.m_terms.emplace(e, std::move(c));
        return p;
    }

    const Terms& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    bool is_one() const { return m_terms.size() == 1 && m_terms.count(0) && m_terms.at(0) == 1; }
    bool is_constant() const { return m_terms.empty() || (m_terms.size() == 1 && m_terms.count(0)); }
    bool is_monomial() const { return m_terms.size() == 1; }

    // Polynomial (no negative exponents); used by Morse incidence checks.
    bool is_ordinary() const { return m_terms.empty() || m_terms.begin()->first >= 0; }

    long min_exp() const {
        if (is_zero()) throw Error("min_exp of zero polynomial");
        return m_terms.begin()->first;
    }
    long max_exp() const {
        if (is_zero()) throw Error("max_exp of zero polynomial");
        return m_terms.rbegin()->first;
    }
    // Euclidean size over Q[t,1/t]: width of the exponent support.
    long span() const { return max_exp() - min_exp(); }

    // Lowest-exponent coefficient: the leading coefficient in the Laurent
    // series ordering used by every normal form in this library.
    const C& leading_coeff() const {
        if (is_zero()) throw Error("leading_coeff of zero polynomial");
        return m_terms.begin()->second;
    }
    const C& top_coeff() const {
        if (is_zero()) throw Error("top_coeff of zero polynomial");
        return m_terms.rbegin()->second;
    }

    C coeff(long exp) const {
        auto it = m_terms.find(exp);
        return it == m_terms.end() ? C(0) : it->second;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [e, c] : m_terms) r.m_terms[e] = -c;
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [e, c] : o.m_terms) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto& [e, c] : o.m_terms) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ea, ca] : a.m_terms)
            for (auto& [eb, cb] : b.m_terms) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const C& c) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (auto& [e, k] : m_terms) r.m_terms[e] = k * c;
        return r;
    }
    LaurentPoly shifted(long by) const {
        LaurentPoly r;
        for (auto& [e, c] : m_terms) r.m_terms[e + by] = c;
        return r;
    }

    LaurentPoly pow(unsigned long n) const {
        LaurentPoly r = one(), base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // d/dt; exponent -1 terms cannot arise from exponent 0 ones.
    LaurentPoly derivative() const {
        LaurentPoly r;
        for (auto& [e, c] : m_terms)
            if (e != 0) r.m_terms[e - 1] = c * e;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.m_terms == b.m_terms; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.m_terms < b.m_terms; }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : m_terms) {
            C a = c;
            if (first) {
                if (a.sign() < 0) { os << "-"; a = -a; }
            } else {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            if (e == 0 || a != 1) os << a;
            if (e != 0) {
                if (a != 1) os << "*";
                os << "t";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    void add_term(long e, const C& c) {
        if (c == 0) return;
        auto it = m_terms.find(e);
        if (it == m_terms.end()) {
            m_terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) m_terms.erase(it);
        }
    }

    Terms m_terms;
};

using ZPoly = LaurentPoly<Int>;
using QPoly = LaurentPoly<Rat>;

inline QPoly to_qpoly(const ZPoly& p) {
    QPoly::Terms t;
    for (auto& [e, c] : p.terms()) t[e] = Rat(c);
    return QPoly::from_terms(std::move(t));
}

// Exact: throws if some coefficient is non-integral.
inline ZPoly to_zpoly(const QPoly& p) {
    ZPoly::Terms t;
    for (auto& [e, c] : p.terms()) {
        if (!is_integer(c)) throw Error("polynomial has non-integer coefficient " + rat_to_string(c));
        t[e] = numerator(c);
    }
    return ZPoly::from_terms(std::move(t));
}

namespace detail {
inline Int coeff_div_exact(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a) throw Error("non-exact integer division in polynomial quotient");
    return q;
}
inline Rat coeff_div_exact(const Rat& a, const Rat& b) { return a / b; }
} // namespace detail

// Exact quotient a/b in C[t,1/t]; throws unless b divides a.
template <class C>
LaurentPoly<C> exact_divide(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (a.is_zero()) return LaurentPoly<C>::zero();
    // Divide from the top exponent down, Laurent shifts handled by exponents.
    LaurentPoly<C> rem = a, quot;
    const long btop = b.max_exp();
    const C& blc = b.top_coeff();
    while (!rem.is_zero() && rem.span() >= b.span()) {
        C c = detail::coeff_div_exact(rem.top_coeff(), blc);
        long sh = rem.max_exp() - btop;
        auto mono = LaurentPoly<C>::monomial(c, sh);
        quot += mono;
        rem -= mono * b;
        if (!rem.is_zero() && rem.max_exp() >= a.max_exp() + 1) throw Error("polynomial division does not terminate");
    }
    if (!rem.is_zero()) throw Error("non-exact polynomial division");
    return quot;
}

template <class C>
bool divides(const LaurentPoly<C>& b, const LaurentPoly<C>& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    try {
        exact_divide(a, b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// Euclidean step over Q[t,1/t] with the span as the size function:
// a = q*b + r with r == 0 or span(r) < span(b).
inline std::pair<QPoly, QPoly> divmod_span(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (a.is_zero()) return {QPoly::zero(), QPoly::zero()};
    QPoly rem = a, quot;
    const long btop = b.max_exp();
    const Rat& blc = b.top_coeff();
    while (!rem.is_zero() && rem.span() >= b.span()) {
        Rat c = rem.top_coeff() / blc;
        auto mono = QPoly::monomial(c, rem.max_exp() - btop);
        quot += mono;
        rem -= mono * b;
    }
    return {quot, rem};
}

// gcd of all integer coefficients; content(0) = 0.
inline Int content(const ZPoly& p) {
    Int g = 0;
    for (auto& [e, c] : p.terms()) {
        g = gcd_int(g, c);
        if (g == 1) break;
    }
    return g;
}

// content over Q: positive rational c with p = c * (primitive integer poly).
inline Rat content(const QPoly& p) {
    if (p.is_zero()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [e, c] : p.terms()) {
        num_gcd = gcd_int(num_gcd, numerator(c));
        den_lcm = den_lcm / gcd_int(den_lcm, denominator(c)) * denominator(c);
    }
    if (num_gcd < 0) num_gcd = -num_gcd;
    return Rat(num_gcd, den_lcm);
}

// p / content(p): integer coefficients, coefficient gcd 1. Sign untouched.
inline ZPoly primitive_part(const ZPoly& p) {
    if (p.is_zero()) return p;
    Int c = content(p);
    ZPoly::Terms t;
    for (auto& [e, k] : p.terms()) t[e] = k / c;
    return ZPoly::from_terms(std::move(t));
}

inline ZPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return ZPoly::zero();
    Rat c = content(p);
    ZPoly::Terms t;
    for (auto& [e, k] : p.terms()) {
        Rat q = k / c;
        t[e] = numerator(q);
    }
    return ZPoly::from_terms(std::move(t));
}

// Canonical associate under units +/- t^k of Z[t,1/t]: lowest exponent 0,
// lowest coefficient positive. Content is kept.
inline ZPoly normalize_unit_z(const ZPoly& p) {
    if (p.is_zero()) return p;
    ZPoly q = p.shifted(-p.min_exp());
    if (q.leading_coeff() < 0) q = -q;
    return q;
}

// true iff p is +/- t^k.
inline bool is_unit_z(const ZPoly& p) {
    return p.is_monomial() && (p.terms().begin()->second == 1 || p.terms().begin()->second == -1);
}

namespace detail {
// Pseudo-remainder of ordinary integer polynomials (min_exp >= 0,
// deg a >= deg b): lc(b)^(da-db+1) * a mod b.
inline ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    long da = a.max_exp(), db = b.max_exp();
    ZPoly rem = a.scaled(boost::multiprecision::pow(b.top_coeff(), unsigned(da - db + 1)));
    const Int& blc = b.top_coeff();
    while (!rem.is_zero() && rem.max_exp() >= db) {
        Int c = coeff_div_exact(rem.top_coeff(), blc);
        rem -= b * ZPoly::monomial(c, rem.max_exp() - db);
    }
    return rem;
}
} // namespace detail

// gcd in Z[t,1/t], defined up to +/- t^k; the result is the canonical
// associate (normalize_unit_z), with the coefficient-content gcd included.
// Primitive remainder sequence: every pseudo-remainder is stripped to its
// primitive part, so each division is exact by construction. Remainders are
// also shifted back to lowest exponent 0 (t-shifts are units here); that
// shift changes the degree sequence, which rules out the subresultant
// divisor bookkeeping but leaves the primitive sequence untouched.
inline ZPoly gcd_laurent(const ZPoly& a0, const ZPoly& b0) {
    if (a0.is_zero()) return normalize_unit_z(b0);
    if (b0.is_zero()) return normalize_unit_z(a0);
    Int cont_gcd = gcd_int(content(a0), content(b0));
    ZPoly A = primitive_part(a0).shifted(-a0.min_exp());
    ZPoly B = primitive_part(b0).shifted(-b0.min_exp());
    if (A.max_exp() < B.max_exp()) std::swap(A, B);
    while (!B.is_zero()) {
        if (B.max_exp() == 0) return normalize_unit_z(ZPoly(cont_gcd));
        ZPoly R = detail::pseudo_rem(A, B);
        A = B;
        B = R.is_zero() ? R : primitive_part(R).shifted(-R.min_exp());
    }
    return normalize_unit_z(A.scaled(cont_gcd));
}

} // namespace torsionlab
