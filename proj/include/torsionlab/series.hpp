#pragma once

// Truncated Laurent series over Q with explicit precision bookkeeping.
// A series carries a lower exponent bound and a precision N; coefficients
// are trusted exactly for exponents in [lower, N). Constructing or producing
// a series whose trusted range is empty is an error, never a silent guess.

#include "torsionlab/rational_function.hpp"

#include <map>
#include <sstream>

namespace torsionlab {

class TruncatedSeries {
public:
    TruncatedSeries(long lower, long precision) : m_lower(lower), m_precision(precision) {
        if (precision <= lower)
            throw Error("series with empty trusted range [" + std::to_string(lower) + ", " +
                        std::to_string(precision) + ")");
    }

    long lower() const { return m_lower; }
    long precision() const { return m_precision; }
    const std::map<long, Rat>& coeffs() const { return m_coeffs; }

    bool is_zero() const { return m_coeffs.empty(); }

    // Exponents below the lower bound are exactly zero; at or above the
    // precision they are unknown and asking for them is a bug.
    Rat coeff(long e) const {
        if (e >= m_precision)
            throw Error("coefficient of t^" + std::to_string(e) + " requested beyond precision " +
                        std::to_string(m_precision));
        auto it = m_coeffs.find(e);
        return it == m_coeffs.end() ? Rat(0) : it->second;
    }

    void add_term(long e, const Rat& c) {
        if (c == 0 || e >= m_precision) return;
        if (e < m_lower)
            throw Error("series term t^" + std::to_string(e) + " below declared lower bound " +
                        std::to_string(m_lower));
        auto it = m_coeffs.find(e);
        if (it == m_coeffs.end()) {
            m_coeffs.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) m_coeffs.erase(it);
        }
    }

    TruncatedSeries truncated(long n) const {
        TruncatedSeries r(m_lower, std::min(m_precision, n));
        for (auto& [e, c] : m_coeffs)
            if (e < r.m_precision) r.m_coeffs.emplace(e, c);
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(m_lower, m_precision);
        for (auto& [e, c] : m_coeffs) r.m_coeffs.emplace(e, -c);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.m_lower, b.m_lower), std::min(a.m_precision, b.m_precision));
        for (auto& [e, c] : a.m_coeffs) r.add_term(e, c);
        for (auto& [e, c] : b.m_coeffs) r.add_term(e, c);
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        // An unknown term of one factor meets a stored or unknown term of the
        // other at exponent >= these bounds, which caps the trusted range.
        long prec = std::min({a.m_precision + b.m_lower, b.m_precision + a.m_lower,
                              a.m_precision + b.m_precision});
        TruncatedSeries r(a.m_lower + b.m_lower, prec);
        for (auto& [ea, ca] : a.m_coeffs) {
            if (ea + b.m_lower >= prec) break;
            for (auto& [eb, cb] : b.m_coeffs) {
                if (ea + eb >= prec) break;
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }

    TruncatedSeries scaled(const Rat& c) const {
        TruncatedSeries r(m_lower, m_precision);
        if (c != 0)
            for (auto& [e, k] : m_coeffs) r.m_coeffs.emplace(e, k * c);
        return r;
    }

    // Multiplication by t^by, exact on the whole trusted range.
    TruncatedSeries shifted(long by) const {
        TruncatedSeries r(m_lower + by, m_precision + by);
        for (auto& [e, k] : m_coeffs) r.m_coeffs.emplace(e + by, k);
        return r;
    }

    // Exact agreement on the common trusted range.
    friend bool agree(const TruncatedSeries& a, const TruncatedSeries& b) {
        long hi = std::min(a.m_precision, b.m_precision);
        long lo = std::min(a.m_lower, b.m_lower);
        for (long e = lo; e < hi; ++e)
            if (a.coeff(e) != b.coeff(e)) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : m_coeffs) {
            Rat a = c;
            if (first) {
                if (a.sign() < 0) { os << "-"; a = -a; }
            } else {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            if (e == 0 || a != 1) os << rat_to_string(a);
            if (e != 0) {
                if (a != 1) os << "*";
                os << "t";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        if (!first) os << " + ";
        os << "O(t^" << m_precision << ")";
        return os.str();
    }

private:
    long m_lower;
    long m_precision;
    std::map<long, Rat> m_coeffs;
};

// Power series expansion of an exact rational function to precision N.
// The lower bound of the result is exact (numerator and denominator have
// nonzero constant terms, so the lowest term is t^offset).
inline TruncatedSeries series_expand(const RationalFunction& f, long n) {
    if (f.is_zero()) {
        if (n <= 0) throw Error("series expansion of 0 to nonpositive precision");
        return TruncatedSeries(0, n);
    }
    long lower = f.offset();
    TruncatedSeries r(lower, n);
    // Invert the denominator as a power series in t.
    const ZPoly& den = f.den();
    Rat d0(den.coeff(0));
    long need = n - lower; // coefficients of num/den needed for exponents < need
    if (need <= 0) throw Error("series expansion with empty trusted range");
    std::vector<Rat> inv(static_cast<size_t>(need), Rat(0));
    inv[0] = Rat(1) / d0;
    for (long m = 1; m < need; ++m) {
        Rat acc(0);
        for (auto& [e, c] : den.terms()) {
            if (e == 0 || e > m) continue;
            acc += Rat(c) * inv[static_cast<size_t>(m - e)];
        }
        inv[static_cast<size_t>(m)] = -acc / d0;
    }
    for (auto& [e, c] : f.num().terms()) {
        for (long m = 0; m + e < need; ++m) {
            if (inv[static_cast<size_t>(m)] == 0) continue;
            r.add_term(lower + e + m, Rat(c) * inv[static_cast<size_t>(m)]);
        }
    }
    return r;
}

// exp of a series with strictly positive support. E' = s'E gives the
// coefficient recurrence m*E_m = sum_{j=1..m} j*s_j*E_{m-j}.
inline TruncatedSeries series_exp(const TruncatedSeries& s) {
    if (s.lower() < 1) throw Error("series_exp requires strictly positive exponents, lower bound is " +
                                   std::to_string(s.lower()));
    long n = s.precision();
    TruncatedSeries r(0, n);
    std::vector<Rat> e(static_cast<size_t>(n), Rat(0));
    e[0] = Rat(1);
    for (long m = 1; m < n; ++m) {
        Rat acc(0);
        for (auto& [j, c] : s.coeffs()) {
            if (j > m) break;
            acc += Rat(j) * c * e[static_cast<size_t>(m - j)];
        }
        e[static_cast<size_t>(m)] = acc / m;
    }
    for (long m = 0; m < n; ++m) r.add_term(m, e[static_cast<size_t>(m)]);
    return r;
}

// log of a series with constant term 1 and no negative exponents.
// s L' = s' gives m*L_m = m*s_m - sum_{j=1..m-1} s_j*(m-j)*L_{m-j}.
inline TruncatedSeries series_log(const TruncatedSeries& s) {
    if (s.lower() < 0) throw Error("series_log requires nonnegative exponents");
    if (s.precision() < 1 || s.coeff(0) != 1) throw Error("series_log requires constant term 1");
    long n = s.precision();
    if (n <= 1) throw Error("series_log result has empty trusted range");
    TruncatedSeries r(1, n);
    std::vector<Rat> l(static_cast<size_t>(n), Rat(0));
    for (long m = 1; m < n; ++m) {
        Rat acc = Rat(m) * s.coeff(m);
        for (auto& [j, c] : s.coeffs()) {
            if (j < 1) continue;
            if (j > m - 1) break;
            acc -= c * Rat(m - j) * l[static_cast<size_t>(m - j)];
        }
        l[static_cast<size_t>(m)] = acc / m;
    }
    for (long m = 1; m < n; ++m) r.add_term(m, l[static_cast<size_t>(m)]);
    return r;
}

} // namespace torsionlab
