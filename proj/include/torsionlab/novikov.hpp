#pragma once

// Group-ring and Novikov-ring arithmetic over a free abelian group Z^r.
// Group ring elements are finite integer combinations of lattice points.
// A Novikov element is graded by a weight vector w: the grading of a lattice
// point v is w.v, and the element is trusted for gradings < precision; terms
// at or above the precision are unknown and silently dropped, mirroring
// TruncatedSeries. Specializing v -> t^{w.v} maps all of this onto series.

#include "torsionlab/laurent.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/series.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace torsionlab {

using LatticePoint = std::vector<long>;

inline long grading_of(const std::vector<long>& weights, const LatticePoint& v) {
    if (weights.size() != v.size()) throw Error("lattice point rank does not match weight vector");
    long g = 0;
    for (size_t i = 0; i < v.size(); ++i) g += weights[i] * v[i];
    return g;
}

struct GroupRingElement {
    int rank = 0;
    std::map<LatticePoint, Int> terms;

    static GroupRingElement zero(int rank) { return GroupRingElement{rank, {}}; }
    static GroupRingElement one(int rank) { return monomial(rank, LatticePoint(size_t(rank), 0), Int(1)); }
    static GroupRingElement monomial(int rank, LatticePoint v, Int c) {
        if (int(v.size()) != rank) throw Error("lattice point does not match group rank");
        GroupRingElement g{rank, {}};
        if (c != 0) g.terms.emplace(std::move(v), std::move(c));
        return g;
    }

    bool is_zero() const { return terms.empty(); }
    Int coeff(const LatticePoint& v) const {
        auto it = terms.find(v);
        return it == terms.end() ? Int(0) : it->second;
    }

    void add_term(const LatticePoint& v, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(v);
        if (it == terms.end()) {
            terms.emplace(v, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    GroupRingElement operator-() const {
        GroupRingElement r{rank, {}};
        for (auto& [v, c] : terms) r.terms.emplace(v, -c);
        return r;
    }

    friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
        if (a.rank != b.rank) throw Error("group ring rank mismatch");
        GroupRingElement r = a;
        for (auto& [v, c] : b.terms) r.add_term(v, c);
        return r;
    }
    friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) { return a + (-b); }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        if (a.rank != b.rank) throw Error("group ring rank mismatch");
        GroupRingElement r{a.rank, {}};
        for (auto& [va, ca] : a.terms)
            for (auto& [vb, cb] : b.terms) {
                LatticePoint v(va.size());
                for (size_t i = 0; i < v.size(); ++i) v[i] = va[i] + vb[i];
                r.add_term(v, ca * cb);
            }
        return r;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.rank == b.rank && a.terms == b.terms;
    }
    friend bool operator!=(const GroupRingElement& a, const GroupRingElement& b) { return !(a == b); }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [v, c] : terms) {
            if (!first) os << " + ";
            os << c.str() << "*g^(";
            for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
            os << ")";
            first = false;
        }
        return os.str();
    }
};

class NovikovElement {
public:
    NovikovElement(int rank, std::vector<long> weights, long precision)
        : m_rank(rank), m_weights(std::move(weights)), m_precision(precision) {
        if (int(m_weights.size()) != rank) throw Error("weight vector does not match group rank");
    }

    static NovikovElement from_group_ring(const GroupRingElement& g, const std::vector<long>& weights,
                                          long precision) {
        NovikovElement n(g.rank, weights, precision);
        for (auto& [v, c] : g.terms) n.add_term(v, c);
        return n;
    }

    static NovikovElement one(const std::vector<long>& weights, long precision) {
        return from_group_ring(GroupRingElement::one(int(weights.size())), weights, precision);
    }

    int rank() const { return m_rank; }
    const std::vector<long>& weights() const { return m_weights; }
    long precision() const { return m_precision; }
    const std::map<LatticePoint, Int>& terms() const { return m_terms; }
    long grading(const LatticePoint& v) const { return grading_of(m_weights, v); }

    // Terms at or above the precision are unknown; adding one is a no-op.
    void add_term(const LatticePoint& v, const Int& c) {
        if (c == 0 || grading(v) >= m_precision) return;
        auto it = m_terms.find(v);
        if (it == m_terms.end()) {
            m_terms.emplace(v, c);
        } else {
            it->second += c;
            if (it->second == 0) m_terms.erase(it);
        }
    }

    // Lower bound on the grading of any term of the true element.
    long support_bound() const {
        long b = m_precision;
        for (auto& [v, c] : m_terms) b = std::min(b, grading(v));
        return b;
    }

    friend NovikovElement operator+(const NovikovElement& a, const NovikovElement& b) {
        a.check_compatible(b);
        NovikovElement r(a.m_rank, a.m_weights, std::min(a.m_precision, b.m_precision));
        for (auto& [v, c] : a.m_terms) r.add_term(v, c);
        for (auto& [v, c] : b.m_terms) r.add_term(v, c);
        return r;
    }
    friend NovikovElement operator-(const NovikovElement& a, const NovikovElement& b) {
        a.check_compatible(b);
        NovikovElement r(a.m_rank, a.m_weights, std::min(a.m_precision, b.m_precision));
        for (auto& [v, c] : a.m_terms) r.add_term(v, c);
        for (auto& [v, c] : b.m_terms) r.add_term(v, -c);
        return r;
    }

    friend NovikovElement operator*(const NovikovElement& a, const NovikovElement& b) {
        a.check_compatible(b);
        long prec = std::min(a.m_precision + b.support_bound(), b.m_precision + a.support_bound());
        NovikovElement r(a.m_rank, a.m_weights, prec);
        for (auto& [va, ca] : a.m_terms)
            for (auto& [vb, cb] : b.m_terms) {
                LatticePoint v(va.size());
                for (size_t i = 0; i < v.size(); ++i) v[i] = va[i] + vb[i];
                r.add_term(v, ca * cb);
            }
        return r;
    }

    NovikovElement truncated(long precision) const {
        NovikovElement r(m_rank, m_weights, std::min(m_precision, precision));
        for (auto& [v, c] : m_terms) r.add_term(v, c);
        return r;
    }

    friend bool operator==(const NovikovElement& a, const NovikovElement& b) {
        return a.m_rank == b.m_rank && a.m_weights == b.m_weights && a.m_precision == b.m_precision &&
               a.m_terms == b.m_terms;
    }

    std::string str() const {
        GroupRingElement g{m_rank, m_terms};
        return g.str() + " + O(grading " + std::to_string(m_precision) + ")";
    }

private:
    void check_compatible(const NovikovElement& o) const {
        if (m_rank != o.m_rank || m_weights != o.m_weights)
            throw Error("Novikov elements live over different graded groups");
    }

    int m_rank;
    std::vector<long> m_weights;
    long m_precision;
    std::map<LatticePoint, Int> m_terms;
};

// Square matrix over the group ring; the determinant is expanded exactly by
// column-subset dynamic programming (no division, no truncation).
class PathMatrix {
public:
    PathMatrix(int size, int rank)
        : m_size(size), m_rank(rank), m_entries(size_t(size) * size_t(size), GroupRingElement::zero(rank)) {
        if (size < 0) throw Error("path matrix with negative size");
        if (size > 20) throw Error("path matrix too large for exact determinant expansion");
    }

    int size() const { return m_size; }
    int rank() const { return m_rank; }
    GroupRingElement& at(int i, int j) { return m_entries[size_t(i) * m_size + j]; }
    const GroupRingElement& at(int i, int j) const { return m_entries[size_t(i) * m_size + j]; }

    GroupRingElement determinant() const {
        const int n = m_size;
        if (n == 0) return GroupRingElement::one(m_rank);
        // dp[mask] = det of the submatrix on rows n-|mask|..n-1 and columns mask.
        std::vector<std::optional<GroupRingElement>> dp(size_t(1) << n);
        dp[0] = GroupRingElement::one(m_rank);
        for (unsigned mask = 1; mask < dp.size(); ++mask) {
            int k = __builtin_popcount(mask);
            int row = n - k;
            GroupRingElement acc = GroupRingElement::zero(m_rank);
            int pos = 0;
            for (int j = 0; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                const GroupRingElement& e = at(row, j);
                if (!e.is_zero()) {
                    GroupRingElement minor = e * *dp[mask & ~(1u << j)];
                    acc = pos % 2 == 0 ? acc + minor : acc - minor;
                }
                ++pos;
            }
            dp[mask] = std::move(acc);
        }
        return *dp[dp.size() - 1];
    }

private:
    int m_size;
    int m_rank;
    std::vector<GroupRingElement> m_entries;
};

// prod over orbits of (1 - [gamma])^{-sign}, truncated at the requested
// grading. Positive-sign factors become exact geometric sums; the orbit
// classes must have positive grading for those sums to live in the Novikov
// ring.
inline NovikovElement orbit_novikov_product(const OrbitSet& os, const std::vector<long>& weights,
                                            long precision) {
    os.validate();
    const int r = int(weights.size());
    NovikovElement acc = NovikovElement::one(weights, precision);
    for (auto& o : os.orbits) {
        if (!o.homology_class) throw ParseError("orbit without a homology class in a Novikov computation");
        const LatticePoint& v = *o.homology_class;
        if (int(v.size()) != r) throw ParseError("orbit class rank does not match weight vector");
        long g = grading_of(weights, v);
        if (g <= 0) throw NotApplicable("orbit class has nonpositive grading " + std::to_string(g));
        NovikovElement factor(r, weights, precision);
        if (o.sign > 0) {
            // (1 - [v])^{-1} = sum_j [j v], truncated.
            for (long j = 0; j * g < precision; ++j) {
                LatticePoint jv(v.size());
                for (size_t i = 0; i < v.size(); ++i) jv[i] = j * v[i];
                factor.add_term(jv, Int(1));
            }
        } else {
            factor.add_term(LatticePoint(size_t(r), 0), Int(1));
            factor.add_term(v, Int(-1));
        }
        acc = acc * factor;
    }
    return acc.truncated(precision);
}

inline NovikovElement i_eta(const OrbitSet& os, const PathMatrix& p, const std::vector<long>& weights,
                            long precision) {
    if (p.rank() != int(weights.size())) throw Error("path matrix rank does not match weight vector");
    NovikovElement acc = orbit_novikov_product(os, weights, precision) *
                         NovikovElement::from_group_ring(p.determinant(), weights, precision);
    return acc.truncated(precision);
}

// Specialization v -> t^{w.v}, exact on group ring elements.
inline ZPoly rho_specialize(const GroupRingElement& g, const std::vector<long>& weights) {
    ZPoly p;
    for (auto& [v, c] : g.terms) p += ZPoly::monomial(c, grading_of(weights, v));
    return p;
}

inline TruncatedSeries rho_specialize(const NovikovElement& n) {
    long lower = std::min(n.support_bound(), n.precision() - 1);
    TruncatedSeries s(lower, n.precision());
    for (auto& [v, c] : n.terms()) s.add_term(n.grading(v), Rat(c));
    return s;
}

// t^{chi/2} * rho(I); the Euler characteristic correction must be even.
inline TruncatedSeries sw_series(const NovikovElement& invariant, long chi_sigma) {
    if (chi_sigma % 2 != 0)
        throw NotApplicable("odd Euler characteristic correction " + std::to_string(chi_sigma));
    return rho_specialize(invariant).shifted(chi_sigma / 2);
}

// Weights (2N)^1, ..., (2N)^r: gradings are injective on lattice points with
// all coordinates in (-N, N), so the specialization can be undone digit by
// digit (balanced base 2N).
inline std::vector<long> separating_weights(int rank, long box) {
    if (rank < 0 || box < 1) throw Error("separating weights need rank >= 0 and box >= 1");
    std::vector<long> w(static_cast<size_t>(rank));
    long p = 1;
    for (int i = 0; i < rank; ++i) {
        if (p > (long(1) << 56) / (2 * box)) throw Error("separating weights overflow");
        p *= 2 * box;
        w[size_t(i)] = p;
    }
    return w;
}

// Inverse of rho_specialize on the image of the box (-box, box)^rank under
// separating_weights. Each exponent is decomposed in balanced base 2*box;
// a digit of magnitude box or a nonzero leftover means the exponent is not
// the grading of any admissible lattice point.
inline GroupRingElement reconstruct_from_specialization(const ZPoly& p, int rank, long box) {
    separating_weights(rank, box); // validates and guards overflow
    const long base = 2 * box;
    GroupRingElement g = GroupRingElement::zero(rank);
    for (auto& [e, c] : p.terms()) {
        long v = e;
        if (v % base != 0)
            throw NotApplicable("exponent " + std::to_string(e) + " has no balanced base-" + std::to_string(base) +
                        " representation");
        v /= base;
        LatticePoint point(size_t(rank), 0);
        for (int i = 0; i < rank; ++i) {
            long d = ((v % base) + base) % base;
            if (d >= box) d -= base;
            if (d <= -box)
                throw NotApplicable("exponent " + std::to_string(e) + " needs a digit of magnitude " +
                            std::to_string(box) + " or more");
            point[size_t(i)] = d;
            v = (v - d) / base;
        }
        if (v != 0)
            throw NotApplicable("exponent " + std::to_string(e) + " lies outside the reconstruction box");
        g.add_term(point, c);
    }
    return g;
}

// The translate of g invariant under v -> -v. The support's componentwise
// min+max must be an even vector 2c; the translate by -c is checked to be
// genuinely symmetric.
inline GroupRingElement symmetrize(const GroupRingElement& g) {
    if (g.is_zero()) throw NotApplicable("cannot symmetrize the zero element");
    const size_t r = size_t(g.rank);
    LatticePoint lo = g.terms.begin()->first, hi = lo;
    for (auto& [v, c] : g.terms)
        for (size_t i = 0; i < r; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    LatticePoint center(r);
    for (size_t i = 0; i < r; ++i) {
        long twice = lo[i] + hi[i];
        if (twice % 2 != 0)
            throw NotApplicable("support midpoint is not a lattice point (coordinate " +
                                std::to_string(i) + ")");
        center[i] = twice / 2;
    }
    GroupRingElement out = GroupRingElement::zero(g.rank);
    for (auto& [v, c] : g.terms) {
        LatticePoint mirrored(r), translated(r);
        for (size_t i = 0; i < r; ++i) {
            mirrored[i] = 2 * center[i] - v[i];
            translated[i] = v[i] - center[i];
        }
        if (g.coeff(mirrored) != c)
            throw NotApplicable("element is not symmetric about its support midpoint");
        out.add_term(translated, c);
    }
    return out;
}

} // namespace torsionlab
