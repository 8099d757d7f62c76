#pragma once

// Based chain complexes of free modules with a distinguished basis per degree,
// and their Reidemeister torsion. A complex runs either up (cochain,
// d_i: C^i -> C^{i+1}) or down (chain, del_i: C_i -> C_{i-1}). Ranks are
// indexed by ascending degree in both conventions; differentials[j] connects
// degrees j and j+1.
//
// Torsion of an acyclic complex: choose for each degree a basis subset S_i
// with |S_i| = rank of the differential out of degree i; the square block
// [d(S_prev) | e_{S_i}] must be invertible, and the torsion is the signed
// alternating product of the block determinants. The subsets are chosen
// greedily, lexicographically smallest first, which is exactly the matroid
// greedy for the column matroid, so the construction never backtracks.

#include "torsionlab/matrix.hpp"
#include "torsionlab/unit_class.hpp"

#include <string>
#include <vector>

namespace torsionlab {

enum class Direction { Up, Down };

inline const char* direction_name(Direction d) { return d == Direction::Up ? "up" : "down"; }

class BasedComplex {
public:
    BasedComplex(Direction dir, std::vector<int> ranks, std::vector<QtMatrix> diffs,
                 std::vector<std::vector<std::string>> labels = {})
        : m_dir(dir), m_ranks(std::move(ranks)), m_diffs(std::move(diffs)), m_labels(std::move(labels)) {
        validate();
    }

    static BasedComplex from_integer(Direction dir, std::vector<int> ranks,
                                     const std::vector<ZPolyMatrix>& diffs,
                                     std::vector<std::vector<std::string>> labels = {}) {
        std::vector<QtMatrix> qd;
        qd.reserve(diffs.size());
        for (auto& d : diffs) qd.push_back(to_field_matrix(d));
        return BasedComplex(dir, std::move(ranks), std::move(qd), std::move(labels));
    }

    Direction direction() const { return m_dir; }
    const std::vector<int>& ranks() const { return m_ranks; }
    int degrees() const { return int(m_ranks.size()); }
    int top_degree() const { return degrees() - 1; }
    const std::vector<QtMatrix>& differentials() const { return m_diffs; }
    const QtMatrix& differential(int j) const { return m_diffs[size_t(j)]; }
    const std::vector<std::vector<std::string>>& labels() const { return m_labels; }

    // Rank of the differential out of `deg` toward the adjacent degree in the
    // direction of the arrows; 0 past the end.
    int out_rank(int deg) const {
        if (m_dir == Direction::Up) {
            if (deg < 0 || deg >= top_degree()) return 0;
            return rank(m_diffs[size_t(deg)]);
        }
        if (deg <= 0 || deg > top_degree()) return 0;
        return rank(m_diffs[size_t(deg - 1)]);
    }

    // True when every entry of every differential is a Laurent polynomial
    // with integer coefficients.
    bool has_integer_entries() const {
        for (auto& d : m_diffs)
            for (int i = 0; i < d.rows(); ++i)
                for (int j = 0; j < d.cols(); ++j) {
                    const RationalFunction& v = d.at(i, j);
                    if (!v.is_laurent_polynomial() || !v.den().is_one()) return false;
                }
        return true;
    }

private:
    void validate() const {
        if (m_ranks.empty()) throw ParseError("complex must have at least one degree");
        for (int r : m_ranks)
            if (r < 0) throw ParseError("negative rank in complex");
        if (m_diffs.size() + 1 != m_ranks.size())
            throw ParseError("complex needs exactly one differential per adjacent degree pair");
        for (size_t j = 0; j < m_diffs.size(); ++j) {
            int from = m_dir == Direction::Up ? m_ranks[j] : m_ranks[j + 1];
            int to = m_dir == Direction::Up ? m_ranks[j + 1] : m_ranks[j];
            if (m_diffs[j].rows() != to || m_diffs[j].cols() != from)
                throw ParseError("differential " + std::to_string(j) + " has shape " +
                                 std::to_string(m_diffs[j].rows()) + "x" + std::to_string(m_diffs[j].cols()) +
                                 ", expected " + std::to_string(to) + "x" + std::to_string(from));
        }
        for (size_t j = 0; j + 1 < m_diffs.size(); ++j) {
            QtMatrix comp = m_dir == Direction::Up ? m_diffs[j + 1] * m_diffs[j] : m_diffs[j] * m_diffs[j + 1];
            if (!comp.is_zero())
                throw ParseError("d^2 != 0 between degrees " + std::to_string(j) + " and " + std::to_string(j + 2));
        }
        if (!m_labels.empty()) {
            if (m_labels.size() != m_ranks.size()) throw ParseError("label list does not match degrees");
            for (size_t i = 0; i < m_labels.size(); ++i)
                if (int(m_labels[i].size()) != m_ranks[i])
                    throw ParseError("label count at degree " + std::to_string(i) + " does not match rank");
        }
    }

    Direction m_dir;
    std::vector<int> m_ranks;
    std::vector<QtMatrix> m_diffs;
    std::vector<std::vector<std::string>> m_labels;
};

struct AcyclicityReport {
    bool acyclic = true;
    int failing_degree = -1;
};

// Exactness over Q(t) by rank counting: rank C_i = in-rank + out-rank at
// every degree.
inline AcyclicityReport acyclicity_report(const BasedComplex& c) {
    std::vector<int> dr(c.differentials().size());
    for (size_t j = 0; j < dr.size(); ++j) dr[j] = rank(c.differential(int(j)));
    AcyclicityReport rep;
    for (int i = 0; i < c.degrees(); ++i) {
        int low = i > 0 ? dr[size_t(i - 1)] : 0;
        int high = i < c.top_degree() ? dr[size_t(i)] : 0;
        if (c.ranks()[size_t(i)] != low + high) {
            rep.acyclic = false;
            rep.failing_degree = i;
            return rep;
        }
    }
    return rep;
}

inline bool is_acyclic(const BasedComplex& c) { return acyclicity_report(c).acyclic; }

struct TorsionCertificate {
    // subsets[i]: chosen basis indices at degree i (ascending), |subsets[i]| =
    // rank of the differential out of degree i.
    std::vector<std::vector<int>> subsets;
    // block_dets[i]: determinant of [d(S_prev) | e_{S_i}] at degree i.
    std::vector<RationalFunction> block_dets;
};

struct TorsionResult {
    UnitClass torsion;
    RationalFunction value; // a concrete representative (depends on the certificate)
    TorsionCertificate certificate;
};

namespace detail {

// Determinant dispatch: Bareiss when all entries are polynomial, field
// elimination otherwise.
inline RationalFunction det_auto(const QtMatrix& m) {
    bool poly = true;
    for (int i = 0; i < m.rows() && poly; ++i)
        for (int j = 0; j < m.cols() && poly; ++j)
            if (!m.at(i, j).is_laurent_polynomial()) poly = false;
    if (!poly) return determinant(m);
    QPolyMatrix p(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) p.at(i, j) = m.at(i, j).as_qpoly();
    return RationalFunction(determinant(p));
}

struct DegreePlan {
    std::vector<int> order;    // degrees in processing order (start end first)
    std::vector<int> exponent; // +1 / -1 sign of the block at each degree
};

inline DegreePlan plan_for(const BasedComplex& c) {
    DegreePlan p;
    int m = c.top_degree();
    if (c.direction() == Direction::Up) {
        for (int i = 0; i <= m; ++i) {
            p.order.push_back(i);
            p.exponent.push_back(i % 2 == 0 ? 1 : -1);
        }
    } else {
        for (int i = m; i >= 0; --i) {
            p.order.push_back(i);
            p.exponent.push_back((m - i) % 2 == 0 ? 1 : -1);
        }
    }
    return p;
}

// The differential arriving at `deg` from the previously processed degree:
// columns live in the previous degree, rows in this one. Empty for the start.
inline QtMatrix incoming_matrix(const BasedComplex& c, int deg) {
    if (c.direction() == Direction::Up) {
        if (deg == 0) return QtMatrix(c.ranks()[0], 0);
        return c.differential(deg - 1);
    }
    if (deg == c.top_degree()) return QtMatrix(c.ranks()[size_t(deg)], 0);
    return c.differential(deg);
}

inline QtMatrix block_matrix(const QtMatrix& incoming, const std::vector<int>& prev_subset,
                             const std::vector<int>& subset, int n) {
    QtMatrix m(n, int(prev_subset.size() + subset.size()));
    for (size_t j = 0; j < prev_subset.size(); ++j)
        for (int i = 0; i < n; ++i) m.at(i, int(j)) = incoming.at(i, prev_subset[j]);
    for (size_t j = 0; j < subset.size(); ++j)
        m.at(subset[j], int(prev_subset.size() + j)) = RationalFunction(Int(1));
    return m;
}

} // namespace detail

// Torsion with caller-chosen subsets; the subsets must be admissible (every
// block invertible), otherwise NotApplicable is thrown. Certificates are
// produced by `torsion` and replayed by invariance tests.
inline TorsionResult torsion_with_certificate(const BasedComplex& c,
                                              const std::vector<std::vector<int>>& subsets,
                                              Ambiguity amb = Ambiguity::PlusMinusTk) {
    auto rep = acyclicity_report(c);
    if (!rep.acyclic)
        throw NotApplicable("complex is not acyclic over Q(t): exactness fails at degree " +
                            std::to_string(rep.failing_degree));
    if (int(subsets.size()) != c.degrees()) throw NotApplicable("certificate has wrong number of degrees");

    auto plan = detail::plan_for(c);
    TorsionResult out;
    out.certificate.subsets = subsets;
    out.certificate.block_dets.resize(size_t(c.degrees()));
    RationalFunction tau(Int(1));
    std::vector<int> prev;
    for (size_t step = 0; step < plan.order.size(); ++step) {
        int deg = plan.order[step];
        int n = c.ranks()[size_t(deg)];
        const std::vector<int>& s = subsets[size_t(deg)];
        for (size_t j = 0; j + 1 < s.size(); ++j)
            if (s[j] >= s[j + 1]) throw NotApplicable("certificate subset at degree " + std::to_string(deg) +
                                                      " is not strictly increasing");
        if (!s.empty() && (s.front() < 0 || s.back() >= n))
            throw NotApplicable("certificate subset at degree " + std::to_string(deg) + " is out of range");
        QtMatrix incoming = detail::incoming_matrix(c, deg);
        if (int(prev.size() + s.size()) != n)
            throw NotApplicable("certificate subset at degree " + std::to_string(deg) + " has size " +
                                std::to_string(s.size()) + ", expected " + std::to_string(n - int(prev.size())));
        QtMatrix block = detail::block_matrix(incoming, prev, s, n);
        RationalFunction det = detail::det_auto(block);
        if (det.is_zero())
            throw NotApplicable("certificate block at degree " + std::to_string(deg) + " is singular");
        out.certificate.block_dets[size_t(deg)] = det;
        tau = plan.exponent[step] > 0 ? tau * det : tau / det;
        prev = s;
    }
    out.value = tau;
    out.torsion = normalize_unit_class(tau, amb);
    return out;
}

// Greedy torsion: at each degree the lexicographically smallest admissible
// subset extends the image of the previous choice to a basis.
inline TorsionResult torsion(const BasedComplex& c, Ambiguity amb = Ambiguity::PlusMinusTk) {
    auto rep = acyclicity_report(c);
    if (!rep.acyclic)
        throw NotApplicable("complex is not acyclic over Q(t): exactness fails at degree " +
                            std::to_string(rep.failing_degree));
    auto plan = detail::plan_for(c);
    std::vector<std::vector<int>> subsets(size_t(c.degrees()));
    std::vector<int> prev;
    for (size_t step = 0; step < plan.order.size(); ++step) {
        int deg = plan.order[step];
        int n = c.ranks()[size_t(deg)];
        int want = n - int(prev.size());
        if (want < 0) throw Error("internal: negative complement size in torsion greedy");
        QtMatrix incoming = detail::incoming_matrix(c, deg);
        std::vector<int>& s = subsets[size_t(deg)];
        for (int j = 0; j < n && int(s.size()) < want; ++j) {
            s.push_back(j);
            QtMatrix block = detail::block_matrix(incoming, prev, s, n);
            if (rank(block) != block.cols()) s.pop_back();
        }
        if (int(s.size()) != want)
            throw Error("internal: torsion greedy failed to complete a basis at degree " + std::to_string(deg));
        prev = s;
    }
    return torsion_with_certificate(c, subsets, amb);
}

inline BasedComplex direct_sum(const BasedComplex& a, const BasedComplex& b) {
    if (a.direction() != b.direction()) throw Error("direct sum of complexes with different directions");
    int m = std::max(a.top_degree(), b.top_degree());
    auto rank_at = [](const BasedComplex& c, int i) {
        return (i >= 0 && i < c.degrees()) ? c.ranks()[size_t(i)] : 0;
    };
    std::vector<int> ranks(size_t(m + 1));
    for (int i = 0; i <= m; ++i) ranks[size_t(i)] = rank_at(a, i) + rank_at(b, i);
    std::vector<QtMatrix> diffs;
    for (int j = 0; j < m; ++j) {
        int from_deg = a.direction() == Direction::Up ? j : j + 1;
        int to_deg = a.direction() == Direction::Up ? j + 1 : j;
        QtMatrix d(ranks[size_t(to_deg)], ranks[size_t(from_deg)]);
        auto put = [&](const BasedComplex& c, int row0, int col0) {
            if (j >= int(c.differentials().size())) return;
            const QtMatrix& src = c.differential(j);
            for (int i = 0; i < src.rows(); ++i)
                for (int k = 0; k < src.cols(); ++k) d.at(row0 + i, col0 + k) = src.at(i, k);
        };
        put(a, 0, 0);
        put(b, rank_at(a, to_deg), rank_at(a, from_deg));
        diffs.push_back(std::move(d));
    }
    std::vector<std::vector<std::string>> labels;
    if (!a.labels().empty() || !b.labels().empty()) {
        labels.resize(size_t(m + 1));
        for (int i = 0; i <= m; ++i) {
            auto get = [&](const BasedComplex& c, int deg, const char* tag) {
                std::vector<std::string> out;
                int n = rank_at(c, deg);
                for (int k = 0; k < n; ++k) {
                    if (!c.labels().empty()) out.push_back(c.labels()[size_t(deg)][size_t(k)]);
                    else out.push_back(std::string(tag) + std::to_string(deg) + "_" + std::to_string(k));
                }
                return out;
            };
            auto la = get(a, i, "a"), lb = get(b, i, "b");
            labels[size_t(i)] = la;
            labels[size_t(i)].insert(labels[size_t(i)].end(), lb.begin(), lb.end());
        }
    }
    return BasedComplex(a.direction(), std::move(ranks), std::move(diffs), std::move(labels));
}

} // namespace torsionlab
