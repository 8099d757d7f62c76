#pragma once

// Dense matrices over exact rings, with the two elimination strategies the
// library needs: fraction-free Bareiss for polynomial entries and ordinary
// fraction-field elimination for RationalFunction entries. Sizes are desk
// scale; everything is exact.

#include "torsionlab/laurent.hpp"
#include "torsionlab/rational_function.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace torsionlab {

template <class T>
class RingMatrix {
public:
    RingMatrix() : m_rows(0), m_cols(0) {}
    RingMatrix(int rows, int cols) : m_rows(rows), m_cols(cols), m_data(size_t(rows) * size_t(cols)) {
        if (rows < 0 || cols < 0) throw Error("matrix with negative dimensions");
    }

    static RingMatrix identity(int n) {
        RingMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = one_value();
        return m;
    }

    int rows() const { return m_rows; }
    int cols() const { return m_cols; }

    T& at(int i, int j) { return m_data[size_t(i) * m_cols + j]; }
    const T& at(int i, int j) const { return m_data[size_t(i) * m_cols + j]; }

    RingMatrix transposed() const {
        RingMatrix r(m_cols, m_rows);
        for (int i = 0; i < m_rows; ++i)
            for (int j = 0; j < m_cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    RingMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        RingMatrix r(int(rows.size()), int(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) r.at(int(i), int(j)) = at(rows[i], cols[j]);
        return r;
    }

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
        if (a.m_cols != b.m_rows) throw Error("matrix product shape mismatch");
        RingMatrix r(a.m_rows, b.m_cols);
        for (int i = 0; i < a.m_rows; ++i)
            for (int k = 0; k < a.m_cols; ++k) {
                const T& aik = a.at(i, k);
                if (is_zero_value(aik)) continue;
                for (int j = 0; j < b.m_cols; ++j) {
                    const T& bkj = b.at(k, j);
                    if (is_zero_value(bkj)) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
        if (a.m_rows != b.m_rows || a.m_cols != b.m_cols) throw Error("matrix sum shape mismatch");
        RingMatrix r = a;
        for (int i = 0; i < a.m_rows; ++i)
            for (int j = 0; j < a.m_cols; ++j) r.at(i, j) += b.at(i, j);
        return r;
    }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }
    friend bool operator!=(const RingMatrix& a, const RingMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (auto& v : m_data)
            if (!is_zero_value(v)) return false;
        return true;
    }

    static bool is_zero_value(const T& v) { return v.is_zero(); }

private:
    static T one_value() {
        if constexpr (std::is_same_v<T, RationalFunction>) return RationalFunction(Int(1));
        else return T::one();
    }

    int m_rows, m_cols;
    std::vector<T> m_data;
};

using ZPolyMatrix = RingMatrix<ZPoly>;
using QPolyMatrix = RingMatrix<QPoly>;
using QtMatrix = RingMatrix<RationalFunction>;

inline QPolyMatrix to_qpoly_matrix(const ZPolyMatrix& m) {
    QPolyMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = to_qpoly(m.at(i, j));
    return r;
}

inline QtMatrix to_field_matrix(const ZPolyMatrix& m) {
    QtMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = RationalFunction(m.at(i, j));
    return r;
}

inline QtMatrix to_field_matrix(const QPolyMatrix& m) {
    QtMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = RationalFunction(m.at(i, j));
    return r;
}

namespace detail {

// Fraction-free Bareiss elimination with full pivoting. Returns the rank and,
// for square input, the determinant. Exact division by the previous pivot is
// guaranteed by the Sylvester minor identity.
template <class P>
struct BareissResult {
    int rank = 0;
    P det; // meaningful for square matrices only
};

template <class P>
BareissResult<P> bareiss(RingMatrix<P> m) {
    const int rows = m.rows(), cols = m.cols();
    const int steps = std::min(rows, cols);
    BareissResult<P> out;
    int sign = 1;
    P prev = P::one();
    int k = 0;
    for (; k < steps; ++k) {
        int pr = -1, pc = -1;
        for (int i = k; i < rows && pr < 0; ++i)
            for (int j = k; j < cols; ++j)
                if (!m.at(i, j).is_zero()) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        if (pr != k) {
            sign = -sign;
            for (int j = 0; j < cols; ++j) std::swap(m.at(k, j), m.at(pr, j));
        }
        if (pc != k) {
            sign = -sign;
            for (int i = 0; i < rows; ++i) std::swap(m.at(i, k), m.at(i, pc));
        }
        for (int i = k + 1; i < rows; ++i) {
            for (int j = k + 1; j < cols; ++j) {
                P v = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = prev.is_one() ? std::move(v) : exact_divide(v, prev);
            }
            m.at(i, k) = P::zero();
        }
        prev = m.at(k, k);
    }
    out.rank = k;
    if (rows == cols) {
        if (k < rows) {
            out.det = P::zero();
        } else {
            out.det = prev;
            if (sign < 0) out.det = -out.det;
        }
    }
    return out;
}

} // namespace detail

// Determinant of a square polynomial matrix (Bareiss).
template <class C>
LaurentPoly<C> determinant(const RingMatrix<LaurentPoly<C>>& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    if (m.rows() == 0) return LaurentPoly<C>::one();
    return detail::bareiss(m).det;
}

template <class C>
int rank(const RingMatrix<LaurentPoly<C>>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return detail::bareiss(m).rank;
}

// Field elimination over Q(t). Entries with nontrivial denominators are
// handled directly; each row is first scaled to clear denominators so the
// bulk of the work is still fraction-free.
inline int rank(const QtMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    QPolyMatrix p(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        ZPoly lcm = ZPoly::one();
        for (int j = 0; j < m.cols(); ++j) {
            const ZPoly& d = m.at(i, j).den();
            ZPoly g = gcd_laurent(lcm, d);
            lcm = exact_divide(lcm * d, g);
        }
        RationalFunction scale{lcm, ZPoly::one()};
        for (int j = 0; j < m.cols(); ++j) p.at(i, j) = (m.at(i, j) * scale).as_qpoly();
    }
    return detail::bareiss(p).rank;
}

inline RationalFunction determinant(const QtMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    if (m.rows() == 0) return RationalFunction(Int(1));
    QtMatrix a = m;
    const int n = a.rows();
    RationalFunction det(Int(1));
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int i = k; i < n; ++i)
            if (!a.at(i, k).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) return RationalFunction();
        if (pr != k) {
            sign = -sign;
            for (int j = k; j < n; ++j) std::swap(a.at(k, j), a.at(pr, j));
        }
        const RationalFunction pivot = a.at(k, k);
        det *= pivot;
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k).is_zero()) continue;
            RationalFunction f = a.at(i, k) / pivot;
            for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    if (sign < 0) det = -det;
    return det;
}

struct SolveResult {
    int rank = 0;
    std::optional<std::vector<RationalFunction>> solution; // one solution, free variables set to 0
};

// Gaussian elimination on [A | b]; reports rank(A) and a solution of Ax = b
// when consistent.
inline SolveResult rank_and_solve(const QtMatrix& a, const std::vector<RationalFunction>& rhs) {
    if (int(rhs.size()) != a.rows()) throw Error("rank_and_solve shape mismatch");
    const int rows = a.rows(), cols = a.cols();
    QtMatrix w(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) w.at(i, j) = a.at(i, j);
        w.at(i, cols) = rhs[size_t(i)];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!w.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j <= cols; ++j) std::swap(w.at(r, j), w.at(pr, j));
        RationalFunction inv = w.at(r, c).inverse();
        for (int j = c; j <= cols; ++j) w.at(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || w.at(i, c).is_zero()) continue;
            RationalFunction f = w.at(i, c);
            for (int j = c; j <= cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    SolveResult out;
    out.rank = r;
    for (int i = r; i < rows; ++i)
        if (!w.at(i, cols).is_zero()) return out; // inconsistent
    std::vector<RationalFunction> x(static_cast<size_t>(cols));
    for (int i = 0; i < r; ++i) x[size_t(pivot_col[size_t(i)])] = w.at(i, cols);
    out.solution = std::move(x);
    return out;
}

// Inverse of a square invertible matrix over Q(t).
inline QtMatrix inverse(const QtMatrix& m) {
    if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
    const int n = m.rows();
    QtMatrix w(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
        w.at(i, n + i) = RationalFunction(Int(1));
    }
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int i = k; i < n; ++i)
            if (!w.at(i, k).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) throw Error("matrix is singular");
        if (pr != k)
            for (int j = 0; j < 2 * n; ++j) std::swap(w.at(k, j), w.at(pr, j));
        RationalFunction inv = w.at(k, k).inverse();
        for (int j = k; j < 2 * n; ++j) w.at(k, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || w.at(i, k).is_zero()) continue;
            RationalFunction f = w.at(i, k);
            for (int j = k; j < 2 * n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    QtMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = w.at(i, n + j);
    return r;
}

// Streams every k x k minor in lexicographic subset order: row subsets outer,
// column subsets inner. The visitor receives (rows, cols, det) and returns
// false to stop early.
template <class C, class F>
void enumerate_minors(const RingMatrix<LaurentPoly<C>>& m, int k, F&& visit) {
    if (k < 0) throw Error("minor size must be nonnegative");
    if (k > m.rows() || k > m.cols()) return;
    auto first_subset = [](int k_) {
        std::vector<int> s(static_cast<size_t>(k_));
        for (int i = 0; i < k_; ++i) s[size_t(i)] = i;
        return s;
    };
    auto next_subset = [](std::vector<int>& s, int n) {
        int k_ = int(s.size());
        int i = k_ - 1;
        while (i >= 0 && s[size_t(i)] == n - k_ + i) --i;
        if (i < 0) return false;
        ++s[size_t(i)];
        for (int j = i + 1; j < k_; ++j) s[size_t(j)] = s[size_t(j - 1)] + 1;
        return true;
    };
    std::vector<int> rs = first_subset(k);
    do {
        std::vector<int> cs = first_subset(k);
        do {
            LaurentPoly<C> d = determinant(m.submatrix(rs, cs));
            if (!visit(rs, cs, d)) return;
        } while (next_subset(cs, m.cols()));
    } while (next_subset(rs, m.rows()));
}

} // namespace torsionlab
