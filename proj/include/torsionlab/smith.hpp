#pragma once

// Smith normal form over Q[t,1/t]. The ring is Euclidean with size function
// span = (max exponent - min exponent); division with remainder reduces the
// span, and units are q*t^k. Pivots are chosen with minimal span, ties broken
// by position. The factorization left*m*right == diag is asserted on every
// call: a silent transform bug would poison every homology order downstream.

#include "torsionlab/matrix.hpp"

namespace torsionlab {

struct SmithForm {
    std::vector<QPoly> diag;  // invariant factors, canonical associates, zeros trailing
    QPolyMatrix left;         // unimodular row transform
    QPolyMatrix right;        // unimodular column transform
};

namespace detail {

// Canonical associate under units q*t^k: primitive integer polynomial,
// lowest exponent 0, positive lowest coefficient.
inline QPoly canonical_associate_q(const QPoly& p) {
    if (p.is_zero()) return p;
    ZPoly pp = primitive_part(p);
    return to_qpoly(normalize_unit_z(pp));
}

inline bool divides_span(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) return true;
    if (a.is_zero()) return false;
    return divmod_span(b, a).second.is_zero();
}

} // namespace detail

inline SmithForm smith_normal_form(const QPolyMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    QPolyMatrix s = m;
    QPolyMatrix left = QPolyMatrix::identity(rows);
    QPolyMatrix right = QPolyMatrix::identity(cols);

    auto row_swap = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(s.at(a, j), s.at(b, j));
        for (int j = 0; j < rows; ++j) std::swap(left.at(a, j), left.at(b, j));
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(s.at(i, a), s.at(i, b));
        for (int i = 0; i < cols; ++i) std::swap(right.at(i, a), right.at(i, b));
    };
    // row a -= q * row b ; col a -= q * col b
    auto row_axpy = [&](int a, int b, const QPoly& q) {
        if (q.is_zero()) return;
        for (int j = 0; j < cols; ++j) s.at(a, j) -= q * s.at(b, j);
        for (int j = 0; j < rows; ++j) left.at(a, j) -= q * left.at(b, j);
    };
    auto col_axpy = [&](int a, int b, const QPoly& q) {
        if (q.is_zero()) return;
        for (int i = 0; i < rows; ++i) s.at(i, a) -= q * s.at(i, b);
        for (int i = 0; i < cols; ++i) right.at(i, a) -= q * right.at(i, b);
    };

    const int steps = std::min(rows, cols);
    int k = 0;
    for (; k < steps; ++k) {
        // Pivot: minimal span among nonzero entries of the trailing block.
        int pr = -1, pc = -1;
        long best = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                if (s.at(i, j).is_zero()) continue;
                long sp = s.at(i, j).span();
                if (best < 0 || sp < best) {
                    best = sp;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break; // trailing block is zero
        row_swap(k, pr);
        col_swap(k, pc);

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear column k.
            for (int i = k + 1; i < rows; ++i) {
                if (s.at(i, k).is_zero()) continue;
                auto [q, r] = divmod_span(s.at(i, k), s.at(k, k));
                row_axpy(i, k, q);
                if (!r.is_zero()) {
                    row_swap(k, i); // remainder has smaller span: new pivot
                    settled = false;
                }
            }
            if (!settled) continue;
            // Clear row k.
            for (int j = k + 1; j < cols; ++j) {
                if (s.at(k, j).is_zero()) continue;
                auto [q, r] = divmod_span(s.at(k, j), s.at(k, k));
                col_axpy(j, k, q);
                if (!r.is_zero()) {
                    col_swap(k, j);
                    settled = false;
                }
            }
            if (!settled) continue;
            // Pivot must divide the rest of the block; fold a bad row in.
            for (int i = k + 1; i < rows && settled; ++i)
                for (int j = k + 1; j < cols && settled; ++j)
                    if (!detail::divides_span(s.at(k, k), s.at(i, j))) {
                        row_axpy(k, i, QPoly(Rat(-1))); // row_k += row_i
                        settled = false;
                    }
        }
    }

    SmithForm out;
    out.diag.resize(size_t(steps));
    for (int i = 0; i < steps; ++i) {
        QPoly d = s.at(i, i);
        QPoly canon = detail::canonical_associate_q(d);
        if (!d.is_zero() && d != canon) {
            // Absorb the unit into the row transform: scaling row i of
            // left*m*right by u rescales row i of left.
            QPoly u = exact_divide(canon, d);
            for (int j = 0; j < rows; ++j) left.at(i, j) = left.at(i, j) * u;
            s.at(i, i) = canon;
        }
        out.diag[size_t(i)] = s.at(i, i);
    }
    out.left = std::move(left);
    out.right = std::move(right);

    // Hard postcondition checks.
    QPolyMatrix prod = out.left * m * out.right;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const QPoly expect = (i == j && i < steps) ? out.diag[size_t(i)] : QPoly::zero();
            if (prod.at(i, j) != expect) throw Error("smith_normal_form: transform verification failed");
        }
    for (size_t i = 0; i + 1 < out.diag.size(); ++i) {
        if (out.diag[i].is_zero() && !out.diag[i + 1].is_zero())
            throw Error("smith_normal_form: zero factor precedes nonzero factor");
        if (!out.diag[i].is_zero() && !detail::divides_span(out.diag[i], out.diag[i + 1]))
            throw Error("smith_normal_form: divisibility chain violated");
    }
    QPoly dl = determinant(out.left), dr = determinant(out.right);
    if (dl.is_zero() || !dl.is_monomial() || dr.is_zero() || !dr.is_monomial())
        throw Error("smith_normal_form: transform is not unimodular");
    return out;
}

} // namespace torsionlab
