// Exact linear algebra over Laurent polynomial rings and their fraction field.

#include <catch2/catch_amalgamated.hpp>

#include <torsionlab/matrix.hpp>

#include <support/random_complexes.hpp>

using namespace torsionlab;

namespace {

// Independent determinant by cofactor expansion along the first row. Kept
// deliberately naive; the library's fraction-free elimination is checked
// against it on random inputs.
ZPoly cofactor_det(const ZPolyMatrix& m) {
    const int n = m.rows();
    if (n == 0) return ZPoly::one();
    if (n == 1) return m.at(0, 0);
    ZPoly acc = ZPoly::zero();
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        std::vector<int> rows, cols;
        for (int i = 1; i < n; ++i) rows.push_back(i);
        for (int k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        ZPoly minor = cofactor_det(m.submatrix(rows, cols));
        ZPoly term = m.at(0, j) * minor;
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

ZPolyMatrix random_zpoly_matrix(testgen::Rng& g, int n) {
    ZPolyMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (testgen::rint(g, 0, 2) == 0) continue; // keep some sparsity
            m.at(i, j) = ZPoly::monomial(testgen::rint(g, -3, 3), testgen::rint(g, -2, 2));
            if (testgen::rint(g, 0, 1)) m.at(i, j) += ZPoly::monomial(testgen::rint(g, -2, 2), 0);
        }
    return m;
}

} // namespace

TEST_CASE("determinant agrees with cofactor expansion", "[matrix]") {
    testgen::Rng g(903101);
    for (int trial = 0; trial < 40; ++trial) {
        int n = int(testgen::rint(g, 0, 4));
        ZPolyMatrix m = random_zpoly_matrix(g, n);
        CHECK(determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("fixed determinants", "[matrix]") {
    // det(I - tA) for the swap A = [[0,1],[1,0]] is 1 - t^2.
    ZPolyMatrix m(2, 2);
    m.at(0, 0) = ZPoly::one();
    m.at(0, 1) = -ZPoly::t();
    m.at(1, 0) = -ZPoly::t();
    m.at(1, 1) = ZPoly::one();
    CHECK(determinant(m) == ZPoly::one() - ZPoly::t().pow(2));

    CHECK(determinant(ZPolyMatrix(0, 0)).is_one());
    CHECK_THROWS_AS(determinant(ZPolyMatrix(2, 3)), Error);

    // Fraction field determinant of [[1/(1-t), 1], [1, 1-t]] is zero.
    QtMatrix q(2, 2);
    RationalFunction one_minus_t(ZPoly::one() - ZPoly::t());
    q.at(0, 0) = one_minus_t.inverse();
    q.at(0, 1) = RationalFunction(Int(1));
    q.at(1, 0) = RationalFunction(Int(1));
    q.at(1, 1) = one_minus_t;
    CHECK(determinant(q).is_zero());
}

TEST_CASE("rank over the fraction field", "[matrix]") {
    QtMatrix m(2, 2);
    m.at(0, 0) = RationalFunction(Int(1));
    m.at(0, 1) = RationalFunction(ZPoly::t());
    m.at(1, 0) = RationalFunction(ZPoly::t());
    m.at(1, 1) = RationalFunction(ZPoly::t().pow(2));
    CHECK(rank(m) == 1); // second row is t times the first

    ZPolyMatrix z(2, 3);
    z.at(0, 0) = ZPoly::one();
    z.at(1, 2) = ZPoly::from_terms({{0, 1}, {1, -1}});
    CHECK(rank(z) == 2);
    CHECK(rank(ZPolyMatrix(0, 5)) == 0);
}

TEST_CASE("linear solve", "[matrix]") {
    QtMatrix a(2, 2);
    a.at(0, 0) = RationalFunction(Int(1));
    a.at(0, 1) = RationalFunction(Int(1));
    a.at(1, 1) = RationalFunction(ZPoly::one() - ZPoly::t());

    // [1 1; 0 1-t] x = (1, 1-t) has the unique solution (0, 1).
    auto res = rank_and_solve(a, {RationalFunction(Int(1)), RationalFunction(ZPoly::one() - ZPoly::t())});
    REQUIRE(res.solution.has_value());
    CHECK(res.rank == 2);
    CHECK((*res.solution)[0].is_zero());
    CHECK((*res.solution)[1] == RationalFunction(Int(1)));

    // Inconsistent system: second equation contradicts the first.
    QtMatrix b(2, 1);
    b.at(0, 0) = RationalFunction(Int(1));
    b.at(1, 0) = RationalFunction(Int(1));
    auto bad = rank_and_solve(b, {RationalFunction(Int(0)), RationalFunction(Int(1))});
    CHECK(bad.rank == 1);
    CHECK_FALSE(bad.solution.has_value());

    CHECK_THROWS_AS(rank_and_solve(b, {RationalFunction(Int(1))}), Error);
}

TEST_CASE("inverse", "[matrix]") {
    QtMatrix m(2, 2);
    m.at(0, 0) = RationalFunction(Int(1));
    m.at(0, 1) = RationalFunction(ZPoly::t());
    m.at(1, 1) = RationalFunction(Int(1));
    QtMatrix inv = inverse(m);
    CHECK(inv.at(0, 1) == -RationalFunction(ZPoly::t()));
    CHECK(m * inv == QtMatrix::identity(2));
    CHECK(inv * m == QtMatrix::identity(2));

    QtMatrix sing(1, 1);
    CHECK_THROWS_AS(inverse(sing), Error);

    testgen::Rng g(414802);
    for (int trial = 0; trial < 10; ++trial) {
        int n = int(testgen::rint(g, 1, 4));
        ZPolyMatrix z = random_zpoly_matrix(g, n);
        if (determinant(z).is_zero()) continue;
        QtMatrix f = to_field_matrix(z);
        CHECK(f * inverse(f) == QtMatrix::identity(n));
    }
}

TEST_CASE("minor enumeration order and early stop", "[matrix]") {
    ZPolyMatrix m(2, 3);
    long vals[2][3] = {{1, 2, 3}, {4, 5, 6}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = ZPoly::monomial(vals[i][j], 0);

    // 2x2 minors in column-lexicographic order: -3, -6, -3.
    std::vector<ZPoly> seen;
    std::vector<std::vector<int>> col_sets;
    enumerate_minors(m, 2, [&](const std::vector<int>&, const std::vector<int>& cols, const ZPoly& d) {
        seen.push_back(d);
        col_sets.push_back(cols);
        return true;
    });
    REQUIRE(seen.size() == 3);
    CHECK(seen[0] == ZPoly::monomial(-3, 0));
    CHECK(seen[1] == ZPoly::monomial(-6, 0));
    CHECK(seen[2] == ZPoly::monomial(-3, 0));
    CHECK(col_sets[0] == std::vector<int>{0, 1});
    CHECK(col_sets[2] == std::vector<int>{1, 2});

    int visits = 0;
    enumerate_minors(m, 1, [&](const std::vector<int>&, const std::vector<int>&, const ZPoly&) {
        ++visits;
        return false;
    });
    CHECK(visits == 1);

    // k exceeding a dimension yields no minors; k = 0 yields the empty minor 1.
    enumerate_minors(m, 3, [&](auto&, auto&, auto&) {
        FAIL("no 3x3 minors exist in a 2x3 matrix");
        return true;
    });
    int zero_minors = 0;
    enumerate_minors(m, 0, [&](const std::vector<int>&, const std::vector<int>&, const ZPoly& d) {
        CHECK(d.is_one());
        ++zero_minors;
        return true;
    });
    CHECK(zero_minors == 1);
}

TEST_CASE("matrix algebra and conversions", "[matrix]") {
    ZPolyMatrix a(2, 2), b(2, 2);
    a.at(0, 0) = ZPoly::t();
    a.at(1, 1) = ZPoly::one();
    b.at(0, 1) = ZPoly::one();
    ZPolyMatrix prod = a * b;
    CHECK(prod.at(0, 1) == ZPoly::t());
    CHECK(prod.at(1, 1).is_zero());
    CHECK(a.transposed().at(0, 0) == ZPoly::t());
    CHECK((a + b).at(0, 1) == ZPoly::one());

    QPolyMatrix q = to_qpoly_matrix(a);
    CHECK(q.at(0, 0) == QPoly::t());
    QtMatrix f = to_field_matrix(q);
    CHECK(f.at(0, 0) == RationalFunction(ZPoly::t()));
}
