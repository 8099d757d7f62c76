// Torsion of based acyclic complexes: anchor values, multiplicativity,
// certificate replay, and independence from the subset and basis choices.

#include <catch2/catch_amalgamated.hpp>

#include <torsionlab/complex.hpp>

#include <support/random_complexes.hpp>

using namespace torsionlab;

namespace {

ZPolyMatrix zmat(int rows, int cols, const std::vector<ZPoly>& entries) {
    ZPolyMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = entries[size_t(i * cols + j)];
    return m;
}

} // namespace

TEST_CASE("length-three anchor, raising differentials", "[complex]") {
    // 0 -> C^0 --(1,t)--> C^1 --(-t,1)--> C^2 -> 0 is exact; all three block
    // determinants and the torsion value are pinned here.
    ZPoly t = ZPoly::t();
    BasedComplex c = BasedComplex::from_integer(
        Direction::Up, {1, 2, 1},
        {zmat(2, 1, {ZPoly::one(), t}), zmat(1, 2, {-t, ZPoly::one()})});

    TorsionResult r = torsion(c);
    CHECK(r.value == RationalFunction(Int(1)));
    CHECK(r.torsion.num.is_one());
    CHECK(r.torsion.den.is_one());
    CHECK(r.torsion.scalar == Rat(1));

    REQUIRE(r.certificate.subsets.size() == 3);
    CHECK(r.certificate.subsets[0] == std::vector<int>{0});
    CHECK(r.certificate.subsets[1] == std::vector<int>{0});
    CHECK(r.certificate.subsets[2].empty());
    CHECK(r.certificate.block_dets[0] == RationalFunction(Int(1)));
    CHECK(r.certificate.block_dets[1] == RationalFunction(-t));
    CHECK(r.certificate.block_dets[2] == RationalFunction(-t));
}

TEST_CASE("length-three anchor, lowering differentials", "[complex]") {
    // The same shape with lowering maps: C_2 --(1,t)^T--> C_1 --(-t,1)--> C_0.
    ZPoly t = ZPoly::t();
    BasedComplex c = BasedComplex::from_integer(
        Direction::Down, {1, 2, 1},
        {zmat(1, 2, {-t, ZPoly::one()}), zmat(2, 1, {ZPoly::one(), t})});

    TorsionResult r = torsion(c);
    CHECK(r.value == RationalFunction(Int(1)));
    CHECK(r.certificate.subsets[2] == std::vector<int>{0});
    CHECK(r.certificate.subsets[1] == std::vector<int>{0});
    CHECK(r.certificate.subsets[0].empty());
}

TEST_CASE("two-term complex gives the reciprocal determinant", "[complex]") {
    ZPoly one_minus_t = ZPoly::one() - ZPoly::t();
    BasedComplex c = BasedComplex::from_integer(Direction::Down, {1, 1}, {zmat(1, 1, {one_minus_t})});
    TorsionResult r = torsion(c);

    // Lowering two-term complex: tau = det(d)^(-1) up to the ambiguity.
    CHECK(r.value == RationalFunction(ZPoly::one(), one_minus_t));
    CHECK(r.torsion.num.is_one());
    CHECK(r.torsion.den == one_minus_t);

    // The rational ambiguity gives the same normal form here.
    TorsionResult q = torsion(c, Ambiguity::RationalTk);
    CHECK(q.torsion.den == one_minus_t);
}

TEST_CASE("non-acyclic complexes are rejected with the failing degree", "[complex]") {
    BasedComplex c = BasedComplex::from_integer(Direction::Up, {1, 1}, {zmat(1, 1, {ZPoly::zero()})});
    CHECK_FALSE(is_acyclic(c));
    CHECK(acyclicity_report(c).failing_degree == 0);
    CHECK_THROWS_AS(torsion(c), NotApplicable);

    // d^2 != 0 is a structural error caught at construction.
    CHECK_THROWS_AS(BasedComplex::from_integer(
                        Direction::Up, {1, 1, 1},
                        {zmat(1, 1, {ZPoly::one()}), zmat(1, 1, {ZPoly::one()})}),
                    ParseError);
}

TEST_CASE("torsion is multiplicative under direct sum", "[complex]") {
    // Raising complexes: block exponents depend only on the intrinsic degree,
    // so tau(A + B) ~ tau(A) * tau(B) outright. Lowering complexes anchor the
    // exponent pattern at the top degree; a summand shorter by an odd amount
    // therefore contributes its inverse.
    testgen::Rng g(771204);
    int done = 0;
    while (done < 14) {
        testgen::RandomComplexSpec spec;
        spec.dir = done % 2 ? Direction::Up : Direction::Down;
        spec.max_degrees = 3;
        BasedComplex a = testgen::random_acyclic_complex(g, spec);
        spec.max_degrees = 4;
        BasedComplex b = testgen::random_acyclic_complex(g, spec);
        BasedComplex sum = direct_sum(a, b);

        RationalFunction va = torsion(a).value;
        RationalFunction vb = torsion(b).value;
        if (spec.dir == Direction::Down) {
            int m = std::max(a.top_degree(), b.top_degree());
            if ((m - a.top_degree()) % 2 == 1) va = va.inverse();
            if ((m - b.top_degree()) % 2 == 1) vb = vb.inverse();
        }
        UnitClass product = normalize_unit_class(va * vb, Ambiguity::PlusMinusTk);
        CHECK(torsion(sum).torsion == product);
        ++done;
    }
}

TEST_CASE("certificate replay reproduces the value", "[complex]") {
    testgen::Rng g(662103);
    testgen::RandomComplexSpec spec;
    for (int trial = 0; trial < 8; ++trial) {
        spec.dir = trial % 2 ? Direction::Up : Direction::Down;
        BasedComplex c = testgen::random_acyclic_complex(g, spec);
        TorsionResult r = torsion(c);
        TorsionResult replay = torsion_with_certificate(c, r.certificate.subsets);
        CHECK(replay.value == r.value);
        CHECK(replay.torsion == r.torsion);
    }
}

TEST_CASE("inadmissible certificates are rejected", "[complex]") {
    ZPoly t = ZPoly::t();
    BasedComplex c = BasedComplex::from_integer(
        Direction::Up, {1, 2, 1},
        {zmat(2, 1, {ZPoly::one(), t}), zmat(1, 2, {-t, ZPoly::one()})});

    CHECK_THROWS_AS(torsion_with_certificate(c, {{0}, {0, 1}, {}}), NotApplicable); // wrong size
    CHECK_THROWS_AS(torsion_with_certificate(c, {{1}, {0}, {}}), NotApplicable);    // out of range
    CHECK_THROWS_AS(torsion_with_certificate(c, {{0}, {0}}), NotApplicable);        // missing degree

    // Degree 1, subset {1}: the block [d(S0) | e_1] = [[1, 0], [t, 1]] is
    // invertible, so this alternative certificate is admissible and gives the
    // same class.
    TorsionResult alt = torsion_with_certificate(c, {{0}, {1}, {}});
    CHECK(alt.torsion == torsion(c).torsion);
}

TEST_CASE("torsion class ignores the choice of subsets", "[complex]") {
    testgen::Rng g(934511);
    testgen::RandomComplexSpec spec;
    spec.max_degrees = 4;
    for (int trial = 0; trial < 5; ++trial) {
        spec.dir = trial % 2 ? Direction::Up : Direction::Down;
        BasedComplex c = testgen::random_acyclic_complex(g, spec);
        UnitClass base = torsion(c).torsion;
        for (int pick = 0; pick < 4; ++pick) {
            auto subsets = testgen::random_certificate(c, g);
            CHECK(torsion_with_certificate(c, subsets).torsion == base);
        }
    }
}

TEST_CASE("torsion class ignores the choice of basis", "[complex]") {
    testgen::Rng g(118997);
    testgen::RandomComplexSpec spec;
    spec.basis_ops = 0;
    for (int trial = 0; trial < 5; ++trial) {
        spec.dir = trial % 2 ? Direction::Up : Direction::Down;
        BasedComplex c = testgen::random_acyclic_complex(g, spec);
        UnitClass base = torsion(c).torsion;
        for (int change = 0; change < 4; ++change) {
            BasedComplex moved = testgen::perturb_basis(c, g, 6, true);
            CHECK(torsion(moved).torsion == base);
        }
    }
}

TEST_CASE("direct sum layout", "[complex]") {
    ZPoly t = ZPoly::t();
    BasedComplex a = BasedComplex::from_integer(Direction::Down, {1, 1}, {zmat(1, 1, {ZPoly::one() - t})});
    BasedComplex b = BasedComplex::from_integer(Direction::Down, {1, 1, 1},
                                                {zmat(1, 1, {t}), zmat(1, 1, {ZPoly::zero()})});
    BasedComplex s = direct_sum(a, b);
    CHECK(s.ranks() == std::vector<int>{2, 2, 1});
    CHECK(s.differential(0).at(0, 0) == RationalFunction(ZPoly::one() - t));
    CHECK(s.differential(0).at(1, 1) == RationalFunction(t));
    CHECK(s.differential(0).at(0, 1).is_zero());
    CHECK_THROWS_AS(direct_sum(a, BasedComplex::from_integer(Direction::Up, {1, 1},
                                                             {zmat(1, 1, {t})})),
                    Error);
}
