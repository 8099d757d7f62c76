// End-to-end verification checks over instance bundles: the torsion
// refinement, the trace identity with its integer defect, and the suite
// runner's error handling.

#include <catch2/catch_amalgamated.hpp>

#include <torsionlab/torsionlab.hpp>

#include <support/random_complexes.hpp>

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "fixtures"
#endif

using namespace torsionlab;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

using Outcome = VerificationReport::Outcome;

VerificationReport find_check(const std::vector<VerificationReport>& reports, const std::string& name) {
    for (auto& r : reports)
        if (r.check == name) return r;
    FAIL("check '" + name + "' not found");
    return {};
}

} // namespace

TEST_CASE("fully consistent instances pass every check", "[verify]") {
    for (const char* name : {"s1_k1.json", "s1_k3.json", "s1xs2.json", "trefoil0.json"}) {
        CAPTURE(name);
        InstanceBundle b = load_instance(fixture(name));
        auto reports = verify_all(b, 30);
        for (auto& r : reports) {
            CAPTURE(r.check, r.reason);
            CHECK(r.outcome == Outcome::Pass);
        }
        // No critical points are created or destroyed in these models, so the
        // integer defect of the trace identity vanishes.
        CHECK(find_check(reports, "main").m == 0);
    }
}

TEST_CASE("inconsistent cover data fails with witnesses", "[verify]") {
    InstanceBundle b = load_instance(fixture("corrupted.json"));

    VerificationReport ref = verify_refinement(b);
    CHECK(ref.outcome == Outcome::Fail);
    CHECK(ref.reason == "unit classes differ");
    CHECK(ref.witnesses.count("lhs") == 1);
    CHECK(ref.witnesses.count("rhs") == 1);
    CHECK(ref.witnesses["lhs"] != ref.witnesses["rhs"]);

    VerificationReport main = verify_main(b, 20);
    CHECK(main.outcome == Outcome::Fail);
    CHECK_FALSE(main.m.has_value());
}

TEST_CASE("missing blocks and free homology are not applicable", "[verify]") {
    InstanceBundle empty = load_instance(fixture("empty.json"));
    CHECK(verify_refinement(empty).outcome == Outcome::NotApplicable);
    CHECK(verify_refinement(empty).reason == "no morse block");
    CHECK(verify_zeta_forms(empty, 10).outcome == Outcome::Pass);

    InstanceBundle free_h = load_instance(fixture("nonacyclic.json"));
    VerificationReport orders = verify_homology_orders(free_h);
    CHECK(orders.outcome == Outcome::NotApplicable);
    CHECK_THAT(orders.reason, Catch::Matchers::ContainsSubstring("not acyclic"));
}

TEST_CASE("novikov consistency on shipped instances", "[verify]") {
    for (const char* name : {"s1xs2_sw.json", "rank2_sw.json", "zero_det.json"}) {
        CAPTURE(name);
        InstanceBundle b = load_instance(fixture(name));
        VerificationReport r = verify_meng_taubes(b);
        CAPTURE(r.reason);
        CHECK(r.outcome == Outcome::Pass);
    }

    // zero_det: the cover is not acyclic and the invariant itself vanishes.
    InstanceBundle z = load_instance(fixture("zero_det.json"));
    VerificationReport r = verify_meng_taubes(z);
    CHECK(r.witnesses["cover"]["sw_zero"] == true);
}

TEST_CASE("circulant family: refinement and the exact defect", "[verify]") {
    testgen::Rng g(445019);
    for (int trial = 0; trial < 6; ++trial) {
        long k = testgen::rint(g, 1, 4);
        int c = int(testgen::rint(g, 1, 3));
        testgen::CirculantInstance inst = testgen::circulant_instance(g, k, c);
        CAPTURE(k, c, inst.sum_b);

        VerificationReport ref = verify_refinement(inst.bundle);
        CAPTURE(ref.reason);
        CHECK(ref.outcome == Outcome::Pass);

        // The trace identity defect counts the descending-slope contribution:
        // here it is minus the total lower exponent sum of the incidences.
        VerificationReport main = verify_main(inst.bundle, 25);
        CHECK(main.outcome == Outcome::Pass);
        CHECK(main.m == -inst.sum_b);
    }
}

TEST_CASE("block covers from signed permutations", "[verify]") {
    testgen::Rng g(110342);
    for (int trial = 0; trial < 4; ++trial) {
        InstanceBundle b = testgen::lefschetz_instance(g, 3, 4);
        VerificationReport main = verify_main(b, 30);
        CAPTURE(main.reason);
        CHECK(main.outcome == Outcome::Pass);
        CHECK(main.m == 0);

        VerificationReport ref = verify_refinement(b);
        CHECK(ref.outcome == Outcome::Pass);
    }
}

TEST_CASE("truncation override controls the comparison order", "[verify]") {
    InstanceBundle b = load_instance(fixture("s1_k1.json"));
    CHECK(effective_order(b, 30) == 30);
    b.truncation = 5;
    CHECK(effective_order(b, 30) == 5);

    VerificationReport main = verify_main(b, 30);
    CHECK(main.outcome == Outcome::Pass);
    CHECK(main.witnesses["lhs"]["precision"] == 6);
}

TEST_CASE("suite runner keeps going after parse failures", "[verify]") {
    Json suite = run_suite({fixture("s1_k1.json"), fixture("malformed.json"), fixture("empty.json")}, 12);

    int parse_entries = 0, pass_entries = 0;
    std::set<std::string> files;
    for (auto& e : suite) {
        files.insert(e["file"].get<std::string>());
        if (e["check"] == "parse") {
            ++parse_entries;
            CHECK(e["outcome"] == "fail");
        }
        if (e["outcome"] == "pass") ++pass_entries;
    }
    CHECK(parse_entries == 1);
    CHECK(files.size() == 3);
    // s1_k1 contributes six applicable checks, empty only the zeta check.
    CHECK(pass_entries == 7);
}

TEST_CASE("series against rational functions up to a unit", "[verify]") {
    RationalFunction geo(ZPoly::one(), ZPoly::one() - ZPoly::t());
    Json detail_out = Json::object();

    // t^2/(1-t) is t^2 times the target: accepted.
    TruncatedSeries s = series_expand(geo * RationalFunction::t_power(2), 9);
    CHECK(detail::series_matches_unit_multiple(s, geo, detail_out));

    // Negated shift is also a unit multiple.
    TruncatedSeries neg = series_expand(geo * RationalFunction::t_power(2), 9).scaled(Rat(-1));
    CHECK(detail::series_matches_unit_multiple(neg, geo, detail_out));

    // A different pole is rejected.
    RationalFunction other(ZPoly::one(), ZPoly::one() + ZPoly::t());
    CHECK_FALSE(detail::series_matches_unit_multiple(s, other, detail_out));

    // Scalar multiples other than +-1 are not units here.
    TruncatedSeries twice = series_expand(geo, 9).scaled(Rat(2));
    CHECK_FALSE(detail::series_matches_unit_multiple(twice, geo, detail_out));

    // Trusted zero matches only the zero function.
    TruncatedSeries zero(0, 6);
    CHECK(detail::series_matches_unit_multiple(zero, RationalFunction(), detail_out));
    CHECK_FALSE(detail::series_matches_unit_multiple(zero, geo, detail_out));
    CHECK_FALSE(detail::series_matches_unit_multiple(s, RationalFunction(), detail_out));
}

TEST_CASE("refinement implies the trace identity on random circulants", "[verify]") {
    // Whenever the refinement check passes, the trace identity can only fail
    // by a non-integer or non-constant defect; on this family it never does.
    testgen::Rng g(990127);
    for (int trial = 0; trial < 4; ++trial) {
        testgen::CirculantInstance inst = testgen::circulant_instance(g, testgen::rint(g, 1, 3), 2);
        if (verify_refinement(inst.bundle).outcome != Outcome::Pass) continue;
        CHECK(verify_main(inst.bundle, 18).outcome == Outcome::Pass);
    }
}
