// torsionlab: exact torsion, zeta and Novikov-invariant computations on JSON
// instance files. Exit codes: 0 pass, 1 parse error, 2 not applicable,
// 3 verification failure.

#include <torsionlab/torsionlab.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using torsionlab::Json;

void emit(const Json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

void emit_error(const std::string& kind, const std::string& message) {
    Json j;
    j["error"] = message;
    j["kind"] = kind;
    std::cerr << j.dump() << "\n";
}

long default_order() {
    if (const char* env = std::getenv("TORSION_LAB_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 2) return v;
    }
    return 30;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw torsionlab::ParseError("cannot open file '" + path + "'");
    try {
        Json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        throw torsionlab::ParseError(path + ": invalid JSON: " + e.what());
    }
}

int run_torsion(const std::string& file, const std::string& block, bool pretty) {
    using namespace torsionlab;
    TorsionResult result = [&] {
        if (block == "complex") return torsion(parse_based_complex(load_json(file)), Ambiguity::PlusMinusTk);
        InstanceBundle b = load_instance(file);
        if (block == "morse") {
            if (!b.morse) throw NotApplicable("no morse block in " + file);
            return morse_torsion(build_morse_complex(*b.morse));
        }
        if (!b.cover) throw NotApplicable("no cover block in " + file);
        return cover_torsion(*b.cover);
    }();
    emit(write_unit_class(result.torsion), pretty);
    return 0;
}

int run_zeta(const std::string& file, long order, bool pretty) {
    using namespace torsionlab;
    InstanceBundle b = load_instance(file);
    if (!b.orbits) throw NotApplicable("no orbits block in " + file);
    ZetaProduct zp = zeta_product(*b.orbits, order);
    Json out;
    out["rational"] = wire::write_rational_function(zp.rational);
    out["series"] = write_series(zp.series);
    emit(out, pretty);
    return 0;
}

int run_morse(const std::string& file, bool pretty) {
    using namespace torsionlab;
    InstanceBundle b = load_instance(file);
    if (!b.morse) throw NotApplicable("no morse block in " + file);
    MorseComplex mc = build_morse_complex(*b.morse);
    Json out;
    out["dimension"] = mc.dimension();
    Json ranks = Json::array();
    for (int i = 0; i <= mc.dimension(); ++i) ranks.push_back(mc.rank_at(i));
    out["ranks"] = ranks;
    bool acyclic = mc.laplacians_nonsingular();
    out["acyclic"] = acyclic;
    if (acyclic)
        out["torsion"] = write_unit_class(morse_torsion(mc).torsion);
    else
        out["torsion"] = nullptr;
    emit(out, pretty);
    return acyclic ? 0 : 2;
}

int run_ord(const std::string& file, bool pretty) {
    using namespace torsionlab;
    InstanceBundle b = load_instance(file);
    if (!b.presentation) throw NotApplicable("no presentation block in " + file);
    std::optional<ZPoly> order = fitting_order(b.presentation->relations);
    Json out;
    out["generators"] = b.presentation->generators.size();
    out["order"] = order ? wire::write_poly(*order) : Json();
    emit(out, pretty);
    return 0;
}

int run_verify(const std::vector<std::string>& files, const std::string& check, long order,
               bool order_given, bool pretty) {
    using namespace torsionlab;
    const long fallback = order_given ? order : default_order();
    Json entries = Json::array();
    bool any_parse = false;
    for (auto& path : files) {
        try {
            InstanceBundle b = load_instance(path);
            if (order_given) b.truncation = order;
            std::vector<VerificationReport> reports;
            if (check == "refinement")
                reports.push_back(verify_refinement(b));
            else if (check == "main")
                reports.push_back(verify_main(b, fallback));
            else
                reports = verify_all(b, fallback);
            for (auto& rep : reports) {
                Json e = report_to_json(rep);
                e["file"] = path;
                entries.push_back(std::move(e));
            }
        } catch (const ParseError& e) {
            Json entry;
            entry["file"] = path;
            entry["check"] = "parse";
            entry["outcome"] = "fail";
            entry["reason"] = std::string(e.what());
            entry["witnesses"] = Json::object();
            entries.push_back(std::move(entry));
            any_parse = true;
        }
    }
    emit(entries, pretty);
    if (any_parse) return 1;
    bool any_fail = false;
    bool any_pass = false;
    for (auto& e : entries) {
        if (e["outcome"] == "fail") any_fail = true;
        if (e["outcome"] == "pass") any_pass = true;
    }
    if (any_fail) return 3;
    if (!any_pass) return 2;
    return 0;
}

int run_sw(const std::string& file, bool symmetrize_flag, bool pretty) {
    using namespace torsionlab;
    InstanceBundle b = load_instance(file);
    if (!b.novikov) throw NotApplicable("no novikov block in " + file);
    const NovikovInstance& nv = *b.novikov;
    NovikovElement invariant = i_eta(nv.orbits, nv.path_matrix, nv.weights, nv.precision);
    Json out;

    if (symmetrize_flag) {
        GroupRingElement raw = GroupRingElement::zero(nv.rank);
        for (auto& [v, c] : invariant.terms()) raw.add_term(v, c);
        GroupRingElement sym = symmetrize(raw);
        if (nv.chi_sigma % 2 != 0) throw NotApplicable("odd Euler characteristic correction");
        out["symmetrized"] = write_group_ring(sym);
        ZPoly poly = rho_specialize(sym, nv.weights).shifted(nv.chi_sigma / 2);
        out["series"] = wire::write_poly(poly);
        emit(out, pretty);
        return 0;
    }

    TruncatedSeries sw = sw_series(invariant, nv.chi_sigma);
    out["series"] = write_series(sw);
    int rc = 0;
    if (b.cover) {
        Json comparison;
        try {
            TorsionResult ct = cover_torsion(*b.cover);
            comparison["branch"] = "acyclic";
            comparison["cover_torsion"] = write_unit_class(ct.torsion);
            bool ok = detail::series_matches_unit_multiple(sw, ct.torsion.representative(), comparison);
            comparison["outcome"] = ok ? "pass" : "fail";
            if (!ok) rc = 3;
        } catch (const NotApplicable&) {
            // Non-acyclic cover: the invariant must vanish.
            comparison["branch"] = "zero";
            bool ok = sw.is_zero();
            comparison["outcome"] = ok ? "pass" : "fail";
            if (!ok) rc = 3;
        }
        out["cover"] = comparison;
    }
    emit(out, pretty);
    return rc;
}

int run_reconstruct(const std::string& poly_text, int rank, long box, bool pretty) {
    using namespace torsionlab;
    Json pj;
    try {
        pj = Json::parse(poly_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("--poly: invalid JSON: ") + e.what());
    }
    ZPoly p = wire::parse_poly(pj, "poly");
    GroupRingElement g = reconstruct_from_specialization(p, rank, box);
    Json out;
    out["element"] = write_group_ring(g);
    Json w = Json::array();
    for (long x : separating_weights(rank, box)) w.push_back(x);
    out["weights"] = w;
    emit(out, pretty);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact torsion and zeta computations on instance files"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::string file;
    std::string block = "complex";
    auto* torsion_cmd = app.add_subcommand("torsion", "torsion of a complex, Morse or cover block");
    torsion_cmd->fallthrough();
    torsion_cmd->add_option("file", file)->required();
    torsion_cmd->add_option("--block", block)->check(CLI::IsMember({"complex", "morse", "cover"}));

    long order = 0;
    bool order_given = false;
    auto* zeta_cmd = app.add_subcommand("zeta", "zeta function of the orbits block");
    zeta_cmd->fallthrough();
    zeta_cmd->add_option("file", file)->required();
    zeta_cmd->add_option("--order", order)->check(CLI::PositiveNumber);

    auto* morse_cmd = app.add_subcommand("morse", "Morse complex report");
    morse_cmd->fallthrough();
    morse_cmd->add_option("file", file)->required();

    auto* ord_cmd = app.add_subcommand("ord", "Fitting-ideal order of the presentation block");
    ord_cmd->fallthrough();
    ord_cmd->add_option("file", file)->required();

    std::vector<std::string> files;
    std::string check = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run verification checks");
    verify_cmd->fallthrough();
    verify_cmd->add_option("files", files)->required()->expected(-1);
    verify_cmd->add_option("--check", check)->check(CLI::IsMember({"refinement", "main", "all"}));
    verify_cmd->add_option("--order", order)->check(CLI::PositiveNumber);

    bool symmetrize_flag = false;
    auto* sw_cmd = app.add_subcommand("sw", "Novikov invariant series");
    sw_cmd->fallthrough();
    sw_cmd->add_option("file", file)->required();
    sw_cmd->add_flag("--symmetrize", symmetrize_flag, "normalize under t -> 1/t");

    std::string poly_text;
    int rank = 1;
    long box = 1;
    auto* rec_cmd = app.add_subcommand("reconstruct", "undo a separating-weight specialization");
    rec_cmd->fallthrough();
    rec_cmd->add_option("--poly", poly_text)->required();
    rec_cmd->add_option("--rank", rank)->required()->check(CLI::PositiveNumber);
    rec_cmd->add_option("--box", box)->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
        order_given = zeta_cmd->count("--order") > 0 || verify_cmd->count("--order") > 0;
        if (verify_cmd->count("--order") > 0 && order < 2)
            throw torsionlab::ParseError("--order must be >= 2");

        if (*torsion_cmd) return run_torsion(file, block, pretty);
        if (*zeta_cmd) return run_zeta(file, order_given ? order : default_order(), pretty);
        if (*morse_cmd) return run_morse(file, pretty);
        if (*ord_cmd) return run_ord(file, pretty);
        if (*verify_cmd) return run_verify(files, check, order, order_given, pretty);
        if (*sw_cmd) return run_sw(file, symmetrize_flag, pretty);
        if (*rec_cmd) return run_reconstruct(poly_text, rank, box, pretty);
        return 1;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const torsionlab::ParseError& e) {
        emit_error("parse", e.what());
        return 1;
    } catch (const torsionlab::NotApplicable& e) {
        emit_error("not-applicable", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}
