#pragma once

// JSON wire formats. Parsing is strict: unknown keys, malformed values and
// inconsistent shapes are ParseError, never silently patched. Coefficients
// too large for a JSON number are written as decimal strings and both forms
// are accepted on input.
//
//   LaurentPoly        [[exp, coeff], ...] exponents strictly increasing
//   RationalFunction   {"num": poly, "den": poly}
//   Matrix             {"rows": r, "cols": c, "entries": [[entry, ...], ...]}
//   BasedComplex       {"direction", "ranks", "differentials", "labels"?}
//   MorseData          {"dimension", "critical", "incidence"}
//   OrbitSet           {"orbits": [{"k", "sign", "class"?}, ...]}
//   GroupRingElement   [[[e1..er], coeff], ...]
//   instance file      {"schema": 1, "name", "dimension", "truncation"?,
//                       "morse"?, "orbits"?, "cover"?, "presentation"?, "novikov"?}

#include "torsionlab/complex.hpp"
#include "torsionlab/morse.hpp"
#include "torsionlab/novikov.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/unit_class.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <string>

namespace torsionlab {

using Json = nlohmann::json;

namespace wire {

inline void require_keys(const Json& j, const std::string& ctx, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ParseError(ctx + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ParseError(ctx + ": unknown key '" + it.key() + "'");
}

inline const Json& require_field(const Json& j, const std::string& ctx, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(ctx + ": missing key '" + key + "'");
    return *it;
}

inline long parse_long(const Json& j, const std::string& ctx) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ParseError(ctx + ": expected an integer");
    return j.get<long>();
}

inline Int parse_int(const Json& j, const std::string& ctx) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw ParseError(ctx + ": cannot parse integer '" + j.get<std::string>() + "'");
        }
    }
    throw ParseError(ctx + ": expected an integer or a decimal string");
}

inline Json write_int(const Int& v) {
    static const Int lo(std::numeric_limits<long long>::min());
    static const Int hi(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

inline Json write_rat(const Rat& q) {
    if (is_integer(q)) return write_int(numerator(q));
    return Json(rat_to_string(q));
}

inline Rat parse_rat(const Json& j, const std::string& ctx) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw ParseError(ctx + ": expected a rational as integer or 'p/q' string");
}

inline ZPoly parse_poly(const Json& j, const std::string& ctx) {
    if (!j.is_array()) throw ParseError(ctx + ": polynomial must be an array of [exponent, coefficient] pairs");
    ZPoly::Terms terms;
    long prev = 0;
    bool have_prev = false;
    for (auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError(ctx + ": polynomial term must be an [exponent, coefficient] pair");
        long e = parse_long(pair[0], ctx + " exponent");
        Int c = parse_int(pair[1], ctx + " coefficient");
        if (have_prev && e <= prev) throw ParseError(ctx + ": exponents must be strictly increasing");
        if (c == 0) throw ParseError(ctx + ": zero coefficient at exponent " + std::to_string(e));
        terms.emplace(e, std::move(c));
        prev = e;
        have_prev = true;
    }
    return ZPoly::from_terms(std::move(terms));
}

inline Json write_poly(const ZPoly& p) {
    Json out = Json::array();
    for (auto& [e, c] : p.terms()) out.push_back(Json::array({e, write_int(c)}));
    return out;
}

inline RationalFunction parse_rational_function(const Json& j, const std::string& ctx) {
    if (j.is_array()) return RationalFunction(parse_poly(j, ctx));
    if (j.is_object()) {
        require_keys(j, ctx, {"num", "den"});
        ZPoly num = parse_poly(require_field(j, ctx, "num"), ctx + ".num");
        ZPoly den = parse_poly(require_field(j, ctx, "den"), ctx + ".den");
        if (den.is_zero()) throw ParseError(ctx + ": zero denominator");
        return RationalFunction(num, den);
    }
    throw ParseError(ctx + ": expected a polynomial array or a {num, den} object");
}

inline Json write_rational_function(const RationalFunction& f) {
    if (f.is_zero()) return write_poly(ZPoly::zero());
    ZPoly num = f.num().shifted(f.offset());
    if (f.den().is_one()) return write_poly(num);
    Json out;
    out["num"] = write_poly(num);
    out["den"] = write_poly(f.den());
    return out;
}

inline QtMatrix parse_matrix(const Json& j, const std::string& ctx) {
    require_keys(j, ctx, {"rows", "cols", "entries"});
    long rows = parse_long(require_field(j, ctx, "rows"), ctx + ".rows");
    long cols = parse_long(require_field(j, ctx, "cols"), ctx + ".cols");
    if (rows < 0 || cols < 0) throw ParseError(ctx + ": negative matrix dimension");
    const Json& entries = require_field(j, ctx, "entries");
    if (!entries.is_array() || long(entries.size()) != rows)
        throw ParseError(ctx + ": entries must be an array of " + std::to_string(rows) + " rows");
    QtMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (long i = 0; i < rows; ++i) {
        const Json& row = entries[size_t(i)];
        if (!row.is_array() || long(row.size()) != cols)
            throw ParseError(ctx + ": row " + std::to_string(i) + " must have " + std::to_string(cols) +
                             " entries");
        for (long k = 0; k < cols; ++k)
            m.at(int(i), int(k)) = parse_rational_function(
                row[size_t(k)], ctx + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

inline Json write_matrix(const QtMatrix& m) {
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(write_rational_function(m.at(i, k)));
        entries.push_back(std::move(row));
    }
    out["entries"] = std::move(entries);
    return out;
}

// Matrix whose entries must be integer Laurent polynomials (presentations,
// Fitting orders).
inline ZPolyMatrix parse_integer_matrix(const Json& j, const std::string& ctx) {
    QtMatrix m = parse_matrix(j, ctx);
    ZPolyMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) {
            const RationalFunction& v = m.at(i, k);
            if (!v.is_laurent_polynomial() || !v.den().is_one())
                throw ParseError(ctx + ": entry (" + std::to_string(i) + "," + std::to_string(k) +
                                 ") is not an integer Laurent polynomial");
            out.at(i, k) = v.is_zero() ? ZPoly::zero() : v.num().shifted(v.offset());
        }
    return out;
}

} // namespace wire

inline BasedComplex parse_based_complex(const Json& j, const std::string& ctx = "complex") {
    wire::require_keys(j, ctx, {"direction", "ranks", "differentials", "labels"});
    const Json& dir_j = wire::require_field(j, ctx, "direction");
    if (!dir_j.is_string()) throw ParseError(ctx + ".direction: expected \"up\" or \"down\"");
    std::string dir_s = dir_j.get<std::string>();
    Direction dir;
    if (dir_s == "up") dir = Direction::Up;
    else if (dir_s == "down") dir = Direction::Down;
    else throw ParseError(ctx + ".direction: expected \"up\" or \"down\", got '" + dir_s + "'");

    const Json& ranks_j = wire::require_field(j, ctx, "ranks");
    if (!ranks_j.is_array()) throw ParseError(ctx + ".ranks: expected an array");
    std::vector<int> ranks;
    for (auto& r : ranks_j) ranks.push_back(int(wire::parse_long(r, ctx + ".ranks")));

    const Json& diffs_j = wire::require_field(j, ctx, "differentials");
    if (!diffs_j.is_array()) throw ParseError(ctx + ".differentials: expected an array");
    std::vector<QtMatrix> diffs;
    for (size_t k = 0; k < diffs_j.size(); ++k)
        diffs.push_back(wire::parse_matrix(diffs_j[k], ctx + ".differentials[" + std::to_string(k) + "]"));

    std::vector<std::vector<std::string>> labels;
    if (j.count("labels")) {
        const Json& labels_j = j["labels"];
        if (!labels_j.is_array()) throw ParseError(ctx + ".labels: expected an array of arrays of strings");
        for (auto& row : labels_j) {
            if (!row.is_array()) throw ParseError(ctx + ".labels: expected an array of arrays of strings");
            std::vector<std::string> names;
            for (auto& s : row) {
                if (!s.is_string()) throw ParseError(ctx + ".labels: expected strings");
                names.push_back(s.get<std::string>());
            }
            labels.push_back(std::move(names));
        }
    }
    return BasedComplex(dir, std::move(ranks), std::move(diffs), std::move(labels));
}

inline Json write_based_complex(const BasedComplex& c) {
    Json out;
    out["direction"] = direction_name(c.direction());
    out["ranks"] = c.ranks();
    Json diffs = Json::array();
    for (auto& d : c.differentials()) diffs.push_back(wire::write_matrix(d));
    out["differentials"] = std::move(diffs);
    if (!c.labels().empty()) out["labels"] = c.labels();
    return out;
}

inline MorseData parse_morse_data(const Json& j, const std::string& ctx = "morse") {
    wire::require_keys(j, ctx, {"dimension", "critical", "incidence"});
    MorseData md;
    md.dimension = int(wire::parse_long(wire::require_field(j, ctx, "dimension"), ctx + ".dimension"));
    const Json& crit = wire::require_field(j, ctx, "critical");
    if (!crit.is_array()) throw ParseError(ctx + ".critical: expected an array of label arrays");
    for (auto& level : crit) {
        if (!level.is_array()) throw ParseError(ctx + ".critical: expected an array of label arrays");
        std::vector<std::string> names;
        for (auto& s : level) {
            if (!s.is_string()) throw ParseError(ctx + ".critical: labels must be strings");
            names.push_back(s.get<std::string>());
        }
        md.critical.push_back(std::move(names));
    }
    const Json& inc = wire::require_field(j, ctx, "incidence");
    if (!inc.is_array()) throw ParseError(ctx + ".incidence: expected an array");
    for (size_t k = 0; k < inc.size(); ++k) {
        const Json& e = inc[k];
        std::string ectx = ctx + ".incidence[" + std::to_string(k) + "]";
        wire::require_keys(e, ectx, {"from", "to", "series"});
        MorseIncidence mi;
        const Json& from = wire::require_field(e, ectx, "from");
        const Json& to = wire::require_field(e, ectx, "to");
        if (!from.is_string() || !to.is_string()) throw ParseError(ectx + ": from/to must be strings");
        mi.from = from.get<std::string>();
        mi.to = to.get<std::string>();
        mi.series = wire::parse_poly(wire::require_field(e, ectx, "series"), ectx + ".series");
        md.incidence.push_back(std::move(mi));
    }
    return md;
}

inline Json write_morse_data(const MorseData& md) {
    Json out;
    out["dimension"] = md.dimension;
    out["critical"] = md.critical;
    Json inc = Json::array();
    for (auto& e : md.incidence) {
        Json o;
        o["from"] = e.from;
        o["to"] = e.to;
        o["series"] = wire::write_poly(e.series);
        inc.push_back(std::move(o));
    }
    out["incidence"] = std::move(inc);
    return out;
}

inline OrbitSet parse_orbit_set(const Json& j, const std::string& ctx = "orbits") {
    wire::require_keys(j, ctx, {"orbits"});
    const Json& list = wire::require_field(j, ctx, "orbits");
    if (!list.is_array()) throw ParseError(ctx + ".orbits: expected an array");
    OrbitSet os;
    for (size_t k = 0; k < list.size(); ++k) {
        const Json& e = list[k];
        std::string ectx = ctx + ".orbits[" + std::to_string(k) + "]";
        wire::require_keys(e, ectx, {"k", "sign", "class"});
        Orbit o;
        o.period = wire::parse_long(wire::require_field(e, ectx, "k"), ectx + ".k");
        o.sign = int(wire::parse_long(wire::require_field(e, ectx, "sign"), ectx + ".sign"));
        if (e.count("class")) {
            const Json& cls = e["class"];
            if (!cls.is_array()) throw ParseError(ectx + ".class: expected an array of integers");
            std::vector<long> v;
            for (auto& x : cls) v.push_back(wire::parse_long(x, ectx + ".class"));
            o.homology_class = std::move(v);
        }
        os.orbits.push_back(std::move(o));
    }
    os.validate();
    return os;
}

inline Json write_orbit_set(const OrbitSet& os) {
    Json list = Json::array();
    for (auto& o : os.orbits) {
        Json e;
        e["k"] = o.period;
        e["sign"] = o.sign;
        if (o.homology_class) e["class"] = *o.homology_class;
        list.push_back(std::move(e));
    }
    Json out;
    out["orbits"] = std::move(list);
    return out;
}

struct Presentation {
    std::vector<std::string> generators;
    ZPolyMatrix relations; // rows indexed by the generators
};

inline Presentation parse_presentation(const Json& j, const std::string& ctx = "presentation") {
    wire::require_keys(j, ctx, {"generators", "relations"});
    Presentation p;
    const Json& gens = wire::require_field(j, ctx, "generators");
    if (!gens.is_array()) throw ParseError(ctx + ".generators: expected an array of names");
    for (auto& g : gens) {
        if (!g.is_string()) throw ParseError(ctx + ".generators: names must be strings");
        p.generators.push_back(g.get<std::string>());
    }
    p.relations = wire::parse_integer_matrix(wire::require_field(j, ctx, "relations"), ctx + ".relations");
    if (p.relations.rows() != int(p.generators.size()))
        throw ParseError(ctx + ": relations matrix must have one row per generator");
    return p;
}

inline GroupRingElement parse_group_ring(const Json& j, int rank, const std::string& ctx) {
    if (!j.is_array()) throw ParseError(ctx + ": expected an array of [[e1..er], coeff] pairs");
    GroupRingElement g = GroupRingElement::zero(rank);
    for (auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError(ctx + ": term must be an [[e1..er], coeff] pair");
        const Json& vec = pair[0];
        if (!vec.is_array() || int(vec.size()) != rank)
            throw ParseError(ctx + ": exponent vector must have length " + std::to_string(rank));
        LatticePoint v;
        for (auto& x : vec) v.push_back(wire::parse_long(x, ctx + " exponent"));
        Int c = wire::parse_int(pair[1], ctx + " coefficient");
        if (c == 0) throw ParseError(ctx + ": zero coefficient term");
        if (g.coeff(v) != 0) throw ParseError(ctx + ": duplicate exponent vector");
        g.add_term(v, c);
    }
    return g;
}

inline Json write_group_ring(const GroupRingElement& g) {
    Json out = Json::array();
    for (auto& [v, c] : g.terms) out.push_back(Json::array({Json(v), wire::write_int(c)}));
    return out;
}

struct NovikovInstance {
    int rank = 0;
    std::vector<long> weights;
    OrbitSet orbits;
    PathMatrix path_matrix{0, 0};
    long chi_sigma = 0;
    long precision = 0;
};

inline NovikovInstance parse_novikov_instance(const Json& j, const std::string& ctx = "novikov") {
    wire::require_keys(j, ctx, {"rank", "weights", "orbits", "path_matrix", "chi_sigma", "precision"});
    NovikovInstance n;
    n.rank = int(wire::parse_long(wire::require_field(j, ctx, "rank"), ctx + ".rank"));
    if (n.rank < 0) throw ParseError(ctx + ".rank: negative rank");
    const Json& w = wire::require_field(j, ctx, "weights");
    if (!w.is_array() || int(w.size()) != n.rank)
        throw ParseError(ctx + ".weights: expected " + std::to_string(n.rank) + " integers");
    for (auto& x : w) n.weights.push_back(wire::parse_long(x, ctx + ".weights"));

    const Json& orbits_j = wire::require_field(j, ctx, "orbits");
    if (!orbits_j.is_array()) throw ParseError(ctx + ".orbits: expected an array");
    Json wrapped;
    wrapped["orbits"] = orbits_j;
    n.orbits = parse_orbit_set(wrapped, ctx);
    for (auto& o : n.orbits.orbits)
        if (!o.homology_class || int(o.homology_class->size()) != n.rank)
            throw ParseError(ctx + ".orbits: every orbit needs a homology class of length " +
                             std::to_string(n.rank));

    const Json& pm = wire::require_field(j, ctx, "path_matrix");
    if (!pm.is_array()) throw ParseError(ctx + ".path_matrix: expected an array of rows");
    int size = int(pm.size());
    PathMatrix path(size, n.rank);
    for (int i = 0; i < size; ++i) {
        const Json& row = pm[size_t(i)];
        if (!row.is_array() || int(row.size()) != size)
            throw ParseError(ctx + ".path_matrix: must be square");
        for (int k = 0; k < size; ++k) {
            std::string ectx = ctx + ".path_matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]";
            GroupRingElement e = parse_group_ring(row[size_t(k)], n.rank, ectx);
            for (auto& [v, c] : e.terms) {
                bool constant = true;
                for (long x : v) constant = constant && x == 0;
                if (!constant && grading_of(n.weights, v) <= 0)
                    throw ParseError(ectx + ": non-constant term with nonpositive grading");
            }
            path.at(i, k) = std::move(e);
        }
    }
    n.path_matrix = std::move(path);
    n.chi_sigma = wire::parse_long(wire::require_field(j, ctx, "chi_sigma"), ctx + ".chi_sigma");
    n.precision = wire::parse_long(wire::require_field(j, ctx, "precision"), ctx + ".precision");
    if (n.precision < 1) throw ParseError(ctx + ".precision: must be >= 1");
    return n;
}

struct InstanceBundle {
    std::string name;
    int dimension = 0;
    long truncation = -1; // -1: not specified, callers substitute their default
    std::optional<MorseData> morse;
    std::optional<OrbitSet> orbits;
    std::optional<BasedComplex> cover;
    std::optional<Presentation> presentation;
    std::optional<NovikovInstance> novikov;
};

inline InstanceBundle parse_instance(const Json& j) {
    wire::require_keys(j, "instance",
                       {"schema", "name", "dimension", "truncation", "morse", "orbits", "cover",
                        "presentation", "novikov"});
    long schema = wire::parse_long(wire::require_field(j, "instance", "schema"), "instance.schema");
    if (schema != 1) throw ParseError("instance.schema: unsupported version " + std::to_string(schema));
    InstanceBundle b;
    const Json& name = wire::require_field(j, "instance", "name");
    if (!name.is_string()) throw ParseError("instance.name: expected a string");
    b.name = name.get<std::string>();
    b.dimension = int(wire::parse_long(wire::require_field(j, "instance", "dimension"), "instance.dimension"));
    if (b.dimension < 0) throw ParseError("instance.dimension: negative");
    if (j.count("truncation")) {
        b.truncation = wire::parse_long(j["truncation"], "instance.truncation");
        if (b.truncation < 2) throw ParseError("instance.truncation: must be >= 2");
    }
    if (j.count("morse")) b.morse = parse_morse_data(j["morse"]);
    if (j.count("orbits")) b.orbits = parse_orbit_set(j["orbits"]);
    if (j.count("cover")) {
        b.cover = parse_based_complex(j["cover"], "cover");
        if (b.cover->direction() != Direction::Down)
            throw ParseError("cover: complex must have direction \"down\"");
        if (!b.cover->has_integer_entries())
            throw ParseError("cover: entries must be integer Laurent polynomials");
    }
    if (j.count("presentation")) b.presentation = parse_presentation(j["presentation"]);
    if (j.count("novikov")) b.novikov = parse_novikov_instance(j["novikov"]);
    return b;
}

inline InstanceBundle load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_instance(j);
}

inline Json write_unit_class(const UnitClass& u) {
    Json out;
    out["scalar"] = rat_to_string(u.scalar);
    out["num"] = wire::write_poly(u.num);
    out["den"] = wire::write_poly(u.den);
    out["ambiguity"] = ambiguity_name(u.ambiguity);
    return out;
}

inline UnitClass parse_unit_class(const Json& j, const std::string& ctx = "unit class") {
    wire::require_keys(j, ctx, {"scalar", "num", "den", "ambiguity"});
    UnitClass u;
    u.scalar = wire::parse_rat(wire::require_field(j, ctx, "scalar"), ctx + ".scalar");
    u.num = wire::parse_poly(wire::require_field(j, ctx, "num"), ctx + ".num");
    u.den = wire::parse_poly(wire::require_field(j, ctx, "den"), ctx + ".den");
    const Json& amb = wire::require_field(j, ctx, "ambiguity");
    if (!amb.is_string()) throw ParseError(ctx + ".ambiguity: expected a string");
    std::string s = amb.get<std::string>();
    if (s == "pm_tk") u.ambiguity = Ambiguity::PlusMinusTk;
    else if (s == "rational_tk") u.ambiguity = Ambiguity::RationalTk;
    else throw ParseError(ctx + ".ambiguity: expected 'pm_tk' or 'rational_tk'");
    return u;
}

inline Json write_series(const TruncatedSeries& s) {
    Json out;
    out["lower"] = s.lower();
    out["precision"] = s.precision();
    Json terms = Json::array();
    for (auto& [e, c] : s.coeffs()) terms.push_back(Json::array({e, wire::write_rat(c)}));
    out["terms"] = std::move(terms);
    return out;
}

} // namespace torsionlab
