#pragma once

// Seeded random generators for property tests: acyclic based complexes with
// controlled homology, Morse-style instances with nonnegative exponents,
// basis changes with known effect on torsion, signed permutation dynamics
// realized as orbit sets and cover complexes, and the circulant family of
// circle-valued Morse functions on the circle.

#include <torsionlab/torsionlab.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace testgen {

using Rng = std::mt19937;

inline long rint(Rng& g, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline torsionlab::ZPoly t_power(long e) { return torsionlab::ZPoly::monomial(1, e); }

// Nonzero pivot polynomials; the nonunits give the homology its torsion.
inline torsionlab::ZPoly random_pivot(Rng& g, bool nonneg_exponents) {
    using torsionlab::ZPoly;
    const ZPoly one = ZPoly::one();
    const ZPoly t = t_power(1);
    std::vector<ZPoly> pool = {
        one,
        t,
        one - t,
        one + t,
        ZPoly::from_terms({{0, 2}, {1, -1}}),         // 2 - t
        ZPoly::from_terms({{0, 1}, {2, -1}}),         // 1 - t^2
        ZPoly::from_terms({{0, 1}, {1, -1}, {2, 1}}), // 1 - t + t^2
    };
    ZPoly p = pool[size_t(rint(g, 0, long(pool.size()) - 1))];
    if (!nonneg_exponents && rint(g, 0, 3) == 0) p = p.shifted(rint(g, -2, 2));
    return p;
}

struct RandomComplexSpec {
    torsionlab::Direction dir = torsionlab::Direction::Up;
    int max_degrees = 4; // number of degrees (complex length)
    int max_connect = 2; // each differential's rank is at most this
    bool nonneg_exponents = false;
    int basis_ops = 8;
    bool unit_scalings = false; // also scale basis vectors by +-t^k
};

namespace detail {

// Basis change at one degree: E = I + c t^e E_{ab} applied to the incoming
// differential's rows and its inverse to the outgoing differential's columns.
inline void elementary_op(std::vector<torsionlab::ZPolyMatrix>& diffs, const std::vector<int>& ranks,
                          torsionlab::Direction dir, Rng& g, bool nonneg_exponents) {
    using torsionlab::Direction;
    const int degs = int(ranks.size());
    int i = int(rint(g, 0, degs - 1));
    int n = ranks[size_t(i)];
    if (n < 2) return;
    int a = int(rint(g, 0, n - 1));
    int b = int(rint(g, 0, n - 2));
    if (b >= a) ++b;
    long c = rint(g, 0, 1) ? 1 : -1;
    if (rint(g, 0, 2) == 0) c *= 2;
    long e = nonneg_exponents ? rint(g, 0, 2) : rint(g, -2, 2);
    torsionlab::ZPoly u = torsionlab::ZPoly::monomial(c, e);

    // Maps into degree i get row_a += u * row_b; maps out of it get the
    // inverse column operation col_b -= u * col_a.
    auto row_op = [&](torsionlab::ZPolyMatrix& m) {
        for (int k = 0; k < m.cols(); ++k) m.at(a, k) += u * m.at(b, k);
    };
    auto col_op = [&](torsionlab::ZPolyMatrix& m) {
        for (int k = 0; k < m.rows(); ++k) m.at(k, b) -= u * m.at(k, a);
    };
    if (dir == Direction::Up) {
        if (i > 0) row_op(diffs[size_t(i - 1)]);
        if (i < degs - 1) col_op(diffs[size_t(i)]);
    } else {
        if (i < degs - 1) row_op(diffs[size_t(i)]);
        if (i > 0) col_op(diffs[size_t(i - 1)]);
    }
}

// Scale one basis vector by +-t^k (a unit of the group ring); multiplies the
// torsion by that unit, so pm_tk classes are unchanged.
inline void scaling_op(std::vector<torsionlab::ZPolyMatrix>& diffs, const std::vector<int>& ranks,
                       torsionlab::Direction dir, Rng& g, bool nonneg_exponents) {
    using torsionlab::Direction;
    const int degs = int(ranks.size());
    int i = int(rint(g, 0, degs - 1));
    int n = ranks[size_t(i)];
    if (n < 1) return;
    int a = int(rint(g, 0, n - 1));
    long c = rint(g, 0, 1) ? 1 : -1;
    long e = nonneg_exponents ? 0 : rint(g, -2, 2);
    auto scale_row = [&](torsionlab::ZPolyMatrix& m, long ce) {
        for (int k = 0; k < m.cols(); ++k) m.at(a, k) = m.at(a, k).shifted(ce).scaled(torsionlab::Int(c));
    };
    auto scale_col = [&](torsionlab::ZPolyMatrix& m, long ce) {
        for (int k = 0; k < m.rows(); ++k) m.at(k, a) = m.at(k, a).shifted(ce).scaled(torsionlab::Int(c));
    };
    if (dir == Direction::Up) {
        if (i > 0) scale_row(diffs[size_t(i - 1)], e);
        if (i < degs - 1) scale_col(diffs[size_t(i)], -e);
    } else {
        if (i < degs - 1) scale_row(diffs[size_t(i)], e);
        if (i > 0) scale_col(diffs[size_t(i - 1)], -e);
    }
}

} // namespace detail

// Exact complex built from diagonal pivot blocks, then conjugated by random
// unimodular basis changes. Acyclic over Q(t) by construction; the pivots
// leave torsion modules behind over Q[t,1/t].
inline torsionlab::BasedComplex random_acyclic_complex(Rng& g, const RandomComplexSpec& spec) {
    using torsionlab::Direction;
    using torsionlab::ZPolyMatrix;
    const int degs = int(rint(g, 2, spec.max_degrees));
    std::vector<int> connect(static_cast<size_t>(degs - 1));
    for (auto& r : connect) r = int(rint(g, 0, spec.max_connect));
    if (std::all_of(connect.begin(), connect.end(), [](int r) { return r == 0; })) connect[0] = 1;

    auto conn = [&](int j) { return (j >= 0 && j < degs - 1) ? connect[size_t(j)] : 0; };
    std::vector<int> ranks(static_cast<size_t>(degs));
    for (int i = 0; i < degs; ++i) ranks[size_t(i)] = conn(i - 1) + conn(i);

    // Degree i splits as [prev-connector | next-connector]; the differential
    // joining degrees j and j+1 is a pivot diagonal between the two shared
    // connector slots, so consecutive differentials compose to zero.
    std::vector<ZPolyMatrix> diffs;
    for (int j = 0; j < degs - 1; ++j) {
        if (spec.dir == Direction::Up) {
            ZPolyMatrix d(ranks[size_t(j + 1)], ranks[size_t(j)]);
            for (int a = 0; a < conn(j); ++a) d.at(a, conn(j - 1) + a) = random_pivot(g, spec.nonneg_exponents);
            diffs.push_back(std::move(d));
        } else {
            ZPolyMatrix d(ranks[size_t(j)], ranks[size_t(j + 1)]);
            for (int a = 0; a < conn(j); ++a) d.at(conn(j - 1) + a, a) = random_pivot(g, spec.nonneg_exponents);
            diffs.push_back(std::move(d));
        }
    }
    for (int s = 0; s < spec.basis_ops; ++s) {
        if (spec.unit_scalings && rint(g, 0, 2) == 0)
            detail::scaling_op(diffs, ranks, spec.dir, g, spec.nonneg_exponents);
        else
            detail::elementary_op(diffs, ranks, spec.dir, g, spec.nonneg_exponents);
    }
    return torsionlab::BasedComplex::from_integer(spec.dir, std::move(ranks), diffs);
}

// The same complex in a different basis: elementary operations leave torsion
// representatives fixed, unit scalings multiply them by +-t^k.
inline torsionlab::BasedComplex perturb_basis(const torsionlab::BasedComplex& c, Rng& g, int ops,
                                              bool unit_scalings, bool nonneg_exponents = false) {
    std::vector<torsionlab::ZPolyMatrix> diffs;
    for (auto& d : c.differentials()) {
        torsionlab::ZPolyMatrix z(d.rows(), d.cols());
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) z.at(i, j) = d.at(i, j).as_zpoly();
        diffs.push_back(std::move(z));
    }
    for (int s = 0; s < ops; ++s) {
        if (unit_scalings && rint(g, 0, 1) == 0)
            detail::scaling_op(diffs, c.ranks(), c.direction(), g, nonneg_exponents);
        else
            detail::elementary_op(diffs, c.ranks(), c.direction(), g, nonneg_exponents);
    }
    return torsionlab::BasedComplex::from_integer(c.direction(), c.ranks(), diffs);
}

// Random Morse data whose complex is the nonnegative-exponent variant above.
inline torsionlab::MorseData random_acyclic_morse(Rng& g, int max_dimension = 3) {
    RandomComplexSpec spec;
    spec.dir = torsionlab::Direction::Up;
    spec.max_degrees = max_dimension + 1;
    spec.nonneg_exponents = true;
    torsionlab::BasedComplex c = random_acyclic_complex(g, spec);

    torsionlab::MorseData md;
    md.dimension = c.top_degree();
    for (int i = 0; i <= md.dimension; ++i) {
        std::vector<std::string> level;
        for (int k = 0; k < c.ranks()[size_t(i)]; ++k)
            level.push_back("c" + std::to_string(i) + "_" + std::to_string(k));
        md.critical.push_back(std::move(level));
    }
    for (int j = 0; j < md.dimension; ++j) {
        const torsionlab::QtMatrix& d = c.differential(j);
        for (int r = 0; r < d.rows(); ++r)
            for (int k = 0; k < d.cols(); ++k) {
                if (d.at(r, k).is_zero()) continue;
                torsionlab::MorseIncidence inc;
                inc.from = md.critical[size_t(j)][size_t(k)];
                inc.to = md.critical[size_t(j + 1)][size_t(r)];
                inc.series = d.at(r, k).as_zpoly();
                md.incidence.push_back(std::move(inc));
            }
    }
    return md;
}

// Random admissible torsion certificate: the greedy subset construction with
// candidates tried in a shuffled order.
inline std::vector<std::vector<int>> random_certificate(const torsionlab::BasedComplex& c, Rng& g) {
    auto plan = torsionlab::detail::plan_for(c);
    std::vector<std::vector<int>> subsets(static_cast<size_t>(c.degrees()));
    std::vector<int> prev;
    for (size_t step = 0; step < plan.order.size(); ++step) {
        int deg = plan.order[step];
        int n = c.ranks()[size_t(deg)];
        int want = n - int(prev.size());
        torsionlab::QtMatrix incoming = torsionlab::detail::incoming_matrix(c, deg);
        std::vector<int> candidates(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) candidates[size_t(j)] = j;
        std::shuffle(candidates.begin(), candidates.end(), g);
        std::vector<int>& s = subsets[size_t(deg)];
        for (int j : candidates) {
            if (int(s.size()) == want) break;
            s.insert(std::upper_bound(s.begin(), s.end(), j), j);
            torsionlab::QtMatrix block = torsionlab::detail::block_matrix(incoming, prev, s, n);
            if (torsionlab::rank(block) != block.cols()) s.erase(std::find(s.begin(), s.end(), j));
        }
        prev = s;
    }
    return subsets;
}

// ---------------------------------------------------------------------------
// Signed permutation dynamics.

struct SignedPerm {
    std::vector<int> image; // basis e_j maps to sign[j] * e_image[j]
    std::vector<int> sign;
    int size() const { return int(image.size()); }
};

inline SignedPerm random_signed_perm(Rng& g, int n) {
    SignedPerm p;
    p.image.resize(size_t(n));
    p.sign.resize(size_t(n));
    for (int i = 0; i < n; ++i) p.image[size_t(i)] = i;
    std::shuffle(p.image.begin(), p.image.end(), g);
    for (int i = 0; i < n; ++i) p.sign[size_t(i)] = rint(g, 0, 1) ? 1 : -1;
    return p;
}

// tr(A^k) for the signed permutation matrix, computed from its cycles.
inline long signed_perm_trace_power(const SignedPerm& p, long k) {
    long total = 0;
    std::vector<bool> seen(size_t(p.size()), false);
    for (int start = 0; start < p.size(); ++start) {
        if (seen[size_t(start)]) continue;
        long len = 0;
        int sigma = 1;
        int j = start;
        do {
            seen[size_t(j)] = true;
            sigma *= p.sign[size_t(j)];
            j = p.image[size_t(j)];
            ++len;
        } while (j != start);
        if (k % len == 0) total += len * (sigma == 1 ? 1 : ((k / len) % 2 == 0 ? 1 : -1));
    }
    return total;
}

// Closed orbits realizing the cycle structure: a positive cycle of length L
// is one orbit (L, +1); a negative cycle is (L, -1) plus (2L, +1), matching
// L * sigma^(k/L) in every power. `flip` negates all signs, which accounts
// for the (-1)^i in an alternating trace sum.
inline void append_cycle_orbits(const SignedPerm& p, bool flip, torsionlab::OrbitSet& os) {
    std::vector<bool> seen(size_t(p.size()), false);
    for (int start = 0; start < p.size(); ++start) {
        if (seen[size_t(start)]) continue;
        long len = 0;
        int sigma = 1;
        int j = start;
        do {
            seen[size_t(j)] = true;
            sigma *= p.sign[size_t(j)];
            j = p.image[size_t(j)];
            ++len;
        } while (j != start);
        int s = flip ? -1 : 1;
        if (sigma == 1) {
            os.orbits.push_back({len, s, std::nullopt});
        } else {
            os.orbits.push_back({len, -s, std::nullopt});
            os.orbits.push_back({2 * len, s, std::nullopt});
        }
    }
}

// Down complex with one block C_{i+1} --(tA_i - I)--> C_i per level; its
// degree-i homology is R^{d_i}/(tA_i - I) and everything else cancels.
inline torsionlab::BasedComplex lefschetz_cover(const std::vector<SignedPerm>& levels) {
    using torsionlab::ZPoly;
    using torsionlab::ZPolyMatrix;
    const int n = int(levels.size());
    auto dim = [&](int i) { return (i >= 0 && i < n) ? levels[size_t(i)].size() : 0; };
    std::vector<int> ranks(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) ranks[size_t(i)] = dim(i) + dim(i - 1);
    std::vector<ZPolyMatrix> diffs;
    for (int j = 0; j < n; ++j) {
        // C_{j+1} = [own block d_{j+1} | upper slot d_j]; the upper slot maps
        // onto the first d_j coordinates of C_j by tA_j - I.
        ZPolyMatrix d(ranks[size_t(j)], ranks[size_t(j + 1)]);
        const SignedPerm& p = levels[size_t(j)];
        int col0 = dim(j + 1);
        for (int c = 0; c < p.size(); ++c) {
            d.at(p.image[size_t(c)], col0 + c) += ZPoly::monomial(p.sign[size_t(c)], 1);
            d.at(c, col0 + c) -= ZPoly::one();
        }
        diffs.push_back(std::move(d));
    }
    return torsionlab::BasedComplex::from_integer(torsionlab::Direction::Down, std::move(ranks), diffs);
}

// Full instance for the no-critical-point reduction: empty Morse data, orbits
// realizing the alternating trace sum, and the block cover.
inline torsionlab::InstanceBundle lefschetz_instance(Rng& g, int dimension, int max_size) {
    torsionlab::InstanceBundle b;
    b.name = "lefschetz";
    b.dimension = dimension;
    std::vector<SignedPerm> levels;
    for (int i = 0; i < dimension; ++i) levels.push_back(random_signed_perm(g, int(rint(g, 1, max_size))));
    torsionlab::MorseData md;
    md.dimension = dimension;
    md.critical.assign(size_t(dimension + 1), {});
    b.morse = md;
    torsionlab::OrbitSet os;
    for (int i = 0; i < dimension; ++i) append_cycle_orbits(levels[size_t(i)], i % 2 == 1, os);
    b.orbits = os;
    b.cover = lefschetz_cover(levels);
    return b;
}

// ---------------------------------------------------------------------------
// The circulant family: c critical points of either index on the circle and
// a class-k projection. Exponents a_i = b_i + e_i with sum(e) = k >= 1, so
// det d = t^(sum a) - t^(sum b) never vanishes.

struct CirculantInstance {
    torsionlab::InstanceBundle bundle;
    long k = 0;
    long sum_b = 0;
};

inline CirculantInstance circulant_instance(Rng& g, long k, int c) {
    using torsionlab::ZPoly;
    std::vector<long> a(static_cast<size_t>(c)), b(static_cast<size_t>(c));
    for (int i = 0; i < c; ++i) b[size_t(i)] = rint(g, 0, 2);
    for (int i = 0; i < c; ++i) a[size_t(i)] = b[size_t(i)];
    for (long given = 0; given < k; ++given) a[size_t(rint(g, 0, c - 1))] += 1;

    torsionlab::MorseData md;
    md.dimension = 1;
    std::vector<std::string> xs, ys;
    for (int i = 0; i < c; ++i) {
        xs.push_back("x" + std::to_string(i));
        ys.push_back("y" + std::to_string(i));
    }
    md.critical = {xs, ys};
    for (int i = 0; i < c; ++i) {
        int up = (i + 1) % c;
        if (c == 1) {
            md.incidence.push_back({xs[0], ys[0], ZPoly::monomial(1, a[0]) - ZPoly::monomial(1, b[0])});
        } else {
            md.incidence.push_back({xs[size_t(i)], ys[size_t(i)], ZPoly::monomial(1, a[size_t(i)])});
            md.incidence.push_back({xs[size_t(up)], ys[size_t(i)], ZPoly::monomial(-1, b[size_t(i)])});
        }
    }

    torsionlab::ZPolyMatrix cover_d(1, 1);
    cover_d.at(0, 0) = ZPoly::monomial(1, k) - ZPoly::one();

    CirculantInstance out;
    out.k = k;
    for (long bi : b) out.sum_b += bi;
    out.bundle.name = "circulant";
    out.bundle.dimension = 1;
    out.bundle.morse = md;
    out.bundle.orbits = torsionlab::OrbitSet{};
    out.bundle.cover =
        torsionlab::BasedComplex::from_integer(torsionlab::Direction::Down, {1, 1}, {cover_d});
    return out;
}

// ---------------------------------------------------------------------------

inline torsionlab::OrbitSet random_orbit_set(Rng& g, int max_orbits = 5, long max_period = 6) {
    torsionlab::OrbitSet os;
    const int n = int(rint(g, 0, max_orbits));
    for (int i = 0; i < n; ++i)
        os.orbits.push_back({rint(g, 1, max_period), rint(g, 0, 1) ? 1 : -1, std::nullopt});
    return os;
}

inline std::vector<std::vector<torsionlab::Int>> random_integer_matrix(Rng& g, int n, long bound = 3) {
    std::vector<std::vector<torsionlab::Int>> m(static_cast<size_t>(n),
                                                std::vector<torsionlab::Int>(static_cast<size_t>(n)));
    for (auto& row : m)
        for (auto& x : row) x = torsionlab::Int(rint(g, -bound, bound));
    return m;
}

} // namespace testgen
