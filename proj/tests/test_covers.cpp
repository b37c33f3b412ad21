#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "generators.hpp"
#include "hgv/covers.hpp"
#include "hgv/error.hpp"
#include "hgv/lp.hpp"

using namespace hgv;

namespace {

struct TableRow {
    const char *family;
    std::vector<int> params;
    int delta, clique, alpha, chi;
    Rational gamma;
    GammaMethod method = GammaMethod::Enumerate;
    bool alpha_is_lower_bound = false;
};

std::uint64_t mask_of(const VertexSet &s) {
    std::uint64_t m = 0;
    for (Vertex v : s) m |= std::uint64_t{1} << v;
    return m;
}

// No hyperedge may contain two vertices of the set.
bool independent_mask(const Hypergraph &hg, std::uint64_t m) {
    for (const Edge &e : hg.edges()) {
        if (std::popcount(mask_of(e.vertices) & m) >= 2) return false;
    }
    return true;
}

/// Brute-force oracle over all vertex subsets (n <= 12).
struct Brute {
    int alpha = 0;
    int clique = 0;
    int chi = 0;
    std::vector<std::uint64_t> independent;
};

Brute brute_force(const Hypergraph &hg) {
    const int n = hg.num_vertices();
    Brute b;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        const int size = std::popcount(m);
        if (independent_mask(hg, m)) {
            b.independent.push_back(m);
            b.alpha = std::max(b.alpha, size);
        }
        bool clique = true;
        for (int u = 0; u < n && clique; ++u) {
            for (int v = u + 1; v < n && clique; ++v) {
                if (((m >> u) & 1) && ((m >> v) & 1) && !hg.adjacent(u, v)) clique = false;
            }
        }
        if (clique) b.clique = std::max(b.clique, size);
    }
    // Smallest k admitting an assignment with every class independent.
    for (int k = 1; k <= n && b.chi == 0; ++k) {
        std::vector<int> color(n, 0);
        while (true) {
            std::vector<std::uint64_t> classes(k, 0);
            for (int v = 0; v < n; ++v) classes[color[v]] |= std::uint64_t{1} << v;
            bool ok = true;
            for (std::uint64_t c : classes) ok = ok && independent_mask(hg, c);
            if (ok) {
                b.chi = k;
                break;
            }
            int pos = 0;
            while (pos < n && ++color[pos] == k) color[pos++] = 0;
            if (pos == n) break;
        }
    }
    return b;
}

/// Weak-duality certificate: y >= 0 with y(I) <= 1 on every independent set I
/// and sum y = 1/gamma proves the cover of strength gamma optimal.
void expect_optimal(const Hypergraph &hg, const GammaResult &g, const Brute &b) {
    EXPECT_EQ(cover_strength(hg, g.witness), g.gamma);
    SetCoverLp lp(hg.num_vertices());
    for (std::uint64_t m : b.independent) lp.add_column(m);
    lp.solve();
    const std::vector<Rational> &y = lp.duals();
    Rational total = 0;
    for (const Rational &v : y) {
        EXPECT_GE(v, 0);
        total += v;
    }
    for (std::uint64_t m : b.independent) {
        Rational load = 0;
        for (int j = 0; j < hg.num_vertices(); ++j) {
            if ((m >> j) & 1) load += y[j];
        }
        EXPECT_LE(load, 1);
    }
    EXPECT_EQ(total, g.chi_f);
}

}  // namespace

TEST(Covers, TableOfCommonGraphs) {
    const std::vector<TableRow> rows = {
        {"square", {4, 4}, 4, 2, 8, 2, Rational(1, 2)},
        {"cubic", {3, 3}, 6, 2, 14, 2, Rational(1, 2), GammaMethod::ColumnGeneration},
        {"triangular", {3, 3}, 6, 3, 3, 3, Rational(1, 3), GammaMethod::Enumerate, true},
        {"cycle", {6}, 2, 2, 3, 2, Rational(1, 2)},
        {"cycle", {5}, 2, 2, 2, 3, Rational(2, 5)},
        {"cycle", {7}, 2, 2, 3, 3, Rational(3, 7)},
        {"complete", {5}, 4, 5, 1, 5, Rational(1, 5)},
    };
    for (const TableRow &row : rows) {
        SCOPED_TRACE(row.family);
        Hypergraph hg = family(row.family, row.params);
        ExactInvariants inv = exact_invariants(hg);
        EXPECT_EQ(structure(hg).max_degree, row.delta);
        EXPECT_EQ(inv.clique, row.clique);
        if (row.alpha_is_lower_bound) {
            EXPECT_GE(inv.alpha, row.alpha);
        } else {
            EXPECT_EQ(inv.alpha, row.alpha);
        }
        EXPECT_TRUE(inv.chi_exact);
        EXPECT_EQ(inv.chi, row.chi);
        GammaResult g = independence_degree(hg, row.method);
        EXPECT_EQ(g.gamma, row.gamma);
        EXPECT_EQ(g.chi_f, 1 / row.gamma);
        EXPECT_EQ(cover_strength(hg, g.witness), row.gamma);
    }
}

TEST(Covers, TriangularPatchAlphaMatchesBruteForce) {
    const int p[] = {3, 3};
    Hypergraph hg = family("triangular", p);
    EXPECT_EQ(exact_invariants(hg).alpha, brute_force(hg).alpha);
}

TEST(Covers, OddCycleCoverIsOptimal) {
    for (int n : {5, 7, 9}) {
        const int p[] = {n};
        Hypergraph hg = family("cycle", p);
        WeightedCover cover = validate_cover(hg, odd_cycle_cover(n));
        EXPECT_EQ(cover_strength(hg, cover), Rational((n - 1) / 2, n));
        EXPECT_EQ(independence_degree(hg).gamma, Rational((n - 1) / 2, n));
    }
}

TEST(Covers, ValidateCoverErrors) {
    const int p[] = {4};
    Hypergraph hg = family("cycle", p);
    auto code = [&](WeightedCover c) {
        try {
            validate_cover(hg, c);
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    EXPECT_EQ(code({{{0, 1}, {2, 3}}, {Rational(1, 2), Rational(1, 2)}}), ErrorCode::NotIndependent);
    EXPECT_EQ(code({{{0, 2}}, {Rational(1)}}), ErrorCode::NotACover);
    EXPECT_EQ(code({{{0, 2}, {1, 3}}, {Rational(1, 2), Rational(1, 3)}}), ErrorCode::BadParams);
    EXPECT_EQ(code({{{0, 2}, {1, 4}}, {Rational(1, 2), Rational(1, 2)}}), ErrorCode::VertexOutOfRange);
}

TEST(Covers, FractionalColoringRoundTrip) {
    const int p[] = {5};
    Hypergraph hg = family("cycle", p);
    WeightedCover cover = odd_cycle_cover(5);
    FractionalColoring g = cover_to_fractional(hg, cover);
    EXPECT_EQ(g.total(), Rational(5, 2));
    EXPECT_EQ(fractional_to_cover(hg, g), validate_cover(hg, cover));
}

TEST(Covers, VerticesOfAHyperedgeAreAdjacent) {
    const int p[] = {3};
    Hypergraph hg = family("single-edge", p);
    EXPECT_FALSE(is_independent(hg, {0, 1}));
    EXPECT_TRUE(is_independent(hg, {2}));
    EXPECT_EQ(independence_degree(hg).gamma, Rational(1, 3));
}

TEST(CoversProperty, InvariantsMatchBruteForce) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 8;
        Hypergraph hg = gen::random_hypergraph(rng, n, 2, 3, 3 * n);
        SCOPED_TRACE(to_text(hg));
        Brute b = brute_force(hg);
        ExactInvariants inv = exact_invariants(hg);
        EXPECT_EQ(inv.alpha, b.alpha);
        EXPECT_EQ(inv.clique, b.clique);
        EXPECT_TRUE(inv.chi_exact);
        EXPECT_EQ(inv.chi, b.chi);
        EXPECT_EQ(inv.coloring.num_colors(), b.chi);
        for (const VertexSet &c : inv.coloring.classes) EXPECT_TRUE(is_independent(hg, c));
        EXPECT_GE(greedy_coloring(hg).num_colors(), b.chi);
    }
}

TEST(CoversProperty, GammaIsOptimalByDuality) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + trial % 9;
        Hypergraph hg = gen::random_hypergraph(rng, n, 2, 3, 3 * n);
        SCOPED_TRACE(to_text(hg));
        Brute b = brute_force(hg);
        GammaResult enumerated = independence_degree(hg, GammaMethod::Enumerate);
        GammaResult generated = independence_degree(hg, GammaMethod::ColumnGeneration);
        EXPECT_EQ(enumerated.gamma, generated.gamma);
        expect_optimal(hg, enumerated, b);
        expect_optimal(hg, generated, b);
        // 1/chi <= gamma <= alpha/n.
        EXPECT_LE(Rational(1, b.chi), enumerated.gamma);
        EXPECT_LE(enumerated.gamma, Rational(b.alpha, n));
    }
}

TEST(CoversProperty, MaxWeightIndependentSetIsMaximum) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> w(0, 9);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 9;
        Hypergraph hg = gen::random_hypergraph(rng, n, 2, 3, 2 * n);
        std::vector<Rational> weights;
        for (int j = 0; j < n; ++j) weights.push_back(Rational(w(rng), 1 + w(rng)));
        VertexSet best = max_weight_independent_set(hg, weights);
        EXPECT_TRUE(is_independent(hg, best));
        Rational got = 0;
        for (Vertex v : best) got += weights[v];
        Rational want = 0;
        for (std::uint64_t m : brute_force(hg).independent) {
            Rational s = 0;
            for (int j = 0; j < n; ++j) {
                if ((m >> j) & 1) s += weights[j];
            }
            want = std::max(want, s);
        }
        EXPECT_EQ(got, want);
    }
}

TEST(CoversProperty, MaximalSetsAreMaximalAndComplete) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + trial % 8;
        Hypergraph hg = gen::random_hypergraph(rng, n, 2, 3, 2 * n);
        std::vector<std::uint64_t> got;
        for (const VertexSet &s : maximal_independent_sets(hg)) got.push_back(mask_of(s));
        std::vector<std::uint64_t> want;
        for (std::uint64_t m : brute_force(hg).independent) {
            bool maximal = true;
            for (int j = 0; j < n && maximal; ++j) {
                if (!((m >> j) & 1) && independent_mask(hg, m | (std::uint64_t{1} << j))) maximal = false;
            }
            if (maximal) want.push_back(m);
        }
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want);
    }
}
