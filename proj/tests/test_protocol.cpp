#include <gtest/gtest.h>

#include <map>
#include <random>

#include "generators.hpp"
#include "hgv/error.hpp"
#include "hgv/protocol.hpp"

using namespace hgv;
namespace mp = boost::multiprecision;

namespace {

ProtocolSpec triangle_edge() {
    const int p[] = {3};
    Hypergraph hg = family("single-edge", p);
    return make_protocol(hg, uniform_cover(greedy_coloring(hg)));
}

std::vector<int> digits_of(long index, int n, int d) {
    std::vector<int> x(n);
    for (int j = 0; j < n; ++j, index /= d) x[j] = static_cast<int>(index % d);
    return x;
}

}  // namespace

TEST(Classify, SingleEdgeFailure) {
    const int p[] = {3};
    Hypergraph hg = family("single-edge", p);
    const int o[] = {0, 1, 1};
    TestOutcome t = classify_outcome(hg, {0}, o);
    EXPECT_FALSE(t.passed);
    ASSERT_EQ(t.syndrome.size(), 1u);
    EXPECT_EQ(t.syndrome[0], (std::pair<Vertex, int>{0, 1}));
}

TEST(Classify, AllZeroOutcomePasses) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        // Singleton edges flip the expected X outcome, so they are left out here.
        Hypergraph raw = gen::random_hypergraph(rng, 2 + trial % 6, 2 + trial % 3, 3, 6);
        std::vector<RawEdge> edges;
        for (const Edge &e : raw.edges()) {
            if (e.vertices.size() > 1) edges.push_back({e.vertices, e.multiplicity});
        }
        Hypergraph hg(raw.num_vertices(), raw.dim(), edges);
        std::vector<int> zero(hg.num_vertices(), 0);
        for (const VertexSet &set : greedy_coloring(hg).classes) EXPECT_TRUE(classify_outcome(hg, set, zero).passed);
    }
}

TEST(Classify, QutritEdgeWithMultiplicity) {
    Hypergraph hg(2, 3, std::vector<RawEdge>{{{0, 1}, 2}});
    const int o[] = {1, 2};
    TestOutcome t = classify_outcome(hg, {0}, o);
    EXPECT_EQ(t.syndrome[0].second, 2);
    EXPECT_FALSE(t.passed);
}

TEST(Classify, SingletonEdgeUsesEmptyProduct) {
    Hypergraph hg(2, 2, std::vector<RawEdge>{{{0}, 1}});
    const int o[] = {1, 0};
    // t_0 = o_0 + 1 = 0 mod 2.
    EXPECT_TRUE(classify_outcome(hg, {0}, o).passed);
}

TEST(Classify, RejectsDependentSetAndBadDigits) {
    const int p[] = {3};
    Hypergraph hg = family("path", p);
    const int o[] = {0, 0, 0};
    EXPECT_THROW(classify_outcome(hg, {0, 1}, o), Error);
    const int bad[] = {0, 2, 0};
    EXPECT_THROW(classify_outcome(hg, {0}, bad), Error);
}

TEST(Classify, NeighborhoodOnlyIgnoresFarDigits) {
    const int p[] = {4};
    Hypergraph hg = family("path", p);
    const int o[] = {0, 0, 0, 7};
    EXPECT_TRUE(classify_outcome(hg, {0}, o, true).passed);
    EXPECT_THROW(classify_outcome(hg, {0}, o, false), Error);
}

TEST(Spectral, SummaryOfColoringAndOddCycle) {
    const int uj[] = {2};
    Hypergraph lattice = family("union-jack-lattice", uj);
    SpectralSummary s = spectral_summary(make_protocol(lattice, uniform_cover(exact_invariants(lattice).coloring)));
    EXPECT_EQ(s.nu, Rational(1, 3));
    EXPECT_EQ(s.beta, Rational(2, 3));
    EXPECT_EQ(s.tau, 0);

    const int c5[] = {5};
    Hypergraph cycle = family("cycle", c5);
    EXPECT_EQ(spectral_summary(make_protocol(cycle, odd_cycle_cover(5))).nu, Rational(2, 5));
}

TEST(Spectral, HedgedValues) {
    const Real e = euler_e();
    const Real p = Real(1) / (2 * e);
    SpectralSummary s = hedged_summary(Rational(1, 2), Rational(1, 2), Rational(0), p);
    EXPECT_LT(mp::abs(s.tau_p - p), Real("1e-40"));
    EXPECT_LT(mp::abs(s.beta_p - (Real(1) / 2 + 1 / (4 * e))), Real("1e-40"));
    EXPECT_LT(mp::abs(s.nu_p + s.beta_p - 1), Real("1e-40"));
}

TEST(Spectral, EigenvaluesOfTriangleEdge) {
    ProtocolSpec spec = triangle_edge();
    const int zero[] = {0, 0, 0};
    const int e0[] = {1, 0, 0};
    const int ones[] = {1, 1, 1};
    EXPECT_EQ(eigenvalue_at(spec, zero), 1);
    EXPECT_EQ(eigenvalue_at(spec, e0), Rational(2, 3));
    EXPECT_EQ(eigenvalue_at(spec, ones), 0);

    std::vector<SpectrumEntry> spectrum = full_spectrum(spec);
    ASSERT_EQ(spectrum.size(), 4u);
    const Rational values[] = {1, Rational(2, 3), Rational(1, 3), 0};
    const int mult[] = {1, 3, 3, 1};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(spectrum[i].value, values[i]);
        EXPECT_EQ(spectrum[i].multiplicity, mult[i]);
    }
}

TEST(Spectral, SingleVertex) {
    Hypergraph hg(1, 2);
    ProtocolSpec spec = make_protocol(hg, WeightedCover{{{0}}, {Rational(1)}});
    std::vector<SpectrumEntry> spectrum = full_spectrum(spec);
    ASSERT_EQ(spectrum.size(), 2u);
    EXPECT_EQ(spectrum[0].value, 1);
    EXPECT_EQ(spectrum[1].value, 0);
}

TEST(SpectralProperty, BetaIsLargestSingleSiteEigenvalue) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + trial % 3;
        Hypergraph hg = gen::random_hypergraph(rng, 2 + trial % 7, d, 3, 8);
        ProtocolSpec spec = make_protocol(hg, gen::random_cover(rng, hg));
        const int n = hg.num_vertices();
        Rational best = 0;
        for (int j = 0; j < n; ++j) {
            std::vector<int> x(n, 0);
            x[j] = 1 + trial % (d - 1);
            best = std::max(best, eigenvalue_at(spec, x));
        }
        EXPECT_EQ(spectral_summary(spec).beta, best);
    }
}

TEST(SpectralProperty, EigenvalueMonotoneUnderSupportGrowth) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        Hypergraph hg = gen::random_hypergraph(rng, 2 + trial % 7, 2, 3, 8);
        ProtocolSpec spec = make_protocol(hg, gen::random_cover(rng, hg));
        const int n = hg.num_vertices();
        for (long a = 0; a < (1L << n); ++a) {
            for (int j = 0; j < n; ++j) {
                const long b = a | (1L << j);
                EXPECT_GE(eigenvalue_at(spec, digits_of(a, n, 2)), eigenvalue_at(spec, digits_of(b, n, 2)));
            }
        }
    }
}

TEST(SpectralProperty, SpectrumMatchesPointwiseEnumeration) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 2;
        Hypergraph hg = gen::random_hypergraph(rng, 1 + trial % 6, d, 3, 6);
        ProtocolSpec spec = make_protocol(hg, gen::random_cover(rng, hg));
        const int n = hg.num_vertices();
        std::map<Rational, long> counted;
        long total = 1;
        for (int j = 0; j < n; ++j) total *= d;
        for (long idx = 0; idx < total; ++idx) ++counted[eigenvalue_at(spec, digits_of(idx, n, d))];
        std::map<Rational, long> grouped;
        for (const SpectrumEntry &e : full_spectrum(spec)) grouped[e.value] += e.multiplicity.convert_to<long>();
        EXPECT_EQ(grouped, counted);
    }
}

TEST(Hedging, OneThirdConstant) {
    HedgeParams h = hedging_params(Rational(1, 3));
    EXPECT_LT(h.h_star, Real("4.052"));
    EXPECT_GT(h.h_star, Real(3));
}

TEST(Hedging, FullGapGivesE) {
    HedgeParams h = hedging_params(Rational(1));
    EXPECT_LT(mp::abs(h.p_star - 1 / euler_e()), Real("1e-25"));
    EXPECT_LT(mp::abs(h.h_star - euler_e()), Real("1e-25"));
}

TEST(Hedging, RootCondition) {
    for (const Rational &nu : {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(2, 5), Rational(1, 10)}) {
        HedgeParams h = hedging_params(nu);
        const Real p = h.p_star;
        const Real beta_p = 1 - to_real(nu) + p * to_real(nu);
        const Real f = -p * mp::log(p) + beta_p * mp::log(beta_p);
        EXPECT_LT(mp::abs(f), Real("1e-20"));
        // h* = -1/(p* ln p*) and equals h(p*, nu).
        EXPECT_LT(mp::abs(h.h_star + 1 / (p * mp::log(p))), Real("1e-20"));
        EXPECT_LT(mp::abs(h_value(p, nu) - h.h_star), Real("1e-15"));
        // p* minimizes h(p, nu) on a grid around it.
        for (double q = 0.01; q < 0.36; q += 0.01) EXPECT_GE(h_value(Real(q), nu), h.h_star * (1 - Real("1e-12")));
        EXPECT_LT(mp::abs(h.p_nu_over_e - to_real(nu) / euler_e()), Real("1e-40"));
    }
}

TEST(Hedging, RejectsBadNu) {
    EXPECT_THROW(hedging_params(Rational(0)), Error);
    EXPECT_THROW(hedging_params(Rational(3, 2)), Error);
}

TEST(Plm, Summary) {
    EXPECT_EQ(plm_summary(2).nu, Rational(2, 3));
    EXPECT_EQ(plm_summary(1).nu, 1);
    EXPECT_EQ(plm_summary(30).nu, Rational(1 << 29, (1 << 30) - 1));
    EXPECT_EQ(plm_summary(5).tau, plm_summary(5).beta);
}

TEST(Protocol, AutoHedgeUsesPStar) {
    ProtocolSpec spec = triangle_edge();
    ProtocolSpec hedged = make_protocol(spec.hg, spec.cover, HedgeSpec::automatic());
    EXPECT_EQ(hedged.hedge_p, hedging_params(Rational(1, 3)).p_star);
    EXPECT_THROW(make_protocol(spec.hg, spec.cover, HedgeSpec::explicit_p(Real(1))), Error);
}
