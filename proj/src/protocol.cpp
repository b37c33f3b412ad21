#include "hgv/protocol.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <unordered_map>

#include "hgv/error.hpp"

namespace hgv {

namespace {

Real xlog_inv(const Real &x) {
    if (x <= 0) return Real(0);
    return -x * boost::multiprecision::log(x);
}

void check_probability(const Real &p) {
    if (p < 0 || p >= 1) fail(ErrorCode::BadParams, "hedge probability must lie in [0, 1)");
}

}  // namespace

ProtocolSpec make_protocol(Hypergraph hg, const WeightedCover &cover, const HedgeSpec &hedge) {
    WeightedCover valid = validate_cover(hg, cover);
    Real p = 0;
    switch (hedge.kind) {
        case HedgeSpec::Kind::None: break;
        case HedgeSpec::Kind::Explicit: p = hedge.p; break;
        case HedgeSpec::Kind::Auto: p = hedging_params(cover_strength(hg, valid)).p_star; break;
        case HedgeSpec::Kind::NuOverE: p = hedging_params(cover_strength(hg, valid)).p_nu_over_e; break;
    }
    check_probability(p);
    return ProtocolSpec{std::move(hg), std::move(valid), p};
}

SpectralSummary hedged_summary(const Rational &nu, const Rational &beta, const Rational &tau, const Real &p) {
    check_probability(p);
    SpectralSummary s;
    s.nu = nu;
    s.beta = beta;
    s.tau = tau;
    s.p = p;
    s.beta_p = (1 - p) * to_real(beta) + p;
    s.nu_p = 1 - s.beta_p;
    s.tau_p = (1 - p) * to_real(tau) + p;
    return s;
}

SpectralSummary spectral_summary(const ProtocolSpec &spec) {
    Rational nu = cover_strength(spec.hg, spec.cover);
    return hedged_summary(nu, 1 - nu, Rational(0), spec.hedge_p);
}

TestOutcome classify_outcome(const Hypergraph &hg, const VertexSet &set, std::span<const int> outcome,
                             bool neighborhood_only) {
    const int n = hg.num_vertices();
    const int d = hg.dim();
    if (!is_independent(hg, set)) fail(ErrorCode::NotIndependent, "test set is not independent");
    if (static_cast<int>(outcome.size()) != n) {
        fail(ErrorCode::BadParams, "outcome string has length " + std::to_string(outcome.size()) + ", expected " +
                                       std::to_string(n));
    }
    std::vector<char> relevant(n, 1);
    if (neighborhood_only) {
        std::fill(relevant.begin(), relevant.end(), 0);
        for (Vertex v : set) relevant[v] = 1;
        for (Vertex v : neighborhood(hg, set)) relevant[v] = 1;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (relevant[v] && (outcome[v] < 0 || outcome[v] >= d)) {
            fail(ErrorCode::BadParams, "outcome digit at vertex " + std::to_string(v) + " outside 0.." + std::to_string(d - 1));
        }
    }

    TestOutcome result;
    result.outcome.assign(outcome.begin(), outcome.end());
    for (Vertex i : set) {
        long t = outcome[i];
        for (int idx : hg.incident_edges(i)) {
            const Edge &e = hg.edges()[idx];
            long prod = 1;
            for (Vertex k : e.vertices) {
                if (k != i) prod = prod * outcome[k] % d;
            }
            t += static_cast<long>(e.multiplicity) * prod;
        }
        int ti = static_cast<int>(t % d);
        result.syndrome.emplace_back(i, ti);
        if (ti != 0) result.passed = false;
    }
    return result;
}

Rational eigenvalue_at(const ProtocolSpec &spec, std::span<const int> x) {
    if (static_cast<int>(x.size()) != spec.hg.num_vertices()) fail(ErrorCode::BadParams, "syndrome length must equal n");
    Rational lambda = 0;
    for (std::size_t l = 0; l < spec.cover.sets.size(); ++l) {
        bool disjoint = std::none_of(spec.cover.sets[l].begin(), spec.cover.sets[l].end(),
                                     [&](Vertex v) { return x[v] % spec.hg.dim() != 0; });
        if (disjoint) lambda += spec.cover.weights[l];
    }
    return lambda;
}

Real hedged_eigenvalue(const Rational &lambda, const Real &p) { return (1 - p) * to_real(lambda) + p; }

std::vector<SpectrumEntry> full_spectrum(const ProtocolSpec &spec, int max_n) {
    const int n = spec.hg.num_vertices();
    if (n > max_n || n > 30) {
        fail(ErrorCode::BudgetExceeded, "spectrum enumeration over 2^n supports needs n <= " + std::to_string(std::min(max_n, 30)));
    }
    const std::size_t num_sets = spec.cover.sets.size();
    const std::size_t words = (num_sets + 63) / 64;
    std::vector<std::vector<std::uint64_t>> set_masks(words);
    // vertex_hits[v] lists, per word, the sets containing v.
    std::vector<std::vector<std::uint64_t>> vertex_hits(n, std::vector<std::uint64_t>(words, 0));
    for (std::size_t l = 0; l < num_sets; ++l) {
        for (Vertex v : spec.cover.sets[l]) vertex_hits[v][l / 64] |= std::uint64_t{1} << (l % 64);
    }

    // Group supports by the family of sets they touch, counting per support size.
    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> groups;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> touched(words);
    for (std::uint64_t s = 0; s < total; ++s) {
        std::fill(touched.begin(), touched.end(), 0);
        for (std::uint64_t q = s; q; q &= q - 1) {
            int v = std::countr_zero(q);
            for (std::size_t w = 0; w < words; ++w) touched[w] |= vertex_hits[v][w];
        }
        auto &counts = groups[touched];
        if (counts.empty()) counts.assign(n + 1, 0);
        ++counts[std::popcount(s)];
    }

    std::map<Rational, BigInt, std::greater<>> spectrum;
    const BigInt dm1 = spec.hg.dim() - 1;
    for (const auto &[mask, counts] : groups) {
        Rational lambda = 0;
        for (std::size_t l = 0; l < num_sets; ++l) {
            if (((mask[l / 64] >> (l % 64)) & 1U) == 0) lambda += spec.cover.weights[l];
        }
        BigInt mult = 0;
        BigInt power = 1;
        for (int size = 0; size <= n; ++size) {
            mult += BigInt(counts[size]) * power;
            power *= dm1;
        }
        if (mult != 0) spectrum[lambda] += mult;
    }
    std::vector<SpectrumEntry> out;
    for (auto &[value, mult] : spectrum) out.push_back({value, mult});
    return out;
}

Real h_value(const Real &p, const Rational &nu) {
    if (nu <= 0 || nu > 1) fail(ErrorCode::BadNu, "nu must lie in (0, 1]");
    if (p <= 0 || p >= 1) fail(ErrorCode::BadParams, "p must lie in (0, 1)");
    Real beta_p = 1 - to_real(nu) + p * to_real(nu);
    Real m = std::min(xlog_inv(beta_p), xlog_inv(p));
    if (m <= 0) fail(ErrorCode::BadParams, "h(p, nu) is infinite at these parameters");
    return 1 / m;
}

namespace {

HedgeParams compute_hedging_params(const Rational &nu) {
    const Real v = to_real(nu);
    const Real inv_e = 1 / euler_e();
    HedgeParams out;
    out.p_nu_over_e = v * inv_e;
    out.h_nu_over_e = h_value(out.p_nu_over_e, nu);

    if (nu == 1) {
        out.p_star = inv_e;
    } else {
        auto f = [&](const Real &p) { return xlog_inv(p) - xlog_inv(1 - v + p * v); };
        // f(0) < 0 because beta_0 = 1 - nu lies in (0, 1); f(1/e) >= 0 because
        // x ln(1/x) peaks at 1/e. Scan geometrically for the first sign change.
        Real lo = 0;
        Real hi = inv_e;
        const int steps = 4000;
        const Real first = Real("1e-15");
        const Real ratio = boost::multiprecision::pow(inv_e / first, Real(1) / steps);
        Real p = first;
        for (int i = 0; i <= steps; ++i) {
            Real point = i == steps ? inv_e : p;
            if (f(point) >= 0) {
                hi = point;
                break;
            }
            lo = point;
            p *= ratio;
        }
        const Real tol("1e-30");
        while (hi - lo > tol) {
            Real mid = (lo + hi) / 2;
            if (f(mid) >= 0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.p_star = hi;
    }
    out.h_star = -1 / (out.p_star * boost::multiprecision::log(out.p_star));
    return out;
}

}  // namespace

HedgeParams hedging_params(const Rational &nu) {
    if (nu <= 0 || nu > 1) fail(ErrorCode::BadNu, "nu must lie in (0, 1], got " + to_string(nu));
    // The scan costs thousands of 50-digit logarithms; counts ask for the same nu repeatedly.
    static std::mutex mutex;
    static std::map<Rational, HedgeParams> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(nu); it != cache.end()) return it->second;
    }
    HedgeParams out = compute_hedging_params(nu);
    std::lock_guard lock(mutex);
    cache.emplace(nu, out);
    return out;
}

SpectralSummary plm_summary(int n) {
    if (n < 1) fail(ErrorCode::BadParams, "PLM summary needs n >= 1");
    BigInt half = BigInt(1) << (n - 1);
    BigInt all = (BigInt(1) << n) - 1;
    Rational beta(half - 1, all);
    return hedged_summary(1 - beta, beta, beta, Real(0));
}

}  // namespace hgv
