#include "hgv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "hgv/error.hpp"

namespace hgv {

namespace {

double parse_double(std::string_view text) { return to_double(parse_rational(text)); }

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// Probabilities of measuring X on the qudits of `set` and Z elsewhere; the X
/// outcome o on a qudit has amplitude d^{-1/2} sum_j omega^{o j} psi_j.
std::vector<double> outcome_probabilities(const StateVector &psi, int n, int d, const VertexSet &set) {
    StateVector v = psi;
    std::vector<Complex> w(d);
    for (int k = 0; k < d; ++k) w[k] = std::polar(1.0, 2 * std::numbers::pi * k / d);
    const double inv = 1 / std::sqrt(static_cast<double>(d));
    long stride = 1;
    std::vector<long> strides(n);
    for (int j = 0; j < n; ++j) {
        strides[j] = stride;
        stride *= d;
    }
    std::vector<Complex> in(d), out(d);
    for (Vertex q : set) {
        const long s = strides[q];
        for (long base = 0; base < v.size(); ++base) {
            if ((base / s) % d != 0) continue;
            for (int j = 0; j < d; ++j) in[j] = v[base + j * s];
            for (int o = 0; o < d; ++o) {
                Complex acc = 0;
                for (int j = 0; j < d; ++j) acc += w[(o * j) % d] * in[j];
                out[o] = inv * acc;
            }
            for (int o = 0; o < d; ++o) v[base + o * s] = out[o];
        }
    }
    std::vector<double> probs(v.size());
    for (long i = 0; i < v.size(); ++i) probs[i] = std::norm(v[i]);
    return probs;
}

std::vector<double> cumulative(const std::vector<double> &probs) {
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    return cdf;
}

long sample_index(const std::vector<double> &cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
    if (it == cdf.end()) --it;
    return static_cast<long>(it - cdf.begin());
}

std::size_t pick(const std::vector<double> &weights, double u) {
    double acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size();
}

void check_state(const ProtocolSpec &spec, const MixedState &state) {
    if (state.n != spec.hg.num_vertices() || state.d != spec.hg.dim()) {
        fail(ErrorCode::BadParams, "state does not match the protocol's hypergraph");
    }
}

TestOutcome finish(const ProtocolSpec &spec, int set, long index) {
    std::vector<int> digits = basis_digits(index, spec.hg.num_vertices(), spec.hg.dim());
    TestOutcome t = classify_outcome(spec.hg, spec.cover.sets[set], digits);
    t.set_index = set;
    return t;
}

}  // namespace

NoiseModel NoiseModel::depolarizing(double s) {
    if (s < 0 || s > 1) fail(ErrorCode::BadParams, "depolarizing strength must lie in [0, 1]");
    NoiseModel m;
    m.kind = Kind::Depolarizing;
    m.strength = s;
    return m;
}

NoiseModel NoiseModel::eigenstate_mix(std::vector<std::pair<std::vector<int>, double>> mix) {
    double total = 0;
    for (const auto &[x, w] : mix) {
        if (w < 0) fail(ErrorCode::BadParams, "mixture weights must be nonnegative");
        total += w;
    }
    if (total > 1 + 1e-12) fail(ErrorCode::BadParams, "mixture weights must sum to at most 1");
    NoiseModel m;
    m.kind = Kind::EigenstateMix;
    m.mix = std::move(mix);
    return m;
}

NoiseModel NoiseModel::coherent_z_rotation(Vertex v, double angle) {
    NoiseModel m;
    m.kind = Kind::CoherentZRotation;
    m.vertex = v;
    m.angle = angle;
    return m;
}

NoiseModel NoiseModel::worst_case(double epsilon) {
    if (epsilon < 0 || epsilon >= 1) fail(ErrorCode::BadParams, "worst-case infidelity must lie in [0, 1)");
    NoiseModel m;
    m.kind = Kind::WorstCase;
    m.epsilon = epsilon;
    return m;
}

NoiseModel parse_noise(std::string_view text) {
    auto parts = split(text, ':');
    const std::string &kind = parts[0];
    auto need = [&](std::size_t count) {
        if (parts.size() != count) fail(ErrorCode::BadParams, "malformed noise model '" + std::string(text) + "'");
    };
    if (kind == "target") {
        need(1);
        return NoiseModel::target();
    }
    if (kind == "depolarizing") {
        need(2);
        return NoiseModel::depolarizing(parse_double(parts[1]));
    }
    if (kind == "worst_case") {
        need(2);
        return NoiseModel::worst_case(parse_double(parts[1]));
    }
    if (kind == "coherent_z") {
        need(3);
        Rational v = parse_rational(parts[1]);
        if (boost::multiprecision::denominator(v) != 1) fail(ErrorCode::BadParams, "vertex must be an integer");
        return NoiseModel::coherent_z_rotation(static_cast<Vertex>(to_int64(boost::multiprecision::numerator(v))),
                                               parse_double(parts[2]));
    }
    if (kind == "eigenstate_mix") {
        need(2);
        std::vector<std::pair<std::vector<int>, double>> mix;
        for (const std::string &item : split(parts[1], ',')) {
            auto kv = split(item, '=');
            if (kv.size() != 2) fail(ErrorCode::BadParams, "eigenstate_mix entries look like 0101=0.25");
            std::vector<int> x;
            for (char c : kv[0]) {
                if (c < '0' || c > '9') fail(ErrorCode::BadParams, "syndrome digits must be 0-9");
                x.push_back(c - '0');
            }
            mix.emplace_back(std::move(x), parse_double(kv[1]));
        }
        return NoiseModel::eigenstate_mix(std::move(mix));
    }
    fail(ErrorCode::BadParams, "unknown noise model '" + std::string(text) + "'");
}

std::string to_string(const NoiseModel &noise) {
    std::ostringstream os;
    switch (noise.kind) {
        case NoiseModel::Kind::Target: os << "target"; break;
        case NoiseModel::Kind::Depolarizing: os << "depolarizing:" << noise.strength; break;
        case NoiseModel::Kind::WorstCase: os << "worst_case:" << noise.epsilon; break;
        case NoiseModel::Kind::CoherentZRotation: os << "coherent_z:" << noise.vertex << ':' << noise.angle; break;
        case NoiseModel::Kind::EigenstateMix:
            os << "eigenstate_mix:";
            for (std::size_t i = 0; i < noise.mix.size(); ++i) {
                if (i) os << ',';
                for (int digit : noise.mix[i].first) os << digit;
                os << '=' << noise.mix[i].second;
            }
            break;
    }
    return os.str();
}

MixedState prepare_state(const ProtocolSpec &spec, const NoiseModel &noise) {
    const Hypergraph &hg = spec.hg;
    const int n = hg.num_vertices(), d = hg.dim();
    if (noise.kind == NoiseModel::Kind::WorstCase) return worst_case_state(spec, noise.epsilon).state;

    const DenseState target = build_state(hg);
    MixedState m = pure(target);
    switch (noise.kind) {
        case NoiseModel::Kind::Target:
        case NoiseModel::Kind::WorstCase: break;
        case NoiseModel::Kind::Depolarizing:
            m.weights[0] = 1 - noise.strength;
            m.white_noise = noise.strength;
            break;
        case NoiseModel::Kind::CoherentZRotation: {
            if (noise.vertex < 0 || noise.vertex >= n) fail(ErrorCode::VertexOutOfRange, "rotation vertex out of range");
            StateVector v = target.amplitudes;
            long stride = 1;
            for (int j = 0; j < noise.vertex; ++j) stride *= d;
            for (long i = 0; i < v.size(); ++i) v[i] *= std::polar(1.0, noise.angle * static_cast<double>((i / stride) % d));
            m.components[0] = v;
            break;
        }
        case NoiseModel::Kind::EigenstateMix: {
            double rest = 1;
            for (const auto &[x, w] : noise.mix) {
                if (static_cast<int>(x.size()) != n) fail(ErrorCode::BadParams, "syndrome string must have length n");
                StateVector v = target.amplitudes;
                for (Vertex k = 0; k < n; ++k) {
                    if (x[k] < 0 || x[k] >= d) fail(ErrorCode::BadParams, "syndrome digit out of range");
                    if (x[k] != 0) v = apply_z(n, d, k, x[k], v);
                }
                m.weights.push_back(w);
                m.components.push_back(std::move(v));
                rest -= w;
            }
            m.weights[0] = std::max(0.0, rest);
            break;
        }
    }
    return m;
}

std::mt19937_64 test_stream(std::uint64_t seed, long index) {
    const auto idx = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

TestOutcome sample_test(const MixedState &state, const ProtocolSpec &spec, std::mt19937_64 &rng) {
    check_state(spec, state);
    const double p = spec.hedge_p.convert_to<double>();
    if (uniform01(rng) < p) return TestOutcome{};

    std::vector<double> mu;
    for (const Rational &w : spec.cover.weights) mu.push_back(to_double(w));
    std::size_t set = std::min(pick(mu, uniform01(rng)), mu.size() - 1);

    const long dim = checked_dimension(state.n, state.d, oracle_budget().state_dim);
    std::size_t comp = pick(state.weights, uniform01(rng));
    double u = uniform01(rng);
    long index = comp < state.components.size()
                     ? sample_index(cumulative(outcome_probabilities(state.components[comp], state.n, state.d,
                                                                     spec.cover.sets[set])),
                                    u)
                     : std::min(static_cast<long>(u * static_cast<double>(dim)), dim - 1);
    return finish(spec, static_cast<int>(set), index);
}

Simulator::Simulator(ProtocolSpec spec, std::vector<MixedState> schedule)
    : spec_(std::move(spec)), schedule_(std::move(schedule)) {
    if (schedule_.empty()) fail(ErrorCode::BadParams, "simulation needs at least one state");
    std::size_t total = 0;
    for (const MixedState &s : schedule_) {
        check_state(spec_, s);
        offsets_.push_back(total);
        total += s.components.size() * spec_.cover.sets.size();
    }
    cache_ = std::make_unique<Cached[]>(total);
}

const std::vector<double> &Simulator::distribution(std::size_t state, std::size_t component, std::size_t set) const {
    Cached &slot = cache_[offsets_[state] + component * spec_.cover.sets.size() + set];
    std::call_once(slot.once, [&] {
        const MixedState &s = schedule_[state];
        slot.cdf = cumulative(outcome_probabilities(s.components[component], s.n, s.d, spec_.cover.sets[set]));
    });
    return slot.cdf;
}

TestOutcome Simulator::draw(std::size_t state, std::mt19937_64 &rng) const {
    const double p = spec_.hedge_p.convert_to<double>();
    if (uniform01(rng) < p) return TestOutcome{};
    std::vector<double> mu;
    mu.reserve(spec_.cover.weights.size());
    for (const Rational &w : spec_.cover.weights) mu.push_back(to_double(w));
    std::size_t set = std::min(pick(mu, uniform01(rng)), mu.size() - 1);

    const MixedState &s = schedule_[state];
    std::size_t comp = pick(s.weights, uniform01(rng));
    double u = uniform01(rng);
    long index;
    if (comp < s.components.size()) {
        index = sample_index(distribution(state, comp, set), u);
    } else {
        long dim = 1;
        for (int j = 0; j < s.n; ++j) dim *= s.d;
        index = std::min(static_cast<long>(u * static_cast<double>(dim)), dim - 1);
    }
    return finish(spec_, static_cast<int>(set), index);
}

TestOutcome Simulator::sample(long index, std::uint64_t seed) const {
    auto rng = test_stream(seed, index);
    return draw(static_cast<std::size_t>(index) % schedule_.size(), rng);
}

SimulationReport Simulator::run(long tests, std::uint64_t seed, int threads, bool keep_trace) const {
    if (tests < 0) fail(ErrorCode::BadParams, "test count must be nonnegative");
    threads = std::max(1, threads);
    SimulationReport report;
    report.seed = seed;
    report.tests_performed = tests;
    if (keep_trace) report.trace.resize(tests);

    struct Partial {
        long passes = 0;
        std::optional<long> first_failure;
    };
    std::vector<Partial> partial(threads);
    auto work = [&](int t) {
        long begin = tests * t / threads, end = tests * (t + 1) / threads;
        for (long i = begin; i < end; ++i) {
            TestOutcome o = sample(i, seed);
            if (o.passed) {
                ++partial[t].passes;
            } else if (!partial[t].first_failure) {
                partial[t].first_failure = i;
            }
            if (keep_trace) report.trace[i] = TraceRecord{i, o.set_index, std::move(o.outcome), o.passed};
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (const Partial &p : partial) {
        report.passes += p.passes;
        if (p.first_failure && (!report.first_failure || *p.first_failure < *report.first_failure)) {
            report.first_failure = p.first_failure;
        }
    }
    report.accepted = report.passes == tests;
    report.pass_rate = tests > 0 ? static_cast<double>(report.passes) / static_cast<double>(tests) : 1.0;

    SpectralSummary s = spectral_summary(spec_);
    auto [lo, hi] = fidelity_interval(Real(report.pass_rate), s.nu_p, s.tau_p);
    report.infidelity_interval = {lo.convert_to<double>(), hi.convert_to<double>()};
    double exact = 0;
    for (const MixedState &state : schedule_) exact += pass_probability(spec_, state);
    report.exact_pass_probability = exact / static_cast<double>(schedule_.size());
    return report;
}

SimulationReport run_verification(const ProtocolSpec &spec, const std::vector<NoiseModel> &schedule,
                                  const PrecisionTarget &t, Scenario scenario, std::uint64_t seed,
                                  const SimulationOptions &options) {
    Rational nu = cover_strength(spec.hg, spec.cover);
    CountReport counts;
    if (scenario == Scenario::AdversarialHedged) {
        if (spec.hedge_p <= 0) fail(ErrorCode::BadParams, "hedged scenario needs a protocol with hedge probability p > 0");
        Real p_star = hedging_params(nu).p_star;
        bool optimal = boost::multiprecision::abs(spec.hedge_p - p_star) <= Real("1e-25");
        counts = tests_adversarial_hedged(nu, t, optimal ? HedgeSpec::automatic() : HedgeSpec::explicit_p(spec.hedge_p));
    } else {
        counts = tests_for_scenario(scenario, nu, t);
    }
    long tests;
    if (options.tests) {
        tests = *options.tests;
    } else {
        BigInt n = counts.tests();
        if (n > 100000000) fail(ErrorCode::BudgetExceeded, "refusing to simulate more than 1e8 tests (N = " + n.str() + ")");
        tests = n.convert_to<long>();
    }

    std::vector<MixedState> states;
    for (const NoiseModel &m : schedule) states.push_back(prepare_state(spec, m));
    Simulator sim(spec, std::move(states));
    SimulationReport report = sim.run(tests, seed, options.threads, options.keep_trace);
    report.count_formula = options.tests ? "user" : (counts.n_exact ? counts.exact_formula : counts.upper_formula);
    return report;
}

Json simulation_report_json(const SimulationReport &report) {
    Json j;
    j["tests_performed"] = report.tests_performed;
    j["passes"] = report.passes;
    j["first_failure_index"] = report.first_failure ? Json(*report.first_failure) : Json(nullptr);
    j["pass_rate"] = report.pass_rate;
    j["exact_pass_probability"] = report.exact_pass_probability;
    j["infidelity_interval"] = {report.infidelity_interval.first, report.infidelity_interval.second};
    j["decision"] = report.accepted ? "accepted" : "rejected";
    j["seed"] = report.seed;
    j["count_formula"] = report.count_formula;
    return j;
}

std::string trace_csv(const SimulationReport &report) {
    std::ostringstream os;
    os << "index,set,outcome,passed\n";
    for (const TraceRecord &r : report.trace) {
        os << r.index << ',' << r.set << ',';
        bool wide = std::any_of(r.outcome.begin(), r.outcome.end(), [](int x) { return x > 9; });
        for (std::size_t i = 0; i < r.outcome.size(); ++i) {
            if (wide && i) os << ':';
            os << r.outcome[i];
        }
        os << ',' << (r.passed ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace hgv
