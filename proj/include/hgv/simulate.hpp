#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hgv/counts.hpp"
#include "hgv/json_io.hpp"
#include "hgv/oracle.hpp"
#include "hgv/protocol.hpp"

namespace hgv {

/// Source of the states handed to the verifier.
struct NoiseModel {
    enum class Kind { Target, Depolarizing, EigenstateMix, CoherentZRotation, WorstCase };
    Kind kind = Kind::Target;
    double strength = 0;  ///< depolarizing: weight of I/D
    /// eigenstate_mix: (x, w) puts weight w on prod_k Z_k^{x_k}|G>; the rest stays on |G>.
    std::vector<std::pair<std::vector<int>, double>> mix;
    Vertex vertex = 0;  ///< coherent rotation target
    double angle = 0;   ///< phase e^{i angle u_v} on qudit v
    double epsilon = 0; ///< worst_case infidelity

    static NoiseModel target() { return {}; }
    static NoiseModel depolarizing(double s);
    static NoiseModel eigenstate_mix(std::vector<std::pair<std::vector<int>, double>> mix);
    static NoiseModel coherent_z_rotation(Vertex v, double angle);
    static NoiseModel worst_case(double epsilon);
};

/// Text form: "target", "depolarizing:0.1", "worst_case:0.05",
/// "coherent_z:<vertex>:<angle>", "eigenstate_mix:<digits>=<w>,<digits>=<w>".
NoiseModel parse_noise(std::string_view text);
std::string to_string(const NoiseModel &noise);

/// Density operator prepared by the noise model, as an ensemble.
MixedState prepare_state(const ProtocolSpec &spec, const NoiseModel &noise);

struct TraceRecord {
    long index = 0;
    int set = -1;  ///< -1 for the trivial test of a hedged protocol
    std::vector<int> outcome;
    bool passed = true;
};

struct SimulationReport {
    long tests_performed = 0;
    long passes = 0;
    std::optional<long> first_failure;
    double pass_rate = 1;
    std::pair<double, double> infidelity_interval{0, 0};
    bool accepted = true;
    std::uint64_t seed = 0;
    std::string count_formula;
    double exact_pass_probability = 1;  ///< average tr(Omega_p sigma_j) over the schedule
    std::vector<TraceRecord> trace;
};

/// Random stream of test `index` under master `seed`; independent of how
/// tests are distributed over threads.
std::mt19937_64 test_stream(std::uint64_t seed, long index);
double uniform01(std::mt19937_64 &rng);

/// Samples one test of the protocol on `state`: the trivial test with
/// probability p, else set l with probability mu_l, then an outcome from the
/// exact distribution of X on A_l and Z elsewhere.
TestOutcome sample_test(const MixedState &state, const ProtocolSpec &spec, std::mt19937_64 &rng);

/// Runs tests against a per-run schedule of states (test i sees
/// states[i % size]). Outcome distributions are computed once per
/// (state component, cover set) and shared between threads.
class Simulator {
  public:
    Simulator(ProtocolSpec spec, std::vector<MixedState> schedule);

    TestOutcome sample(long index, std::uint64_t seed) const;
    SimulationReport run(long tests, std::uint64_t seed, int threads = 1, bool keep_trace = false) const;

    const ProtocolSpec &spec() const { return spec_; }

  private:
    struct Cached {
        std::once_flag once;
        std::vector<double> cdf;
    };
    const std::vector<double> &distribution(std::size_t state, std::size_t component, std::size_t set) const;
    TestOutcome draw(std::size_t state, std::mt19937_64 &rng) const;

    ProtocolSpec spec_;
    std::vector<MixedState> schedule_;
    std::vector<std::size_t> offsets_;
    std::unique_ptr<Cached[]> cache_;
};

struct SimulationOptions {
    std::optional<long> tests;  ///< overrides the count from the scenario
    int threads = 1;
    bool keep_trace = false;
};

/// N from the counts module for the scenario, then Simulator::run. Hedged
/// scenarios use the protocol's own p (the optimal-p formula when p = p*).
/// Accepted iff every test passes.
SimulationReport run_verification(const ProtocolSpec &spec, const std::vector<NoiseModel> &schedule,
                                  const PrecisionTarget &t, Scenario scenario, std::uint64_t seed,
                                  const SimulationOptions &options = {});

Json simulation_report_json(const SimulationReport &report);
/// CSV with header index,set,outcome,passed. Outcome digits are concatenated,
/// or joined by ':' when a digit exceeds 9; the trivial test has set -1.
std::string trace_csv(const SimulationReport &report);

}  // namespace hgv
