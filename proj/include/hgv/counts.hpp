#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgv/numeric.hpp"
#include "hgv/protocol.hpp"

namespace hgv {

/// Infidelity threshold epsilon and significance level delta, both in (0, 1).
struct PrecisionTarget {
    Rational epsilon;
    Rational delta;
};

void validate_target(const PrecisionTarget &t);

enum class Scenario { Nonadversarial, Adversarial, AdversarialHedged };

std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view text);

/// Named real-valued quantity attached to a report (analytic bounds, h, p).
struct NamedValue {
    std::string name;
    Real value;
};

/// Test counts with the formula that produced each one. Bound ids are
/// descriptive, e.g. "nonadversarial_exact" or "adversarial_upper".
struct CountReport {
    Scenario scenario = Scenario::Nonadversarial;
    std::optional<BigInt> n_exact;
    std::optional<BigInt> n_upper;
    std::optional<BigInt> n_lower;
    std::string exact_formula;
    std::string upper_formula;
    std::string lower_formula;
    std::vector<NamedValue> extras;

    /// The number to run: exact when known, else the upper bound.
    BigInt tests() const;
    const Real *extra(std::string_view name) const;
};

/// ceil(ln delta / ln(1 - nu eps)) and the looser ceil(ln(1/delta)/(nu eps)).
CountReport tests_nonadversarial(const Rational &nu, const PrecisionTarget &t);

/// Infidelity interval [(1-r)/(1-tau), (1-r)/nu] clipped to [0, 1].
std::pair<Real, Real> fidelity_interval(const Real &pass_rate, const Real &nu, const Real &tau);

/// min{ceil((1-delta)/(nu delta eps)), ceil(1/(delta eps) - 1)} <= N <= ceil((1-delta)/(nu delta eps));
/// the lower value is exact when nu >= 1/2.
CountReport tests_adversarial(const Rational &nu, const PrecisionTarget &t);

/// Hedged protocol in the adversarial scenario. Auto uses p*(nu) and reports
/// N = floor(h* ln(1/(F delta))/eps) as exact; other choices report
/// floor(h(p, nu) ln(1/(F delta))/eps) as an upper bound. F = 1 - eps.
CountReport tests_adversarial_hedged(const Rational &nu, const PrecisionTarget &t,
                                     const HedgeSpec &hedge = HedgeSpec::automatic());

CountReport tests_for_scenario(Scenario s, const Rational &nu, const PrecisionTarget &t,
                               const HedgeSpec &hedge = HedgeSpec::automatic());

/// Counts for certifying genuine multipartite entanglement of a connected
/// order-k hypergraph state: the verification counts at eps = 2^{1-k}.
CountReport gme_tests(int k, const Rational &nu, const Rational &delta, Scenario s);

/// 1/192 trace distance target converted to infidelity: eps = D^2.
Rational infidelity_for_trace_distance(const Rational &trace_distance);
/// [1 - sqrt(F), sqrt(1 - F)].
std::pair<Real, Real> trace_distance_bracket(const Real &fidelity);

/// Hedged coloring protocol with m colors at eps = 1/192^2. The report also
/// carries "per_qubit_coefficient" = ln(1/(F delta))/eps, the slope of N in m.
CountReport supremacy_budget(int n, const Rational &delta, int m);

}  // namespace hgv
