#include "hgv/counts.hpp"

#include <algorithm>

#include "hgv/error.hpp"

namespace hgv {

namespace {

namespace mp = boost::multiprecision;

void check_nu(const Rational &nu) {
    if (nu <= 0 || nu > 1) fail(ErrorCode::BadNu, "spectral gap must lie in (0, 1], got " + to_string(nu));
}

/// q^k <= delta for rational q in (0, 1), computed exactly.
bool power_at_most(const Rational &q, unsigned long k, const Rational &delta) {
    BigInt qn = mp::numerator(q), qd = mp::denominator(q);
    BigInt lhs = mp::pow(qn, static_cast<unsigned>(k)) * mp::denominator(delta);
    BigInt rhs = mp::pow(qd, static_cast<unsigned>(k)) * mp::numerator(delta);
    return lhs <= rhs;
}

Real log_inv_f_delta(const PrecisionTarget &t) {
    Rational f_delta = (1 - t.epsilon) * t.delta;
    return -mp::log(to_real(f_delta));
}

}  // namespace

void validate_target(const PrecisionTarget &t) {
    if (t.epsilon <= 0 || t.epsilon >= 1) fail(ErrorCode::BadParams, "epsilon must lie in (0, 1)");
    if (t.delta <= 0 || t.delta >= 1) fail(ErrorCode::BadParams, "delta must lie in (0, 1)");
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Nonadversarial: return "nonadversarial";
        case Scenario::Adversarial: return "adversarial";
        case Scenario::AdversarialHedged: return "adversarial_hedged";
    }
    return "nonadversarial";
}

Scenario parse_scenario(std::string_view text) {
    if (text == "nonadversarial") return Scenario::Nonadversarial;
    if (text == "adversarial") return Scenario::Adversarial;
    if (text == "adversarial_hedged" || text == "hedged") return Scenario::AdversarialHedged;
    fail(ErrorCode::BadParams, "unknown scenario '" + std::string(text) + "'");
}

BigInt CountReport::tests() const {
    if (n_exact) return *n_exact;
    if (n_upper) return *n_upper;
    fail(ErrorCode::Internal, "count report carries no usable test count");
}

const Real *CountReport::extra(std::string_view name) const {
    for (const NamedValue &v : extras) {
        if (v.name == name) return &v.value;
    }
    return nullptr;
}

CountReport tests_nonadversarial(const Rational &nu, const PrecisionTarget &t) {
    check_nu(nu);
    validate_target(t);
    Rational step = nu * t.epsilon;
    if (step >= 1) fail(ErrorCode::BadGap, "1 - nu*eps must be positive");
    const Rational q = 1 - step;

    CountReport r;
    r.scenario = Scenario::Nonadversarial;
    Real ratio = mp::log(to_real(t.delta)) / mp::log(to_real(q));
    if (near_integer(ratio)) {
        // ln(delta)/ln(q) may be an exact integer (delta a power of q);
        // settle the ceiling with exact rational powers.
        BigInt k = nearest_integer(ratio);
        if (k > 1000000) fail(ErrorCode::NumericallyUnstable, "test count too close to an integer to resolve");
        unsigned long kk = k.convert_to<unsigned long>();
        BigInt n = power_at_most(q, kk, t.delta) ? k : k + 1;
        if (kk > 1 && power_at_most(q, kk - 1, t.delta)) n = k - 1;
        r.n_exact = n;
    } else {
        r.n_exact = stable_ceil(ratio);
    }
    r.exact_formula = "nonadversarial_exact";
    r.n_upper = stable_ceil(-mp::log(to_real(t.delta)) / to_real(step));
    r.upper_formula = "nonadversarial_upper";
    return r;
}

std::pair<Real, Real> fidelity_interval(const Real &pass_rate, const Real &nu, const Real &tau) {
    if (pass_rate < 0 || pass_rate > 1) fail(ErrorCode::BadParams, "pass rate must lie in [0, 1]");
    if (nu <= 0 || nu > 1) fail(ErrorCode::BadNu, "nu must lie in (0, 1]");
    if (tau < 0 || tau >= 1) fail(ErrorCode::BadParams, "tau must lie in [0, 1)");
    auto clip = [](const Real &x) { return std::clamp(x, Real(0), Real(1)); };
    Real miss = 1 - pass_rate;
    return {clip(miss / (1 - tau)), clip(miss / nu)};
}

CountReport tests_adversarial(const Rational &nu, const PrecisionTarget &t) {
    check_nu(nu);
    validate_target(t);
    CountReport r;
    r.scenario = Scenario::Adversarial;
    BigInt upper = ceil_rational((1 - t.delta) / (nu * t.delta * t.epsilon));
    BigInt other = ceil_rational(1 / (t.delta * t.epsilon) - 1);
    BigInt lower = std::min(upper, other);
    r.n_upper = std::max(upper, BigInt(1));
    r.upper_formula = "adversarial_upper";
    r.n_lower = std::max(lower, BigInt(1));
    r.lower_formula = "adversarial_lower";
    if (nu * 2 >= 1) {
        r.n_exact = r.n_lower;
        r.exact_formula = "adversarial_saturated_lower";
    }
    return r;
}

CountReport tests_adversarial_hedged(const Rational &nu, const PrecisionTarget &t, const HedgeSpec &hedge) {
    check_nu(nu);
    validate_target(t);
    const Real v = to_real(nu);
    const Real eps = to_real(t.epsilon);
    const Real log_term = log_inv_f_delta(t);
    const Real e = euler_e();

    CountReport r;
    r.scenario = Scenario::AdversarialHedged;
    HedgeParams params = hedging_params(nu);
    Real p;
    Real h;
    switch (hedge.kind) {
        case HedgeSpec::Kind::Auto:
        case HedgeSpec::Kind::None:
            p = params.p_star;
            h = params.h_star;
            r.n_exact = stable_floor(h * log_term / eps);
            r.exact_formula = "hedged_optimal_p";
            break;
        case HedgeSpec::Kind::NuOverE:
            p = params.p_nu_over_e;
            h = params.h_nu_over_e;
            r.n_upper = stable_floor(h * log_term / eps);
            r.upper_formula = "hedged_h_of_p";
            break;
        case HedgeSpec::Kind::Explicit:
            p = hedge.p;
            h = h_value(p, nu);
            r.n_upper = stable_floor(h * log_term / eps);
            r.upper_formula = "hedged_h_of_p";
            break;
    }
    r.extras.push_back({"p", p});
    r.extras.push_back({"h", h});
    if (hedge.kind != HedgeSpec::Kind::Explicit) {
        r.extras.push_back({"bound_quadratic", log_term / ((1 - v + v * v / e) * v * eps)});
        r.extras.push_back({"bound_linear", (1 + e * v - v) * log_term / (v * eps)});
        r.extras.push_back({"bound_e", e * log_term / (v * eps)});
        if (mp::numerator(nu) == 1) {
            Real m = to_real(BigInt(mp::denominator(nu)));
            r.extras.push_back({"bound_coloring", (m + e - 1) * log_term / eps});
        }
    }
    return r;
}

CountReport tests_for_scenario(Scenario s, const Rational &nu, const PrecisionTarget &t, const HedgeSpec &hedge) {
    switch (s) {
        case Scenario::Nonadversarial: return tests_nonadversarial(nu, t);
        case Scenario::Adversarial: return tests_adversarial(nu, t);
        case Scenario::AdversarialHedged: return tests_adversarial_hedged(nu, t, hedge);
    }
    fail(ErrorCode::Internal, "unknown scenario");
}

CountReport gme_tests(int k, const Rational &nu, const Rational &delta, Scenario s) {
    if (k < 2) fail(ErrorCode::BadOrder, "GME certification needs hypergraph order k >= 2");
    if (k > 4000) fail(ErrorCode::BadOrder, "hypergraph order too large");
    Rational eps(BigInt(1), BigInt(1) << (k - 1));
    CountReport r = tests_for_scenario(s, nu, PrecisionTarget{eps, delta});
    r.extras.push_back({"epsilon", to_real(eps)});
    return r;
}

Rational infidelity_for_trace_distance(const Rational &trace_distance) {
    if (trace_distance <= 0 || trace_distance >= 1) fail(ErrorCode::BadParams, "trace distance must lie in (0, 1)");
    return trace_distance * trace_distance;
}

std::pair<Real, Real> trace_distance_bracket(const Real &fidelity) {
    if (fidelity < 0 || fidelity > 1) fail(ErrorCode::BadParams, "fidelity must lie in [0, 1]");
    return {1 - mp::sqrt(fidelity), mp::sqrt(1 - fidelity)};
}

CountReport supremacy_budget(int n, const Rational &delta, int m) {
    if (n < 1) fail(ErrorCode::BadParams, "n must be positive");
    if (m < 2) fail(ErrorCode::BadParams, "need at least 2 colors");
    PrecisionTarget t{infidelity_for_trace_distance(Rational(1, 192)), delta};
    CountReport r = tests_adversarial_hedged(Rational(1, m), t, HedgeSpec::automatic());
    Real coefficient = log_inv_f_delta(t) / to_real(t.epsilon);
    r.extras.push_back({"epsilon", to_real(t.epsilon)});
    r.extras.push_back({"per_qubit_coefficient", coefficient});
    r.extras.push_back({"tests_per_qubit", to_real(r.tests()) / n});
    return r;
}

}  // namespace hgv
