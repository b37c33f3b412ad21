#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hgv/covers.hpp"
#include "hgv/hypergraph.hpp"
#include "hgv/numeric.hpp"

namespace hgv {

/// How the trivial (always-pass) test probability p is chosen.
struct HedgeSpec {
    enum class Kind { None, Auto, NuOverE, Explicit };
    Kind kind = Kind::None;
    Real p = 0;  ///< used by Explicit only

    static HedgeSpec none() { return {}; }
    static HedgeSpec automatic() { return {Kind::Auto, 0}; }
    static HedgeSpec nu_over_e() { return {Kind::NuOverE, 0}; }
    static HedgeSpec explicit_p(const Real &p) { return {Kind::Explicit, p}; }
};

/// Cover protocol Omega_p = (1-p) sum_l mu_l P_l + p.
struct ProtocolSpec {
    Hypergraph hg;
    WeightedCover cover;
    Real hedge_p = 0;
};

/// Validates the cover and resolves the hedge probability (Auto -> p*(nu)).
ProtocolSpec make_protocol(Hypergraph hg, const WeightedCover &cover, const HedgeSpec &hedge = {});

struct SpectralSummary {
    Rational nu;
    Rational beta;
    Rational tau;
    Real p = 0;
    Real nu_p;
    Real beta_p;
    Real tau_p;
};

/// Unhedged values are exact; the hedged triple follows beta_p = 1 - nu + p nu,
/// tau_p = p.
SpectralSummary spectral_summary(const ProtocolSpec &spec);
SpectralSummary hedged_summary(const Rational &nu, const Rational &beta, const Rational &tau, const Real &p);

struct TestOutcome {
    int set_index = -1;
    std::vector<int> outcome;
    std::vector<std::pair<Vertex, int>> syndrome;  ///< (i, t_i mod d) for i in A
    bool passed = true;
};

/// t_i = o_i + sum_{e containing i} m_e prod_{k in e, k != i} o_k (mod d), for
/// i in A; passes iff every t_i is 0. With `neighborhood_only`, entries of o
/// outside A and its neighborhood are ignored and may hold any value.
TestOutcome classify_outcome(const Hypergraph &hg, const VertexSet &set, std::span<const int> outcome,
                             bool neighborhood_only = false);

/// lambda_x = sum of mu_l over sets disjoint from supp(x). Only the support of
/// x matters; any nonzero entry counts.
Rational eigenvalue_at(const ProtocolSpec &spec, std::span<const int> x);
Real hedged_eigenvalue(const Rational &lambda, const Real &p);

struct SpectrumEntry {
    Rational value;  ///< unhedged eigenvalue
    BigInt multiplicity;
};

/// Full spectrum over supports, sorted by decreasing eigenvalue; the support S
/// contributes multiplicity (d-1)^{|S|}. Requires n <= max_n.
std::vector<SpectrumEntry> full_spectrum(const ProtocolSpec &spec, int max_n = 24);

struct HedgeParams {
    Real p_star;
    Real h_star;
    Real p_nu_over_e;
    Real h_nu_over_e;
};

/// h(p, nu) = 1 / min{beta_p ln(1/beta_p), p ln(1/p)}.
Real h_value(const Real &p, const Rational &nu);

/// p*(nu): smallest p > 0 with p ln(1/p) >= beta_p ln(1/beta_p), located by a
/// scan plus bisection to 1e-30; h* = -1/(p* ln p*). At nu = 1 the condition
/// holds identically and p* = 1/e, the minimizer of h(p, 1).
HedgeParams hedging_params(const Rational &nu);

/// Spectral data of the protocol measuring all 2^n - 1 nontrivial stabilizers
/// uniformly: every nontarget eigenvalue equals (2^{n-1}-1)/(2^n-1).
SpectralSummary plm_summary(int n);

}  // namespace hgv
