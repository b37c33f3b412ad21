#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgv/counts.hpp"
#include "hgv/hypergraph.hpp"
#include "hgv/json_io.hpp"
#include "hgv/numeric.hpp"

namespace hgv {

/// How a reported number relates to the true cost of a protocol.
enum class BoundKind { Exact, Lower, Upper, Approximate };

std::string to_string(BoundKind kind);

/// Cost of a competing verification protocol. `n` is the number of tests;
/// `n_exact` is set when that number is an integer known exactly.
struct CompetitorCost {
    std::string protocol;
    Real n = 0;
    std::optional<BigInt> n_exact;
    BoundKind bound_kind = BoundKind::Exact;
    std::optional<Real> settings;
    std::optional<BigInt> settings_exact;
    BoundKind settings_kind = BoundKind::Exact;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<NamedValue> extras;
    std::vector<int> r;  ///< MTH only: order-3 edges through each vertex

    const Real *extra(std::string_view name) const;
};

/// Direct fidelity estimation: N ~ 1 + 1/(eps^2 delta) + 2 (g/2^n) ln(2/delta)/eps^2
/// with ceil(1/(eps^2 delta)) settings. Throws BadSupport when g < 2^n.
CompetitorCost dfe_cost(const BigInt &g, int n, const PrecisionTarget &t);

enum class MthVariant { Original, Adapted };

std::string to_string(MthVariant v);
MthVariant parse_mth_variant(std::string_view text);

/// Per-vertex count of order-3 edges; throws OrderTooHigh above order 3 and
/// NotQubit for d != 2.
std::vector<int> mth_r(const Hypergraph &hg);
BigInt power_sum(const std::vector<int> &r, int base_log2);

/// Adapted: N >= (sum 2^{r_j})^2 ln(1/delta) / (2 eps^2).
/// Original: N >= 2^{4r+7} ln 2 n^21 with r = max r_j (independent of eps, delta).
/// Settings are sum 4^{r_j} in both cases.
CompetitorCost mth_cost(const Hypergraph &hg, const PrecisionTarget &t, MthVariant variant = MthVariant::Adapted);

/// Adapted bound from a precomputed sum 2^{r_j}; used where the hypergraph is
/// too large to build.
Real mth_adapted_bound(const BigInt &sum_pow2, const PrecisionTarget &t);

/// sum_j 2^{r_j} in closed form for cluster3-1d(n), union-jack-chain(cells),
/// union-jack-lattice(cells), complete-order3(n) and disjoint-triples(n);
/// nullopt for other families.
std::optional<BigInt> mth_power_sum_closed_form(std::string_view family, int param);

/// N >= 2 ln 2 n^3 k^{18/7} + n k with eps = delta = k^{-1/7}; needs k >= (4n)^7.
CompetitorCost tm_cost(int n, const BigInt &k);

/// ceil(m^3/(delta eps)), with the hedged coloring count for comparison.
CompetitorCost hh_cost(int m, const PrecisionTarget &t);

/// Uniform measurement of all 2^n - 1 nontrivial stabilizers of a graph state.
CompetitorCost plm_cost(int n, const PrecisionTarget &t);

/// 2n ceil(5 n^4 ln n / 32) tests at eps = (2 sqrt c + 1)/n and
/// delta = n^{1 - 5c/64}, for 64/5 < c < (n-1)^2/4. The hedged coloring count
/// with m colors at the same eps and delta is attached as an extra.
CompetitorCost tmmmf_cost(int n, const Rational &c, int m = 3);

struct FigureRow {
    int n = 0;
    std::string protocol;  ///< "<family>/<protocol>" for figure 2
    Real value = 0;
    std::optional<BigInt> exact;
    BoundKind kind = BoundKind::Exact;
};

/// Figure 2: nonadversarial costs at eps = 0.01, delta = 0.05 for cluster3-1d
/// and union-jack-chain (cover, dfe, mth). Figure 3: adversarial costs at
/// eps = delta = 1/(4n) for 3-colorable states (cover, hcover, tm).
/// Figure 2 needs n_max <= 24 because DFE support sizes are counted exactly.
std::vector<FigureRow> figure_series(int figure, int n_min, int n_max);

/// Header `n,protocol,N,bound_kind`; exact values in full decimal, bounds in
/// scientific notation.
std::string figure_csv(const std::vector<FigureRow> &rows);

Json competitor_cost_json(const CompetitorCost &cost);
/// Full decimal when exact, otherwise scientific notation.
std::string format_count(const Real &value, const std::optional<BigInt> &exact);

}  // namespace hgv
