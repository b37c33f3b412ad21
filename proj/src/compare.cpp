#include "hgv/compare.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <boost/multiprecision/integer.hpp>

#include "hgv/error.hpp"
#include "hgv/oracle.hpp"
#include "hgv/protocol.hpp"

namespace hgv {

namespace {

namespace mp = boost::multiprecision;

const Real &ln2() {
    static const Real value = mp::log(Real(2));
    return value;
}

// Conversion that stays cheap for integers with hundreds of thousands of bits.
Real big_to_real(const BigInt &value) {
    if (value <= 0) return to_real(value);
    const long bits = static_cast<long>(mp::msb(value));
    if (bits < 512) return to_real(value);
    const long shift = bits - 256;
    return mp::ldexp(to_real(BigInt(value >> shift)), static_cast<int>(shift));
}

Real ln_inv(const Rational &x) { return -mp::log(to_real(x)); }

std::string real_text(const Real &value) { return scientific(value, 10); }

void echo(CompetitorCost &cost, std::string name, std::string value) {
    cost.inputs.emplace_back(std::move(name), std::move(value));
}

void echo_target(CompetitorCost &cost, const PrecisionTarget &t) {
    echo(cost, "epsilon", to_string(t.epsilon));
    echo(cost, "delta", to_string(t.delta));
}

void set_exact(CompetitorCost &cost, const BigInt &n) {
    cost.n_exact = n;
    cost.n = big_to_real(n);
    cost.bound_kind = BoundKind::Exact;
}

BigInt ipow(long base, unsigned exponent) { return mp::pow(BigInt(base), exponent); }

}  // namespace

std::string to_string(BoundKind kind) {
    switch (kind) {
    case BoundKind::Exact: return "exact";
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Approximate: return "approximate";
    }
    return "exact";
}

const Real *CompetitorCost::extra(std::string_view name) const {
    for (const NamedValue &v : extras) {
        if (v.name == name) return &v.value;
    }
    return nullptr;
}

CompetitorCost dfe_cost(const BigInt &g, int n, const PrecisionTarget &t) {
    validate_target(t);
    if (n < 1) fail(ErrorCode::BadParams, "DFE needs n >= 1");
    const BigInt dim = BigInt(1) << n;
    if (g < dim) fail(ErrorCode::BadSupport, "support size " + g.str() + " is below 2^n = " + dim.str());

    CompetitorCost cost;
    cost.protocol = "dfe";
    const Real eps = to_real(t.epsilon);
    const Real delta = to_real(t.delta);
    const Real g_tilde = big_to_real(g) / big_to_real(dim);
    cost.n = 1 + 1 / (eps * eps * delta) + 2 * g_tilde * mp::log(2 / delta) / (eps * eps);
    cost.bound_kind = BoundKind::Approximate;
    cost.settings_exact = ceil_rational(Rational(1) / (t.epsilon * t.epsilon * t.delta));
    cost.settings = big_to_real(*cost.settings_exact);
    cost.settings_kind = BoundKind::Approximate;
    echo(cost, "n", std::to_string(n));
    echo_target(cost, t);
    echo(cost, "g", g.str());
    cost.extras.push_back({"g_tilde", g_tilde});
    return cost;
}

std::string to_string(MthVariant v) { return v == MthVariant::Original ? "original" : "adapted"; }

MthVariant parse_mth_variant(std::string_view text) {
    if (text == "original") return MthVariant::Original;
    if (text == "adapted" || text == "nonadversarial_bound") return MthVariant::Adapted;
    fail(ErrorCode::BadParams, "MTH variant must be 'original' or 'adapted'");
}

std::vector<int> mth_r(const Hypergraph &hg) {
    if (hg.dim() != 2) fail(ErrorCode::NotQubit, "MTH applies to qubit hypergraph states");
    if (hg.order() > 3) fail(ErrorCode::OrderTooHigh, "MTH handles hyperedges of order at most 3");
    std::vector<int> r(hg.num_vertices(), 0);
    for (const Edge &e : hg.edges()) {
        if (e.vertices.size() != 3) continue;
        for (Vertex v : e.vertices) ++r[v];
    }
    return r;
}

BigInt power_sum(const std::vector<int> &r, int base_log2) {
    BigInt sum = 0;
    for (int rj : r) sum += BigInt(1) << (base_log2 * rj);
    return sum;
}

Real mth_adapted_bound(const BigInt &sum_pow2, const PrecisionTarget &t) {
    validate_target(t);
    // Log domain: the square of sum 2^{r_j} can have millions of bits.
    const Real eps = to_real(t.epsilon);
    const Real log_sum = mp::log(big_to_real(sum_pow2));
    return mp::exp(2 * log_sum) * ln_inv(t.delta) / (2 * eps * eps);
}

CompetitorCost mth_cost(const Hypergraph &hg, const PrecisionTarget &t, MthVariant variant) {
    validate_target(t);
    CompetitorCost cost;
    cost.protocol = "mth";
    cost.r = mth_r(hg);
    const int n = hg.num_vertices();
    const BigInt sum2 = power_sum(cost.r, 1);
    const BigInt sum4 = power_sum(cost.r, 2);
    const int r_max = cost.r.empty() ? 0 : *std::max_element(cost.r.begin(), cost.r.end());

    if (variant == MthVariant::Adapted) {
        cost.n = mth_adapted_bound(sum2, t);
    } else {
        cost.n = mp::ldexp(Real(1), 4 * r_max + 7) * ln2() * mp::pow(Real(n), 21);
    }
    cost.bound_kind = BoundKind::Lower;
    cost.settings_exact = sum4;
    cost.settings = big_to_real(sum4);
    cost.settings_kind = BoundKind::Exact;
    echo(cost, "n", std::to_string(n));
    echo_target(cost, t);
    echo(cost, "variant", to_string(variant));
    echo(cost, "r_max", std::to_string(r_max));
    echo(cost, "sum_2_pow_r", sum2.str());
    echo(cost, "sum_4_pow_r", sum4.str());
    return cost;
}

std::optional<BigInt> mth_power_sum_closed_form(std::string_view family, int param) {
    if (family == "cluster3-1d") {
        if (param < 3) fail(ErrorCode::BadParams, "cluster3-1d needs n >= 3");
        return param == 3 ? BigInt(6) : BigInt(8 * param - 20);
    }
    if (family == "union-jack-chain") {
        if (param < 1) fail(ErrorCode::BadParams, "union-jack-chain needs at least one cell");
        const long n = 3L * param + 2;
        return BigInt(16 * n - 48);
    }
    if (family == "union-jack-lattice") {
        if (param < 1) fail(ErrorCode::BadParams, "union-jack-lattice needs at least one cell");
        const long c = param;
        return BigInt(16 * (17 * c * c - 28 * c + 13));
    }
    if (family == "complete-order3") {
        if (param < 3) fail(ErrorCode::BadParams, "complete-order3 needs n >= 3");
        const long n = param;
        return BigInt(n) << ((n - 1) * (n - 2) / 2);
    }
    if (family == "disjoint-triples") {
        if (param < 3 || param % 3 != 0) fail(ErrorCode::BadParams, "disjoint-triples needs n divisible by 3");
        return BigInt(2 * param);
    }
    return std::nullopt;
}

CompetitorCost tm_cost(int n, const BigInt &k) {
    if (n < 1) fail(ErrorCode::BadParams, "TM needs n >= 1");
    const BigInt k_min = ipow(4L * n, 7);
    if (k < k_min) fail(ErrorCode::BadParams, "TM needs k >= (4n)^7 = " + k_min.str());

    CompetitorCost cost;
    cost.protocol = "tm";
    const Real kr = big_to_real(k);
    const Real nr(n);
    cost.n = 2 * ln2() * nr * nr * nr * mp::pow(kr, Real(18) / 7) + nr * kr;
    cost.bound_kind = BoundKind::Lower;
    const Real eps = mp::pow(kr, Real(-1) / 7);
    echo(cost, "n", std::to_string(n));
    echo(cost, "k", k.str());
    cost.extras.push_back({"epsilon", eps});
    cost.extras.push_back({"delta", eps});
    return cost;
}

CompetitorCost hh_cost(int m, const PrecisionTarget &t) {
    validate_target(t);
    if (m < 2) fail(ErrorCode::BadParams, "HH needs m >= 2 colors");
    CompetitorCost cost;
    cost.protocol = "hh";
    set_exact(cost, ceil_rational(Rational(BigInt(m) * m * m) / (t.delta * t.epsilon)));
    echo(cost, "m", std::to_string(m));
    echo_target(cost, t);
    const BigInt hedged = tests_adversarial_hedged(Rational(1, m), t).tests();
    cost.extras.push_back({"hedged_coloring_N", big_to_real(hedged)});
    cost.extras.push_back({"ratio_to_hedged", cost.n / big_to_real(hedged)});
    return cost;
}

CompetitorCost plm_cost(int n, const PrecisionTarget &t) {
    validate_target(t);
    if (n < 1 || n > 4096) fail(ErrorCode::BadParams, "PLM needs 1 <= n <= 4096");
    const SpectralSummary s = plm_summary(n);
    CompetitorCost cost;
    cost.protocol = "plm";
    set_exact(cost, *tests_nonadversarial(s.nu, t).n_exact);
    cost.settings_exact = (BigInt(1) << n) - 1;
    cost.settings = big_to_real(*cost.settings_exact);
    cost.settings_kind = BoundKind::Exact;
    echo(cost, "n", std::to_string(n));
    echo_target(cost, t);
    echo(cost, "nu", to_string(s.nu));
    echo(cost, "tau", to_string(s.tau));
    const Real approx = mp::ceil(ln_inv(t.delta) / (to_real(s.nu) * to_real(t.epsilon)));
    cost.extras.push_back({"approx_N", approx});
    return cost;
}

CompetitorCost tmmmf_cost(int n, const Rational &c, int m) {
    if (n < 2) fail(ErrorCode::BadParams, "TMMMF needs n >= 2");
    if (m < 2) fail(ErrorCode::BadParams, "hedged comparison needs m >= 2 colors");
    const Rational c_min(64, 5);
    const Rational c_max = Rational(BigInt(n - 1) * (n - 1), 4);
    if (!(c > c_min && c < c_max)) {
        fail(ErrorCode::BadParams, "TMMMF needs 64/5 < c < (n-1)^2/4 = " + to_string(c_max));
    }
    CompetitorCost cost;
    cost.protocol = "tmmmf";
    const Real nr(n);
    const BigInt per_round = stable_ceil(5 * mp::pow(nr, 4) * mp::log(nr) / 32);
    set_exact(cost, 2 * BigInt(n) * per_round);

    const Real cr = to_real(c);
    const Real eps = (2 * mp::sqrt(cr) + 1) / nr;
    const Real delta = mp::pow(nr, 1 - 5 * cr / 64);
    echo(cost, "n", std::to_string(n));
    echo(cost, "c", to_string(c));
    echo(cost, "m", std::to_string(m));
    cost.extras.push_back({"epsilon", eps});
    cost.extras.push_back({"delta", delta});

    const Real h_star = hedging_params(Rational(1, m)).h_star;
    const Real hedged = h_star * -mp::log((1 - eps) * delta) / eps;
    cost.extras.push_back({"hedged_coloring_N", Real(stable_floor(hedged).str())});
    return cost;
}

namespace {

void push_cost(std::vector<FigureRow> &rows, int n, std::string protocol, const CompetitorCost &cost) {
    rows.push_back({n, std::move(protocol), cost.n, cost.n_exact, cost.bound_kind});
}

void fig2_family(std::vector<FigureRow> &rows, const std::string &name, int param, const PrecisionTarget &t,
                 const BigInt &cover) {
    const int p[] = {param};
    const Hypergraph hg = family(name, p);
    const int n = hg.num_vertices();
    rows.push_back({n, name + "/cover", big_to_real(cover), cover, BoundKind::Exact});
    push_cost(rows, n, name + "/dfe", dfe_cost(char_support_rank(hg), n, t));
    push_cost(rows, n, name + "/mth", mth_cost(hg, t, MthVariant::Adapted));
}

}  // namespace

std::vector<FigureRow> figure_series(int figure, int n_min, int n_max) {
    if (figure != 2 && figure != 3) fail(ErrorCode::BadParams, "figure must be 2 or 3");
    if (n_min < 3 || n_max < n_min) fail(ErrorCode::BadParams, "need 3 <= n_min <= n_max");
    std::vector<FigureRow> rows;
    if (figure == 2) {
        if (n_max > 24) fail(ErrorCode::BadParams, "figure 2 counts DFE supports exactly and needs n_max <= 24");
        const PrecisionTarget t{Rational(1, 100), Rational(1, 20)};
        // Both families are 3-colorable: nu = 1/3.
        const BigInt cover = *tests_nonadversarial(Rational(1, 3), t).n_exact;
        for (int n = n_min; n <= n_max; ++n) fig2_family(rows, "cluster3-1d", n, t, cover);
        for (int cells = 1; 3 * cells + 2 <= n_max; ++cells) {
            if (3 * cells + 2 >= n_min) fig2_family(rows, "union-jack-chain", cells, t, cover);
        }
        return rows;
    }
    if (n_max > 100000) fail(ErrorCode::BadParams, "figure 3 supports n <= 100000");
    for (int n = n_min; n <= n_max; ++n) {
        const PrecisionTarget t{Rational(1, 4 * n), Rational(1, 4 * n)};
        const CountReport cover = tests_adversarial(Rational(1, 3), t);
        rows.push_back({n, "cover", big_to_real(*cover.n_upper), cover.n_upper,
                        cover.n_exact ? BoundKind::Exact : BoundKind::Upper});
        const BigInt hedged = *tests_adversarial_hedged(Rational(1, 3), t).n_exact;
        rows.push_back({n, "hcover", big_to_real(hedged), hedged, BoundKind::Exact});
        push_cost(rows, n, "tm", tm_cost(n, ipow(4L * n, 7)));
    }
    return rows;
}

std::string format_count(const Real &value, const std::optional<BigInt> &exact) {
    if (exact) return exact->str();
    return real_text(value);
}

std::string figure_csv(const std::vector<FigureRow> &rows) {
    std::ostringstream out;
    out << "n,protocol,N,bound_kind\n";
    for (const FigureRow &row : rows) {
        out << row.n << ',' << row.protocol << ',' << format_count(row.value, row.exact) << ','
            << to_string(row.kind) << '\n';
    }
    return out.str();
}

Json competitor_cost_json(const CompetitorCost &cost) {
    Json j;
    j["protocol"] = cost.protocol;
    if (cost.n_exact && *cost.n_exact <= BigInt(std::numeric_limits<std::int64_t>::max())) {
        j["N"] = to_int64(*cost.n_exact);
    } else if (cost.n < Real(std::numeric_limits<double>::max())) {
        j["N"] = json_number(cost.n);
    } else {
        j["N"] = nullptr;
    }
    j["N_decimal"] = cost.n_exact ? cost.n_exact->str() : decimal_integer(cost.n);
    j["N_scientific"] = real_text(cost.n);
    j["bound_kind"] = to_string(cost.bound_kind);
    if (cost.settings) {
        j["settings"] = format_count(*cost.settings, cost.settings_exact);
        j["settings_kind"] = to_string(cost.settings_kind);
    }
    Json inputs = Json::object();
    for (const auto &[name, value] : cost.inputs) inputs[name] = value;
    j["inputs"] = inputs;
    if (!cost.r.empty()) j["r"] = cost.r;
    Json extras = Json::object();
    for (const NamedValue &v : cost.extras) extras[v.name] = real_text(v.value);
    j["extras"] = extras;
    return j;
}

}  // namespace hgv
