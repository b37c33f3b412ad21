#include "hgv/cli.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hgv/compare.hpp"
#include "hgv/counts.hpp"
#include "hgv/covers.hpp"
#include "hgv/error.hpp"
#include "hgv/json_io.hpp"
#include "hgv/oracle.hpp"
#include "hgv/protocol.hpp"
#include "hgv/simulate.hpp"

namespace hgv::cli {

namespace {

/// Where the hypergraph comes from: a file (text, JSON, or a protocol JSON)
/// or a named family.
struct InputOptions {
    std::string path;
    std::string family;
    std::vector<int> params;
    int dim = 2;
};

struct ProtocolOptions {
    std::string cover = "chromatic";
    std::string hedge = "none";
};

void add_input(CLI::App *cmd, InputOptions &in) {
    cmd->add_option("input", in.path, "hypergraph file (text or JSON) or protocol JSON");
    cmd->add_option("--family", in.family, "named family instead of a file");
    cmd->add_option("--param", in.params, "family parameters")->delimiter(',');
    cmd->add_option("--dim", in.dim, "local dimension for --family");
}

void add_protocol(CLI::App *cmd, ProtocolOptions &p) {
    cmd->add_option("--cover", p.cover, "greedy, chromatic, gamma, or a cover JSON file");
    cmd->add_option("--hedge", p.hedge, "none, auto, nu/e, or a probability");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::optional<nlohmann::json> protocol_document(const std::string &path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') return std::nullopt;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (j.contains("hypergraph") || j.contains("hypergraph_file")) return j;
    return std::nullopt;
}

std::string directory_of(const std::string &path) {
    auto dir = std::filesystem::path(path).parent_path();
    return dir.empty() ? "." : dir.string();
}

Hypergraph load_hypergraph(const InputOptions &in) {
    if (!in.family.empty()) {
        if (!in.path.empty()) fail(ErrorCode::BadParams, "give either an input file or --family, not both");
        return family(in.family, in.params, in.dim);
    }
    if (in.path.empty()) fail(ErrorCode::BadParams, "missing input file (or --family)");
    if (auto doc = protocol_document(in.path)) return protocol_from_json(*doc, directory_of(in.path)).hg;
    return load_hypergraph_file(in.path);
}

bool is_cover_keyword(const std::string &cover) {
    return cover == "greedy" || cover == "chromatic" || cover == "gamma";
}

WeightedCover resolve_cover(const Hypergraph &hg, const std::string &cover) {
    if (cover == "greedy") return uniform_cover(greedy_coloring(hg));
    if (cover == "chromatic") {
        ExactInvariants inv = exact_invariants(hg);
        return uniform_cover(inv.coloring);
    }
    if (cover == "gamma") return independence_degree(hg).witness;
    return load_cover_file(cover);
}

ProtocolSpec load_protocol(const InputOptions &in, const ProtocolOptions &p, const CLI::App *cmd) {
    if (in.family.empty() && !in.path.empty()) {
        if (auto doc = protocol_document(in.path)) {
            // Command-line flags override the document.
            if (cmd->count("--cover")) {
                if (is_cover_keyword(p.cover)) {
                    (*doc)["cover"] = p.cover;
                } else {
                    (*doc)["cover"] = cover_to_json(load_cover_file(p.cover));
                }
            }
            if (cmd->count("--hedge")) (*doc)["hedge"] = p.hedge;
            return protocol_from_json(*doc, directory_of(in.path));
        }
    }
    Hypergraph hg = load_hypergraph(in);
    WeightedCover cover = resolve_cover(hg, p.cover);
    return make_protocol(std::move(hg), cover, parse_hedge(p.hedge));
}

PrecisionTarget target(const std::string &eps, const std::string &delta) {
    PrecisionTarget t{parse_rational(eps), parse_rational(delta)};
    validate_target(t);
    return t;
}

Json big_json(const BigInt &value) {
    if (value <= BigInt(std::numeric_limits<std::int64_t>::max()) && value >= 0) return Json(to_int64(value));
    return Json(value.str());
}

Json extras_json(const std::vector<NamedValue> &extras) {
    Json j = Json::object();
    for (const NamedValue &v : extras) j[v.name] = json_number(v.value);
    return j;
}

Json count_json(const CountReport &r) {
    Json j;
    if (r.n_exact) {
        j["N_exact"] = big_json(*r.n_exact);
        j["N_exact_formula"] = r.exact_formula;
    }
    if (r.n_upper) {
        j["N_upper"] = big_json(*r.n_upper);
        j["N_upper_formula"] = r.upper_formula;
    }
    if (r.n_lower) {
        j["N_lower"] = big_json(*r.n_lower);
        j["N_lower_formula"] = r.lower_formula;
    }
    const BigInt n = r.tests();
    j["N"] = big_json(n);
    j["N_scientific"] = scientific(to_real(n), 10);
    j["scenario"] = to_string(r.scenario);
    j["extras"] = extras_json(r.extras);
    return j;
}

Json summary_json(const SpectralSummary &s) {
    return Json{{"nu", to_string(s.nu)},
                {"beta", to_string(s.beta)},
                {"tau", to_string(s.tau)},
                {"p", json_number(s.p)},
                {"nu_p", json_number(s.nu_p)},
                {"beta_p", json_number(s.beta_p)},
                {"tau_p", json_number(s.tau_p)}};
}

Json coloring_json(const Coloring &c) { return Json(c.classes); }

Json gamma_json(const GammaResult &g) {
    return Json{{"gamma", to_string(g.gamma)},
                {"chi_f", to_string(g.chi_f)},
                {"method", to_string(g.method)},
                {"columns", g.columns},
                {"pivots", g.pivots},
                {"witness", cover_to_json(g.witness)}};
}

GammaMethod parse_method(const std::string &text) {
    if (text == "enumerate") return GammaMethod::Enumerate;
    if (text == "column") return GammaMethod::ColumnGeneration;
    fail(ErrorCode::BadParams, "method must be 'enumerate' or 'column'");
}

Json analyze(const Hypergraph &hg, GammaMethod method) {
    const StructureReport s = structure(hg);
    const ExactInvariants inv = exact_invariants(hg);
    Json j;
    j["vertices"] = hg.num_vertices();
    j["dim"] = hg.dim();
    j["edges"] = hg.edges().size();
    j["order"] = s.order;
    j["max_degree"] = s.max_degree;
    j["components"] = s.components.size();
    j["clique"] = inv.clique;
    j["alpha"] = inv.alpha;
    j["chi"] = inv.chi;
    j["chi_lower"] = inv.chi_lower;
    j["chi_exact"] = inv.chi_exact;
    j["greedy_colors"] = greedy_coloring(hg).num_colors();
    try {
        const GammaResult g = independence_degree(hg, method);
        j["gamma"] = to_string(g.gamma);
        j["chi_f"] = to_string(g.chi_f);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        j["gamma"] = nullptr;
        j["chi_f"] = nullptr;
    }
    return j;
}

Json oracle_check(const ProtocolSpec &spec, const std::string &check, double eps) {
    Json j;
    j["check"] = check;
    if (check == "spectrum") {
        const OmegaDense dense = omega_dense(spec);
        const std::vector<SpectrumEntry> analytic = full_spectrum(spec);
        const SpectrumMatch match = compare_spectrum(analytic, spec.hedge_p, dense.eigenvalues);
        j["ok"] = match.ok && dense.traces_ok && dense.hermitian;
        j["max_error"] = match.max_error;
        j["traces_ok"] = dense.traces_ok;
        j["hermitian"] = dense.hermitian;
        if (!match.detail.empty()) j["detail"] = match.detail;
        Json spectrum = Json::array();
        for (const SpectrumEntry &e : analytic) {
            spectrum.push_back({{"value", to_string(e.value)},
                                {"hedged", json_number(hedged_eigenvalue(e.value, spec.hedge_p))},
                                {"multiplicity", big_json(e.multiplicity)}});
        }
        j["spectrum"] = spectrum;
    } else if (check == "kappa") {
        const int k = spec.hg.order();
        j["kappa"] = kappa(spec.hg);
        if (spec.hg.dim() == 2 && k >= 1) j["bound"] = 1.0 - std::ldexp(1.0, 1 - k);
    } else if (check == "gsupport") {
        const CharSupport cs = char_support(spec.hg);
        const int n = spec.hg.num_vertices();
        j["g"] = big_json(cs.g);
        j["g_tilde"] = json_number(to_real(cs.g) / to_real(BigInt(1) << n));
        j["min_nonzero"] = cs.min_nonzero;
        if (spec.hg.order() <= 3) j["g_rank"] = big_json(char_support_rank(spec.hg));
        if (auto g = char_support_analytic(spec.hg)) j["g_analytic"] = big_json(*g);
    } else if (check == "worstcase") {
        const WorstCase wc = worst_case_state(spec, eps);
        j["epsilon"] = eps;
        j["vertex"] = wc.vertex;
        j["pass_probability"] = wc.pass_probability;
        j["expected"] = wc.expected;
        j["fidelity"] = wc.fidelity;
        j["ok"] = std::abs(wc.pass_probability - wc.expected) <= 1e-10;
    } else {
        fail(ErrorCode::BadParams, "check must be spectrum, kappa, gsupport or worstcase");
    }
    return j;
}

Json error_json(std::string_view code, const std::string &message) {
    return Json{{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hypergraph state verification toolkit", "hgv"};
    app.require_subcommand(1);

    InputOptions in;
    ProtocolOptions proto;
    std::string method = "enumerate";
    std::string color_mode = "exact";
    bool with_spectrum = false;
    std::string eps, delta, nu_text;
    std::string scenario_text = "nonadversarial";
    std::optional<int> gme_k;
    std::optional<int> supremacy_n;
    int colors = 3;
    std::string check;
    double check_eps = 0.05;
    std::vector<std::string> noise{"target"};
    std::optional<long> tests;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string trace_path;
    std::string against;
    std::optional<int> n_opt;
    std::string g_text, k_text, c_text;
    std::string variant = "adapted";
    int which = 2;
    int n_min = 3;
    std::optional<int> n_max;
    std::string format;

    auto *analyze_cmd = app.add_subcommand("analyze", "structure and graph invariants");
    add_input(analyze_cmd, in);
    analyze_cmd->add_option("--method", method, "enumerate or column");

    auto *color_cmd = app.add_subcommand("color", "vertex coloring");
    add_input(color_cmd, in);
    color_cmd->add_option("--mode", color_mode, "greedy or exact");

    auto *gamma_cmd = app.add_subcommand("gamma", "independence degree and optimal cover");
    add_input(gamma_cmd, in);
    gamma_cmd->add_option("--method", method, "enumerate or column");

    auto *protocol_cmd = app.add_subcommand("protocol", "spectral summary of a cover protocol");
    add_input(protocol_cmd, in);
    add_protocol(protocol_cmd, proto);
    protocol_cmd->add_flag("--spectrum", with_spectrum, "include the full spectrum");

    auto *counts_cmd = app.add_subcommand("counts", "number of tests");
    add_input(counts_cmd, in);
    add_protocol(counts_cmd, proto);
    counts_cmd->add_option("--nu", nu_text, "spectral gap (otherwise taken from the protocol)");
    counts_cmd->add_option("--eps", eps, "infidelity");
    counts_cmd->add_option("--delta", delta, "significance level")->required();
    counts_cmd->add_option("--scenario", scenario_text, "nonadversarial, adversarial or hedged");
    counts_cmd->add_option("--gme", gme_k, "certify GME for a connected order-K state");
    counts_cmd->add_option("--supremacy", supremacy_n, "qubit count for the supremacy budget");
    counts_cmd->add_option("--m", colors, "colors for --supremacy");

    auto *oracle_cmd = app.add_subcommand("oracle", "brute-force checks");
    add_input(oracle_cmd, in);
    add_protocol(oracle_cmd, proto);
    oracle_cmd->add_option("--check", check, "spectrum, kappa, gsupport or worstcase")->required();
    oracle_cmd->add_option("--eps", check_eps, "infidelity for worstcase");

    auto *simulate_cmd = app.add_subcommand("simulate", "sample verification runs");
    add_input(simulate_cmd, in);
    add_protocol(simulate_cmd, proto);
    simulate_cmd->add_option("--noise", noise, "noise model per run, repeated cyclically");
    simulate_cmd->add_option("--tests", tests, "number of tests (default from the scenario)");
    simulate_cmd->add_option("--seed", seed, "master seed");
    simulate_cmd->add_option("--threads", threads, "worker threads");
    simulate_cmd->add_option("--trace", trace_path, "write a per-test CSV trace");
    simulate_cmd->add_option("--eps", eps, "infidelity")->required();
    simulate_cmd->add_option("--delta", delta, "significance level")->required();
    simulate_cmd->add_option("--scenario", scenario_text, "nonadversarial, adversarial or hedged");

    auto *compare_cmd = app.add_subcommand("compare", "cost of competing protocols");
    add_input(compare_cmd, in);
    compare_cmd->add_option("--against", against, "dfe, mth, tm, hh, plm or tmmmf")->required();
    compare_cmd->add_option("--n", n_opt, "number of qubits");
    compare_cmd->add_option("--g", g_text, "characteristic support size (dfe)");
    compare_cmd->add_option("--eps", eps, "infidelity");
    compare_cmd->add_option("--delta", delta, "significance level");
    compare_cmd->add_option("--m", colors, "colors (hh, tmmmf)");
    compare_cmd->add_option("--k", k_text, "TM parameter k (default (4n)^7)");
    compare_cmd->add_option("--c", c_text, "TMMMF constant c");
    compare_cmd->add_option("--variant", variant, "mth bound: adapted or original");

    auto *figure_cmd = app.add_subcommand("figure", "data series for the cost comparisons");
    figure_cmd->add_option("--which", which, "2 or 3")->required();
    figure_cmd->add_option("--n-min", n_min, "smallest n");
    figure_cmd->add_option("--n-max", n_max, "largest n (default 20)");
    figure_cmd->add_option("--format", format, "csv (default) or json");

    std::vector<const char *> argv{"hgv"};
    for (const std::string &a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError &e) {
            if (e.get_exit_code() == 0) {
                app.exit(e, out, err);
                return 0;
            }
            out << error_json("ParseError", e.what()).dump() << '\n';
            return 2;
        }

        Json result;
        if (analyze_cmd->parsed()) {
            result = analyze(load_hypergraph(in), parse_method(method));
        } else if (color_cmd->parsed()) {
            const Hypergraph hg = load_hypergraph(in);
            if (color_mode == "greedy") {
                const Coloring c = greedy_coloring(hg);
                result = Json{{"mode", "greedy"}, {"colors", c.num_colors()}, {"classes", coloring_json(c)}};
            } else if (color_mode == "exact") {
                const ExactInvariants inv = exact_invariants(hg);
                result = Json{{"mode", "exact"},
                              {"colors", inv.chi},
                              {"chi_exact", inv.chi_exact},
                              {"chi_lower", inv.chi_lower},
                              {"classes", coloring_json(inv.coloring)}};
            } else {
                fail(ErrorCode::BadParams, "mode must be 'greedy' or 'exact'");
            }
        } else if (gamma_cmd->parsed()) {
            result = gamma_json(independence_degree(load_hypergraph(in), parse_method(method)));
        } else if (protocol_cmd->parsed()) {
            const ProtocolSpec spec = load_protocol(in, proto, protocol_cmd);
            result = summary_json(spectral_summary(spec));
            result["cover"] = cover_to_json(spec.cover);
            const HedgeParams h = hedging_params(cover_strength(spec.hg, spec.cover));
            result["hedge"] = Json{{"p_star", json_number(h.p_star)},
                                   {"h_star", json_number(h.h_star)},
                                   {"p_nu_over_e", json_number(h.p_nu_over_e)},
                                   {"h_nu_over_e", json_number(h.h_nu_over_e)}};
            if (with_spectrum) {
                Json spectrum = Json::array();
                for (const SpectrumEntry &e : full_spectrum(spec)) {
                    spectrum.push_back({{"value", to_string(e.value)},
                                        {"hedged", json_number(hedged_eigenvalue(e.value, spec.hedge_p))},
                                        {"multiplicity", big_json(e.multiplicity)}});
                }
                result["spectrum"] = spectrum;
            }
        } else if (counts_cmd->parsed()) {
            const Scenario scenario = parse_scenario(scenario_text);
            const Rational d = parse_rational(delta);
            if (supremacy_n) {
                result = count_json(supremacy_budget(*supremacy_n, d, colors));
            } else {
                Rational nu;
                if (!nu_text.empty()) {
                    nu = parse_rational(nu_text);
                } else {
                    const ProtocolSpec spec = load_protocol(in, proto, counts_cmd);
                    nu = cover_strength(spec.hg, spec.cover);
                }
                if (gme_k) {
                    result = count_json(gme_tests(*gme_k, nu, d, scenario));
                } else {
                    if (eps.empty()) fail(ErrorCode::BadParams, "--eps is required");
                    result = count_json(tests_for_scenario(scenario, nu, target(eps, delta), parse_hedge(
                                                               counts_cmd->count("--hedge") ? proto.hedge : "auto")));
                }
                result["nu"] = to_string(nu);
            }
        } else if (oracle_cmd->parsed()) {
            result = oracle_check(load_protocol(in, proto, oracle_cmd), check, check_eps);
        } else if (simulate_cmd->parsed()) {
            const ProtocolSpec spec = load_protocol(in, proto, simulate_cmd);
            std::vector<NoiseModel> schedule;
            for (const std::string &text : noise) schedule.push_back(parse_noise(text));
            SimulationOptions options;
            options.tests = tests;
            options.threads = threads;
            options.keep_trace = !trace_path.empty();
            const SimulationReport report =
                run_verification(spec, schedule, target(eps, delta), parse_scenario(scenario_text), seed, options);
            result = simulation_report_json(report);
            Json models = Json::array();
            for (const NoiseModel &m : schedule) models.push_back(to_string(m));
            result["noise"] = models;
            if (!trace_path.empty()) {
                std::ofstream trace(trace_path);
                if (!trace) fail(ErrorCode::BadParams, "cannot write '" + trace_path + "'");
                trace << trace_csv(report);
            }
        } else if (compare_cmd->parsed()) {
            auto need_n = [&]() -> int {
                if (n_opt) return *n_opt;
                if (!in.path.empty() || !in.family.empty()) return load_hypergraph(in).num_vertices();
                fail(ErrorCode::BadParams, "--n is required");
            };
            auto need_target = [&] {
                if (eps.empty() || delta.empty()) fail(ErrorCode::BadParams, "--eps and --delta are required");
                return target(eps, delta);
            };
            CompetitorCost cost;
            if (against == "dfe") {
                BigInt g;
                int n;
                if (!g_text.empty()) {
                    g = BigInt(g_text);
                    n = need_n();
                } else {
                    const Hypergraph hg = load_hypergraph(in);
                    n = hg.num_vertices();
                    g = n <= 12 ? char_support(hg).g : char_support_rank(hg);
                }
                cost = dfe_cost(g, n, need_target());
            } else if (against == "mth") {
                cost = mth_cost(load_hypergraph(in), need_target(), parse_mth_variant(variant));
            } else if (against == "tm") {
                const int n = need_n();
                cost = tm_cost(n, k_text.empty() ? BigInt(boost::multiprecision::pow(BigInt(4 * n), 7)) : BigInt(k_text));
            } else if (against == "hh") {
                cost = hh_cost(colors, need_target());
            } else if (against == "plm") {
                cost = plm_cost(need_n(), need_target());
            } else if (against == "tmmmf") {
                if (c_text.empty()) fail(ErrorCode::BadParams, "--c is required");
                cost = tmmmf_cost(need_n(), parse_rational(c_text), colors);
            } else {
                fail(ErrorCode::BadParams, "--against must be dfe, mth, tm, hh, plm or tmmmf");
            }
            result = competitor_cost_json(cost);
        } else if (figure_cmd->parsed()) {
            const auto rows = figure_series(which, n_min, n_max.value_or(20));
            if (format.empty() || format == "csv") {
                out << figure_csv(rows);
                return 0;
            }
            if (format != "json") fail(ErrorCode::BadParams, "format must be csv or json");
            result = Json::array();
            for (const FigureRow &row : rows) {
                result.push_back({{"n", row.n},
                                  {"protocol", row.protocol},
                                  {"N", format_count(row.value, row.exact)},
                                  {"bound_kind", to_string(row.kind)}});
            }
        }
        out << result.dump(2) << '\n';
        return 0;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::Internal) {
            err << "internal error: " << e.what() << '\n';
            out << error_json("Internal", e.what()).dump() << '\n';
            return 1;
        }
        out << error_json(error_code_name(e.code()), e.what()).dump() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        out << error_json("Internal", e.what()).dump() << '\n';
        return 1;
    }
}

}  // namespace hgv::cli
