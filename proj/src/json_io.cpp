#include "hgv/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hgv/error.hpp"

namespace hgv {

namespace {

const nlohmann::json &member(const nlohmann::json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const nlohmann::json &j, const char *what) {
    if (!j.is_number_integer()) fail(ErrorCode::ParseError, std::string(what) + " must be an integer");
    return j.get<int>();
}

VertexSet vertex_list(const nlohmann::json &j) {
    if (!j.is_array()) fail(ErrorCode::ParseError, "vertex list must be an array");
    VertexSet out;
    for (const auto &v : j) out.push_back(as_int(v, "vertex"));
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

nlohmann::json parse_json(const std::string &text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

Hypergraph hypergraph_from_json(const nlohmann::json &j) {
    int dim = j.contains("dim") ? as_int(j.at("dim"), "dim") : 2;
    int vertices = as_int(member(j, "vertices"), "vertices");
    std::vector<RawEdge> edges;
    const auto &list = member(j, "edges");
    if (!list.is_array()) fail(ErrorCode::ParseError, "edges must be an array");
    for (const auto &e : list) {
        RawEdge raw;
        if (e.is_array()) {
            raw.vertices = vertex_list(e);
        } else {
            raw.vertices = vertex_list(member(e, "v"));
            if (e.contains("m")) raw.multiplicity = as_int(e.at("m"), "multiplicity");
        }
        edges.push_back(std::move(raw));
    }
    return Hypergraph(vertices, dim, edges);
}

Json hypergraph_to_json(const Hypergraph &hg) {
    Json edges = Json::array();
    for (const Edge &e : hg.edges()) edges.push_back(Json{{"v", e.vertices}, {"m", e.multiplicity}});
    return Json{{"dim", hg.dim()}, {"vertices", hg.num_vertices()}, {"edges", edges}};
}

Rational rational_from_json(const nlohmann::json &j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
    fail(ErrorCode::ParseError, "expected a number or a \"p/q\" string");
}

WeightedCover cover_from_json(const nlohmann::json &j) {
    WeightedCover cover;
    const auto &sets = member(j, "sets");
    if (!sets.is_array()) fail(ErrorCode::ParseError, "sets must be an array");
    for (const auto &s : sets) cover.sets.push_back(vertex_list(s));
    if (j.contains("weights")) {
        const auto &weights = j.at("weights");
        if (!weights.is_array()) fail(ErrorCode::ParseError, "weights must be an array");
        for (const auto &w : weights) cover.weights.push_back(rational_from_json(w));
    } else {
        // Omitted weights mean the uniform cover.
        for (std::size_t l = 0; l < cover.sets.size(); ++l) {
            cover.weights.push_back(Rational(1, static_cast<long>(cover.sets.size())));
        }
    }
    return cover;
}

Json cover_to_json(const WeightedCover &cover) {
    Json weights = Json::array();
    for (const Rational &w : cover.weights) weights.push_back(to_string(w));
    return Json{{"sets", cover.sets}, {"weights", weights}};
}

WeightedCover load_cover_file(const std::string &path) { return cover_from_json(parse_json(read_file(path))); }

HedgeSpec parse_hedge(std::string_view text) {
    if (text == "auto") return HedgeSpec::automatic();
    if (text == "none") return HedgeSpec::none();
    if (text == "nu/e" || text == "nu_over_e") return HedgeSpec::nu_over_e();
    Rational p = parse_rational(text);
    if (p < 0 || p >= 1) fail(ErrorCode::BadParams, "hedge probability must lie in [0, 1)");
    return p == 0 ? HedgeSpec::none() : HedgeSpec::explicit_p(to_real(p));
}

HedgeSpec hedge_from_json(const nlohmann::json &j) {
    if (j.is_string()) return parse_hedge(j.get<std::string>());
    if (j.is_number()) return parse_hedge(j.dump());
    if (j.is_null()) return HedgeSpec::none();
    fail(ErrorCode::ParseError, "hedge must be \"auto\", \"none\", \"nu/e\" or a number");
}

ProtocolSpec protocol_from_json(const nlohmann::json &j, const std::string &base_dir) {
    Hypergraph hg = [&] {
        if (j.contains("hypergraph")) return hypergraph_from_json(j.at("hypergraph"));
        if (j.contains("hypergraph_file")) {
            std::filesystem::path p = j.at("hypergraph_file").get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            return load_hypergraph_file(p.string());
        }
        fail(ErrorCode::ParseError, "protocol needs 'hypergraph' or 'hypergraph_file'");
    }();

    WeightedCover cover;
    const auto &c = member(j, "cover");
    if (c.is_string()) {
        std::string kind = c.get<std::string>();
        if (kind == "greedy") {
            cover = uniform_cover(greedy_coloring(hg));
        } else if (kind == "chromatic") {
            cover = uniform_cover(exact_invariants(hg).coloring);
        } else if (kind == "gamma") {
            cover = independence_degree(hg).witness;
        } else {
            fail(ErrorCode::ParseError, "cover must be an object or one of greedy, chromatic, gamma");
        }
    } else {
        cover = cover_from_json(c);
    }
    HedgeSpec hedge = j.contains("hedge") ? hedge_from_json(j.at("hedge")) : HedgeSpec::none();
    return make_protocol(std::move(hg), cover, hedge);
}

double json_number(const Real &value) { return value.convert_to<double>(); }

}  // namespace hgv
