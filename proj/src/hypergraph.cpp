#include "hgv/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "hgv/error.hpp"
#include "hgv/json_io.hpp"

namespace hgv {

std::vector<Edge> validate(int num_vertices, int dim, std::span<const RawEdge> edges) {
    if (num_vertices < 1) fail(ErrorCode::BadParams, "vertex count must be positive");
    if (dim < 2) fail(ErrorCode::BadParams, "local dimension must be at least 2");

    std::map<VertexSet, int> merged;
    for (const RawEdge &raw : edges) {
        if (raw.vertices.empty()) fail(ErrorCode::EmptyEdge, "empty hyperedge");
        if (raw.multiplicity < 1 || raw.multiplicity >= dim) {
            fail(ErrorCode::BadMultiplicity, "multiplicity " + std::to_string(raw.multiplicity) +
                                                 " not in 1.." + std::to_string(dim - 1));
        }
        VertexSet vs = raw.vertices;
        for (Vertex v : vs) {
            if (v < 0 || v >= num_vertices) {
                fail(ErrorCode::VertexOutOfRange,
                     "vertex " + std::to_string(v) + " outside 0.." + std::to_string(num_vertices - 1));
            }
        }
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
            fail(ErrorCode::BadParams, "hyperedge repeats a vertex");
        }
        int &m = merged[vs];
        m = (m + raw.multiplicity) % dim;
    }

    std::vector<Edge> out;
    for (auto &[vs, m] : merged) {
        if (m != 0) out.push_back(Edge{vs, m});
    }
    return out;
}

Hypergraph::Hypergraph(int num_vertices, int dim) : Hypergraph(num_vertices, dim, std::span<const RawEdge>{}) {}

Hypergraph::Hypergraph(int num_vertices, int dim, std::span<const RawEdge> edges)
    : n_(num_vertices), d_(dim), edges_(validate(num_vertices, dim, edges)) {
    build_indices();
}

void Hypergraph::build_indices() {
    adjacency_.assign(n_, {});
    incidence_.assign(n_, {});
    for (int idx = 0; idx < static_cast<int>(edges_.size()); ++idx) {
        const VertexSet &vs = edges_[idx].vertices;
        for (Vertex v : vs) {
            incidence_[v].push_back(idx);
            for (Vertex w : vs) {
                if (w != v) adjacency_[v].push_back(w);
            }
        }
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
}

bool Hypergraph::adjacent(Vertex u, Vertex v) const {
    const auto &adj = adjacency_.at(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

int Hypergraph::order() const {
    int k = 0;
    for (const Edge &e : edges_) k = std::max(k, static_cast<int>(e.vertices.size()));
    return k;
}

StructureReport structure(const Hypergraph &hg) {
    const int n = hg.num_vertices();
    StructureReport report;
    report.degree.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        report.degree[v] = static_cast<int>(hg.neighbors(v).size());
        report.max_degree = std::max(report.max_degree, report.degree[v]);
    }
    report.order = hg.order();

    std::vector<int> component(n, -1);
    for (Vertex start = 0; start < n; ++start) {
        if (component[start] >= 0) continue;
        const int id = static_cast<int>(report.components.size());
        VertexSet members;
        std::vector<Vertex> stack{start};
        component[start] = id;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (Vertex w : hg.neighbors(v)) {
                if (component[w] < 0) {
                    component[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        report.components.push_back(std::move(members));
    }
    return report;
}

VertexSet neighborhood(const Hypergraph &hg, const VertexSet &set) {
    std::vector<char> mark(hg.num_vertices(), 0);
    for (Vertex v : set) {
        if (v < 0 || v >= hg.num_vertices()) fail(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " out of range");
        for (Vertex w : hg.neighbors(v)) mark[w] = 1;
    }
    VertexSet out;
    for (Vertex v = 0; v < hg.num_vertices(); ++v) {
        if (mark[v]) out.push_back(v);
    }
    return out;
}

namespace {

void require(bool ok, std::string_view name, const std::string &what) {
    if (!ok) fail(ErrorCode::BadParams, std::string(name) + ": " + what);
}

void require_count(std::string_view name, std::span<const int> params, std::size_t count) {
    require(params.size() == count, name, "expects " + std::to_string(count) + " parameter(s)");
}

/// Occupied sites of a Union Jack patch with `rows` x `cells` cells. Corners sit
/// at even (r, c) of a (2*rows+1) x (2*cells+1) grid and centers at odd (r, c);
/// vertices are numbered row-major over occupied sites.
Hypergraph union_jack(int rows, int cells, int dim) {
    const int height = 2 * rows + 1;
    const int width = 2 * cells + 1;
    std::vector<int> index(height * width, -1);
    int next = 0;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            bool corner = r % 2 == 0 && c % 2 == 0;
            bool center = r % 2 == 1 && c % 2 == 1;
            if (corner || center) index[r * width + c] = next++;
        }
    }
    auto at = [&](int r, int c) { return index[r * width + c]; };
    std::vector<RawEdge> edges;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cells; ++j) {
            int r = 2 * i, c = 2 * j;
            int tl = at(r, c), tr = at(r, c + 2), bl = at(r + 2, c), br = at(r + 2, c + 2);
            int x = at(r + 1, c + 1);
            edges.push_back({{tl, tr, x}, 1});
            edges.push_back({{tr, br, x}, 1});
            edges.push_back({{br, bl, x}, 1});
            edges.push_back({{bl, tl, x}, 1});
        }
    }
    return Hypergraph(next, dim, edges);
}

}  // namespace

std::vector<std::string> family_names() {
    return {"square", "cubic", "triangular", "path", "cycle", "even-cycle", "odd-cycle", "complete",
            "cluster3-1d", "cluster3-2d", "union-jack-chain", "union-jack-lattice", "complete-order3",
            "disjoint-triples", "single-edge"};
}

Hypergraph family(std::string_view name, std::span<const int> params, int dim) {
    std::vector<RawEdge> edges;
    if (name == "square" || name == "triangular") {
        require_count(name, params, 2);
        const int rows = params[0], cols = params[1];
        require(rows >= 1 && cols >= 1, name, "rows and cols must be positive");
        auto id = [cols](int r, int c) { return r * cols + c; };
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                if (c + 1 < cols) edges.push_back({{id(r, c), id(r, c + 1)}, 1});
                if (r + 1 < rows) edges.push_back({{id(r, c), id(r + 1, c)}, 1});
                if (name == "triangular" && r + 1 < rows && c + 1 < cols) {
                    edges.push_back({{id(r, c), id(r + 1, c + 1)}, 1});
                }
            }
        }
        return Hypergraph(rows * cols, dim, edges);
    }
    if (name == "cubic") {
        require_count(name, params, 2);
        const int k = params[0], side = params[1];
        require(k >= 1 && side >= 2, name, "need dimension k >= 1 and side >= 2");
        long total = 1;
        for (int i = 0; i < k; ++i) {
            total *= side;
            require(total <= (1L << 20), name, "lattice too large");
        }
        const int n = static_cast<int>(total);
        for (int v = 0; v < n; ++v) {
            int stride = 1;
            for (int axis = k - 1; axis >= 0; --axis) {
                int coord = (v / stride) % side;
                if (coord + 1 < side) edges.push_back({{v, v + stride}, 1});
                stride *= side;
            }
        }
        return Hypergraph(n, dim, edges);
    }
    if (name == "path") {
        require_count(name, params, 1);
        const int n = params[0];
        require(n >= 1, name, "n must be positive");
        for (int j = 0; j + 1 < n; ++j) edges.push_back({{j, j + 1}, 1});
        return Hypergraph(n, dim, edges);
    }
    if (name == "cycle" || name == "even-cycle" || name == "odd-cycle") {
        require_count(name, params, 1);
        const int n = params[0];
        require(n >= 3, name, "cycle needs n >= 3");
        if (name == "even-cycle") require(n % 2 == 0, name, "n must be even");
        if (name == "odd-cycle") require(n % 2 == 1, name, "n must be odd");
        for (int j = 0; j < n; ++j) edges.push_back({{j, (j + 1) % n}, 1});
        return Hypergraph(n, dim, edges);
    }
    if (name == "complete") {
        require_count(name, params, 1);
        const int n = params[0];
        require(n >= 1, name, "n must be positive");
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) edges.push_back({{i, j}, 1});
        }
        return Hypergraph(n, dim, edges);
    }
    if (name == "cluster3-1d") {
        require_count(name, params, 1);
        const int n = params[0];
        require(n >= 3, name, "chain length must be at least 3");
        for (int j = 0; j + 2 < n; ++j) edges.push_back({{j, j + 1, j + 2}, 1});
        return Hypergraph(n, dim, edges);
    }
    if (name == "cluster3-2d") {
        require_count(name, params, 2);
        const int rows = params[0], cols = params[1];
        require(rows >= 1 && cols >= 1 && std::max(rows, cols) >= 3, name, "need a side of length at least 3");
        auto id = [cols](int r, int c) { return r * cols + c; };
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c + 2 < cols; ++c) edges.push_back({{id(r, c), id(r, c + 1), id(r, c + 2)}, 1});
        }
        for (int c = 0; c < cols; ++c) {
            for (int r = 0; r + 2 < rows; ++r) edges.push_back({{id(r, c), id(r + 1, c), id(r + 2, c)}, 1});
        }
        return Hypergraph(rows * cols, dim, edges);
    }
    if (name == "union-jack-chain") {
        require_count(name, params, 1);
        require(params[0] >= 1 && params[0] <= 100000, name, "cell count must be positive");
        return union_jack(1, params[0], dim);
    }
    if (name == "union-jack-lattice") {
        require_count(name, params, 1);
        require(params[0] >= 1 && params[0] <= 1000, name, "cell count must be positive");
        return union_jack(params[0], params[0], dim);
    }
    if (name == "complete-order3") {
        require_count(name, params, 1);
        const int n = params[0];
        require(n >= 3 && n <= 200, name, "n must be in 3..200");
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                for (int c = b + 1; c < n; ++c) edges.push_back({{a, b, c}, 1});
            }
        }
        return Hypergraph(n, dim, edges);
    }
    if (name == "disjoint-triples") {
        require_count(name, params, 1);
        const int n = params[0];
        require(n >= 3 && n % 3 == 0, name, "n must be a positive multiple of 3");
        for (int j = 0; j < n; j += 3) edges.push_back({{j, j + 1, j + 2}, 1});
        return Hypergraph(n, dim, edges);
    }
    if (name == "single-edge") {
        require_count(name, params, 1);
        const int k = params[0];
        require(k >= 1, name, "k must be positive");
        RawEdge e;
        e.vertices.resize(k);
        std::iota(e.vertices.begin(), e.vertices.end(), 0);
        edges.push_back(e);
        return Hypergraph(k, dim, edges);
    }
    fail(ErrorCode::BadParams, "unknown family '" + std::string(name) + "'");
}

Hypergraph disjoint_union(const Hypergraph &a, const Hypergraph &b) {
    if (a.dim() != b.dim()) fail(ErrorCode::BadParams, "disjoint union needs equal local dimensions");
    std::vector<RawEdge> edges;
    for (const Edge &e : a.edges()) edges.push_back({e.vertices, e.multiplicity});
    for (const Edge &e : b.edges()) {
        RawEdge shifted{e.vertices, e.multiplicity};
        for (Vertex &v : shifted.vertices) v += a.num_vertices();
        edges.push_back(std::move(shifted));
    }
    return Hypergraph(a.num_vertices() + b.num_vertices(), a.dim(), edges);
}

Hypergraph parse_text(std::string_view text) {
    int dim = 2;
    int vertices = -1;
    std::vector<RawEdge> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto bad = [&](const std::string &what) {
        fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    auto read_int = [&](const std::string &token) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception &) {
            bad("expected an integer, got '" + token + "'");
        }
        if (used != token.size()) bad("expected an integer, got '" + token + "'");
        return value;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::string keyword;
        if (!(tokens >> keyword)) continue;
        std::vector<std::string> rest;
        for (std::string t; tokens >> t;) rest.push_back(t);
        if (keyword == "dim") {
            if (rest.size() != 1) bad("dim takes one value");
            dim = read_int(rest[0]);
        } else if (keyword == "vertices") {
            if (rest.size() != 1) bad("vertices takes one value");
            vertices = read_int(rest[0]);
        } else if (keyword == "edge") {
            RawEdge e;
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (rest[i] == "*") {
                    if (i + 2 != rest.size()) bad("multiplicity must be the last token");
                    e.multiplicity = read_int(rest[i + 1]);
                    break;
                }
                e.vertices.push_back(read_int(rest[i]));
            }
            edges.push_back(std::move(e));
        } else {
            bad("unknown statement '" + keyword + "'");
        }
    }
    if (vertices < 0) fail(ErrorCode::ParseError, "missing 'vertices' statement");
    return Hypergraph(vertices, dim, edges);
}

std::string to_text(const Hypergraph &hg) {
    std::ostringstream out;
    out << "dim " << hg.dim() << "\n";
    out << "vertices " << hg.num_vertices() << "\n";
    for (const Edge &e : hg.edges()) {
        out << "edge";
        for (Vertex v : e.vertices) out << ' ' << v;
        if (e.multiplicity != 1) out << " * " << e.multiplicity;
        out << "\n";
    }
    return out.str();
}

Hypergraph parse_hypergraph(std::string_view content) {
    auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && content[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception &e) {
            fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
        }
        return hypergraph_from_json(j);
    }
    return parse_text(content);
}

Hypergraph load_hypergraph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_hypergraph(buffer.str());
}

}  // namespace hgv
