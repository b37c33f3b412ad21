#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hgv {

using Vertex = int;
/// Sorted, duplicate-free list of vertex indices (0-based).
using VertexSet = std::vector<Vertex>;

struct RawEdge {
    std::vector<Vertex> vertices;
    int multiplicity = 1;
};

struct Edge {
    VertexSet vertices;
    int multiplicity = 1;

    bool operator==(const Edge &) const = default;
};

/// Checks a raw edge list against the hypergraph invariants and returns the
/// canonical edge list: vertices sorted, duplicates merged modulo d (a merged
/// multiplicity of 0 drops the edge), edges sorted lexicographically.
/// Throws EmptyEdge, BadMultiplicity, VertexOutOfRange or BadParams.
std::vector<Edge> validate(int num_vertices, int dim, std::span<const RawEdge> edges);

/// A (multi)hypergraph G = (V, E, m_E) over qudits of dimension d.
/// Immutable after construction; always holds a canonical, valid edge list.
class Hypergraph {
  public:
    explicit Hypergraph(int num_vertices, int dim = 2);
    Hypergraph(int num_vertices, int dim, std::span<const RawEdge> edges);

    int num_vertices() const { return n_; }
    int dim() const { return d_; }
    const std::vector<Edge> &edges() const { return edges_; }
    /// Distinct adjacent vertices of v, sorted. Singleton edges add nothing.
    const std::vector<Vertex> &neighbors(Vertex v) const { return adjacency_.at(v); }
    bool adjacent(Vertex u, Vertex v) const;
    /// Indices into edges() of the edges containing v.
    const std::vector<int> &incident_edges(Vertex v) const { return incidence_.at(v); }
    /// Maximum edge cardinality; 0 for an edgeless hypergraph.
    int order() const;

    bool operator==(const Hypergraph &other) const { return n_ == other.n_ && d_ == other.d_ && edges_ == other.edges_; }

  private:
    void build_indices();

    int n_;
    int d_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<int>> incidence_;
};

struct StructureReport {
    std::vector<int> degree;
    int max_degree = 0;
    int order = 0;
    std::vector<VertexSet> components;
};

StructureReport structure(const Hypergraph &hg);

/// Vertices adjacent to at least one vertex of `set`.
VertexSet neighborhood(const Hypergraph &hg, const VertexSet &set);

/// Deterministic generators for the standard families. Lattices use row-major
/// vertex numbering. Throws BadParams for out-of-range parameters.
///   square(rows, cols), cubic(k, side), triangular(rows, cols), path(n),
///   cycle(n), even-cycle(n), odd-cycle(n), complete(n), cluster3-1d(n),
///   cluster3-2d(rows, cols), union-jack-chain(cells), union-jack-lattice(cells),
///   complete-order3(n), disjoint-triples(n), single-edge(k)
Hypergraph family(std::string_view name, std::span<const int> params, int dim = 2);
std::vector<std::string> family_names();

/// Vertices of `b` are shifted by a.num_vertices(); dimensions must agree.
Hypergraph disjoint_union(const Hypergraph &a, const Hypergraph &b);

/// Line format: `dim <d>`, `vertices <n>`, `edge v1 v2 ... [* m]`, `#` comments.
Hypergraph parse_text(std::string_view text);
std::string to_text(const Hypergraph &hg);

/// Reads either the text format or the JSON format (detected by a leading '{').
Hypergraph load_hypergraph_file(const std::string &path);
Hypergraph parse_hypergraph(std::string_view content);

}  // namespace hgv
