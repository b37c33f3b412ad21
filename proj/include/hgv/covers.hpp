#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgv/hypergraph.hpp"
#include "hgv/numeric.hpp"

namespace hgv {

/// Independent sets A_l with probabilities mu_l; the protocol (A, mu).
struct WeightedCover {
    std::vector<VertexSet> sets;
    std::vector<Rational> weights;

    bool operator==(const WeightedCover &) const = default;
};

/// Partition of V into independent color classes.
struct Coloring {
    std::vector<VertexSet> classes;

    int num_colors() const { return static_cast<int>(classes.size()); }
};

/// Fractional coloring g: independent sets with nonnegative values such that
/// every vertex is covered with total value at least 1.
struct FractionalColoring {
    std::vector<VertexSet> sets;
    std::vector<Rational> values;

    Rational total() const;
};

struct Budget {
    int alpha_clique = 30;  ///< max n for exact independence/clique numbers
    int chi = 20;           ///< max n for the exact chromatic search
    int enumerate = 24;     ///< max n for maximal-independent-set enumeration
    long max_sets = 500000; ///< cap on enumerated maximal independent sets
};

/// Exact alpha and clique number, plus the chromatic number. chi_exact is
/// false when chi could not be pinned inside the budget; then chi holds the
/// greedy upper bound and chi_lower the best lower bound.
struct ExactInvariants {
    int alpha = 0;
    int clique = 0;
    int chi = 0;
    int chi_lower = 0;
    bool chi_exact = false;
    Coloring coloring;
};

enum class GammaMethod { Enumerate, ColumnGeneration };

struct GammaResult {
    Rational gamma;
    Rational chi_f;
    WeightedCover witness;
    GammaMethod method = GammaMethod::Enumerate;
    long columns = 0;
    long pivots = 0;
};

bool is_independent(const Hypergraph &hg, const VertexSet &set);

/// Non-increasing degree order (ties by vertex index), smallest free color.
Coloring greedy_coloring(const Hypergraph &hg);

/// Exact coloring from a color assignment (classes sorted by smallest vertex).
Coloring coloring_from_colors(const std::vector<int> &color);

ExactInvariants exact_invariants(const Hypergraph &hg, const Budget &budget = {});

/// All maximal independent sets, each sorted, in lexicographic order.
std::vector<VertexSet> maximal_independent_sets(const Hypergraph &hg, const Budget &budget = {});

/// Maximum-weight independent set for nonnegative rational weights.
VertexSet max_weight_independent_set(const Hypergraph &hg, const std::vector<Rational> &weights);

/// gamma(G) = 1/chi_f(G) from the fractional-coloring LP, with an optimal
/// cover made of maximal independent sets. Enumeration requires
/// n <= budget.enumerate; column generation prices new sets by exact
/// maximum-weight independent set search and works up to 64 vertices.
GammaResult independence_degree(const Hypergraph &hg, GammaMethod method = GammaMethod::Enumerate,
                                 const Budget &budget = {});

/// Checks the cover against hg and normalizes it: sets sorted, zero-weight
/// sets dropped. Throws NotIndependent, NotACover, VertexOutOfRange,
/// BadParams (negative weights or weights not summing to 1).
WeightedCover validate_cover(const Hypergraph &hg, const WeightedCover &cover);

/// min_j of the total weight of sets containing j.
Rational cover_strength(const Hypergraph &hg, const WeightedCover &cover);

/// Per-vertex covering weight sum_{l : A_l contains j} mu_l.
std::vector<Rational> coverage(int num_vertices, const WeightedCover &cover);

WeightedCover uniform_cover(const Coloring &coloring);

/// The n sets {j, j+2, ..., j+n-3} (mod n) with weight 1/n each.
WeightedCover odd_cycle_cover(int n);

/// g(A) = mu(A)/s(A, mu). Throws ZeroStrength.
FractionalColoring cover_to_fractional(const Hypergraph &hg, const WeightedCover &cover);
/// mu(A) = g(A)/w(g). Throws InfeasibleColoring.
FractionalColoring validate_fractional(const Hypergraph &hg, const FractionalColoring &g);
WeightedCover fractional_to_cover(const Hypergraph &hg, const FractionalColoring &g);

std::string to_string(GammaMethod method);

}  // namespace hgv
