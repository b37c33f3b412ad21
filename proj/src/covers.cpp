#include "hgv/covers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>

#include "hgv/error.hpp"
#include "hgv/lp.hpp"

namespace hgv {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

std::vector<Mask> adjacency_masks(const Hypergraph &hg) {
    const int n = hg.num_vertices();
    if (n > 64) fail(ErrorCode::BudgetExceeded, "bitmask searches support at most 64 vertices");
    std::vector<Mask> adj(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : hg.neighbors(v)) adj[v] |= bit(w);
    }
    return adj;
}

std::vector<Mask> complement(const std::vector<Mask> &adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<Mask> comp(n);
    for (int v = 0; v < n; ++v) comp[v] = full_mask(n) & ~adj[v] & ~bit(v);
    return comp;
}

VertexSet to_set(Mask m) {
    VertexSet out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

Mask to_mask(const VertexSet &set) {
    Mask m = 0;
    for (Vertex v : set) m |= bit(v);
    return m;
}

/// Branch and bound maximum clique with greedy-coloring bounds.
class MaxClique {
  public:
    explicit MaxClique(const std::vector<Mask> &adj) : adj_(adj) {}

    int run() {
        best_ = 0;
        expand(full_mask(static_cast<int>(adj_.size())), 0);
        return best_;
    }

  private:
    void expand(Mask cand, int size) {
        std::vector<int> order;
        std::vector<int> bound;
        Mask uncolored = cand;
        int color = 0;
        while (uncolored) {
            ++color;
            Mask q = uncolored;
            while (q) {
                int v = std::countr_zero(q);
                q &= ~bit(v) & ~adj_[v];
                uncolored &= ~bit(v);
                order.push_back(v);
                bound.push_back(color);
            }
        }
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (size + bound[i] <= best_) return;
            int v = order[i];
            Mask next = cand & adj_[v];
            if (next == 0) {
                best_ = std::max(best_, size + 1);
            } else {
                expand(next, size + 1);
            }
            cand &= ~bit(v);
        }
    }

    const std::vector<Mask> &adj_;
    int best_ = 0;
};

/// Backtracking k-colorability, most saturated vertex first.
class KColoring {
  public:
    KColoring(const std::vector<Mask> &adj, int k) : adj_(adj), k_(k), color_(adj.size(), -1) {}

    bool run() { return assign(0, 0); }
    const std::vector<int> &colors() const { return color_; }

  private:
    bool assign(int colored, int used) {
        const int n = static_cast<int>(adj_.size());
        if (colored == n) return true;
        int pick = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (color_[v] >= 0) continue;
            Mask seen = 0;
            for (Mask q = adj_[v]; q; q &= q - 1) {
                int w = std::countr_zero(q);
                if (color_[w] >= 0) seen |= bit(color_[w]);
            }
            int sat = std::popcount(seen);
            int deg = std::popcount(adj_[v]);
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                pick = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        const int limit = std::min(k_, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (Mask q = adj_[pick]; q; q &= q - 1) {
                if (color_[std::countr_zero(q)] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color_[pick] = c;
            if (assign(colored + 1, std::max(used, c + 1))) return true;
            color_[pick] = -1;
        }
        return false;
    }

    const std::vector<Mask> &adj_;
    int k_;
    std::vector<int> color_;
};

/// Two-coloring by BFS; empty when the graph has an odd cycle.
std::optional<std::vector<int>> two_coloring(const Hypergraph &hg) {
    const int n = hg.num_vertices();
    std::vector<int> color(n, -1);
    for (Vertex s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<Vertex> queue;
        queue.push(s);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (Vertex w : hg.neighbors(v)) {
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    queue.push(w);
                } else if (color[w] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

/// Extends an independent set to a maximal one by adding the lowest-index
/// compatible vertices.
Mask extend_to_maximal(Mask set, const std::vector<Mask> &adj) {
    const int n = static_cast<int>(adj.size());
    for (int v = 0; v < n; ++v) {
        if (set & bit(v)) continue;
        if ((adj[v] & set) == 0) set |= bit(v);
    }
    return set;
}

class MaxWeightIndependentSet {
  public:
    MaxWeightIndependentSet(const std::vector<Mask> &adj, const std::vector<Rational> &w) : adj_(adj), w_(w) {}

    Mask run() {
        const int n = static_cast<int>(adj_.size());
        Mask cand = 0;
        for (int v = 0; v < n; ++v) {
            if (w_[v] > 0) cand |= bit(v);
        }
        best_weight_ = 0;
        best_set_ = 0;
        search(cand, 0, Rational(0));
        return best_set_;
    }

  private:
    /// Greedy clique partition of cand; an independent set takes at most one
    /// vertex per clique.
    Rational bound(Mask cand) const {
        Rational total = 0;
        while (cand) {
            int v = std::countr_zero(cand);
            Mask clique = bit(v);
            Rational top = w_[v];
            Mask options = cand & adj_[v];
            while (options) {
                int u = std::countr_zero(options);
                options &= ~bit(u);
                if ((adj_[u] & clique) == clique) {
                    clique |= bit(u);
                    options &= adj_[u];
                    if (w_[u] > top) top = w_[u];
                }
            }
            total += top;
            cand &= ~clique;
        }
        return total;
    }

    void search(Mask cand, Mask chosen, Rational weight) {
        if (cand == 0) {
            if (weight > best_weight_ || best_set_ == 0) {
                best_weight_ = weight;
                best_set_ = chosen;
            }
            return;
        }
        if (weight + bound(cand) <= best_weight_ && best_set_ != 0) return;
        // Branch on the candidate of highest weight (lowest index on ties).
        int pick = -1;
        for (Mask q = cand; q; q &= q - 1) {
            int v = std::countr_zero(q);
            if (pick < 0 || w_[v] > w_[pick]) pick = v;
        }
        search(cand & ~adj_[pick] & ~bit(pick), chosen | bit(pick), weight + w_[pick]);
        search(cand & ~bit(pick), chosen, weight);
    }

    const std::vector<Mask> &adj_;
    const std::vector<Rational> &w_;
    Rational best_weight_;
    Mask best_set_ = 0;
};

void check_vertices(const Hypergraph &hg, const VertexSet &set) {
    for (Vertex v : set) {
        if (v < 0 || v >= hg.num_vertices()) {
            fail(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " out of range");
        }
    }
}

std::string set_text(const VertexSet &set) {
    std::string s = "{";
    for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + std::to_string(set[i]);
    return s + "}";
}

VertexSet sorted_unique(VertexSet set) {
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
        fail(ErrorCode::BadParams, "vertex repeated in set " + set_text(set));
    }
    return set;
}

}  // namespace

Rational FractionalColoring::total() const {
    return std::accumulate(values.begin(), values.end(), Rational(0));
}

bool is_independent(const Hypergraph &hg, const VertexSet &set) {
    check_vertices(hg, set);
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            if (set[i] != set[j] && hg.adjacent(set[i], set[j])) return false;
        }
    }
    return true;
}

Coloring coloring_from_colors(const std::vector<int> &color) {
    std::map<int, VertexSet> classes;
    for (int v = 0; v < static_cast<int>(color.size()); ++v) classes[color[v]].push_back(v);
    Coloring out;
    for (auto &[c, members] : classes) out.classes.push_back(std::move(members));
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

Coloring greedy_coloring(const Hypergraph &hg) {
    const int n = hg.num_vertices();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return hg.neighbors(a).size() > hg.neighbors(b).size();
    });
    std::vector<int> color(n, -1);
    for (Vertex v : order) {
        std::vector<char> taken(hg.neighbors(v).size() + 1, 0);
        for (Vertex w : hg.neighbors(v)) {
            if (color[w] >= 0 && color[w] < static_cast<int>(taken.size())) taken[color[w]] = 1;
        }
        int c = 0;
        while (taken[c]) ++c;
        color[v] = c;
    }
    return coloring_from_colors(color);
}

ExactInvariants exact_invariants(const Hypergraph &hg, const Budget &budget) {
    const int n = hg.num_vertices();
    if (n > budget.alpha_clique || n > 64) {
        fail(ErrorCode::BudgetExceeded, "exact invariants need n <= " + std::to_string(budget.alpha_clique) +
                                            " (got " + std::to_string(n) + ")");
    }
    auto adj = adjacency_masks(hg);
    ExactInvariants out;
    out.clique = MaxClique(adj).run();
    out.alpha = MaxClique(complement(adj)).run();

    Coloring greedy = greedy_coloring(hg);
    out.chi_lower = out.clique;
    out.chi = greedy.num_colors();
    out.coloring = greedy;
    if (out.chi == out.chi_lower) {
        out.chi_exact = true;
        return out;
    }
    if (auto two = two_coloring(hg)) {
        out.chi = out.chi_lower = 2;
        out.chi_exact = true;
        out.coloring = coloring_from_colors(*two);
        return out;
    }
    out.chi_lower = std::max(out.chi_lower, 3);
    if (n > budget.chi) return out;
    for (int k = out.chi_lower; k < out.chi; ++k) {
        KColoring search(adj, k);
        if (search.run()) {
            out.chi = k;
            out.coloring = coloring_from_colors(search.colors());
            break;
        }
    }
    out.chi_lower = out.chi;
    out.chi_exact = true;
    return out;
}

std::vector<VertexSet> maximal_independent_sets(const Hypergraph &hg, const Budget &budget) {
    const int n = hg.num_vertices();
    if (n > budget.enumerate || n > 64) {
        fail(ErrorCode::BudgetExceeded, "maximal independent set enumeration needs n <= " +
                                            std::to_string(budget.enumerate) + " (got " + std::to_string(n) + ")");
    }
    const auto comp = complement(adjacency_masks(hg));
    std::vector<Mask> found;

    // Bron-Kerbosch with pivoting on the complement graph: its maximal
    // cliques are the maximal independent sets.
    auto recurse = [&](auto &self, Mask r, Mask p, Mask x) -> void {
        if (p == 0 && x == 0) {
            found.push_back(r);
            if (static_cast<long>(found.size()) > budget.max_sets) {
                fail(ErrorCode::BudgetExceeded, "too many maximal independent sets");
            }
            return;
        }
        int pivot = -1, best = -1;
        for (Mask q = p | x; q; q &= q - 1) {
            int u = std::countr_zero(q);
            int c = std::popcount(p & comp[u]);
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        for (Mask q = p & ~comp[pivot]; q; q &= q - 1) {
            int v = std::countr_zero(q);
            self(self, r | bit(v), p & comp[v], x & comp[v]);
            p &= ~bit(v);
            x |= bit(v);
        }
    };
    recurse(recurse, 0, full_mask(n), 0);

    std::vector<VertexSet> out;
    out.reserve(found.size());
    for (Mask m : found) out.push_back(to_set(m));
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet max_weight_independent_set(const Hypergraph &hg, const std::vector<Rational> &weights) {
    if (static_cast<int>(weights.size()) != hg.num_vertices()) fail(ErrorCode::BadParams, "one weight per vertex required");
    for (const Rational &w : weights) {
        if (w < 0) fail(ErrorCode::BadParams, "weights must be nonnegative");
    }
    auto adj = adjacency_masks(hg);
    return to_set(MaxWeightIndependentSet(adj, weights).run());
}

GammaResult independence_degree(const Hypergraph &hg, GammaMethod method, const Budget &budget) {
    const int n = hg.num_vertices();
    auto adj = adjacency_masks(hg);
    SetCoverLp lp(n);
    if (method == GammaMethod::Enumerate) {
        for (const VertexSet &s : maximal_independent_sets(hg, budget)) lp.add_column(to_mask(s));
        lp.solve();
    } else {
        lp.solve();
        for (;;) {
            std::vector<Rational> w(n);
            for (int j = 0; j < n; ++j) w[j] = lp.duals()[j] > 0 ? lp.duals()[j] : Rational(0);
            Mask best = MaxWeightIndependentSet(adj, w).run();
            Rational value = 0;
            for (Mask q = best; q; q &= q - 1) value += w[std::countr_zero(q)];
            if (value <= 1) break;
            int before = lp.num_columns();
            lp.add_column(extend_to_maximal(best, adj));
            if (lp.num_columns() == before) fail(ErrorCode::Internal, "column generation repeated a column");
            lp.solve();
        }
    }

    GammaResult result;
    result.method = method;
    result.chi_f = lp.objective();
    result.gamma = 1 / result.chi_f;
    result.columns = lp.num_columns();
    result.pivots = lp.pivots();

    std::map<Mask, Rational> weights;
    for (int c = 0; c < lp.num_columns(); ++c) {
        Rational x = lp.primal(c);
        if (x > 0) weights[extend_to_maximal(lp.column(c), adj)] += x / result.chi_f;
    }
    std::vector<std::pair<VertexSet, Rational>> entries;
    for (auto &[m, w] : weights) entries.emplace_back(to_set(m), w);
    std::sort(entries.begin(), entries.end());
    for (auto &[s, w] : entries) {
        result.witness.sets.push_back(s);
        result.witness.weights.push_back(w);
    }
    if (cover_strength(hg, result.witness) != result.gamma) {
        fail(ErrorCode::Internal, "LP witness strength differs from the optimum");
    }
    return result;
}

WeightedCover validate_cover(const Hypergraph &hg, const WeightedCover &cover) {
    if (cover.sets.size() != cover.weights.size()) fail(ErrorCode::BadParams, "cover needs one weight per set");
    if (cover.sets.empty()) fail(ErrorCode::NotACover, "cover has no sets");
    WeightedCover out;
    Rational total = 0;
    for (std::size_t l = 0; l < cover.sets.size(); ++l) {
        if (cover.sets[l].empty()) fail(ErrorCode::BadParams, "cover sets must be nonempty");
        VertexSet s = sorted_unique(cover.sets[l]);
        if (!is_independent(hg, s)) fail(ErrorCode::NotIndependent, "set " + set_text(s) + " is not independent");
        if (cover.weights[l] < 0) fail(ErrorCode::BadParams, "negative cover weight");
        total += cover.weights[l];
        if (cover.weights[l] == 0) continue;
        out.sets.push_back(std::move(s));
        out.weights.push_back(cover.weights[l]);
    }
    if (total != 1) fail(ErrorCode::BadParams, "cover weights sum to " + to_string(total) + ", expected 1");
    auto cov = coverage(hg.num_vertices(), out);
    for (Vertex v = 0; v < hg.num_vertices(); ++v) {
        if (cov[v] == 0) fail(ErrorCode::NotACover, "vertex " + std::to_string(v) + " is not covered");
    }
    return out;
}

std::vector<Rational> coverage(int num_vertices, const WeightedCover &cover) {
    std::vector<Rational> cov(num_vertices);
    for (std::size_t l = 0; l < cover.sets.size(); ++l) {
        for (Vertex v : cover.sets[l]) cov.at(v) += cover.weights[l];
    }
    return cov;
}

Rational cover_strength(const Hypergraph &hg, const WeightedCover &cover) {
    WeightedCover valid = validate_cover(hg, cover);
    auto cov = coverage(hg.num_vertices(), valid);
    return *std::min_element(cov.begin(), cov.end());
}

WeightedCover uniform_cover(const Coloring &coloring) {
    WeightedCover out;
    const int m = coloring.num_colors();
    for (const VertexSet &c : coloring.classes) {
        out.sets.push_back(c);
        out.weights.push_back(Rational(1, m));
    }
    return out;
}

WeightedCover odd_cycle_cover(int n) {
    if (n < 5 || n % 2 == 0) fail(ErrorCode::BadParams, "odd cycle cover needs odd n >= 5");
    WeightedCover out;
    for (int j = 0; j < n; ++j) {
        VertexSet s;
        for (int step = 0; step <= n - 3; step += 2) s.push_back((j + step) % n);
        std::sort(s.begin(), s.end());
        out.sets.push_back(std::move(s));
        out.weights.push_back(Rational(1, n));
    }
    return out;
}

FractionalColoring cover_to_fractional(const Hypergraph &hg, const WeightedCover &cover) {
    if (cover.sets.size() != cover.weights.size()) fail(ErrorCode::BadParams, "cover needs one weight per set");
    WeightedCover kept;
    for (std::size_t l = 0; l < cover.sets.size(); ++l) {
        VertexSet s = sorted_unique(cover.sets[l]);
        if (!is_independent(hg, s)) fail(ErrorCode::NotIndependent, "set " + set_text(s) + " is not independent");
        if (cover.weights[l] < 0) fail(ErrorCode::BadParams, "negative cover weight");
        if (cover.weights[l] == 0) continue;
        kept.sets.push_back(std::move(s));
        kept.weights.push_back(cover.weights[l]);
    }
    auto cov = coverage(hg.num_vertices(), kept);
    Rational strength = cov.empty() ? Rational(0) : *std::min_element(cov.begin(), cov.end());
    if (strength == 0) fail(ErrorCode::ZeroStrength, "cover strength is zero");
    FractionalColoring g;
    g.sets = kept.sets;
    for (const Rational &mu : kept.weights) g.values.push_back(mu / strength);
    return g;
}

FractionalColoring validate_fractional(const Hypergraph &hg, const FractionalColoring &g) {
    if (g.sets.size() != g.values.size()) fail(ErrorCode::BadParams, "fractional coloring needs one value per set");
    FractionalColoring out;
    for (std::size_t l = 0; l < g.sets.size(); ++l) {
        VertexSet s = sorted_unique(g.sets[l]);
        if (!is_independent(hg, s)) fail(ErrorCode::NotIndependent, "set " + set_text(s) + " is not independent");
        if (g.values[l] < 0) fail(ErrorCode::InfeasibleColoring, "negative fractional value");
        if (g.values[l] == 0) continue;
        out.sets.push_back(std::move(s));
        out.values.push_back(g.values[l]);
    }
    std::vector<Rational> cov(hg.num_vertices());
    for (std::size_t l = 0; l < out.sets.size(); ++l) {
        for (Vertex v : out.sets[l]) cov[v] += out.values[l];
    }
    for (Vertex v = 0; v < hg.num_vertices(); ++v) {
        if (cov[v] < 1) {
            fail(ErrorCode::InfeasibleColoring, "vertex " + std::to_string(v) + " covered with weight " + to_string(cov[v]) + " < 1");
        }
    }
    return out;
}

WeightedCover fractional_to_cover(const Hypergraph &hg, const FractionalColoring &g) {
    FractionalColoring valid = validate_fractional(hg, g);
    Rational w = valid.total();
    WeightedCover out;
    out.sets = valid.sets;
    for (const Rational &value : valid.values) out.weights.push_back(value / w);
    return out;
}

std::string to_string(GammaMethod method) {
    return method == GammaMethod::Enumerate ? "enumerate" : "column-generation";
}

}  // namespace hgv
