#include "hgv/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "hgv/error.hpp"

namespace hgv {

namespace {

std::vector<Complex> roots_of_unity(int d) {
    std::vector<Complex> w(d);
    for (int k = 0; k < d; ++k) w[k] = std::polar(1.0, 2 * std::numbers::pi * k / d);
    return w;
}

std::vector<long> strides(int n, int d) {
    std::vector<long> s(n);
    long acc = 1;
    for (int j = 0; j < n; ++j) {
        s[j] = acc;
        acc *= d;
    }
    return s;
}

/// Odometer over digit strings in index order.
void advance(std::vector<int> &digits, int d) {
    for (int &u : digits) {
        if (++u < d) return;
        u = 0;
    }
}

int phase_of(const Hypergraph &hg, const std::vector<int> &u) {
    const int d = hg.dim();
    long total = 0;
    for (const Edge &e : hg.edges()) {
        long prod = 1;
        for (Vertex j : e.vertices) {
            prod = prod * u[j] % d;
            if (prod == 0) break;
        }
        total += e.multiplicity * prod;
    }
    return static_cast<int>(total % d);
}

void require_qubits(const Hypergraph &hg) {
    if (hg.dim() != 2) fail(ErrorCode::NotQubit, "operation is defined for qubits (d = 2) only");
}

}  // namespace

OracleBudget oracle_budget() {
    OracleBudget b;
    if (const char *env = std::getenv("HGV_BUDGET")) {
        char *end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            b.operator_dim = value;
            b.state_dim = std::max(b.state_dim, value);
        }
    }
    return b;
}

long checked_dimension(int n, int d, long limit) {
    long dim = 1;
    for (int j = 0; j < n; ++j) {
        if (dim > limit / d) {
            fail(ErrorCode::BudgetExceeded, "Hilbert space dimension " + std::to_string(d) + "^" + std::to_string(n) +
                                                " exceeds the oracle budget of " + std::to_string(limit));
        }
        dim *= d;
    }
    return dim;
}

long basis_index(std::span<const int> digits, int d) {
    long index = 0;
    for (std::size_t j = digits.size(); j-- > 0;) index = index * d + digits[j];
    return index;
}

std::vector<int> basis_digits(long index, int n, int d) {
    std::vector<int> u(n);
    for (int j = 0; j < n; ++j) {
        u[j] = static_cast<int>(index % d);
        index /= d;
    }
    return u;
}

Eigen::MatrixXcd MixedState::density() const {
    long dim = 1;
    for (int j = 0; j < n; ++j) dim *= d;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) * (white_noise / static_cast<double>(dim));
    for (std::size_t c = 0; c < components.size(); ++c) rho += weights[c] * components[c] * components[c].adjoint();
    return rho;
}

DenseState build_state(const Hypergraph &hg) {
    const int n = hg.num_vertices(), d = hg.dim();
    const long dim = checked_dimension(n, d, oracle_budget().state_dim);
    const auto w = roots_of_unity(d);
    const double norm = std::pow(static_cast<double>(d), -0.5 * n);
    DenseState s{n, d, StateVector(dim)};
    std::vector<int> u(n, 0);
    for (long idx = 0; idx < dim; ++idx) {
        s.amplitudes[idx] = norm * w[phase_of(hg, u)];
        advance(u, d);
    }
    return s;
}

DenseState build_state_by_gates(const Hypergraph &hg) {
    const int n = hg.num_vertices(), d = hg.dim();
    const long dim = checked_dimension(n, d, oracle_budget().state_dim);
    const auto w = roots_of_unity(d);
    const auto stride = strides(n, d);
    StateVector v = StateVector::Zero(dim);
    v[0] = 1;
    // Fourier gate F|j> = d^{-1/2} sum_k omega^{jk}|k> on each qudit.
    const double inv = 1 / std::sqrt(static_cast<double>(d));
    for (int q = 0; q < n; ++q) {
        StateVector out = StateVector::Zero(dim);
        for (long idx = 0; idx < dim; ++idx) {
            if (v[idx] == Complex(0)) continue;
            int j = static_cast<int>(idx / stride[q] % d);
            long base = idx - j * stride[q];
            for (int k = 0; k < d; ++k) out[base + k * stride[q]] += inv * w[(j * k) % d] * v[idx];
        }
        v = std::move(out);
    }
    for (const Edge &e : hg.edges()) {
        for (int rep = 0; rep < e.multiplicity; ++rep) {
            for (long idx = 0; idx < dim; ++idx) {
                long prod = 1;
                for (Vertex j : e.vertices) prod = prod * (idx / stride[j] % d) % d;
                v[idx] *= w[prod];
            }
        }
    }
    return DenseState{n, d, v};
}

StateVector apply_stabilizer(const Hypergraph &hg, Vertex j, const StateVector &v) {
    const int n = hg.num_vertices(), d = hg.dim();
    const auto w = roots_of_unity(d);
    const auto stride = strides(n, d);
    StateVector out(v.size());
    std::vector<int> u(n, 0);
    for (long idx = 0; idx < v.size(); ++idx) {
        long phi = 0;
        for (int e_idx : hg.incident_edges(j)) {
            const Edge &e = hg.edges()[e_idx];
            long prod = 1;
            for (Vertex k : e.vertices) {
                if (k != j) prod = prod * u[k] % d;
            }
            phi += e.multiplicity * prod;
        }
        long target = u[j] + 1 < d ? idx + stride[j] : idx - (d - 1) * stride[j];
        out[target] = w[phi % d] * v[idx];
        advance(u, d);
    }
    return out;
}

StateVector apply_z(int n, int d, Vertex k, int power, const StateVector &v) {
    const auto w = roots_of_unity(d);
    const auto stride = strides(n, d);
    StateVector out = v;
    for (long idx = 0; idx < v.size(); ++idx) {
        long uk = idx / stride[k] % d;
        out[idx] *= w[((uk * power) % d + d) % d];
    }
    return out;
}

StateVector apply_projector(const Hypergraph &hg, const VertexSet &set, const StateVector &v) {
    const int d = hg.dim();
    StateVector cur = v;
    for (Vertex i : set) {
        StateVector acc = cur;
        StateVector power = cur;
        for (int b = 1; b < d; ++b) {
            power = apply_stabilizer(hg, i, power);
            acc += power;
        }
        cur = acc / static_cast<double>(d);
    }
    return cur;
}

StateVector apply_omega(const ProtocolSpec &spec, const StateVector &v) {
    const double p = spec.hedge_p.convert_to<double>();
    StateVector out = StateVector::Zero(v.size());
    for (std::size_t l = 0; l < spec.cover.sets.size(); ++l) {
        out += to_double(spec.cover.weights[l]) * apply_projector(spec.hg, spec.cover.sets[l], v);
    }
    return (1 - p) * out + p * v;
}

bool stabilizer_check(const Hypergraph &hg, const StateVector &candidate) {
    for (Vertex j = 0; j < hg.num_vertices(); ++j) {
        if ((apply_stabilizer(hg, j, candidate) - candidate).cwiseAbs().maxCoeff() > 1e-10) return false;
    }
    return true;
}

bool stabilizer_check(const Hypergraph &hg) {
    DenseState s = build_state(hg);
    if (!stabilizer_check(hg, s.amplitudes)) return false;
    // K_j^d = 1 on a vector with distinct entries.
    StateVector probe(s.amplitudes.size());
    for (long i = 0; i < probe.size(); ++i) probe[i] = Complex(std::cos(0.37 * i + 0.1), std::sin(1.3 * i));
    for (Vertex j = 0; j < hg.num_vertices(); ++j) {
        StateVector v = probe;
        for (int b = 0; b < hg.dim(); ++b) v = apply_stabilizer(hg, j, v);
        if ((v - probe).cwiseAbs().maxCoeff() > 1e-10) return false;
    }
    return true;
}

OmegaDense omega_dense(const ProtocolSpec &spec) {
    const int n = spec.hg.num_vertices(), d = spec.hg.dim();
    const long dim = checked_dimension(n, d, oracle_budget().operator_dim);
    OmegaDense out;
    out.omega = Eigen::MatrixXcd::Zero(dim, dim);
    out.traces_ok = true;
    std::vector<Eigen::MatrixXcd> projectors;
    for (const VertexSet &set : spec.cover.sets) {
        Eigen::MatrixXcd proj(dim, dim);
        for (long c = 0; c < dim; ++c) {
            StateVector e = StateVector::Zero(dim);
            e[c] = 1;
            proj.col(c) = apply_projector(spec.hg, set, e);
        }
        double trace = proj.trace().real();
        double expected = std::pow(static_cast<double>(d), n - static_cast<int>(set.size()));
        out.projector_traces.push_back(trace);
        if (std::abs(trace - expected) > 1e-9 * std::max(1.0, expected)) out.traces_ok = false;
        projectors.push_back(std::move(proj));
    }
    for (std::size_t l = 0; l < projectors.size(); ++l) out.omega += to_double(spec.cover.weights[l]) * projectors[l];
    const double p = spec.hedge_p.convert_to<double>();
    out.omega = (1 - p) * out.omega + p * Eigen::MatrixXcd::Identity(dim, dim);
    out.hermitian = (out.omega - out.omega.adjoint()).cwiseAbs().maxCoeff() <= 1e-12;

    if (d == 2 && out.omega.imag().cwiseAbs().maxCoeff() <= 1e-14) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.omega.real(), Eigen::EigenvaluesOnly);
        const auto &ev = solver.eigenvalues();
        out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out.omega, Eigen::EigenvaluesOnly);
        const auto &ev = solver.eigenvalues();
        out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double> &ascending, double gap) {
    std::vector<EigenCluster> out;
    double sum = 0;
    long count = 0;
    for (std::size_t i = 0; i < ascending.size(); ++i) {
        if (count > 0 && ascending[i] - ascending[i - 1] >= gap) {
            out.push_back({sum / count, count});
            sum = 0;
            count = 0;
        }
        sum += ascending[i];
        ++count;
    }
    if (count > 0) out.push_back({sum / count, count});
    return out;
}

SpectrumMatch compare_spectrum(const std::vector<SpectrumEntry> &analytic, const Real &p,
                               const std::vector<double> &eigenvalues, double tol) {
    SpectrumMatch m;
    std::vector<std::pair<double, long>> expected;
    long total = 0;
    for (const SpectrumEntry &e : analytic) {
        long mult = e.multiplicity.convert_to<long>();
        expected.emplace_back(hedged_eigenvalue(e.value, p).convert_to<double>(), mult);
        total += mult;
    }
    if (total != static_cast<long>(eigenvalues.size())) {
        m.detail = "multiplicities sum to " + std::to_string(total) + " but the operator has dimension " +
                   std::to_string(eigenvalues.size());
        return m;
    }
    std::sort(expected.begin(), expected.end());

    // Element-wise comparison of the sorted multisets checks values and
    // multiplicities together.
    std::vector<double> flat;
    for (auto &[value, mult] : expected) flat.insert(flat.end(), mult, value);
    for (std::size_t i = 0; i < flat.size(); ++i) m.max_error = std::max(m.max_error, std::abs(flat[i] - eigenvalues[i]));
    if (m.max_error > tol) {
        m.detail = "eigenvalue mismatch " + std::to_string(m.max_error);
        return m;
    }

    // Cluster-level multiplicity check whenever distinct analytic values are
    // resolvable at the clustering gap.
    bool resolvable = true;
    for (std::size_t i = 1; i < expected.size(); ++i) {
        if (expected[i].first - expected[i - 1].first < 1e-6) resolvable = false;
    }
    if (resolvable) {
        auto clusters = cluster_eigenvalues(eigenvalues);
        if (clusters.size() != expected.size()) {
            m.detail = "cluster count " + std::to_string(clusters.size()) + " differs from " + std::to_string(expected.size());
            return m;
        }
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (clusters[i].multiplicity != expected[i].second) {
                m.detail = "multiplicity mismatch at eigenvalue " + std::to_string(expected[i].first);
                return m;
            }
        }
    }
    m.ok = true;
    return m;
}

double kappa(const Hypergraph &hg) {
    const int n = hg.num_vertices(), d = hg.dim();
    if (n < 2) fail(ErrorCode::BadParams, "kappa needs at least two parties");
    checked_dimension(n, d, oracle_budget().operator_dim);
    const DenseState s = build_state(hg);
    const long dim = s.amplitudes.size();
    double best = 0;
    // Subsets containing vertex 0 cover every bipartition exactly once.
    const std::uint32_t rest = n - 1;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rest); ++bits) {
        std::uint64_t subset = (bits << 1) | 1;
        if (std::popcount(subset) == n) continue;
        std::vector<int> side, other;
        for (int j = 0; j < n; ++j) ((subset >> j) & 1 ? side : other).push_back(j);
        if (side.size() > other.size()) std::swap(side, other);
        long rows = 1, cols = 1;
        for (std::size_t i = 0; i < side.size(); ++i) rows *= d;
        for (std::size_t i = 0; i < other.size(); ++i) cols *= d;
        Eigen::MatrixXcd m(rows, cols);
        for (long idx = 0; idx < dim; ++idx) {
            auto u = basis_digits(idx, n, d);
            long r = 0, c = 0;
            for (std::size_t i = side.size(); i-- > 0;) r = r * d + u[side[i]];
            for (std::size_t i = other.size(); i-- > 0;) c = c * d + u[other[i]];
            m(r, c) = s.amplitudes[idx];
        }
        Eigen::MatrixXcd rho = m * m.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
        best = std::max(best, solver.eigenvalues().maxCoeff());
    }
    return best;
}

CharSupport char_support(const Hypergraph &hg) {
    require_qubits(hg);
    const int n = hg.num_vertices();
    if (n > 12) fail(ErrorCode::BudgetExceeded, "brute-force characteristic support needs n <= 12");
    const long dim = 1L << n;
    std::vector<std::uint8_t> f(dim);
    for (long u = 0; u < dim; ++u) {
        int parity = 0;
        for (const Edge &e : hg.edges()) {
            bool all = std::all_of(e.vertices.begin(), e.vertices.end(), [&](Vertex j) { return (u >> j) & 1; });
            parity ^= all ? 1 : 0;
        }
        f[u] = static_cast<std::uint8_t>(parity);
    }
    CharSupport out;
    out.g = 0;
    long smallest = dim + 1;
    std::vector<long> s(dim);
    for (long x = 0; x < dim; ++x) {
        for (long u = 0; u < dim; ++u) s[u] = (f[u] ^ f[u ^ x]) ? -1 : 1;
        for (long h = 1; h < dim; h <<= 1) {
            for (long i = 0; i < dim; i += h << 1) {
                for (long j = i; j < i + h; ++j) {
                    long a = s[j], b = s[j + h];
                    s[j] = a + b;
                    s[j + h] = a - b;
                }
            }
        }
        for (long z = 0; z < dim; ++z) {
            if (s[z] != 0) {
                out.g += 1;
                smallest = std::min(smallest, std::abs(s[z]));
            }
        }
    }
    out.min_nonzero = static_cast<double>(smallest) / static_cast<double>(dim);
    return out;
}

BigInt char_support_rank(const Hypergraph &hg, int max_n) {
    require_qubits(hg);
    const int n = hg.num_vertices();
    if (hg.order() > 3) fail(ErrorCode::OrderTooHigh, "rank formula needs hypergraph order <= 3");
    if (n > max_n || n > 62) fail(ErrorCode::BudgetExceeded, "rank route needs n <= " + std::to_string(max_n));
    std::vector<std::array<int, 3>> triples;
    for (const Edge &e : hg.edges()) {
        if (e.vertices.size() == 3) triples.push_back({e.vertices[0], e.vertices[1], e.vertices[2]});
    }
    BigInt total = 0;
    std::vector<std::uint64_t> rows(n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        std::fill(rows.begin(), rows.end(), 0);
        for (const auto &t : triples) {
            for (int r = 0; r < 3; ++r) {
                int l = t[r], i = t[(r + 1) % 3], k = t[(r + 2) % 3];
                if ((x >> l) & 1) {
                    rows[i] ^= std::uint64_t{1} << k;
                    rows[k] ^= std::uint64_t{1} << i;
                }
            }
        }
        // Gaussian elimination over GF(2).
        int rank = 0;
        for (int col = 0; col < n && rank < n; ++col) {
            int pivot = -1;
            for (int r = rank; r < n; ++r) {
                if ((rows[r] >> col) & 1) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) continue;
            std::swap(rows[rank], rows[pivot]);
            for (int r = 0; r < n; ++r) {
                if (r != rank && ((rows[r] >> col) & 1)) rows[r] ^= rows[rank];
            }
            ++rank;
        }
        total += BigInt(1) << rank;
    }
    return total;
}

std::optional<BigInt> char_support_analytic(const Hypergraph &hg) {
    if (hg.dim() != 2) return std::nullopt;
    StructureReport st = structure(hg);
    BigInt g = 1;
    for (const VertexSet &comp : st.components) {
        const int k = static_cast<int>(comp.size());
        int spanning = 0, inside = 0;
        for (const Edge &e : hg.edges()) {
            if (std::includes(comp.begin(), comp.end(), e.vertices.begin(), e.vertices.end())) {
                ++inside;
                if (static_cast<int>(e.vertices.size()) == k) ++spanning;
            }
        }
        if (k == 1 && inside <= 1) {
            g *= 2;
        } else if (k == 2 && inside == 1) {
            // A two-vertex graph state is a stabilizer state: 2^2 Paulis.
            g *= 4;
        } else if (inside == 1 && spanning == 1) {
            g *= (BigInt(1) << (2 * k - 1)) - (BigInt(1) << (k - 1)) + 1;
        } else {
            return std::nullopt;
        }
    }
    return g;
}

MixedState pure(const DenseState &state) {
    MixedState m;
    m.n = state.n;
    m.d = state.d;
    m.weights = {1.0};
    m.components = {state.amplitudes};
    return m;
}

double pass_probability(const ProtocolSpec &spec, const MixedState &state) {
    double total = 0;
    for (std::size_t c = 0; c < state.components.size(); ++c) {
        const StateVector &psi = state.components[c];
        total += state.weights[c] * psi.dot(apply_omega(spec, psi)).real();
    }
    if (state.white_noise > 0) {
        // tr(P_A)/D = d^{-|A|}.
        double avg = 0;
        for (std::size_t l = 0; l < spec.cover.sets.size(); ++l) {
            avg += to_double(spec.cover.weights[l]) * std::pow(static_cast<double>(state.d), -static_cast<double>(spec.cover.sets[l].size()));
        }
        const double p = spec.hedge_p.convert_to<double>();
        total += state.white_noise * ((1 - p) * avg + p);
    }
    return total;
}

double fidelity(const DenseState &target, const MixedState &state) {
    double total = 0;
    for (std::size_t c = 0; c < state.components.size(); ++c) {
        total += state.weights[c] * std::norm(target.amplitudes.dot(state.components[c]));
    }
    return total + state.white_noise / static_cast<double>(target.amplitudes.size());
}

double stabilizer_expectation(const Hypergraph &hg, Vertex j, const MixedState &state) {
    double total = 0;
    for (std::size_t c = 0; c < state.components.size(); ++c) {
        const StateVector &psi = state.components[c];
        total += state.weights[c] * psi.dot(apply_stabilizer(hg, j, psi)).real();
    }
    // tr(K_j) = 0 because K_j shifts qudit j.
    return total;
}

WorstCase worst_case_state(const ProtocolSpec &spec, double epsilon) {
    if (epsilon < 0 || epsilon >= 1) fail(ErrorCode::BadParams, "epsilon must lie in [0, 1)");
    const Hypergraph &hg = spec.hg;
    auto cov = coverage(hg.num_vertices(), spec.cover);
    Vertex k = static_cast<Vertex>(std::min_element(cov.begin(), cov.end()) - cov.begin());

    const DenseState target = build_state(hg);
    WorstCase out;
    out.vertex = k;
    out.state.n = hg.num_vertices();
    out.state.d = hg.dim();
    out.state.weights = {1 - epsilon};
    out.state.components = {target.amplitudes};
    if (epsilon > 0) {
        out.state.weights.push_back(epsilon);
        out.state.components.push_back(apply_z(hg.num_vertices(), hg.dim(), k, 1, target.amplitudes));
    }
    out.pass_probability = pass_probability(spec, out.state);
    const double p = spec.hedge_p.convert_to<double>();
    out.expected = 1 - (1 - p) * to_double(cov[k]) * epsilon;
    out.fidelity = fidelity(target, out.state);
    return out;
}

MixedState saturation_mixture(const Hypergraph &hg, const std::vector<double> &a) {
    require_qubits(hg);
    if (static_cast<int>(a.size()) != hg.num_vertices()) fail(ErrorCode::BadParams, "one a_j per vertex required");
    double sum = 0;
    for (double x : a) {
        if (x < 0) fail(ErrorCode::BadParams, "a_j must be nonnegative");
        sum += x;
    }
    if (sum > 2 + 1e-12) fail(ErrorCode::BadParams, "sum of a_j must not exceed 2");
    const DenseState target = build_state(hg);
    MixedState m;
    m.n = hg.num_vertices();
    m.d = 2;
    m.weights.push_back(1 - sum / 2);
    m.components.push_back(target.amplitudes);
    for (Vertex j = 0; j < hg.num_vertices(); ++j) {
        if (a[j] == 0) continue;
        m.weights.push_back(a[j] / 2);
        m.components.push_back(apply_z(m.n, 2, j, 1, target.amplitudes));
    }
    return m;
}

}  // namespace hgv
