#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hgv/hypergraph.hpp"
#include "hgv/numeric.hpp"
#include "hgv/protocol.hpp"

namespace hgv {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Size caps for the brute-force oracle. Pure states may hold up to
/// `state_dim` amplitudes; anything that builds a dense operator or scans
/// bipartitions is limited to `operator_dim`. The environment variable
/// HGV_BUDGET overrides `operator_dim` (and raises `state_dim` if needed).
struct OracleBudget {
    long state_dim = 1L << 24;
    long operator_dim = 4096;
};

OracleBudget oracle_budget();

/// d^n, or BudgetExceeded when it exceeds `limit`.
long checked_dimension(int n, int d, long limit);

/// Basis index of a digit string: index = sum_j u_j d^j.
long basis_index(std::span<const int> digits, int d);
std::vector<int> basis_digits(long index, int n, int d);

struct DenseState {
    int n = 0;
    int d = 2;
    StateVector amplitudes;
};

/// Convex mixture of pure components plus a white-noise share (I/D).
struct MixedState {
    int n = 0;
    int d = 2;
    std::vector<double> weights;
    std::vector<StateVector> components;
    double white_noise = 0;

    Eigen::MatrixXcd density() const;
};

/// Amplitudes d^{-n/2} omega^{sum_e m_e prod_{j in e} u_j}, built from the
/// phase polynomial directly.
DenseState build_state(const Hypergraph &hg);
/// Same state obtained by applying a Fourier gate to every qudit of |0...0>
/// and then each CZ_e gate m_e times.
DenseState build_state_by_gates(const Hypergraph &hg);

StateVector apply_stabilizer(const Hypergraph &hg, Vertex j, const StateVector &v);
/// Multiplies each amplitude by omega^{power * u_k}.
StateVector apply_z(int n, int d, Vertex k, int power, const StateVector &v);
/// P_A v with P_A = prod_{i in A} (1/d) sum_b K_i^b.
StateVector apply_projector(const Hypergraph &hg, const VertexSet &set, const StateVector &v);
/// Omega_p v.
StateVector apply_omega(const ProtocolSpec &spec, const StateVector &v);

/// K_j |G> = |G> for all j and K_j^d = 1 (checked on a fixed test vector),
/// within 1e-10.
bool stabilizer_check(const Hypergraph &hg);
/// Only the fixed-point condition, for an arbitrary candidate state.
bool stabilizer_check(const Hypergraph &hg, const StateVector &candidate);

struct OmegaDense {
    Eigen::MatrixXcd omega;
    std::vector<double> eigenvalues;       ///< ascending
    std::vector<double> projector_traces;  ///< tr(P_l) per cover set
    bool traces_ok = false;                ///< tr(P_l) = d^{n-|A_l|} within 1e-9
    bool hermitian = false;
};

OmegaDense omega_dense(const ProtocolSpec &spec);

struct EigenCluster {
    double value;
    long multiplicity;
};

/// Groups ascending eigenvalues whose consecutive gaps are below `gap`.
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double> &ascending, double gap = 1e-8);

struct SpectrumMatch {
    bool ok = false;
    double max_error = 0;
    std::string detail;
};

/// Compares the analytic spectrum (hedged with p) with numerical eigenvalues.
SpectrumMatch compare_spectrum(const std::vector<SpectrumEntry> &analytic, const Real &p,
                               const std::vector<double> &eigenvalues, double tol = 1e-10);

/// max over bipartitions of the largest eigenvalue of a reduced state.
double kappa(const Hypergraph &hg);

struct CharSupport {
    BigInt g;
    /// Smallest nonzero |<W_{x,z}>|; a state is c-well-conditioned when this is >= c.
    double min_nonzero = 0;
};

/// Exact count of Pauli operators with nonzero expectation (qubits, n <= 12)
/// by a Walsh-Hadamard transform of (-1)^{f(u)+f(u+x)} for every x.
CharSupport char_support(const Hypergraph &hg);
/// Same count for order <= 3 qubit hypergraphs as sum_x 2^{rank B_x}, where
/// B_x[i][k] = sum of x_l over order-3 edges {i, k, l} (mod 2).
BigInt char_support_rank(const Hypergraph &hg, int max_n = 24);
/// Closed form when every component is a single edge spanning it (or an
/// isolated vertex): product of 2^{2k-1} - 2^{k-1} + 1 over components, with
/// 4 for a two-vertex edge.
std::optional<BigInt> char_support_analytic(const Hypergraph &hg);

struct WorstCase {
    MixedState state;
    Vertex vertex = 0;
    double pass_probability = 0;  ///< tr(Omega_p sigma), computed from the operator
    double expected = 0;          ///< 1 - nu_p eps
    double fidelity = 0;
};

/// (1 - eps)|G><G| + eps Z_k|G><G|Z_k^dagger with k the least covered vertex.
WorstCase worst_case_state(const ProtocolSpec &spec, double epsilon);

/// Qubit mixture (1 - sum a_j/2)|G><G| + sum (a_j/2) Z_j|G><G|Z_j, sum a_j <= 2.
MixedState saturation_mixture(const Hypergraph &hg, const std::vector<double> &a);

MixedState pure(const DenseState &state);
double pass_probability(const ProtocolSpec &spec, const MixedState &state);
double fidelity(const DenseState &target, const MixedState &state);
/// Re tr(rho K_j).
double stabilizer_expectation(const Hypergraph &hg, Vertex j, const MixedState &state);

}  // namespace hgv
