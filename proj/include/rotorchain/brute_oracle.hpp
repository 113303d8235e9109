#pragma once

// Full 4^N reference model for small chains. Works in the bare rotor basis
// with the Stark term written out explicitly, so it shares no dressing or
// manifold bookkeeping with the effective Hamiltonian it checks.

#include "rotorchain/entanglement.hpp"
#include "rotorchain/manifold_hamiltonian.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace rotorchain {

inline constexpr int kMaxOracleSites = 6;
inline constexpr Eigen::Index kMaxDenseDimension = 4096;

/// H = sum_i (rotor + Stark)(i) + sum_i V_dip(i, i+1); site 1 is the most significant index.
Eigen::MatrixXcd full_hamiltonian(const ModelParams& params);

/// Total m of every product basis state.
Eigen::VectorXi total_m(int n);
/// Basis indices with the given total m, ascending.
std::vector<Eigen::Index> m_sector(int n, int m);

struct DenseEigensystem {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // columns
};

DenseEigensystem dense_eigensolve(const Eigen::MatrixXcd& h);

/// Manifold states mapped into the bare 4^N space.
Eigen::VectorXcd embed_state(const ManifoldState& state);
Eigen::MatrixXcd embed_density(const ManifoldDensity& rho);

/// Partial trace of a 4^N density down to the listed 1-based sites (ascending).
DensityMatrix full_reduced(const Eigen::MatrixXcd& rho, int n, std::span<const int> keep);
double full_pair_log_negativity(const Eigen::MatrixXcd& rho, int n, int i, int j);
double full_one_vs_rest_log_negativity(const Eigen::MatrixXcd& rho, int n, int p);

struct ValidationTolerances {
    /// Eigenvalue deviations must stay below eigenvalue_coefficient * v^2.
    double eigenvalue_coefficient = 1.0;
    double representation = 1e-10;
    double ground_l_prime = 0.01;
};

struct ValidationReport {
    ModelParams params;
    ValidationTolerances tolerances;
    double max_eigenvalue_deviation = 0.0;
    double jz_commutator = 0.0;
    double m_sector_splitting = 0.0; // max |E(m=+1) - E(m=-1)| over the full sectors
    double max_ground_l_prime = 0.0; // from the full ground eigenvector
    double max_representation_deviation = 0.0; // same state, manifold vs 4^N computation
    double max_matched_state_deviation = 0.0;   // manifold vs full eigenstates (informational)

    bool eigenvalues_ok() const;
    bool ground_ok() const { return max_ground_l_prime <= tolerances.ground_l_prime; }
    bool representation_ok() const { return max_representation_deviation <= tolerances.representation; }
    bool passed() const { return eigenvalues_ok() && ground_ok() && representation_ok(); }
    nlohmann::ordered_json to_json() const;
};

/// Compares the manifold model against the full model for N <= 5.
ValidationReport validate_manifold(const ModelParams& params, const ValidationTolerances& tolerances = {});

} // namespace rotorchain
