#pragma once

// Reduced states, partial transposes and logarithmic negativities of
// manifold states and ensembles.

#include "rotorchain/manifold_hamiltonian.hpp"

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

namespace rotorchain {

/// Eigenvalues of a partial transpose with |x| below this are treated as zero.
inline constexpr double kNegativityCutoff = 1e-10;

/// Density operator on a product of subsystems with dimensions `dims`
/// (subsystem 0 is the most significant index).
class DensityMatrix {
public:
    DensityMatrix(std::vector<int> dims, Eigen::MatrixXcd matrix);

    const std::vector<int>& dims() const { return dims_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    Eigen::Index dimension() const { return matrix_.rows(); }

    struct Diagnostics {
        double trace_error;       // |tr - 1|
        double hermiticity_error; // max |rho - rho^dagger|
        double min_eigenvalue;
    };
    Diagnostics diagnostics() const;
    /// Trace 1 within 1e-10, Hermitian within 1e-12, eigenvalues >= -1e-10.
    bool is_valid() const;

private:
    std::vector<int> dims_;
    Eigen::MatrixXcd matrix_;
};

/// Transposes the indices of one subsystem.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::span<const int> dims, int subsystem);
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, int subsystem);

/// Ascending eigenvalues of a Hermitian matrix; uses a real solver when the
/// imaginary part is exactly zero.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

struct Bipartition {
    std::vector<int> a;
    std::vector<int> b;
};

/// Sum of |negative eigenvalues| of rho^{T_B}.
double negativity(const DensityMatrix& rho, const Bipartition& split);
/// log2(2 N + 1).
double log_negativity(const DensityMatrix& rho, const Bipartition& split);
/// Two-subsystem shorthand, transposing subsystem 1.
double log_negativity(const DensityMatrix& rho);

/// Density operator on the (3N + 1)-dimensional manifold.
struct ManifoldDensity {
    ModelParams params;
    Eigen::MatrixXcd matrix;

    static ManifoldDensity pure(const ManifoldState& state);
    /// Throws DomainError for negative weights or weights not summing to 1 within 1e-12.
    static ManifoldDensity mixture(std::span<const std::pair<double, ManifoldState>> components);

    int n_molecules() const { return params.n_molecules; }
};

/// Density of one manifold level: pure for HPlus, the equal-weight m = +1/-1
/// mixture for an H1 level (either H1 label selects the same level).
ManifoldDensity level_density(const ManifoldSpectrum& spectrum, BlockLabel label, int level);
ManifoldDensity lowest_excited_density(const ManifoldSpectrum& spectrum);

/// Two-site reduced state (sites 1-based, i < j), dims (4, 4).
DensityMatrix pair_reduced(const ManifoldDensity& rho, int i, int j);

/// rho on (site p) (x) (rest); the rest factor has dimension 3(N-1) + 1 with
/// basis ground, then sites q != p ascending, flavors +, m = +1, m = -1.
DensityMatrix one_vs_rest_embedding(const ManifoldDensity& rho, int p);

/// L_d = sum over i of L(pair_reduced(rho, i, i + d)).
double pairwise_L_sum(const ManifoldDensity& rho, int d);
/// L_d divided by the number of pairs N - d.
double pairwise_L_mean(const ManifoldDensity& rho, int d);

/// L'_p, entanglement of molecule p with the rest of the chain.
double one_vs_rest_L(const ManifoldDensity& rho, int p);

/// <Jz^2> - <Jz>^2 for the total Jz.
double jz_variance(const ManifoldDensity& rho);

} // namespace rotorchain
