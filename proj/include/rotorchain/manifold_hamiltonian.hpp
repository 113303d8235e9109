#pragma once

// Effective Hamiltonian on the {ground, one-excitation} manifold of the chain.
//
// In the dressed basis the chain ground configuration is |- - ... ->. A
// one-excitation configuration puts one molecule p (sites numbered 1..N) in
// |+> (block HPlus), |1,+1> (HOneUp) or |1,-1> (HOneDown). Total m is
// conserved by the dipole coupling, so the three blocks decouple and each is
// an N x N symmetric tridiagonal matrix. Ground <-> one-excitation couplings
// are dropped (first-order treatment).
//
// Manifold vector layout (size 3N + 1): index 0 is the ground configuration,
// index 1 + 3 (p - 1) + f holds the excitation of flavor f at site p, with
// f = 0 (+), 1 (m = +1), 2 (m = -1). Flavor f is local dressed state f + 1.

#include "rotorchain/model_core.hpp"
#include "rotorchain/scan_result.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace rotorchain {

enum class BlockLabel { HPlus = 0, HOneUp = 1, HOneDown = 2 };

inline constexpr std::array<BlockLabel, 3> kBlockLabels{BlockLabel::HPlus, BlockLabel::HOneUp,
                                                        BlockLabel::HOneDown};

std::string_view to_string(BlockLabel label);
constexpr int flavor(BlockLabel label) { return static_cast<int>(label); }
constexpr int local_state(BlockLabel label) { return flavor(label) + 1; }
/// +1 / -1 for the H1 blocks, 0 for HPlus.
constexpr int m_content(BlockLabel label) {
    return label == BlockLabel::HOneUp ? 1 : label == BlockLabel::HOneDown ? -1 : 0;
}

namespace manifold {
constexpr int dimension(int n) { return 3 * n + 1; }
/// Site p is 1-based.
constexpr int index(int site, BlockLabel label) { return 1 + 3 * (site - 1) + flavor(label); }
constexpr int site_of(int idx) { return (idx - 1) / 3 + 1; }
constexpr BlockLabel label_of(int idx) { return static_cast<BlockLabel>((idx - 1) % 3); }
} // namespace manifold

struct TridiagonalBlock {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    Eigen::MatrixXd dense() const;
};

/// Dressed-basis matrix elements the blocks are assembled from.
struct ManifoldCouplings {
    std::array<double, 4> site_energy;          // dressed single-site energies
    std::array<std::array<double, 4>, 4> bond;  // <a,b|V|a,b>
    std::array<double, 3> hop;                  // <0,f|V|f,0> per flavor
};

ManifoldCouplings manifold_couplings(const ModelParams& params);

struct BlockHamiltonian {
    ModelParams params;
    double ground_energy = 0.0;
    std::array<TridiagonalBlock, 3> blocks;

    const TridiagonalBlock& block(BlockLabel label) const { return blocks[static_cast<std::size_t>(label)]; }
};

BlockHamiltonian build_block_hamiltonian(const ModelParams& params);

struct SubspaceSpectrum {
    BlockLabel label;
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns = site amplitudes c_p
};

SubspaceSpectrum solve_block(const BlockHamiltonian& h, BlockLabel label);

/// All 3N + 1 manifold levels at one parameter point.
struct ManifoldSpectrum {
    ModelParams params;
    double ground_energy = 0.0;
    std::array<SubspaceSpectrum, 3> subspaces;

    const SubspaceSpectrum& subspace(BlockLabel label) const {
        return subspaces[static_cast<std::size_t>(label)];
    }
    double lowest(BlockLabel label) const { return subspace(label).eigenvalues(0); }
    /// min(HPlus) - min(HOne).
    double lowest_gap_difference() const;
    /// HPlus when its lowest level is not above the H1 lowest level.
    BlockLabel lowest_excited_block() const;

    /// Energies ordered ascending, ties broken by block order (ground first).
    struct Level {
        double energy;
        int block; // -1 for the ground level
        int level_index;
    };
    std::vector<Level> sorted_levels() const;
};

ManifoldSpectrum solve_manifold(const ModelParams& params);

/// A vector on the manifold; amplitudes has size 3N + 1.
struct ManifoldState {
    ModelParams params;
    Eigen::VectorXcd amplitudes;

    static ManifoldState ground(const ModelParams& params);
    /// Excitation amplitudes c_p (size N) placed in one block.
    static ManifoldState single_excitation(const ModelParams& params, BlockLabel label,
                                           const Eigen::VectorXcd& site_amplitudes);
    static ManifoldState eigenstate(const ManifoldSpectrum& spectrum, BlockLabel label, int level);

    Complex ground_amplitude() const { return amplitudes(0); }
    Eigen::VectorXcd excitation_amplitudes(BlockLabel label) const;
    double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// One row per level: e_z, subspace, level_index, degeneracy, energy. H1
/// levels are listed once with degeneracy 2. Grid points are evaluated in
/// parallel; rows come out in grid order.
ScanResult spectrum_vs_field(const ModelParams& params, std::span<const double> e_z_grid);

/// Structured counterpart of spectrum_vs_field.
std::vector<ManifoldSpectrum> spectra_on_grid(const ModelParams& params, std::span<const double> e_z_grid);

/// Bisection on min(HPlus) - min(HOne) until |difference| <= tol.
/// Throws NoCrossingError without a sign change on [lo, hi].
double find_crossing(const ModelParams& params, double e_z_lo, double e_z_hi, double tol = 1e-10);

struct LevelCrossing {
    int hplus_level;
    int hone_level;
    double e_z;
};

/// Every HPlus/H1 level pair that changes order between consecutive grid points.
std::vector<LevelCrossing> crossing_map(const ModelParams& params, std::span<const double> e_z_grid);

} // namespace rotorchain
