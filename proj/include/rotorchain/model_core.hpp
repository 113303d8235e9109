#pragma once

// Units, the truncated single-rotor basis, single-site and pair operators,
// field-dressed states and the two-molecule reference solution.
//
// Energies are in units of the rotational constant B (B = 1 internally).
// Each rotor keeps the four states j <= 1, always in the order
//   Bare:    |0,0>, |1,0>, |1,+1>, |1,-1>
//   Dressed: |->,   |+>,   |1,+1>, |1,-1>
// so index 0 is the local ground state in either basis. Pair operators act on
// the 16-dimensional space with index 4*a + b (a = left site, b = right site).

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace rotorchain {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

inline constexpr int kSiteDim = 4;
inline constexpr int kPairDim = kSiteDim * kSiteDim;

/// Dimensionless chain parameters. v_dip = mu^2 / (4 pi eps0 r^3 B).
struct ModelParams {
    int n_molecules = 2;
    double b_rot = 1.0;
    double v_dip = 0.1;
    double e_z = 0.0;

    /// Throws DomainError unless N >= 2, v_dip > 0, e_z >= 0 and b_rot == 1.
    /// The solvers pass allow_zero_coupling so the non-interacting limit stays reachable.
    void validate(bool allow_zero_coupling = false) const;
    ModelParams with_field(double field) const;
    ModelParams with_size(int n) const;
};

struct PhysicalParams {
    double dipole_debye = 0.0;
    double b_ghz = 0.0;
    double r_nm = 0.0;
    double field_v_per_m = 0.0;
};

namespace constants {
inline constexpr double kPlanck = 6.62607015e-34;          // J s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kDebye = 1e-21 / kSpeedOfLight;   // C m
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
} // namespace constants

/// E_j = j (j + 1) B.
double rotor_energy(int j);

/// Converts SI-style inputs to the dimensionless model. n_molecules is taken from `n`.
ModelParams to_dimensionless(const PhysicalParams& p, int n = 2);

/// Nearest-neighbour flip-flop amplitude of the m = 0 excitation at zero field, (2/3) v, in units of B.
double bare_hop_amplitude(const ModelParams& params);

/// Off-diagonal Stark element mu E_z / sqrt(3) expressed in B: e_z * v / 3.
double stark_coupling(const ModelParams& params);

struct DressedSolution {
    double lambda = 1.0;
    double cos_phi = 1.0;
    /// Carries the sign fixed by V_e = -mu E_z cos(theta): sin_phi <= 0 for e_z >= 0.
    double sin_phi = 0.0;
    double e_minus = 0.0;
    double e_plus = 2.0;
};

/// Diagonalizes the {|0,0>, |1,0>} Stark block. |+> = cos|1,0> + sin|0,0>, |-> = cos|0,0> - sin|1,0>.
DressedSolution dressed_solution(double e_z, const ModelParams& params);

enum class BasisKind { Bare, Dressed };

class SiteBasis {
public:
    static SiteBasis bare();
    static SiteBasis dressed(double e_z, const ModelParams& params);

    BasisKind kind() const { return kind_; }
    double e_z() const { return e_z_; }
    const DressedSolution& dressing() const { return dressing_; }
    std::array<std::string_view, 4> labels() const;

    /// Orthogonal R with rows = basis states in bare components, so O_this = R O_bare R^T.
    Eigen::Matrix4d rotation() const;

private:
    SiteBasis(BasisKind kind, double e_z, DressedSolution dressing)
        : kind_(kind), e_z_(e_z), dressing_(dressing) {}

    BasisKind kind_;
    double e_z_;
    DressedSolution dressing_;
};

enum class SiteOperatorKind { CosTheta, TPlus, TMinus, Jz };

struct SiteOperator {
    SiteBasis basis;
    Matrix4c matrix;
};

/// T+ = sin(theta) e^{+i phi}, T- = T+^dagger; Condon-Shortley phases.
SiteOperator site_operator(SiteOperatorKind kind, const SiteBasis& basis);

/// Free rotor plus Stark term, -mu E_z cos(theta), on one site.
Matrix4c site_hamiltonian(const SiteBasis& basis, const ModelParams& params);

/// v [ -2 cos(x)cos + (T+ (x) T- + T- (x) T+) / 2 ] on one nearest-neighbour pair.
Matrix16c pair_dipole_operator(const SiteBasis& basis, const ModelParams& params);

/// Closed-form eigensystem of two molecules at zero field in the one-excitation sector.
struct TwoMoleculeReference {
    struct Level {
        std::string name;
        double energy;
        Vector16c state; // bare pair basis
        int m_total;
    };

    ModelParams params;
    std::array<Level, 6> levels; // Psi-^0, Psi+^0, Psi-^{+1}, Psi-^{-1}, Psi+^{+1}, Psi+^{-1}
    double log_negativity_psi_minus_0;
    double log_negativity_m1_mixture;
    double jz_variance_psi_minus_0;
    double jz_variance_m1_mixture;
};

TwoMoleculeReference two_molecule_reference(const ModelParams& params);

} // namespace rotorchain
