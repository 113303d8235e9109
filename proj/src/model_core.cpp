#include "rotorchain/model_core.hpp"

#include "rotorchain/errors.hpp"

#include <cmath>
#include <numbers>

namespace rotorchain {

namespace {

Matrix16c kron(const Matrix4c& a, const Matrix4c& b) {
    Matrix16c out;
    for (int i = 0; i < kSiteDim; ++i)
        for (int j = 0; j < kSiteDim; ++j)
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

Matrix4c bare_operator(SiteOperatorKind kind) {
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const double sqrt_two_thirds = std::sqrt(2.0 / 3.0);
    Matrix4c m = Matrix4c::Zero();
    switch (kind) {
    case SiteOperatorKind::CosTheta:
        m(0, 1) = m(1, 0) = inv_sqrt3;
        break;
    case SiteOperatorKind::TPlus:
        m(2, 0) = -sqrt_two_thirds; // <1,+1| T+ |0,0>
        m(0, 3) = sqrt_two_thirds;  // <0,0| T+ |1,-1>
        break;
    case SiteOperatorKind::TMinus:
        m(0, 2) = -sqrt_two_thirds;
        m(3, 0) = sqrt_two_thirds;
        break;
    case SiteOperatorKind::Jz:
        m(2, 2) = 1.0;
        m(3, 3) = -1.0;
        break;
    }
    return m;
}

} // namespace

void ModelParams::validate(bool allow_zero_coupling) const {
    if (n_molecules < 2)
        throw DomainError("n_molecules must be >= 2, got " + std::to_string(n_molecules));
    if (!std::isfinite(v_dip) || v_dip < 0.0 || (v_dip == 0.0 && !allow_zero_coupling))
        throw DomainError("v_dip must be a finite positive number");
    if (!(e_z >= 0.0) || !std::isfinite(e_z))
        throw DomainError("e_z must be finite and >= 0");
    if (b_rot != 1.0)
        throw DomainError("b_rot is the energy unit and must equal 1");
}

ModelParams ModelParams::with_field(double field) const {
    ModelParams p = *this;
    p.e_z = field;
    return p;
}

ModelParams ModelParams::with_size(int n) const {
    ModelParams p = *this;
    p.n_molecules = n;
    return p;
}

double rotor_energy(int j) {
    if (j < 0)
        throw DomainError("rotor_energy: j must be >= 0");
    return static_cast<double>(j) * static_cast<double>(j + 1);
}

ModelParams to_dimensionless(const PhysicalParams& p, int n) {
    if (!(p.dipole_debye > 0.0) || !(p.b_ghz > 0.0) || !(p.r_nm > 0.0))
        throw DomainError("physical parameters: dipole, B and spacing must be strictly positive");
    if (!(p.field_v_per_m >= 0.0))
        throw DomainError("physical parameters: field must be >= 0");

    using namespace constants;
    const double mu = p.dipole_debye * kDebye;
    const double b_joule = kPlanck * p.b_ghz * 1e9;
    const double r = p.r_nm * 1e-9;
    const double four_pi_eps0 = 4.0 * std::numbers::pi * kVacuumPermittivity;
    const double r3 = r * r * r;

    ModelParams out;
    out.n_molecules = n;
    out.v_dip = mu * mu / (four_pi_eps0 * r3 * b_joule);
    out.e_z = p.field_v_per_m * std::sqrt(3.0) * four_pi_eps0 * r3 / mu;
    return out;
}

double bare_hop_amplitude(const ModelParams& params) { return 2.0 / 3.0 * params.v_dip; }

double stark_coupling(const ModelParams& params) { return params.e_z * params.v_dip / 3.0; }

DressedSolution dressed_solution(double e_z, const ModelParams& params) {
    if (!(e_z >= 0.0))
        throw DomainError("dressed_solution: e_z must be >= 0");
    const double kappa = stark_coupling(params.with_field(e_z));
    DressedSolution d;
    d.lambda = std::sqrt(1.0 + kappa * kappa);
    d.cos_phi = std::sqrt((1.0 + d.lambda) / (2.0 * d.lambda));
    // From the lower eigenvector of [[0, -k], [-k, 2]]; stays finite at k = 0.
    d.sin_phi = -kappa / (2.0 * d.lambda * d.cos_phi);
    d.e_minus = 1.0 - d.lambda;
    d.e_plus = 1.0 + d.lambda;
    return d;
}

SiteBasis SiteBasis::bare() { return SiteBasis(BasisKind::Bare, 0.0, DressedSolution{}); }

SiteBasis SiteBasis::dressed(double e_z, const ModelParams& params) {
    return SiteBasis(BasisKind::Dressed, e_z, dressed_solution(e_z, params));
}

std::array<std::string_view, 4> SiteBasis::labels() const {
    if (kind_ == BasisKind::Bare)
        return {"|0,0>", "|1,0>", "|1,+1>", "|1,-1>"};
    return {"|->", "|+>", "|1,+1>", "|1,-1>"};
}

Eigen::Matrix4d SiteBasis::rotation() const {
    Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
    if (kind_ == BasisKind::Dressed) {
        const double c = dressing_.cos_phi;
        const double s = dressing_.sin_phi;
        r(0, 0) = c;
        r(0, 1) = -s;
        r(1, 0) = s;
        r(1, 1) = c;
    }
    return r;
}

SiteOperator site_operator(SiteOperatorKind kind, const SiteBasis& basis) {
    const Matrix4c r = basis.rotation().cast<Complex>();
    return SiteOperator{basis, r * bare_operator(kind) * r.adjoint()};
}

Matrix4c site_hamiltonian(const SiteBasis& basis, const ModelParams& params) {
    Matrix4c h = Matrix4c::Zero();
    for (int i = 1; i < kSiteDim; ++i)
        h(i, i) = rotor_energy(1);
    const double kappa = stark_coupling(params);
    h(0, 1) = h(1, 0) = -kappa;
    const Matrix4c r = basis.rotation().cast<Complex>();
    return r * h * r.adjoint();
}

Matrix16c pair_dipole_operator(const SiteBasis& basis, const ModelParams& params) {
    const Matrix4c c = site_operator(SiteOperatorKind::CosTheta, basis).matrix;
    const Matrix4c tp = site_operator(SiteOperatorKind::TPlus, basis).matrix;
    const Matrix4c tm = site_operator(SiteOperatorKind::TMinus, basis).matrix;
    return params.v_dip * (-2.0 * kron(c, c) + 0.5 * (kron(tp, tm) + kron(tm, tp)));
}

TwoMoleculeReference two_molecule_reference(const ModelParams& params) {
    params.validate();
    if (params.n_molecules != 2 || params.e_z != 0.0)
        throw DomainError("two_molecule_reference requires N = 2 and e_z = 0");

    const double v = params.v_dip;
    const double h = 1.0 / std::numbers::sqrt2;
    auto pair = [&](int left, int right, double sign) {
        Vector16c s = Vector16c::Zero();
        s(left) = h;
        s(right) = sign * h;
        return s;
    };
    // |1,m>|0,0> sits at 4*idx(m), |0,0>|1,m> at idx(m).
    TwoMoleculeReference ref{
        params,
        {{
            {"Psi-^0", 2.0 - 2.0 / 3.0 * v, pair(4, 1, +1.0), 0},
            {"Psi+^0", 2.0 + 2.0 / 3.0 * v, pair(4, 1, -1.0), 0},
            {"Psi-^{+1}", 2.0 - v / 3.0, pair(8, 2, -1.0), +1},
            {"Psi-^{-1}", 2.0 - v / 3.0, pair(12, 3, -1.0), -1},
            {"Psi+^{+1}", 2.0 + v / 3.0, pair(8, 2, +1.0), +1},
            {"Psi+^{-1}", 2.0 + v / 3.0, pair(12, 3, +1.0), -1},
        }},
        1.0,
        std::log2(1.0 + std::numbers::sqrt2 / 2.0),
        0.0,
        1.0,
    };
    return ref;
}

} // namespace rotorchain
