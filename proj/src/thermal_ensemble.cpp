#include "rotorchain/thermal_ensemble.hpp"

#include "rotorchain/errors.hpp"
#include "rotorchain/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace rotorchain {

ThermalState thermal_state(const ThermalSpec& spec) {
    if (!(spec.t_rescaled > 0.0) || !std::isfinite(spec.t_rescaled))
        throw DomainError("thermal_state: rescaled temperature must be > 0");
    const ManifoldSpectrum spectrum = solve_manifold(spec.params);
    const int n = spec.params.n_molecules;
    const int dim = manifold::dimension(n);

    ThermalState out{ManifoldDensity{spec.params, Eigen::MatrixXcd::Zero(dim, dim)}, {}, {}, 0.0, 0.0};
    out.energies.reserve(static_cast<std::size_t>(dim));
    out.energies.push_back(spectrum.ground_energy);
    for (const auto& sub : spectrum.subspaces)
        for (Eigen::Index k = 0; k < sub.eigenvalues.size(); ++k)
            out.energies.push_back(sub.eigenvalues(k));

    const double e0 = *std::min_element(out.energies.begin(), out.energies.end());
    out.weights.resize(out.energies.size());
    double z = 0.0;
    for (std::size_t k = 0; k < out.energies.size(); ++k) {
        out.weights[k] = std::exp(-(out.energies[k] - e0) / spec.t_rescaled);
        z += out.weights[k];
    }
    for (double& w : out.weights)
        w /= z;
    out.partition_function = z;

    // rho is block diagonal: ground, then C diag(w) C^T for every block.
    out.density.matrix(0, 0) = out.weights[0];
    std::size_t offset = 1;
    for (const auto& sub : spectrum.subspaces) {
        Eigen::VectorXd w(n);
        for (int k = 0; k < n; ++k)
            w(k) = out.weights[offset + static_cast<std::size_t>(k)];
        const Eigen::MatrixXd block = sub.eigenvectors * w.asDiagonal() * sub.eigenvectors.transpose();
        for (int p = 1; p <= n; ++p)
            for (int q = 1; q <= n; ++q)
                out.density.matrix(manifold::index(p, sub.label), manifold::index(q, sub.label)) = block(p - 1, q - 1);
        offset += static_cast<std::size_t>(n);
    }

    const double gap = std::min(spectrum.lowest(BlockLabel::HPlus), spectrum.lowest(BlockLabel::HOneUp)) -
                       spectrum.ground_energy;
    const double two_count = 9.0 * n * (n - 1) / 2.0;
    const double two_weight = two_count * std::exp(-(spectrum.ground_energy + 2.0 * gap - e0) / spec.t_rescaled);
    out.two_excitation_weight_estimate = two_weight / (z + two_weight);
    return out;
}

std::string Observable::name() const {
    switch (kind) {
    case Kind::LPrime:
        return "L_prime_p" + std::to_string(index);
    case Kind::Ld:
        return "L_d_d" + std::to_string(index);
    case Kind::JzVariance:
        return "jz_variance";
    case Kind::TwoExcitationWeight:
        return "two_excitation_weight_estimate";
    }
    return "?";
}

double Observable::evaluate(const ThermalState& state) const {
    switch (kind) {
    case Kind::LPrime:
        return one_vs_rest_L(state.density, index);
    case Kind::Ld:
        return pairwise_L_sum(state.density, index);
    case Kind::JzVariance:
        return jz_variance(state.density);
    case Kind::TwoExcitationWeight:
        return state.two_excitation_weight_estimate;
    }
    return 0.0;
}

ScanResult thermal_scan(const ModelParams& params, std::span<const double> t_grid,
                        std::span<const double> e_z_grid, std::span<const Observable> observables) {
    if (t_grid.empty() || e_z_grid.empty())
        throw DomainError("thermal_scan: grids must be non-empty");
    if (observables.empty())
        throw DomainError("thermal_scan: no observables requested");

    const std::size_t cols = e_z_grid.size();
    std::vector<std::vector<double>> values(t_grid.size() * cols);
    parallel_for(values.size(), [&](std::size_t idx) {
        const ThermalState state = thermal_state({t_grid[idx / cols], params.with_field(e_z_grid[idx % cols])});
        auto& out = values[idx];
        out.reserve(observables.size());
        for (const auto& obs : observables)
            out.push_back(obs.evaluate(state));
    });

    ScanResult table({"t_rescaled", "e_z", "observable", "value"});
    for (std::size_t idx = 0; idx < values.size(); ++idx)
        for (std::size_t o = 0; o < observables.size(); ++o)
            table.add_row({t_grid[idx / cols], e_z_grid[idx % cols], observables[o].name(), values[idx][o]});
    return table;
}

} // namespace rotorchain
