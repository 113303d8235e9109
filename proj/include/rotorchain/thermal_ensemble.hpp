#pragma once

// Boltzmann ensembles restricted to the {ground, one-excitation} manifold.

#include "rotorchain/entanglement.hpp"
#include "rotorchain/manifold_hamiltonian.hpp"
#include "rotorchain/scan_result.hpp"

#include <span>
#include <string>
#include <vector>

namespace rotorchain {

struct ThermalSpec {
    double t_rescaled = 1.0; // k_B T / B
    ModelParams params;
};

struct ThermalState {
    ManifoldDensity density;
    /// Level energies and Boltzmann weights in manifold order: ground, then
    /// HPlus, HOneUp, HOneDown levels ascending within each block.
    std::vector<double> energies;
    std::vector<double> weights;
    /// Z with energies measured from the lowest manifold level.
    double partition_function = 0.0;
    /// Rough Boltzmann weight of the omitted two-excitation states, taken as
    /// 9 N (N - 1) / 2 levels at twice the lowest excitation gap.
    double two_excitation_weight_estimate = 0.0;
};

ThermalState thermal_state(const ThermalSpec& spec);

struct Observable {
    enum class Kind { LPrime, Ld, JzVariance, TwoExcitationWeight };
    Kind kind;
    int index = 0; // site p for LPrime, distance d for Ld

    static Observable l_prime(int p) { return {Kind::LPrime, p}; }
    static Observable l_d(int d) { return {Kind::Ld, d}; }
    static Observable jz_var() { return {Kind::JzVariance, 0}; }
    static Observable two_excitation_weight() { return {Kind::TwoExcitationWeight, 0}; }

    std::string name() const;
    double evaluate(const ThermalState& state) const;
};

/// Rows (t_rescaled, e_z, observable, value), ordered by t, then e_z, then
/// observable order.
ScanResult thermal_scan(const ModelParams& params, std::span<const double> t_grid,
                        std::span<const double> e_z_grid, std::span<const Observable> observables);

} // namespace rotorchain
