#pragma once

// Named experiments behind the command-line tool, and their configuration.
//
// Configuration comes from an optional JSON file plus command-line flags
// (flags win). Recognized keys:
//   n, v, ez (list), ez_min, ez_max, ez_steps, t (list), t_min, t_max, t_steps,
//   d (list), p (list), out, format ("csv" | "json"),
//   dipole_debye, b_ghz, r_nm, field_v_per_m   (physical units; replace v)
//   experiment                                 (ignored when the CLI names one)
//
// CSV columns per experiment:
//   two-molecule  state, m_total, energy, energy_reference, log_negativity,
//                 log_negativity_reference, jz_variance, jz_variance_reference
//   spectrum      e_z, subspace, level_index, degeneracy, energy
//   pairwise      e_z, lowest_subspace, observable, index, value
//                 observable in {L_d, L_d_mean_per_pair, L_prime}
//   partition     same columns as pairwise, observable L_prime
//   thermal       t_rescaled, e_z, observable, value
//   crossing      e_z_star, lowest_hplus, lowest_hone, ground_energy
//   validate      e_z, check, value, bound, passed

#include "rotorchain/model_core.hpp"
#include "rotorchain/scan_result.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotorchain {

enum class Experiment { TwoMolecule, Spectrum, PairwiseScan, PartitionScan, ThermalMap, Crossing, Validate };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

struct RunConfig {
    Experiment experiment = Experiment::Spectrum;
    ModelParams params;
    std::optional<PhysicalParams> physical;
    std::string v_source = "default"; // default | config | physical
    std::vector<double> ez_grid;
    std::vector<double> t_grid;
    std::vector<int> d_list;
    std::vector<int> p_list;
    std::string output_path; // empty: standard output
    OutputFormat format = OutputFormat::Csv;

    nlohmann::ordered_json echo() const;
};

/// Merges `overrides` over `file_values` and resolves defaults for the
/// experiment. Throws ConfigError naming unknown keys or invalid values.
RunConfig parse_config(Experiment experiment, const nlohmann::json& file_values,
                       const nlohmann::json& overrides = nlohmann::json::object());

/// Reads a JSON config file (if a path is given) and calls parse_config.
RunConfig load_config(Experiment experiment, const std::optional<std::string>& path,
                      const nlohmann::json& overrides = nlohmann::json::object());

/// Runs one experiment; the resolved configuration is echoed in metadata.
ScanResult run_experiment(const RunConfig& config);

/// Writes in the configured format to `os`.
void write_result(const ScanResult& result, OutputFormat format, std::ostream& os);

/// Evenly spaced, inclusive; a single step gives {min}.
std::vector<double> linear_grid(double min, double max, int steps);

} // namespace rotorchain
