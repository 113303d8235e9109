#include "rotorchain/experiments.hpp"

#include "rotorchain/brute_oracle.hpp"
#include "rotorchain/entanglement.hpp"
#include "rotorchain/errors.hpp"
#include "rotorchain/manifold_hamiltonian.hpp"
#include "rotorchain/parallel.hpp"
#include "rotorchain/thermal_ensemble.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

namespace rotorchain {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 7> kExperimentNames{{
    {Experiment::TwoMolecule, "two-molecule"},
    {Experiment::Spectrum, "spectrum"},
    {Experiment::PairwiseScan, "pairwise"},
    {Experiment::PartitionScan, "partition"},
    {Experiment::ThermalMap, "thermal"},
    {Experiment::Crossing, "crossing"},
    {Experiment::Validate, "validate"},
}};

const std::set<std::string> kKnownKeys{
    "experiment", "n",     "v",     "ez",     "ez_min", "ez_max",       "ez_steps", "t",           "t_min", "t_max",
    "t_steps",    "d",     "p",     "out",    "format", "dipole_debye", "b_ghz",    "r_nm",        "field_v_per_m",
};

double get_number(const nlohmann::json& cfg, const char* key) {
    const auto& v = cfg.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw ConfigError(std::string("config key '") + key + "' must be finite");
    return x;
}

int get_int(const nlohmann::json& cfg, const char* key) {
    const auto& v = cfg.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string("config key '") + key + "' must be an integer");
    return v.get<int>();
}

template <class T>
std::vector<T> get_list(const nlohmann::json& cfg, const char* key) {
    const auto& v = cfg.at(key);
    std::vector<T> out;
    auto push = [&](const nlohmann::json& x) {
        if constexpr (std::is_integral_v<T>) {
            if (!x.is_number_integer())
                throw ConfigError(std::string("config key '") + key + "' must hold integers");
        } else {
            if (!x.is_number() || !std::isfinite(x.get<double>()))
                throw ConfigError(std::string("config key '") + key + "' must hold finite numbers");
        }
        out.push_back(x.get<T>());
    };
    if (v.is_array()) {
        for (const auto& x : v)
            push(x);
    } else {
        push(v);
    }
    return out;
}

std::vector<double> resolve_grid(const nlohmann::json& cfg, const char* list_key, const char* min_key,
                                 const char* max_key, const char* steps_key, double def_min, double def_max,
                                 int def_steps) {
    if (cfg.contains(list_key)) {
        if (cfg.contains(min_key) || cfg.contains(max_key) || cfg.contains(steps_key))
            throw ConfigError(std::string("give either '") + list_key + "' or its min/max/steps, not both");
        auto values = get_list<double>(cfg, list_key);
        if (values.empty())
            throw ConfigError(std::string("'") + list_key + "' is empty");
        if (!std::is_sorted(values.begin(), values.end()) ||
            std::adjacent_find(values.begin(), values.end()) != values.end())
            throw ConfigError(std::string("'") + list_key + "' must be strictly ascending");
        return values;
    }
    const double lo = cfg.contains(min_key) ? get_number(cfg, min_key) : def_min;
    const double hi = cfg.contains(max_key) ? get_number(cfg, max_key) : def_max;
    const int steps = cfg.contains(steps_key) ? get_int(cfg, steps_key) : def_steps;
    if (steps < 1)
        throw ConfigError(std::string("'") + steps_key + "' must be >= 1");
    if (hi < lo || (steps > 1 && hi == lo))
        throw ConfigError(std::string("grid '") + min_key + "'..'" + max_key + "' must be ascending");
    return linear_grid(lo, hi, steps);
}

nlohmann::ordered_json physical_json(const PhysicalParams& p) {
    nlohmann::ordered_json j;
    j["dipole_debye"] = p.dipole_debye;
    j["b_ghz"] = p.b_ghz;
    j["r_nm"] = p.r_nm;
    j["field_v_per_m"] = p.field_v_per_m;
    return j;
}

ScanResult run_two_molecule(const RunConfig& cfg) {
    const ModelParams params = cfg.params.with_size(2).with_field(0.0);
    const TwoMoleculeReference ref = two_molecule_reference(params);
    const ManifoldSpectrum spectrum = solve_manifold(params);

    ScanResult table({"state", "m_total", "energy", "energy_reference", "log_negativity", "log_negativity_reference",
                      "jz_variance", "jz_variance_reference"});
    auto add = [&](std::string name, std::int64_t m, double e, double e_ref, const ManifoldDensity& rho, double l_ref,
                   double var_ref) {
        table.add_row({std::move(name), m, e, e_ref, log_negativity(pair_reduced(rho, 1, 2)), l_ref, jz_variance(rho),
                       var_ref});
    };
    const auto& plus = spectrum.subspace(BlockLabel::HPlus).eigenvalues;
    const auto& one = spectrum.subspace(BlockLabel::HOneUp).eigenvalues;
    add("Psi-^0", 0, plus(0), ref.levels[0].energy, level_density(spectrum, BlockLabel::HPlus, 0),
        ref.log_negativity_psi_minus_0, ref.jz_variance_psi_minus_0);
    add("Psi+^0", 0, plus(1), ref.levels[1].energy, level_density(spectrum, BlockLabel::HPlus, 1), 1.0, 0.0);
    add("Psi-^{+1,-1} mixture", 0, one(0), ref.levels[2].energy, level_density(spectrum, BlockLabel::HOneUp, 0),
        ref.log_negativity_m1_mixture, ref.jz_variance_m1_mixture);
    add("Psi+^{+1,-1} mixture", 0, one(1), ref.levels[4].energy, level_density(spectrum, BlockLabel::HOneUp, 1),
        ref.log_negativity_m1_mixture, ref.jz_variance_m1_mixture);
    add("Psi-^{+1} pure", 1, one(0), ref.levels[2].energy,
        ManifoldDensity::pure(ManifoldState::eigenstate(spectrum, BlockLabel::HOneUp, 0)), 1.0, 0.0);
    return table;
}

ScanResult run_lowest_level_scan(const RunConfig& cfg, bool pairwise) {
    const auto& grid = cfg.ez_grid;
    std::vector<int> sites = cfg.p_list;
    const std::vector<int> distances = pairwise ? cfg.d_list : std::vector<int>{};

    struct Point {
        BlockLabel block;
        std::vector<double> l_d, l_d_mean, l_prime;
    };
    std::vector<Point> points(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const ManifoldSpectrum s = solve_manifold(cfg.params.with_field(grid[i]));
        const ManifoldDensity rho = lowest_excited_density(s);
        Point& pt = points[i];
        pt.block = s.lowest_excited_block();
        for (int d : distances) {
            const double sum = pairwise_L_sum(rho, d);
            pt.l_d.push_back(sum);
            pt.l_d_mean.push_back(sum / (cfg.params.n_molecules - d));
        }
        for (int p : sites)
            pt.l_prime.push_back(one_vs_rest_L(rho, p));
    });

    ScanResult table({"e_z", "lowest_subspace", "observable", "index", "value"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point& pt = points[i];
        const std::string sub = pt.block == BlockLabel::HPlus ? "HPlus" : "HOne";
        for (std::size_t k = 0; k < distances.size(); ++k) {
            table.add_row({grid[i], sub, std::string("L_d"), std::int64_t{distances[k]}, pt.l_d[k]});
            table.add_row({grid[i], sub, std::string("L_d_mean_per_pair"), std::int64_t{distances[k]}, pt.l_d_mean[k]});
        }
        for (std::size_t k = 0; k < sites.size(); ++k)
            table.add_row({grid[i], sub, std::string("L_prime"), std::int64_t{sites[k]}, pt.l_prime[k]});
    }
    return table;
}

ScanResult run_thermal(const RunConfig& cfg) {
    std::vector<Observable> obs;
    for (int p : cfg.p_list)
        obs.push_back(Observable::l_prime(p));
    for (int d : cfg.d_list)
        obs.push_back(Observable::l_d(d));
    obs.push_back(Observable::jz_var());
    obs.push_back(Observable::two_excitation_weight());
    return thermal_scan(cfg.params, cfg.t_grid, cfg.ez_grid, obs);
}

ScanResult run_crossing(const RunConfig& cfg) {
    const double lo = cfg.ez_grid.front();
    const double hi = cfg.ez_grid.back();
    const double ez = find_crossing(cfg.params, lo, hi);
    const ManifoldSpectrum s = solve_manifold(cfg.params.with_field(ez));
    ScanResult table({"e_z_star", "lowest_hplus", "lowest_hone", "ground_energy"});
    table.add_row({ez, s.lowest(BlockLabel::HPlus), s.lowest(BlockLabel::HOneUp), s.ground_energy});
    return table;
}

ScanResult run_validate(const RunConfig& cfg) {
    ScanResult table({"e_z", "check", "value", "bound", "passed"});
    auto reports = nlohmann::ordered_json::array();
    for (double ez : cfg.ez_grid) {
        const ValidationReport r = validate_manifold(cfg.params.with_field(ez));
        const double eig_bound = r.tolerances.eigenvalue_coefficient * r.params.v_dip * r.params.v_dip;
        table.add_row({ez, std::string("max_eigenvalue_deviation"), r.max_eigenvalue_deviation, eig_bound,
                       std::int64_t{r.eigenvalues_ok()}});
        table.add_row({ez, std::string("max_representation_deviation"), r.max_representation_deviation,
                       r.tolerances.representation, std::int64_t{r.representation_ok()}});
        table.add_row({ez, std::string("max_ground_l_prime"), r.max_ground_l_prime, r.tolerances.ground_l_prime,
                       std::int64_t{r.ground_ok()}});
        table.add_row({ez, std::string("jz_commutator"), r.jz_commutator, 1e-12, std::int64_t{r.jz_commutator <= 1e-12}});
        table.add_row({ez, std::string("max_matched_state_deviation"), r.max_matched_state_deviation, 0.0,
                       std::int64_t{1}});
        reports.push_back(r.to_json());
    }
    table.metadata()["validation"] = reports;
    return table;
}

} // namespace

std::string_view to_string(Experiment e) {
    for (const auto& [exp, name] : kExperimentNames)
        if (exp == e)
            return name;
    return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto& [exp, n] : kExperimentNames)
        if (n == name)
            return exp;
    return std::nullopt;
}

std::vector<double> linear_grid(double min, double max, int steps) {
    if (steps < 1)
        throw DomainError("linear_grid: steps must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        out[static_cast<std::size_t>(i)] = steps == 1 ? min : min + (max - min) * i / (steps - 1);
    return out;
}

nlohmann::ordered_json RunConfig::echo() const {
    nlohmann::ordered_json j;
    j["experiment"] = std::string(to_string(experiment));
    j["n_molecules"] = params.n_molecules;
    j["b_rot"] = params.b_rot;
    j["v_dip"] = params.v_dip;
    j["v_dip_source"] = v_source;
    j["hop_over_2b"] = bare_hop_amplitude(params) / 2.0;
    if (physical) {
        j["physical"] = physical_json(*physical);
        j["e_z_from_field"] = params.e_z;
    }
    j["e_z_grid"] = ez_grid;
    if (experiment == Experiment::ThermalMap)
        j["t_grid"] = t_grid;
    j["d"] = d_list;
    j["p"] = p_list;
    j["format"] = format == OutputFormat::Csv ? "csv" : "json";
    j["out"] = output_path;
    return j;
}

RunConfig parse_config(Experiment experiment, const nlohmann::json& file_values, const nlohmann::json& overrides) {
    if (!file_values.is_object() || !overrides.is_object())
        throw ConfigError("configuration must be a JSON object");
    nlohmann::json cfg = file_values;
    for (const auto& [key, value] : overrides.items())
        cfg[key] = value;

    std::vector<std::string> unknown;
    for (const auto& [key, value] : cfg.items())
        if (!kKnownKeys.contains(key))
            unknown.push_back(key);
    if (!unknown.empty()) {
        std::string msg = "unknown config key(s):";
        for (const auto& k : unknown)
            msg += " " + k;
        throw ConfigError(msg);
    }
    if (cfg.contains("experiment")) {
        if (!cfg["experiment"].is_string() || !parse_experiment(cfg["experiment"].get<std::string>()))
            throw ConfigError("config key 'experiment' names no known experiment");
    }

    RunConfig rc;
    rc.experiment = experiment;

    int default_n = 50;
    if (experiment == Experiment::Validate)
        default_n = 3;
    if (experiment == Experiment::TwoMolecule)
        default_n = 2;
    rc.params.n_molecules = cfg.contains("n") ? get_int(cfg, "n") : default_n;
    if (rc.params.n_molecules < 2)
        throw ConfigError("'n' must be >= 2");
    if (experiment == Experiment::TwoMolecule && rc.params.n_molecules != 2)
        throw ConfigError("two-molecule requires n = 2");

    const bool any_physical = cfg.contains("dipole_debye") || cfg.contains("b_ghz") || cfg.contains("r_nm") ||
                              cfg.contains("field_v_per_m");
    if (any_physical) {
        if (!cfg.contains("dipole_debye") || !cfg.contains("b_ghz") || !cfg.contains("r_nm"))
            throw ConfigError("physical units need all of dipole_debye, b_ghz, r_nm");
        if (cfg.contains("v"))
            throw ConfigError("give either 'v' or physical units, not both");
        PhysicalParams phys{get_number(cfg, "dipole_debye"), get_number(cfg, "b_ghz"), get_number(cfg, "r_nm"),
                            cfg.contains("field_v_per_m") ? get_number(cfg, "field_v_per_m") : 0.0};
        try {
            rc.params = to_dimensionless(phys, rc.params.n_molecules);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        rc.physical = phys;
        rc.v_source = "physical";
    } else if (cfg.contains("v")) {
        rc.params.v_dip = get_number(cfg, "v");
        rc.v_source = "config";
    }
    if (!(rc.params.v_dip > 0.0))
        throw ConfigError("'v' must be > 0");

    const int n = rc.params.n_molecules;
    const bool field_given = rc.physical && cfg.contains("field_v_per_m");
    const double field_default = field_given ? rc.params.e_z : 0.0;
    const bool explicit_ez = cfg.contains("ez") || cfg.contains("ez_min") || cfg.contains("ez_max") ||
                             cfg.contains("ez_steps");
    switch (experiment) {
    case Experiment::TwoMolecule:
        if (explicit_ez || field_default != 0.0)
            throw ConfigError("two-molecule is defined at zero field only");
        rc.ez_grid = {0.0};
        break;
    case Experiment::ThermalMap:
        rc.ez_grid = resolve_grid(cfg, "ez", "ez_min", "ez_max", "ez_steps", 0.0, 18.0, 19);
        break;
    case Experiment::Validate:
        rc.ez_grid = explicit_ez ? resolve_grid(cfg, "ez", "ez_min", "ez_max", "ez_steps", 0.0, 0.0, 1)
                     : field_given ? std::vector<double>{field_default}
                                   : std::vector<double>{0.0, 0.5, 2.0};
        break;
    default:
        if (!explicit_ez && field_given)
            rc.ez_grid = {field_default};
        else
            rc.ez_grid = resolve_grid(cfg, "ez", "ez_min", "ez_max", "ez_steps", 0.0, 24.0, 121);
        break;
    }
    if (rc.ez_grid.front() < 0.0)
        throw ConfigError("e_z grid must be >= 0");
    if (experiment == Experiment::Crossing && rc.ez_grid.size() < 2)
        throw ConfigError("crossing needs a bracket ez_min < ez_max");
    if (experiment != Experiment::Validate && experiment != Experiment::TwoMolecule)
        rc.params.e_z = rc.ez_grid.front();

    if (experiment == Experiment::ThermalMap) {
        rc.t_grid = resolve_grid(cfg, "t", "t_min", "t_max", "t_steps", 0.2, 1.2, 21);
        if (rc.t_grid.front() <= 0.0)
            throw ConfigError("temperatures must be > 0");
    } else if (cfg.contains("t") || cfg.contains("t_min") || cfg.contains("t_max") || cfg.contains("t_steps")) {
        throw ConfigError("temperature grid only applies to the thermal experiment");
    }

    if (cfg.contains("d")) {
        rc.d_list = get_list<int>(cfg, "d");
    } else if (experiment == Experiment::PairwiseScan) {
        for (int d : {1, 10, 25})
            if (d <= n - 1)
                rc.d_list.push_back(d);
    }
    for (int d : rc.d_list)
        if (d < 1 || d > n - 1)
            throw ConfigError("distance d = " + std::to_string(d) + " outside 1..n-1");

    if (cfg.contains("p")) {
        rc.p_list = get_list<int>(cfg, "p");
    } else if (experiment == Experiment::PairwiseScan) {
        rc.p_list = {1, n / 2 + 1};
    } else if (experiment == Experiment::PartitionScan) {
        for (int p = 1; p <= n; ++p)
            rc.p_list.push_back(p);
    } else if (experiment == Experiment::ThermalMap) {
        rc.p_list = {n / 2 + 1};
    }
    for (int p : rc.p_list)
        if (p < 1 || p > n)
            throw ConfigError("site p = " + std::to_string(p) + " outside 1..n");

    if (cfg.contains("out")) {
        if (!cfg["out"].is_string())
            throw ConfigError("'out' must be a path string");
        rc.output_path = cfg["out"].get<std::string>();
    }
    if (cfg.contains("format")) {
        const auto f = cfg["format"].is_string() ? cfg["format"].get<std::string>() : std::string();
        if (f == "csv")
            rc.format = OutputFormat::Csv;
        else if (f == "json")
            rc.format = OutputFormat::Json;
        else
            throw ConfigError("'format' must be csv or json");
    }
    return rc;
}

RunConfig load_config(Experiment experiment, const std::optional<std::string>& path, const nlohmann::json& overrides) {
    nlohmann::json file_values = nlohmann::json::object();
    if (path) {
        std::ifstream in(*path);
        if (!in)
            throw ConfigError("cannot open config file " + *path);
        try {
            in >> file_values;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file " + *path + " is not valid JSON: " + e.what());
        }
    }
    return parse_config(experiment, file_values, overrides);
}

ScanResult run_experiment(const RunConfig& config) {
    ScanResult result({});
    switch (config.experiment) {
    case Experiment::TwoMolecule:
        result = run_two_molecule(config);
        break;
    case Experiment::Spectrum:
        result = spectrum_vs_field(config.params, config.ez_grid);
        break;
    case Experiment::PairwiseScan:
        result = run_lowest_level_scan(config, true);
        break;
    case Experiment::PartitionScan:
        result = run_lowest_level_scan(config, false);
        break;
    case Experiment::ThermalMap:
        result = run_thermal(config);
        break;
    case Experiment::Crossing:
        result = run_crossing(config);
        break;
    case Experiment::Validate:
        result = run_validate(config);
        break;
    }
    nlohmann::ordered_json meta = config.echo();
    for (const auto& [k, v] : result.metadata().items())
        meta[k] = v;
    result.metadata() = std::move(meta);
    return result;
}

void write_result(const ScanResult& result, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::Csv)
        result.write_csv(os);
    else
        os << result.to_json().dump(2) << '\n';
}

} // namespace rotorchain
