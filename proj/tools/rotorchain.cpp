// rotorchain: command-line driver for the rotor-chain experiments.
//
//   rotorchain <experiment> [--config FILE] [--n INT] [--v FLOAT]
//              [--ez LIST | --ez-min X --ez-max X --ez-steps N]
//              [--t LIST | --t-min X --t-max X --t-steps N]
//              [--d LIST] [--p LIST] [--out PATH] [--format csv|json]
//              [--dipole-debye X --b-ghz X --r-nm X [--field-v-per-m X]]
//
// Exit status: 0 success, 1 configuration error, 2 numeric or resource error.

#include "rotorchain/errors.hpp"
#include "rotorchain/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<int> n;
    std::optional<double> v;
    std::vector<double> ez;
    std::optional<double> ez_min, ez_max;
    std::optional<int> ez_steps;
    std::vector<double> t;
    std::optional<double> t_min, t_max;
    std::optional<int> t_steps;
    std::vector<int> d, p;
    std::optional<std::string> out, format;
    std::optional<double> dipole_debye, b_ghz, r_nm, field_v_per_m;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--n", f.n, "number of molecules N");
    cmd->add_option("--v", f.v, "dimensionless dipole coupling mu^2/(4 pi eps0 r^3 B)");
    cmd->add_option("--ez", f.ez, "explicit field grid (comma separated)")->delimiter(',');
    cmd->add_option("--ez-min", f.ez_min, "field grid start");
    cmd->add_option("--ez-max", f.ez_max, "field grid end");
    cmd->add_option("--ez-steps", f.ez_steps, "field grid points");
    cmd->add_option("--t", f.t, "explicit rescaled temperature grid (comma separated)")->delimiter(',');
    cmd->add_option("--t-min", f.t_min, "temperature grid start (k_B T / B)");
    cmd->add_option("--t-max", f.t_max, "temperature grid end");
    cmd->add_option("--t-steps", f.t_steps, "temperature grid points");
    cmd->add_option("--d", f.d, "pair distances (comma separated)")->delimiter(',');
    cmd->add_option("--p", f.p, "molecule positions, 1-based (comma separated)")->delimiter(',');
    cmd->add_option("--out", f.out, "output path (default: stdout)");
    cmd->add_option("--format", f.format, "csv or json");
    cmd->add_option("--dipole-debye", f.dipole_debye, "dipole moment [D]");
    cmd->add_option("--b-ghz", f.b_ghz, "rotational constant [GHz]");
    cmd->add_option("--r-nm", f.r_nm, "intermolecular spacing [nm]");
    cmd->add_option("--field-v-per-m", f.field_v_per_m, "static field [V/m]");
}

nlohmann::json to_overrides(const Flags& f) {
    nlohmann::json j = nlohmann::json::object();
    auto put = [&](const char* key, const auto& opt) {
        if (opt)
            j[key] = *opt;
    };
    auto put_list = [&](const char* key, const auto& list) {
        if (!list.empty())
            j[key] = list;
    };
    put("n", f.n);
    put("v", f.v);
    put_list("ez", f.ez);
    put("ez_min", f.ez_min);
    put("ez_max", f.ez_max);
    put("ez_steps", f.ez_steps);
    put_list("t", f.t);
    put("t_min", f.t_min);
    put("t_max", f.t_max);
    put("t_steps", f.t_steps);
    put_list("d", f.d);
    put_list("p", f.p);
    put("out", f.out);
    put("format", f.format);
    put("dipole_debye", f.dipole_debye);
    put("b_ghz", f.b_ghz);
    put("r_nm", f.r_nm);
    put("field_v_per_m", f.field_v_per_m);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    using namespace rotorchain;

    CLI::App app{"Dipole-coupled rotor chain: spectra, entanglement and thermal scans"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"two-molecule", "two-molecule energies, log-negativities and Jz variances at zero field"},
        {"spectrum", "ground and one-excitation energies versus field"},
        {"pairwise", "L_d and L'_p of the lowest excited level versus field"},
        {"partition", "L'_p for every molecule of the lowest excited level versus field"},
        {"thermal", "thermal L'_p, L_d and Jz variance over temperature and field"},
        {"crossing", "field where the lowest HPlus and H1 levels cross"},
        {"validate", "compare the manifold model against the full 4^N model"},
    };
    for (const auto& [name, help] : commands)
        add_flags(app.add_subcommand(name, help), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const Experiment experiment = *parse_experiment(name);
    try {
        const RunConfig config = load_config(experiment, flags.config, to_overrides(flags));
        const ScanResult result = run_experiment(config);
        if (config.output_path.empty()) {
            write_result(result, config.format, std::cout);
        } else {
            std::ofstream out(config.output_path);
            if (!out)
                throw ConfigError("cannot write " + config.output_path);
            write_result(result, config.format, out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
