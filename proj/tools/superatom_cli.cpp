#include "superatom/cli.hpp"
#include "superatom/specfun.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>
#include <vector>

// Command-line front end. Each subcommand either loads a config file
// (--config) or synthesizes one from its flags; both paths go through the
// same strict parser so validation and provenance hashing are identical.

namespace {

using superatom::cli::ScenarioConfig;

struct FlagSet {
    std::string config_path;
    std::string out_dir;
    // (section, key) -> raw value string, filled only for flags the user set.
    std::map<std::pair<std::string, std::string>, std::string> values;

    void add(CLI::App* cmd, const std::string& flag, const std::string& section,
             const std::string& key, const std::string& help) {
        cmd->add_option_function<std::string>(
            flag,
            [this, section, key](const std::string& v) { values[{section, key}] = v; },
            help);
    }

    std::string synthesize(const std::string& kind) const {
        std::string text = "[scenario]\nkind = " + kind + "\n";
        // Group remaining keys by section (map order is deterministic).
        std::map<std::string, std::vector<std::pair<std::string, std::string>>> by_section;
        for (const auto& [sk, v] : values) by_section[sk.first].emplace_back(sk.second, v);
        for (const auto& [section, kv] : by_section) {
            text += "[" + section + "]\n";
            for (const auto& [k, v] : kv) text += k + " = " + v + "\n";
        }
        return text;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective Rydberg-superatom model: basis enumeration, interaction "
                 "density of states, effective potential, master-equation simulation, "
                 "brute-force validation, and drive sweeps."};
    app.require_subcommand(1);

    std::map<std::string, FlagSet> flags;
    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"basis", "Enumerate the collective basis"},
        {"dos", "Pair-interaction density of states"},
        {"effective", "Effective potential Lambda - i Gamma"},
        {"simulate", "Integrate the driven master equation"},
        {"validate", "Compare the effective model with brute-force ensembles"},
        {"sweep", "Drive-strength sweep of the final-state populations"}};

    for (const auto& [kind, help] : kinds) {
        CLI::App* cmd = app.add_subcommand(kind, help);
        FlagSet& fs = flags[kind];
        cmd->add_option("--config", fs.config_path, "Config file (excludes other flags)");
        cmd->add_option("--out", fs.out_dir, "Output directory");

        fs.add(cmd, "--symmetry", "scenario", "symmetry", "spherical or elliptic");
        fs.add(cmd, "--n-max", "scenario", "n_max", "Excitation-quanta cutoff");
        if (kind != "basis") {
            fs.add(cmd, "--state", "scenario", "rydberg_state", "Rydberg state label");
            fs.add(cmd, "--c6", "scenario", "c6_MHz_um6", "C6/2pi [MHz um^6]");
            fs.add(cmd, "--ze-mode", "scenario", "ze_mode", "drive_omega or fixed_peak");
            fs.add(cmd, "--sigma", "geometry", "sigma_um", "Transverse cloud width [um]");
            fs.add(cmd, "--sigma-z", "geometry", "sigma_z_um", "Axial cloud width [um]");
        }
        if (kind == "dos") {
            fs.add(cmd, "--beta", "dos", "beta", "Cloud anisotropy parameter");
            fs.add(cmd, "--z-min", "dos", "z_min", "Lower energy bound");
            fs.add(cmd, "--z-max", "dos", "z_max", "Upper energy bound");
            fs.add(cmd, "--points", "dos", "z_points", "Grid size");
        }
        if (kind == "effective" || kind == "simulate" || kind == "validate") {
            fs.add(cmd, "--omega", "drive", "omega_MHz", "Collective Rabi frequency [MHz]");
        }
        if (kind == "simulate" || kind == "validate" || kind == "sweep") {
            fs.add(cmd, "--t-end", "drive", "t_end_us", "Evolution time [us]");
            fs.add(cmd, "--n-points", "drive", "n_points", "Output grid size");
            fs.add(cmd, "--gamma-r", "rates", "gamma_r_MHz", "Rydberg dephasing [MHz]");
            fs.add(cmd, "--omega0", "rates", "omega0_MHz", "Doppler width [MHz]");
        }
        if (kind == "validate") {
            fs.add(cmd, "--n-atoms", "geometry", "n_atoms", "Ensemble atom number");
            fs.add(cmd, "--realizations", "validate", "realizations", "Cloud realizations");
            fs.add(cmd, "--seed0", "validate", "seed0", "First RNG seed");
            fs.add(cmd, "--cutoff", "validate", "cutoff_multiple", "Pair cutoff in Omega/2");
        }
        if (kind == "sweep") {
            fs.add(cmd, "--n0", "geometry", "n0", "Effective atom number");
            fs.add(cmd, "--omega1-max", "sweep", "omega1_max_MHz", "Max Omega_1 [MHz]");
            fs.add(cmd, "--omega2", "sweep", "omega2_MHz", "Omega_2 [MHz]");
            fs.add(cmd, "--delta", "sweep", "delta_MHz", "Intermediate detuning [MHz]");
            fs.add(cmd, "--points", "sweep", "points", "Sweep grid size");
            fs.add(cmd, "--correction", "sweep", "correction_factor",
                   "not(G) output scaling factor");
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string kind = app.get_subcommands().front()->get_name();
        const FlagSet& fs = flags[kind];
        if (!fs.config_path.empty() && !fs.values.empty())
            throw superatom::cli::ConfigError("use either --config or direct flags, not both");

        ScenarioConfig cfg = fs.config_path.empty()
                                 ? superatom::cli::parse_config_text(fs.synthesize(kind),
                                                                     "<flags>")
                                 : superatom::cli::parse_config(fs.config_path);
        // The subcommand always selects the scenario kind.
        const std::map<std::string, superatom::cli::ScenarioKind> kind_map = {
            {"basis", superatom::cli::ScenarioKind::Basis},
            {"dos", superatom::cli::ScenarioKind::Dos},
            {"effective", superatom::cli::ScenarioKind::Effective},
            {"simulate", superatom::cli::ScenarioKind::Simulate},
            {"validate", superatom::cli::ScenarioKind::Validate},
            {"sweep", superatom::cli::ScenarioKind::Sweep}};
        cfg.kind = kind_map.at(kind);
        if (!fs.out_dir.empty()) cfg.out_dir = fs.out_dir;

        for (const std::string& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
        superatom::cli::run_scenario(cfg, std::cout);
        return 0;
    } catch (const superatom::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const superatom::specfun::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
