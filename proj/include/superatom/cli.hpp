#pragma once

#include "superatom/basis.hpp"
#include "superatom/dynamics.hpp"
#include "superatom/interactions.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

// Scenario configuration (flat key-value text with [section] headers and
// units encoded in key names) and scenario orchestration: basis listing,
// density of states, effective potential, master-equation simulation,
// brute-force validation, and drive-strength sweeps.

namespace superatom::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Configuration-level failure (bad key, bad value, missing file);
/// messages are anchored to the offending line where possible.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ScenarioKind { Basis, Dos, Effective, Simulate, Validate, Sweep };

/// All frequencies stored in rad/us (config keys carry MHz and are
/// multiplied by 2 pi on ingestion); lengths in um.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Simulate;

    // [scenario]
    basis::Symmetry symmetry = basis::Symmetry::Spherical;
    int n_max = 3;
    std::string rydberg_state;        // e.g. "109S", resolves c6 if given
    double c6 = 0.0;                  // rad/us * um^6
    interactions::ZeMode ze_mode = interactions::ZeMode::DriveOmega;

    // [geometry]
    double sigma = 5.0;
    double sigma_z = 5.0;
    int n_atoms = 400;
    double n0 = 620.0;                // effective atom number of the drive

    // [drive]
    double omega = 0.0;               // constant collective Rabi frequency
    std::vector<double> omega_t, omega_v; // optional sampled pulse
    double t_end = 2.0;
    int n_points = 201;

    // [mapping]
    bool mapping = false;
    bool mapping_leaks = true;
    double omega_m = 0.0;
    std::vector<double> omega_m_t, omega_m_v;

    // [rates]
    dynamics::RateSet rates;

    // [dos]
    double beta_override = std::numeric_limits<double>::quiet_NaN();
    double z_min = 1e-7, z_max = 1e-1;
    int z_points = 400;

    // [validate]
    std::uint64_t seed0 = 1;
    std::vector<std::uint64_t> seeds; // explicit list overrides seed0
    int realizations = 8;
    double cutoff_multiple = 32.0;
    double oracle_tol = 1e-9;
    double ode_tol = 1e-9;

    // [sweep]
    double omega1_max = 2.0 * 3.14159265358979323846 * 22.0;
    double omega2 = 2.0 * 3.14159265358979323846 * 7.8;
    double delta = -2.0 * 3.14159265358979323846 * 500.0;
    int sweep_points = 37;
    double correction_factor = 1.0;   // not(G) output scaling

    // [output]
    std::string out_dir = ".";

    std::string config_hash;          // FNV-1a of the ingested text
    std::vector<std::string> warnings;

    double beta() const {
        return std::isnan(beta_override) ? 1.0 - sigma_z * sigma_z / (sigma * sigma)
                                         : beta_override;
    }
    interactions::CloudGeometry geometry() const { return {sigma, sigma_z, c6}; }
};

/// C6 coefficient [rad/us * um^6] for a supported nS1/2 state label
/// (80S, 95S, 109S, 140S); throws ConfigError otherwise.
double c6_for_state(const std::string& label);

ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& name);

/// Runs the scenario, writing CSV outputs into config.out_dir and a short
/// human-readable summary to `log`. Throws ConfigError / NumericError.
void run_scenario(const ScenarioConfig& config, std::ostream& log);

} // namespace superatom::cli
