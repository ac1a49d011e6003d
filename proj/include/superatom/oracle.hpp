#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

// Brute-force microscopic simulator: random Gaussian atom positions,
// pairwise van-der-Waals Hamiltonian truncated to at most two
// excitations, pure-state Schroedinger evolution. Serves as the
// validation reference for the effective collective model.

namespace superatom::oracle {

/// Atom positions in reduced coordinates (x/sigma, y/sigma, z/sigma_z),
/// i.i.d. standard normal. sigma, sigma_z in um.
struct CloudSample {
    int n_atoms = 0;
    double sigma = 1.0;
    double sigma_z = 1.0;
    std::uint64_t seed = 0;
    Eigen::Matrix<double, Eigen::Dynamic, 3> positions;
};

CloudSample sample_cloud(int n_atoms, double sigma, double sigma_z, std::uint64_t seed);

/// Two-excitation Hamiltonian: state 0 is the vacuum, 1..N the single
/// excitations, then the kept pairs. Pairs with interaction energy above
/// e_max (= cutoff multiple times Omega_peak/2) are discarded as
/// far off-resonant.
struct MicroHamiltonian {
    int n_atoms = 0;
    double drive_scale = 0.0; // 1/sqrt(N): per-atom coupling is Omega/2 * drive_scale
    double e_max = 0.0;       // rad/us; infinity keeps every pair
    std::vector<std::pair<int, int>> pairs; // i < j
    std::vector<double> pair_energy;        // C6 / |r_i - r_j|^6 [rad/us]

    int dim() const { return 1 + n_atoms + (int)pairs.size(); }
    int vacuum() const { return 0; }
    int single(int i) const { return 1 + i; }
    int pair_state(int p) const { return 1 + n_atoms + p; }
};

/// cutoff_multiple is in units of Omega_peak/2 (use infinity to keep all
/// pairs; omega_peak must be > 0 for a finite cutoff). C6 in
/// rad/us * um^6.
MicroHamiltonian build_micro(const CloudSample& sample, double c6, double cutoff_multiple,
                             double omega_peak);

/// Populations of the collective states: |R> = sum_i |r_i>/sqrt(N), the
/// uniform two-excitation state over all N(N-1)/2 pairs, and everything
/// outside the vacuum.
struct Projections {
    double p_r = 0.0;
    double p_sym2 = 0.0;
    double p_exc_total = 0.0;
};

Projections symmetric_projections(const Eigen::VectorXcd& state, const MicroHamiltonian& h);

/// Propagate the vacuum state through H(t) and return the state at each
/// grid time (the grid must be increasing, starting at t >= 0).
std::vector<Eigen::VectorXcd> evolve_schrodinger(const MicroHamiltonian& h,
                                                 const std::function<double(double)>& omega_of_t,
                                                 const std::vector<double>& t_grid, double tol);

struct EnsembleParams {
    int n_atoms = 0;
    double sigma = 1.0;
    double sigma_z = 1.0;
    double c6 = 0.0;
    double cutoff_multiple = 32.0;
    double omega_peak = 0.0;
    std::function<double(double)> omega_of_t; // defaults to constant omega_peak
    double tol = 1e-9;
};

/// Per-realization curves (rows) plus pointwise mean and sample std.
struct EnsembleResult {
    std::vector<double> t;
    Eigen::MatrixXd p_r, p_sym2, p_exc;
    Eigen::VectorXd mean_p_r, std_p_r;
    Eigen::VectorXd mean_p_sym2, std_p_sym2;
    Eigen::VectorXd mean_p_exc, std_p_exc;
};

EnsembleResult ensemble_run(const EnsembleParams& params, const std::vector<double>& t_grid,
                            const std::vector<std::uint64_t>& seeds, int n_threads = 0);

} // namespace superatom::oracle
