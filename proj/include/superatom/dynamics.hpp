#pragma once

#include "superatom/basis.hpp"
#include "superatom/interactions.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

// Driven-dissipative master equation of the collective model: coherent
// drive, effective interaction potential Lambda - i Gamma, Rydberg
// dephasing, thermal ladder, and (in the mapping stage) cavity photon
// extraction. Plus the semiclassical photon-count detection model.

namespace superatom::dynamics {

using specfun::Complex;

/// Scalar pulse: constant, or sampled (t, value) with monotone cubic
/// (Fritsch-Carlson) interpolation; flat extrapolation outside the
/// sample range.
class Pulse {
public:
    Pulse() = default;
    static Pulse constant(double value);
    static Pulse table(std::vector<double> t, std::vector<double> v);

    double operator()(double t) const;
    double peak() const;       // max |value|
    double floor_value() const; // min value over samples
    bool is_constant() const { return t_.empty(); }

private:
    double value_ = 0.0;           // constant case
    std::vector<double> t_, v_, m_; // samples and interpolation slopes
};

/// Omega = sqrt(N0) Omega1 Omega2 / (2 Delta), all in rad/us.
double collective_omega(double n0, double omega1, double omega2, double delta);

struct PulseShape {
    Pulse omega;   // collective two-photon drive [rad/us]
    Pulse omega_m; // mapping beam [rad/us]
};

struct RateSet {
    double gamma_r = 0.0; // Rydberg pure dephasing [rad/us]
    double omega0 = 0.0;  // Doppler width [rad/us]
    double gamma = 0.0;   // intermediate-state dipole decay [rad/us]
    double kappa = 0.0;   // cavity field decay [rad/us]
    double kappa0 = 0.0;  // output-coupler rate [rad/us]
    double g = 0.0;       // collective atom-cavity coupling [rad/us]
    double eta_mm = 1.0;  // mode-matching efficiency
    double tau_r = std::numeric_limits<double>::infinity(); // Rydberg lifetime [us]
};

/// Doppler-dephasing ladder over the l = 0 singles psi_0..psi_{n_max},
/// phi_0 = psi_0 and phi_{n>0} built by discrete Fourier transform.
struct ThermalLadder {
    int n_max = 0;
    double gamma_t = 0.0;       // terminal decay rate [rad/us]
    Eigen::MatrixXcd phi;       // column n: |phi_n> in the psi basis
    Eigen::MatrixXcd a_t;       // ladder lowering operator, psi basis
    Eigen::VectorXcd terminal;  // |phi_{n_max}> in the psi basis
};

ThermalLadder thermal_ladder(int n_max, double omega0);

enum class Stage { Drive, DriveMapping };
enum class DissipatorForm { Spectral, Explicit };

struct StageOptions {
    Stage stage = Stage::Drive;
    /// How the non-diagonal double-decay dissipator is evaluated. The two
    /// are mathematically identical; Spectral falls back to Explicit when
    /// the potential is time-dependent.
    DissipatorForm gamma_form = DissipatorForm::Spectral;
    bool two_level_only = false;   // drop all doubly-excited couplings
    bool mapping_leaks = true;     // |Omega_m|^2/(4 gamma) decay channels
    bool thermal = true;           // enable the Doppler ladder
    int omega_grid_points = 64;    // V_e samples for shaped drive pulses
};

/// Time-dependent generator of the master equation. The state layout is
/// the basis layout (G, singles, doubles, C, c); the mapping stage
/// appends {1, 2, e, E, e1, psi_n e..., psi_n 1...}.
class Liouvillian {
public:
    Liouvillian(const basis::BasisIndex& b, const interactions::CloudGeometry& geom,
                interactions::ZeMode ze_mode, const PulseShape& pulses, const RateSet& rates,
                const StageOptions& options);

    int dim() const { return dim_; }
    const basis::BasisIndex& state_basis() const { return basis_; }
    Stage stage() const { return options_.stage; }
    double z_e() const { return z_e_; }

    Eigen::MatrixXcd initial_ground() const;
    Eigen::MatrixXcd apply(double t, const Eigen::MatrixXcd& rho) const;

    /// Photon occupation per state (zero outside the mapping stage).
    const Eigen::VectorXd& cavity_occupation() const { return cav_occ_; }
    int index_ground() const { return basis_.ground(); }
    int index_r() const { return basis_.r_state(); }
    int index_psi000() const { return idx_psi000_; }
    int index_cont_double() const { return basis_.cont_double(); }
    int index_cont_single() const { return basis_.cont_single(); }
    int index_photon1() const { return idx_1_; } // -1 outside the mapping stage

private:
    struct PotentialSample {
        double omega = 0.0;
        Eigen::MatrixXd lambda, gamma; // real symmetric, double subspace
        std::vector<std::pair<double, Eigen::VectorXd>> channels; // (rate, vector)
    };

    void interpolated_potential(double omega, Eigen::MatrixXd& lambda,
                                Eigen::MatrixXd& gamma) const;

    basis::BasisIndex basis_;
    StageOptions options_;
    RateSet rates_;
    PulseShape pulses_;
    int dim_ = 0;
    double z_e_ = 0.0;
    int idx_psi000_ = -1;

    // Extended-state offsets (mapping stage); -1 when absent.
    int idx_1_ = -1, idx_2_ = -1, idx_e_ = -1, idx_E_ = -1, idx_e1_ = -1;
    int off_psi_e_ = -1, off_psi_1_ = -1;
    int n_psi_ = 0; // number of l = 0 singles

    /// Collapse operator L = sum_a c_a |target_a><source_a| with mutually
    /// orthogonal targets, applied at rate `weight` (times a possible
    /// time-dependent scale).
    struct SparseCollapse {
        double weight = 0.0;
        std::vector<std::tuple<int, int, double>> terms; // (target, source, amplitude)
    };

    Eigen::MatrixXcd s_op_;       // lowering operator S on the full space
    Eigen::MatrixXcd h_const_;    // omega0 ladder + g(a^dag T + h.c.)
    Eigen::MatrixXcd h_map_;      // T^dag S (mapping drive, no h.c.)
    Eigen::MatrixXd deph_weight_; // -(gamma_r)(n_i - n_j)^2 table
    Eigen::VectorXd cav_occ_;
    Eigen::VectorXcd thermal_bra_; // |phi_{n_max}> embedded, full space
    double gamma_t_ = 0.0;
    std::vector<SparseCollapse> const_collapse_; // 2 gamma L[T], 2 kappa L[a]
    std::vector<SparseCollapse> leak_collapse_;  // scaled by |Omega_m|^2/(2 gamma)
    Eigen::MatrixXd leak_m_;      // doubles coefficient matrix of the leak term
    std::vector<PotentialSample> samples_;
    std::vector<int> double_rows_; // global indices of double states
};

struct ObservableRecord {
    double p_g = 0.0, p_r = 0.0, p_psi000 = 0.0, p_exc_total = 0.0;
    double p_cont_double = 0.0, p_cont_single = 0.0, n_cav = 0.0;
};

ObservableRecord observables(const Eigen::MatrixXcd& rho, const Liouvillian& gen);

struct Trajectory {
    std::vector<double> t;                // us
    std::vector<Eigen::MatrixXcd> rho;
    std::vector<ObservableRecord> obs;
};

Trajectory evolve(const Liouvillian& gen, const Eigen::MatrixXcd& rho0,
                  const std::vector<double>& t_grid, double rel_tol);

/// eta_mm * 2 kappa0 * integral of the intracavity photon number
/// (trapezoid on the trajectory grid).
double photon_emission_number(const Trajectory& traj, double kappa0, double eta_mm);

/// Photon-count distributions of the transparency measurement:
/// P_G(n) Poissonian at flux phi_g, P_R(n) including the finite Rydberg
/// lifetime tau_r. Both returned for n = 0..n_max_counts.
void eit_count_distributions(double phi_g, double phi_r, double tau_r, double t_i,
                             int n_max_counts, std::vector<double>& p_g,
                             std::vector<double>& p_r);

} // namespace superatom::dynamics
