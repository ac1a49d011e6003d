#pragma once

#include "superatom/basis.hpp"
#include "superatom/specfun.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

// Resolvent matrix elements of the van-der-Waals interaction over the
// reduced doubly-excited basis, the effective non-Hermitian potential
// Lambda - i Gamma derived from them, its rank-1 decay channels in
// spherical symmetry, and the pair-interaction density of states.

namespace superatom::interactions {

using specfun::Complex;

/// Gaussian cloud geometry and interaction strength. Lengths in um,
/// C6 in rad/us * um^6, so v0() is in rad/us.
struct CloudGeometry {
    double sigma = 1.0;
    double sigma_z = 1.0;
    double c6 = 0.0;

    double beta() const { return 1.0 - (sigma_z * sigma_z) / (sigma * sigma); }
    double v0() const {
        const double s2 = sigma * sigma;
        return c6 / (s2 * s2 * s2);
    }
};

/// Table of T_{j,j',l}(x) for 0 <= j,j' <= j_max, symmetric in (j,j').
/// Direct evaluation for Im(x) <= 0; Im(x) > 0 handled through
/// T(conj(x)) = conj(T(x)).
Eigen::MatrixXcd t_table(Complex x, int j_max, int l);

/// Q_{j,j',l}(x) = T(x)/3 + (2/3) Re T(x e^{-2 i pi/3}) for real x > 0.
Complex q_function(double x, int j, int jp, int l);

/// Full Q table at complex x (three-rotation form), used for resolvent
/// evaluation off the real axis.
Eigen::MatrixXcd q_table(Complex x, int j_max, int l);

/// Spherical resolvent block <Psi_{n_c,n_d',l}|G(z)|Psi_{n_c,n_d,l}>,
/// size (n_d_max+1)^2; z G = I + N N Q(z^{-1/3}/4). Real z > 0 is the
/// Im(z) -> 0^+ limit; the complex overload supports Im(z) > 0.
Eigen::MatrixXcd resolvent_block_spherical(double z, int l, int n_d_max);
Eigen::MatrixXcd resolvent_block_spherical(Complex z, int l, int n_d_max);

/// Elliptic resolvent block over the (n_d, l_d) pairs of one
/// (n_c, l_c, m) symmetry sector; beta < 1.
Eigen::MatrixXcd resolvent_block_elliptic(double z, double beta, int m,
                                          const std::vector<std::pair<int, int>>& nd_ld);
Eigen::MatrixXcd resolvent_block_elliptic(Complex z, double beta, int m,
                                          const std::vector<std::pair<int, int>>& nd_ld);

/// Rank-1 decay channel of one spherical (n_c, l) block.
struct DecayChannel {
    int n_c = 0;
    int l = 0;
    double rate = 0.0;          // Gamma_{n_c,l} [rad/us]
    Eigen::VectorXd zeta;       // unit vector over n_d = 0..n_d_max
    std::vector<int> members;   // global basis indices of the block states
};

enum class ZeMode { FixedPeak, DriveOmega };

/// Effective potential V_e = Lambda - i Gamma over the doubly-excited
/// block of `b`, ordered like the basis double states.
struct EffectivePotential {
    Eigen::MatrixXcd lambda;
    Eigen::MatrixXcd gamma;
    double z_e = 0.0;
    std::vector<DecayChannel> channels; // spherical bases only
};

EffectivePotential effective_potential(const basis::BasisIndex& b, const CloudGeometry& geom,
                                       ZeMode mode, double omega = 0.0);

std::vector<DecayChannel> spherical_decay_channels(const basis::BasisIndex& b,
                                                   const CloudGeometry& geom, double z_e);

/// Density of doubly-excited pair-interaction energies p(z), beta < 1
/// (negative beta = prolate cloud), and the location of its maximum.
double dos(double z, double beta);
double z_peak(double beta);

/// Radial oscillator eigenfunction R_{n,l}(r).
double radial_wavefunction(int n, int l, double r);

} // namespace superatom::interactions
