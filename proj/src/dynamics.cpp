#include "superatom/dynamics.hpp"

#include "superatom/ode.hpp"
#include "superatom/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace superatom::dynamics {

namespace {

using specfun::NumericError;

constexpr double kPi = 3.14159265358979323846;

double poisson_pmf(int n, double lambda) {
    if (lambda <= 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(lambda) - lambda - specfun::log_factorial(n));
}

} // namespace

// ---------------------------------------------------------------------------
// Pulse

Pulse Pulse::constant(double value) {
    Pulse p;
    p.value_ = value;
    return p;
}

Pulse Pulse::table(std::vector<double> t, std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2)
        throw NumericError("Pulse::table needs >= 2 matched samples");
    for (size_t k = 1; k < t.size(); ++k)
        if (t[k] <= t[k - 1]) throw NumericError("Pulse::table times must increase");

    Pulse p;
    p.t_ = std::move(t);
    p.v_ = std::move(v);

    // Monotone (Fritsch-Carlson type) slopes: harmonic mean of adjacent
    // secants, zero at local extrema.
    const size_t n = p.t_.size();
    std::vector<double> delta(n - 1);
    for (size_t k = 0; k + 1 < n; ++k) delta[k] = (p.v_[k + 1] - p.v_[k]) / (p.t_[k + 1] - p.t_[k]);
    p.m_.resize(n);
    p.m_.front() = delta.front();
    p.m_.back() = delta.back();
    for (size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0)
            p.m_[k] = 0.0;
        else
            p.m_[k] = 2.0 * delta[k - 1] * delta[k] / (delta[k - 1] + delta[k]);
    }
    return p;
}

double Pulse::operator()(double t) const {
    if (is_constant()) return value_;
    if (t <= t_.front()) return v_.front();
    if (t >= t_.back()) return v_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const size_t k = (size_t)(it - t_.begin()) - 1;
    const double h = t_[k + 1] - t_[k];
    const double s = (t - t_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * v_[k] + (s3 - 2.0 * s2 + s) * h * m_[k] +
           (-2.0 * s3 + 3.0 * s2) * v_[k + 1] + (s3 - s2) * h * m_[k + 1];
}

double Pulse::peak() const {
    if (is_constant()) return std::abs(value_);
    double p = 0.0;
    for (double v : v_) p = std::max(p, std::abs(v));
    return p;
}

double Pulse::floor_value() const {
    if (is_constant()) return value_;
    double p = v_.front();
    for (double v : v_) p = std::min(p, v);
    return p;
}

double collective_omega(double n0, double omega1, double omega2, double delta) {
    if (delta == 0.0) throw NumericError("collective_omega: zero detuning");
    return std::sqrt(n0) * omega1 * omega2 / (2.0 * delta);
}

// ---------------------------------------------------------------------------
// Thermal ladder

ThermalLadder thermal_ladder(int n_max, double omega0) {
    if (n_max < 1) throw NumericError("thermal_ladder requires n_max >= 1");
    ThermalLadder lad;
    lad.n_max = n_max;

    const double half = (n_max % 2 == 0) ? 0.5 : -0.5;
    lad.gamma_t = omega0 * std::pow(2.0 / kPi, half) * specfun::double_factorial(n_max) /
                  specfun::double_factorial(n_max - 1);

    const int d = n_max + 1;
    lad.phi = Eigen::MatrixXcd::Zero(d, d);
    lad.phi(0, 0) = 1.0; // phi_0 = psi_0
    const double inv = 1.0 / std::sqrt((double)n_max);
    for (int n = 1; n <= n_max; ++n)
        for (int np = 1; np <= n_max; ++np) {
            const double ph = 2.0 * kPi * n * np / n_max;
            lad.phi(np, n) = inv * Complex(std::cos(ph), std::sin(ph));
        }

    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n <= n_max; ++n) lower(n - 1, n) = std::sqrt((double)n);
    lad.a_t = lad.phi * lower * lad.phi.adjoint();
    lad.terminal = lad.phi.col(n_max);
    return lad;
}

// ---------------------------------------------------------------------------
// Liouvillian construction

Liouvillian::Liouvillian(const basis::BasisIndex& b, const interactions::CloudGeometry& geom,
                         interactions::ZeMode ze_mode, const PulseShape& pulses,
                         const RateSet& rates, const StageOptions& options)
    : basis_(b), options_(options), rates_(rates), pulses_(pulses) {
    const bool mapping = options_.stage == Stage::DriveMapping;
    if (mapping && b.symmetry() != basis::Symmetry::Spherical)
        throw NumericError("mapping stage supports the spherical basis only");

    idx_psi000_ = b.symmetry() == basis::Symmetry::Spherical
                      ? b.index_of(basis::SphDoubleIdx{0, 0, 0})
                      : b.index_of(basis::DoubleIdx{0, 0, 0, 0, 0});

    // l = 0 singles carry the thermal ladder and the photon mapping.
    std::vector<int> psi_rows;
    for (int n = 0;; ++n) {
        const int g = b.index_of(basis::SingleIdx{n, 0});
        if (g < 0) break;
        psi_rows.push_back(g);
    }
    n_psi_ = (int)psi_rows.size();

    dim_ = b.size();
    if (mapping) {
        idx_1_ = dim_ + 0;
        idx_2_ = dim_ + 1;
        idx_e_ = dim_ + 2;
        idx_E_ = dim_ + 3;
        idx_e1_ = dim_ + 4;
        off_psi_e_ = dim_ + 5;
        off_psi_1_ = dim_ + 5 + n_psi_;
        dim_ += 5 + 2 * n_psi_;
    }

    for (int k = 0; k < b.double_count(); ++k) double_rows_.push_back(b.doubles_offset() + k);

    // Rydberg excitation count per state, for the pure-dephasing term.
    Eigen::VectorXd n_r = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < b.size(); ++i) {
        switch (b.kind(i)) {
        case basis::StateKind::Ground: n_r(i) = 0.0; break;
        case basis::StateKind::Single: n_r(i) = 1.0; break;
        case basis::StateKind::Double: n_r(i) = 2.0; break;
        case basis::StateKind::ContinuumDouble: n_r(i) = 2.0; break;
        case basis::StateKind::ContinuumSingle: n_r(i) = 1.0; break;
        }
    }
    if (mapping)
        for (int n = 0; n < n_psi_; ++n) {
            n_r(off_psi_e_ + n) = 1.0;
            n_r(off_psi_1_ + n) = 1.0;
        }
    deph_weight_.resize(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            const double dn = n_r(i) - n_r(j);
            deph_weight_(i, j) = -rates_.gamma_r * dn * dn;
        }

    cav_occ_ = Eigen::VectorXd::Zero(dim_);
    if (mapping) {
        cav_occ_(idx_1_) = 1.0;
        cav_occ_(idx_2_) = 2.0;
        cav_occ_(idx_e1_) = 1.0;
        for (int n = 0; n < n_psi_; ++n) cav_occ_(off_psi_1_ + n) = 1.0;
    }

    // Lowering operator S: |G><R| and the single-from-double amplitudes,
    // extended by |1><psi_0 1| + |e><psi_0 e| in the mapping stage.
    s_op_ = Eigen::MatrixXcd::Zero(dim_, dim_);
    const basis::CouplingMatrix coupling = basis::laser_coupling_matrix(b);
    if (options_.two_level_only) {
        s_op_(b.ground(), b.r_state()) = 1.0;
    } else {
        for (int k = 0; k < coupling.s.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(coupling.s, k); it; ++it)
                s_op_(it.row(), it.col()) = it.value();
    }
    if (mapping) {
        s_op_(idx_1_, off_psi_1_ + 0) = 1.0;
        s_op_(idx_e_, off_psi_e_ + 0) = 1.0;
    }

    h_const_ = Eigen::MatrixXcd::Zero(dim_, dim_);

    // Doppler ladder omega0 (a_T + a_T^dag) and its terminal decay.
    if (options_.thermal && rates_.omega0 > 0.0 && n_psi_ >= 2) {
        const ThermalLadder lad = thermal_ladder(n_psi_ - 1, rates_.omega0);
        for (int i = 0; i < n_psi_; ++i)
            for (int j = 0; j < n_psi_; ++j) {
                const Complex v = lad.a_t(i, j);
                h_const_(psi_rows[i], psi_rows[j]) += rates_.omega0 * v;
                h_const_(psi_rows[j], psi_rows[i]) += rates_.omega0 * std::conj(v);
            }
        thermal_bra_ = Eigen::VectorXcd::Zero(dim_);
        for (int i = 0; i < n_psi_; ++i) thermal_bra_(psi_rows[i]) = lad.terminal(i);
        gamma_t_ = lad.gamma_t;
    }

    // Mapping stage operators a and T, the cavity coupling g(a^dag T + h.c.),
    // the mapping drive T^dag S, and the perpendicular leak channels.
    if (mapping) {
        std::vector<std::tuple<int, int, double>> a_terms = {
            {b.ground(), idx_1_, 1.0}, {idx_e_, idx_e1_, 1.0}, {idx_1_, idx_2_, std::sqrt(2.0)}};
        std::vector<std::tuple<int, int, double>> t_terms = {
            {b.ground(), idx_e_, 1.0}, {idx_1_, idx_e1_, 1.0}, {idx_e_, idx_E_, std::sqrt(2.0)}};
        for (int n = 0; n < n_psi_; ++n) {
            a_terms.emplace_back(psi_rows[n], off_psi_1_ + n, 1.0);
            t_terms.emplace_back(psi_rows[n], off_psi_e_ + n, 1.0);
        }

        Eigen::MatrixXcd a_op = Eigen::MatrixXcd::Zero(dim_, dim_);
        Eigen::MatrixXcd t_op = Eigen::MatrixXcd::Zero(dim_, dim_);
        for (auto [u, v, c] : a_terms) a_op(u, v) = c;
        for (auto [u, v, c] : t_terms) t_op(u, v) = c;

        const Eigen::MatrixXcd ct = rates_.g * (a_op.adjoint() * t_op);
        h_const_ += ct + ct.adjoint();
        h_map_ = t_op.adjoint() * s_op_;

        const_collapse_.push_back({2.0 * rates_.gamma, std::move(t_terms)});
        const_collapse_.push_back({2.0 * rates_.kappa, std::move(a_terms)});

        if (options_.mapping_leaks) {
            for (int n = 1; n < n_psi_; ++n)
                leak_collapse_.push_back({1.0,
                                          {{b.ground(), psi_rows[n], 1.0},
                                           {idx_e_, off_psi_e_ + n, 1.0},
                                           {idx_1_, off_psi_1_ + n, 1.0}}});
            leak_collapse_.push_back({1.0, {{b.ground(), b.cont_single(), 1.0}}});
            leak_collapse_.push_back({2.0, {{b.cont_single(), b.cont_double(), 1.0}}});

            // Doubly-excited leak coefficients 2 delta_{kk'} - S_k S_{k'}.
            const int nd = b.double_count();
            Eigen::MatrixXd sd = Eigen::MatrixXd::Zero(b.single_count(), nd);
            for (int s = 0; s < b.single_count(); ++s)
                for (int k = 0; k < nd; ++k)
                    sd(s, k) = coupling.amplitude(b.singles_offset() + s, double_rows_[k]);
            leak_m_ = 2.0 * Eigen::MatrixXd::Identity(nd, nd) - sd.transpose() * sd;
        }
    }

    // Effective potential samples over the drive amplitude.
    if (!options_.two_level_only && b.double_count() > 0 && geom.c6 != 0.0) {
        std::vector<double> omegas;
        if (ze_mode == interactions::ZeMode::FixedPeak) {
            omegas.push_back(0.0); // unused in this mode
        } else if (pulses_.omega.is_constant()) {
            omegas.push_back(std::abs(pulses_.omega(0.0)));
        } else {
            const double hi = pulses_.omega.peak();
            if (!(hi > 0.0)) throw NumericError("shaped drive pulse has zero peak");
            const int np = std::max(2, options_.omega_grid_points);
            // Amplitudes below hi/np are clamped to the lowest sample.
            const double lo = std::max(std::abs(pulses_.omega.floor_value()), hi / np);
            for (int k = 0; k < np; ++k) omegas.push_back(lo + (hi - lo) * k / (np - 1.0));
        }
        for (double om : omegas) {
            const interactions::EffectivePotential ep =
                interactions::effective_potential(b, geom, ze_mode, om);
            PotentialSample smp;
            smp.omega = om;
            smp.lambda = ep.lambda.real();
            smp.gamma = ep.gamma.real();
            if (ep.lambda.imag().cwiseAbs().maxCoeff() > 1e-9 * (1.0 + smp.lambda.cwiseAbs().maxCoeff()) ||
                ep.gamma.imag().cwiseAbs().maxCoeff() > 1e-9 * (1.0 + smp.gamma.cwiseAbs().maxCoeff()))
                throw NumericError("effective potential has unexpected imaginary structure");
            z_e_ = ep.z_e;

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(smp.gamma);
            const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                const double g = es.eigenvalues()(i);
                if (g < -1e-10 * std::max(top, 1.0))
                    throw NumericError("negative decay-channel rate");
                if (g > 1e-12 * std::max(top, 1.0))
                    smp.channels.emplace_back(g, es.eigenvectors().col(i));
            }
            samples_.push_back(std::move(smp));
        }
    }
}

Eigen::MatrixXcd Liouvillian::initial_ground() const {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_, dim_);
    rho(basis_.ground(), basis_.ground()) = 1.0;
    return rho;
}

void Liouvillian::interpolated_potential(double omega, Eigen::MatrixXd& lambda,
                                         Eigen::MatrixXd& gamma) const {
    if (samples_.size() == 1) {
        lambda = samples_[0].lambda;
        gamma = samples_[0].gamma;
        return;
    }
    const double lo = samples_.front().omega, hi = samples_.back().omega;
    const double om = std::clamp(std::abs(omega), lo, hi);
    size_t k = 0;
    while (k + 2 < samples_.size() && samples_[k + 1].omega < om) ++k;
    const double w = (om - samples_[k].omega) / (samples_[k + 1].omega - samples_[k].omega);
    lambda = (1.0 - w) * samples_[k].lambda + w * samples_[k + 1].lambda;
    gamma = (1.0 - w) * samples_[k].gamma + w * samples_[k + 1].gamma;
}

Eigen::MatrixXcd Liouvillian::apply(double t, const Eigen::MatrixXcd& rho) const {
    const bool mapping = options_.stage == Stage::DriveMapping;
    const int nd = (int)double_rows_.size();
    const int ic = basis_.cont_double();

    Eigen::MatrixXcd h = h_const_;
    const double om = pulses_.omega(t);
    if (om != 0.0) h += (om / 2.0) * (s_op_ + s_op_.adjoint());

    Eigen::MatrixXd lam, gam;
    if (!samples_.empty()) {
        interpolated_potential(om, lam, gam);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j) h(double_rows_[i], double_rows_[j]) += lam(i, j);
    }

    double om_m = 0.0;
    if (mapping) {
        om_m = pulses_.omega_m(t);
        if (om_m != 0.0) h += (om_m / 2.0) * (h_map_ + h_map_.adjoint());
    }

    Eigen::MatrixXcd d = Complex(0.0, -1.0) * (h * rho - rho * h);

    // Pure dephasing 2 gamma_r L[n_r]: elementwise -(gamma_r)(n_i-n_j)^2.
    if (rates_.gamma_r > 0.0)
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) d(i, j) += deph_weight_(i, j) * rho(i, j);

    // Doubly-excited decay into |C>.
    if (!samples_.empty()) {
        const bool spectral =
            options_.gamma_form == DissipatorForm::Spectral && samples_.size() == 1;
        if (spectral) {
            for (const auto& [rate, v] : samples_[0].channels) {
                Complex jump = 0.0;
                for (int i = 0; i < nd; ++i)
                    for (int j = 0; j < nd; ++j)
                        jump += v(i) * v(j) * rho(double_rows_[i], double_rows_[j]);
                d(ic, ic) += 2.0 * rate * jump;
                // Anticommutator via the projector P = v v^T on the block.
                Eigen::VectorXcd u = Eigen::VectorXcd::Zero(dim_);
                for (int i = 0; i < nd; ++i) u(double_rows_[i]) = v(i);
                const Eigen::RowVectorXcd row = u.adjoint() * rho;
                const Eigen::VectorXcd col = rho * u;
                d.noalias() -= rate * (u * row);
                d.noalias() -= rate * (col * u.adjoint());
            }
        } else {
            // Explicit double-sum form: jump into C plus {Gamma, rho}.
            Complex jump = 0.0;
            for (int i = 0; i < nd; ++i)
                for (int j = 0; j < nd; ++j)
                    jump += gam(i, j) * rho(double_rows_[i], double_rows_[j]);
            d(ic, ic) += 2.0 * jump;
            Eigen::MatrixXcd gr(nd, dim_);
            for (int i = 0; i < nd; ++i) gr.row(i) = rho.row(double_rows_[i]);
            const Eigen::MatrixXcd grho = gam * gr; // (Gamma rho) on double rows
            for (int i = 0; i < nd; ++i) {
                d.row(double_rows_[i]) -= grho.row(i);
                d.col(double_rows_[i]) -= grho.row(i).adjoint();
            }
        }
    }

    // Thermal terminal decay into |c>.
    if (gamma_t_ > 0.0) {
        const int isink = basis_.cont_single();
        const Eigen::RowVectorXcd row = thermal_bra_.adjoint() * rho;
        const Eigen::VectorXcd col = rho * thermal_bra_;
        d(isink, isink) += 2.0 * gamma_t_ * (row * thermal_bra_)(0, 0);
        d.noalias() -= gamma_t_ * (thermal_bra_ * row);
        d.noalias() -= gamma_t_ * (col * thermal_bra_.adjoint());
    }

    // Sparse collapse channels (mapping stage).
    auto collapse = [&](const SparseCollapse& op, double scale) {
        const double w = scale * op.weight;
        if (w == 0.0) return;
        for (auto [ua, va, ca] : op.terms)
            for (auto [ub, vb, cb] : op.terms) d(ua, ub) += w * ca * cb * rho(va, vb);
        for (auto [u, v, c] : op.terms) {
            d.row(v) -= (0.5 * w * c * c) * rho.row(v);
            d.col(v) -= (0.5 * w * c * c) * rho.col(v);
        }
    };
    for (const auto& op : const_collapse_) collapse(op, 1.0);

    if (mapping && options_.mapping_leaks && om_m != 0.0 && rates_.gamma > 0.0) {
        const double f = om_m * om_m / (2.0 * rates_.gamma); // 2 |Omega_m|^2/(4 gamma)
        for (const auto& op : leak_collapse_) collapse(op, f);

        if (nd > 0) {
            const int isink = basis_.cont_single();
            Complex jump = 0.0;
            for (int i = 0; i < nd; ++i)
                for (int j = 0; j < nd; ++j)
                    jump += leak_m_(i, j) * rho(double_rows_[i], double_rows_[j]);
            d(isink, isink) += f * jump;
            Eigen::MatrixXcd mr(nd, dim_);
            for (int i = 0; i < nd; ++i) mr.row(i) = rho.row(double_rows_[i]);
            const Eigen::MatrixXcd mrho = (0.5 * f) * (leak_m_ * mr);
            for (int i = 0; i < nd; ++i) {
                d.row(double_rows_[i]) -= mrho.row(i);
                d.col(double_rows_[i]) -= mrho.row(i).adjoint();
            }
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Evolution and observables

ObservableRecord observables(const Eigen::MatrixXcd& rho, const Liouvillian& gen) {
    ObservableRecord r;
    r.p_g = rho(gen.index_ground(), gen.index_ground()).real();
    r.p_r = rho(gen.index_r(), gen.index_r()).real();
    r.p_psi000 = rho(gen.index_psi000(), gen.index_psi000()).real();
    r.p_exc_total = 1.0 - r.p_g;
    r.p_cont_double = rho(gen.index_cont_double(), gen.index_cont_double()).real();
    r.p_cont_single = rho(gen.index_cont_single(), gen.index_cont_single()).real();
    const Eigen::VectorXd& occ = gen.cavity_occupation();
    double n_cav = 0.0;
    for (int i = 0; i < occ.size(); ++i) n_cav += occ(i) * rho(i, i).real();
    r.n_cav = n_cav;
    return r;
}

Trajectory evolve(const Liouvillian& gen, const Eigen::MatrixXcd& rho0,
                  const std::vector<double>& t_grid, double rel_tol) {
    if (rho0.rows() != gen.dim() || rho0.cols() != gen.dim())
        throw NumericError("evolve: density matrix dimension mismatch");
    if (std::abs(rho0.trace() - Complex(1.0)) > 1e-8)
        throw NumericError("evolve: initial state is not normalized");
    if (t_grid.empty()) throw NumericError("evolve: empty time grid");
    if (t_grid.front() < 0.0) throw NumericError("evolve: negative start time");
    for (size_t k = 1; k < t_grid.size(); ++k)
        if (t_grid[k] <= t_grid[k - 1]) throw NumericError("evolve: time grid must increase");

    auto deriv = [&gen](double t, const Eigen::MatrixXcd& rho) { return gen.apply(t, rho); };

    Trajectory traj;
    traj.t = t_grid;
    traj.rho.reserve(t_grid.size());
    traj.obs.reserve(t_grid.size());

    Eigen::MatrixXcd rho = rho0;
    double t = 0.0, h_hint = 0.0;
    for (double tk : t_grid) {
        if (tk > t) {
            ode::integrate(deriv, rho, t, tk, rel_tol, &h_hint);
            t = tk;
        }
        const double drift = std::abs(rho.trace() - Complex(1.0));
        if (drift > 1e-6) {
            std::ostringstream msg;
            msg << "evolve: trace drift " << drift << " at t = " << tk;
            throw NumericError(msg.str());
        }
        Eigen::MatrixXcd out = 0.5 * (rho + rho.adjoint().eval());
        traj.obs.push_back(observables(out, gen));
        traj.rho.push_back(std::move(out));
    }
    return traj;
}

double photon_emission_number(const Trajectory& traj, double kappa0, double eta_mm) {
    double acc = 0.0;
    for (size_t k = 1; k < traj.t.size(); ++k)
        acc += 0.5 * (traj.obs[k - 1].n_cav + traj.obs[k].n_cav) * (traj.t[k] - traj.t[k - 1]);
    return eta_mm * 2.0 * kappa0 * acc;
}

// ---------------------------------------------------------------------------
// Photon-count detection model

void eit_count_distributions(double phi_g, double phi_r, double tau_r, double t_i,
                             int n_max_counts, std::vector<double>& p_g,
                             std::vector<double>& p_r) {
    if (phi_g < 0.0 || phi_r < 0.0 || !(t_i > 0.0) || !(tau_r > 0.0))
        throw NumericError("eit_count_distributions: invalid arguments");

    p_g.assign(n_max_counts + 1, 0.0);
    p_r.assign(n_max_counts + 1, 0.0);
    for (int n = 0; n <= n_max_counts; ++n) p_g[n] = poisson_pmf(n, phi_g * t_i);

    if (!std::isfinite(tau_r)) {
        for (int n = 0; n <= n_max_counts; ++n) p_r[n] = poisson_pmf(n, phi_r * t_i);
        return;
    }

    // Survival term plus the decay integral in the substituted variable
    // s = t/tau_r, truncated where e^{-s} is negligible.
    const double s_max = std::min(t_i / tau_r, 60.0);
    const double surv = std::exp(-t_i / tau_r);
    for (int n = 0; n <= n_max_counts; ++n) {
        const double integral = specfun::quad01(
            [&](double u) {
                const double s = s_max * u;
                const double t = s * tau_r;
                return poisson_pmf(n, phi_r * t + phi_g * (t_i - t)) * std::exp(-s);
            },
            {64, 1024, 1e-12});
        p_r[n] = poisson_pmf(n, phi_r * t_i) * surv + s_max * integral;
    }
}

} // namespace superatom::dynamics
