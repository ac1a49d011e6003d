#include "superatom/oracle.hpp"

#include "superatom/ode.hpp"
#include "superatom/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <thread>

namespace superatom::oracle {

namespace {

using specfun::NumericError;

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Standard normals from the (portable) mt19937_64 stream via Box-Muller,
// so identical seeds give identical clouds on every platform.
struct NormalGen {
    std::mt19937_64 eng;
    bool has_spare = false;
    double spare = 0.0;

    explicit NormalGen(std::uint64_t seed) {
        std::uint64_t s = seed;
        eng.seed(splitmix64(s));
    }
    double uniform() { return ((double)(eng() >> 11) + 0.5) * 0x1.0p-53; }
    double next() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double phi = 2.0 * kPi * uniform();
        spare = r * std::sin(phi);
        has_spare = true;
        return r * std::cos(phi);
    }
};

} // namespace

CloudSample sample_cloud(int n_atoms, double sigma, double sigma_z, std::uint64_t seed) {
    if (n_atoms < 2) throw NumericError("sample_cloud requires at least two atoms");
    CloudSample s;
    s.n_atoms = n_atoms;
    s.sigma = sigma;
    s.sigma_z = sigma_z;
    s.seed = seed;
    s.positions.resize(n_atoms, 3);
    NormalGen gen(seed);
    for (int i = 0; i < n_atoms; ++i)
        for (int a = 0; a < 3; ++a) s.positions(i, a) = gen.next();
    return s;
}

MicroHamiltonian build_micro(const CloudSample& sample, double c6, double cutoff_multiple,
                             double omega_peak) {
    MicroHamiltonian h;
    h.n_atoms = sample.n_atoms;
    h.drive_scale = 1.0 / std::sqrt((double)sample.n_atoms);
    if (std::isfinite(cutoff_multiple)) {
        if (!(omega_peak > 0.0))
            throw NumericError("build_micro: finite cutoff needs omega_peak > 0");
        h.e_max = cutoff_multiple * omega_peak / 2.0;
    } else {
        h.e_max = std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < sample.n_atoms; ++i)
        for (int j = i + 1; j < sample.n_atoms; ++j) {
            const double dx = (sample.positions(i, 0) - sample.positions(j, 0)) * sample.sigma;
            const double dy = (sample.positions(i, 1) - sample.positions(j, 1)) * sample.sigma;
            const double dz = (sample.positions(i, 2) - sample.positions(j, 2)) * sample.sigma_z;
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double v = c6 / (r2 * r2 * r2);
            if (std::abs(v) > h.e_max) continue;
            h.pairs.emplace_back(i, j);
            h.pair_energy.push_back(v);
        }
    return h;
}

Projections symmetric_projections(const Eigen::VectorXcd& state, const MicroHamiltonian& h) {
    Projections p;
    std::complex<double> r_amp = 0.0;
    for (int i = 0; i < h.n_atoms; ++i) r_amp += state(h.single(i));
    p.p_r = std::norm(r_amp) / h.n_atoms;

    std::complex<double> s_amp = 0.0;
    for (int q = 0; q < (int)h.pairs.size(); ++q) s_amp += state(h.pair_state(q));
    const double n_pairs = 0.5 * h.n_atoms * (h.n_atoms - 1.0);
    p.p_sym2 = std::norm(s_amp) / n_pairs;

    p.p_exc_total = 1.0 - std::norm(state(h.vacuum()));
    return p;
}

std::vector<Eigen::VectorXcd> evolve_schrodinger(const MicroHamiltonian& h,
                                                 const std::function<double(double)>& omega_of_t,
                                                 const std::vector<double>& t_grid, double tol) {
    if (t_grid.empty()) throw NumericError("evolve_schrodinger: empty time grid");
    if (t_grid.front() < 0.0) throw NumericError("evolve_schrodinger: negative start time");
    for (size_t k = 1; k < t_grid.size(); ++k)
        if (t_grid[k] <= t_grid[k - 1])
            throw NumericError("evolve_schrodinger: time grid must increase");

    const int n = h.n_atoms;
    const std::complex<double> mi(0.0, -1.0);
    auto deriv = [&](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        const double g = omega_of_t(t) / 2.0 * h.drive_scale;
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(y.size());
        std::complex<double> vac_in = 0.0;
        for (int i = 0; i < n; ++i) {
            vac_in += y(h.single(i));
            out(h.single(i)) += g * y(h.vacuum());
        }
        out(h.vacuum()) = g * vac_in;
        for (int q = 0; q < (int)h.pairs.size(); ++q) {
            const int ps = h.pair_state(q);
            const auto [i, j] = h.pairs[q];
            out(ps) += h.pair_energy[q] * y(ps) + g * (y(h.single(i)) + y(h.single(j)));
            out(h.single(i)) += g * y(ps);
            out(h.single(j)) += g * y(ps);
        }
        return mi * out;
    };

    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(h.dim());
    y(h.vacuum()) = 1.0;
    std::vector<Eigen::VectorXcd> states;
    states.reserve(t_grid.size());
    double t = 0.0, h_hint = 0.0;
    for (double tk : t_grid) {
        ode::integrate(deriv, y, t, tk, tol, &h_hint);
        t = tk;
        states.push_back(y);
    }
    return states;
}

EnsembleResult ensemble_run(const EnsembleParams& params, const std::vector<double>& t_grid,
                            const std::vector<std::uint64_t>& seeds, int n_threads) {
    if (seeds.size() < 2) throw NumericError("ensemble_run needs at least two realizations");
    const int n_r = (int)seeds.size();
    const int n_t = (int)t_grid.size();

    EnsembleResult res;
    res.t = t_grid;
    res.p_r.resize(n_r, n_t);
    res.p_sym2.resize(n_r, n_t);
    res.p_exc.resize(n_r, n_t);

    std::function<double(double)> omega = params.omega_of_t;
    if (!omega) omega = [peak = params.omega_peak](double) { return peak; };

    auto one = [&](int k) {
        const CloudSample cloud =
            sample_cloud(params.n_atoms, params.sigma, params.sigma_z, seeds[k]);
        const MicroHamiltonian h =
            build_micro(cloud, params.c6, params.cutoff_multiple, params.omega_peak);
        const auto states = evolve_schrodinger(h, omega, t_grid, params.tol);
        for (int j = 0; j < n_t; ++j) {
            const Projections p = symmetric_projections(states[j], h);
            res.p_r(k, j) = p.p_r;
            res.p_sym2(k, j) = p.p_sym2;
            res.p_exc(k, j) = p.p_exc_total;
        }
    };

    if (n_threads <= 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, n_r);
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < n_threads; ++w)
        workers.emplace_back([&]() {
            for (int k = next.fetch_add(1); k < n_r; k = next.fetch_add(1)) one(k);
        });
    for (auto& w : workers) w.join();

    auto reduce = [n_r](const Eigen::MatrixXd& m, Eigen::VectorXd& mean, Eigen::VectorXd& sd) {
        mean = m.colwise().mean();
        sd.resize(m.cols());
        for (int j = 0; j < m.cols(); ++j) {
            double acc = 0.0;
            for (int i = 0; i < m.rows(); ++i) {
                const double d = m(i, j) - mean(j);
                acc += d * d;
            }
            sd(j) = std::sqrt(acc / (n_r - 1.0));
        }
    };
    reduce(res.p_r, res.mean_p_r, res.std_p_r);
    reduce(res.p_sym2, res.mean_p_sym2, res.std_p_sym2);
    reduce(res.p_exc, res.mean_p_exc, res.std_p_exc);
    return res;
}

} // namespace superatom::oracle
