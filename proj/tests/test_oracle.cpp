#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "superatom/oracle.hpp"
#include "superatom/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

using namespace superatom;
using namespace superatom::oracle;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();

CloudSample two_atoms(double separation_um) {
    CloudSample s;
    s.n_atoms = 2;
    s.sigma = 1.0;
    s.sigma_z = 1.0;
    s.positions.resize(2, 3);
    s.positions << 0.0, 0.0, 0.0, separation_um, 0.0, 0.0;
    return s;
}

} // namespace

TEST_CASE("cloud sampling: reproducibility and statistics") {
    const CloudSample a = sample_cloud(400, 5.0, 5.0, 1);
    const CloudSample b = sample_cloud(400, 5.0, 5.0, 1);
    CHECK((a.positions - b.positions).cwiseAbs().maxCoeff() == 0.0);

    const CloudSample c = sample_cloud(400, 5.0, 5.0, 2);
    CHECK((a.positions - c.positions).cwiseAbs().maxCoeff() > 0.0);

    for (int axis = 0; axis < 3; ++axis) {
        CHECK(std::abs(a.positions.col(axis).mean()) < 5.0 / std::sqrt(400.0));
        const double sd = std::sqrt(a.positions.col(axis).array().square().mean());
        CHECK(sd == doctest::Approx(1.0).epsilon(0.2));
    }
    CHECK_THROWS_AS(sample_cloud(1, 1.0, 1.0, 0), specfun::NumericError);
}

TEST_CASE("microscopic Hamiltonian construction") {
    // Distant atoms: negligible interaction, pair kept.
    const MicroHamiltonian far = build_micro(two_atoms(1e4), 1.0, 32.0, 1.0);
    REQUIRE(far.pairs.size() == 1);
    CHECK(std::abs(far.pair_energy[0]) < 1e-20);

    // Close atoms with a finite cutoff: pair discarded.
    const MicroHamiltonian near = build_micro(two_atoms(0.1), 1.0, 32.0, 1.0);
    CHECK(near.pairs.empty());
    CHECK(near.dim() == 3);

    // Infinite cutoff keeps every pair.
    const CloudSample cloud = sample_cloud(5, 1.0, 1.0, 7);
    const MicroHamiltonian all = build_micro(cloud, 1e3, kInf, 0.0);
    CHECK(all.dim() == 1 + 5 + 10);

    CHECK_THROWS_AS(build_micro(cloud, 1.0, 32.0, 0.0), specfun::NumericError);
}

TEST_CASE("symmetric projections on hand-built states") {
    const CloudSample cloud = sample_cloud(4, 1.0, 1.0, 3);
    const MicroHamiltonian h = build_micro(cloud, 0.0, kInf, 0.0);

    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(h.dim());
    vac(h.vacuum()) = 1.0;
    Projections p = symmetric_projections(vac, h);
    CHECK(p.p_r == 0.0);
    CHECK(p.p_sym2 == 0.0);
    CHECK(p.p_exc_total == 0.0);

    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(h.dim());
    for (int i = 0; i < 4; ++i) r(h.single(i)) = 0.5;
    p = symmetric_projections(r, h);
    CHECK(p.p_r == doctest::Approx(1.0));
    CHECK(p.p_sym2 == 0.0);
    CHECK(p.p_exc_total == doctest::Approx(1.0));

    Eigen::VectorXcd sym2 = Eigen::VectorXcd::Zero(h.dim());
    for (int q = 0; q < 6; ++q) sym2(h.pair_state(q)) = 1.0 / std::sqrt(6.0);
    p = symmetric_projections(sym2, h);
    CHECK(p.p_sym2 == doctest::Approx(1.0));
}

TEST_CASE("blockaded pair undergoes collective Rabi oscillations") {
    // Atoms close enough that the pair state is dropped: two-level system
    // |vac> <-> |R> with the collective frequency Omega.
    const double omega = 2.0 * kPi; // 1 MHz
    const MicroHamiltonian h = build_micro(two_atoms(0.05), 1.0, 32.0, omega);
    REQUIRE(h.pairs.empty());

    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(0.05 * k);
    const auto states = evolve_schrodinger(h, [&](double) { return omega; }, grid, 1e-10);
    for (size_t k = 0; k < grid.size(); ++k) {
        const Projections p = symmetric_projections(states[k], h);
        const double want = std::pow(std::sin(omega * grid[k] / 2.0), 2);
        CHECK(std::abs(p.p_r - want) < 1e-4 * std::max(want, 0.1));
        CHECK(std::abs(states[k].norm() - 1.0) < 1e-8);
    }
}

TEST_CASE("short-time excitation is interaction-independent") {
    const double omega = 2.0 * kPi;
    const double t = 0.01 / omega * 2.0; // Omega t = 0.02
    for (double c6 : {0.0, 1e2, 1e6}) {
        const CloudSample cloud = sample_cloud(3, 1.0, 1.0, 11);
        const MicroHamiltonian h = build_micro(cloud, c6, kInf, omega);
        const auto states = evolve_schrodinger(h, [&](double) { return omega; }, {t}, 1e-11);
        const Projections p = symmetric_projections(states[0], h);
        const double want = std::pow(omega * t / 2.0, 2);
        CHECK(p.p_exc_total == doctest::Approx(want).epsilon(1e-3));
    }
}

TEST_CASE("drive-only limit factorizes into independent atoms") {
    const double omega = 2.0 * kPi;

    // N = 2: the two-excitation space is complete, product solution exact.
    const MicroHamiltonian h2 = build_micro(two_atoms(50.0), 0.0, kInf, omega);
    std::vector<double> grid = {0.1, 0.25, 0.4};
    auto states = evolve_schrodinger(h2, [&](double) { return omega; }, grid, 1e-11);
    for (size_t k = 0; k < grid.size(); ++k) {
        const double th = omega * grid[k] / (2.0 * std::sqrt(2.0));
        const Projections p = symmetric_projections(states[k], h2);
        CHECK(p.p_r == doctest::Approx(2.0 * std::pow(std::sin(th) * std::cos(th), 2))
                           .epsilon(1e-6));
        CHECK(p.p_sym2 == doctest::Approx(std::pow(std::sin(th), 4)).epsilon(1e-6));
        CHECK(p.p_exc_total ==
              doctest::Approx(1.0 - std::pow(std::cos(th), 4)).epsilon(1e-6));
    }

    // N = 3, small angle: truncation error O(sin^6) below 1e-4.
    const CloudSample c3 = sample_cloud(3, 100.0, 100.0, 5);
    const MicroHamiltonian h3 = build_micro(c3, 0.0, kInf, omega);
    const double t3 = 0.3 / omega;
    states = evolve_schrodinger(h3, [&](double) { return omega; }, {t3}, 1e-11);
    const double th = omega * t3 / (2.0 * std::sqrt(3.0));
    const Projections p = symmetric_projections(states[0], h3);
    CHECK(std::abs(p.p_r - 3.0 * std::pow(std::sin(th), 2) * std::pow(std::cos(th), 4)) < 1e-4);
    CHECK(std::abs(p.p_sym2 - 3.0 * std::pow(std::sin(th), 4) * std::pow(std::cos(th), 2)) <
          1e-4);
    CHECK(std::abs(p.p_exc_total - (1.0 - std::pow(std::cos(th), 6))) < 1e-4);
}

TEST_CASE("truncated symmetric three-level model reproduced exactly") {
    // With C6 = 0 the totally symmetric sector of the truncated model is a
    // tridiagonal 3-level system: couplings Omega/2 (vac <-> R) and
    // Omega/sqrt(3) (R <-> sym2). Diagonalize it densely and compare.
    const double omega = 2.0 * kPi * 1.7;
    const CloudSample c3 = sample_cloud(3, 1.0, 1.0, 21);
    const MicroHamiltonian h3 = build_micro(c3, 0.0, kInf, omega);

    Eigen::Matrix3d hs;
    hs << 0.0, omega / 2.0, 0.0, omega / 2.0, 0.0, omega / std::sqrt(3.0), 0.0,
        omega / std::sqrt(3.0), 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(hs);

    for (double t : {0.11, 0.37, 0.93}) {
        const auto states = evolve_schrodinger(h3, [&](double) { return omega; }, {t}, 1e-11);
        const Projections p = symmetric_projections(states[0], h3);
        Eigen::Vector3cd amp = Eigen::Vector3cd::Zero();
        for (int k = 0; k < 3; ++k) {
            const std::complex<double> ph =
                std::exp(std::complex<double>(0.0, -es.eigenvalues()(k) * t));
            amp += ph * es.eigenvectors()(0, k) * es.eigenvectors().col(k).cast<std::complex<double>>();
        }
        CHECK(std::abs(p.p_r - std::norm(amp(1))) < 1e-6);
        CHECK(std::abs(p.p_sym2 - std::norm(amp(2))) < 1e-6);
        CHECK(std::abs(p.p_exc_total - (1.0 - std::norm(amp(0)))) < 1e-6);
    }
}

TEST_CASE("norm conservation and tolerance convergence") {
    const double omega = 2.0 * kPi * 3.0;
    const CloudSample cloud = sample_cloud(30, 5.0, 5.0, 17);
    const MicroHamiltonian h = build_micro(cloud, 2.0 * kPi * 1.5e5, 32.0, omega);
    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(0.05 * k);

    const auto fine = evolve_schrodinger(h, [&](double) { return omega; }, grid, 5e-11);
    const auto coarse = evolve_schrodinger(h, [&](double) { return omega; }, grid, 1e-10);
    for (size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(fine[k].norm() - 1.0) < 1e-8);
        const double pf = symmetric_projections(fine[k], h).p_r;
        const double pc = symmetric_projections(coarse[k], h).p_r;
        CHECK(std::abs(pf - pc) < 1e-6);
    }
}

TEST_CASE("ensemble statistics") {
    EnsembleParams params;
    params.n_atoms = 12;
    params.sigma = 5.0;
    params.sigma_z = 5.0;
    params.c6 = 2.0 * kPi * 1.5e5;
    params.omega_peak = 2.0 * kPi * 3.0;
    params.tol = 1e-9;
    std::vector<double> grid = {0.1, 0.2, 0.3};

    // Identical seeds: zero spread.
    const EnsembleResult same = ensemble_run(params, grid, {42, 42, 42, 42});
    CHECK(same.std_p_r.maxCoeff() == 0.0);

    // 32 distinct seeds: the spread of 8-realization group means tracks
    // the population std / sqrt(8).
    std::vector<std::uint64_t> seeds(32);
    std::iota(seeds.begin(), seeds.end(), 100);
    const EnsembleResult full = ensemble_run(params, grid, seeds);
    const int j = 2; // last time point
    double group_means[4];
    for (int gidx = 0; gidx < 4; ++gidx) {
        double acc = 0.0;
        for (int k = 0; k < 8; ++k) acc += full.p_r(8 * gidx + k, j);
        group_means[gidx] = acc / 8.0;
    }
    const double gm = (group_means[0] + group_means[1] + group_means[2] + group_means[3]) / 4.0;
    double gsd = 0.0;
    for (double g : group_means) gsd += (g - gm) * (g - gm);
    gsd = std::sqrt(gsd / 3.0);
    const double expected = full.std_p_r(j) / std::sqrt(8.0);
    CHECK(gsd / expected > 0.2);
    CHECK(gsd / expected < 4.0);

    CHECK_THROWS_AS(ensemble_run(params, grid, {1}), specfun::NumericError);
}
