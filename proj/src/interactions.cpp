#include "superatom/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace superatom::interactions {

namespace {

using basis::norm_N;
using specfun::NumericError;

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXcd t_table_lower(Complex x, int j_max, int l) {
    // T_{0,0,0} = 2x [1 - i sqrt(pi x) w(-sqrt(x))], then climb l and j.
    const Complex sx = std::sqrt(x);
    Complex t00 = 2.0 * x * (1.0 - Complex(0.0, 1.0) * std::sqrt(kPi) * sx *
                                       specfun::faddeeva(-sx));
    for (int k = 0; k < l; ++k)
        t00 = 2.0 * x * (t00 + specfun::double_factorial(2 * k + 1));

    Eigen::MatrixXcd t(j_max + 1, j_max + 1);
    for (int jp = 0; jp <= j_max; ++jp) {
        t(0, jp) = (jp == 0) ? t00 : t(jp, 0);
        for (int j = 0; j + 1 <= j_max; ++j) {
            const Complex prev = (j == 0) ? Complex(0.0) : t(j - 1, jp);
            Complex next = ((2.0 * j + l + 1.5 - x) * t(j, jp) -
                            (j + l + 0.5) * prev) /
                           (j + 1.0);
            if (j == jp) {
                const double nn = norm_N(j, l);
                next -= x / ((j + 1.0) * nn * nn);
            }
            t(j + 1, jp) = next;
        }
    }
    return t;
}

// Block key helpers for error messages.
std::string block_name(int a, int b, int m, bool elliptic) {
    std::ostringstream os;
    if (elliptic)
        os << "(n_c=" << a << ", l_c=" << b << ", m=" << m << ")";
    else
        os << "(n_c=" << a << ", l=" << b << ")";
    return os.str();
}

double erf_scaled_ratio(double beta, double z) {
    // The beta-dependent factor of the density of states:
    //   erf(q)           for beta > 0, q = sqrt(beta/(1-beta)) / (2 z^{1/6})
    //   erfi(|q|)        for beta < 0 (prolate), analytic continuation
    // both divided by sqrt(|beta|), with the overall exponential
    // exp(-1/(4 z^{1/3})) folded in to stay finite for beta -> 1.
    const double zi6 = std::pow(z, -1.0 / 6.0);
    const double expo = -zi6 * zi6 / 4.0; // -1/(4 z^{1/3})
    if (beta == 0.0) {
        // limit (erf(q)/sqrt(beta)) -> q/sqrt(beta)*2/sqrt(pi) = zi6/sqrt(pi)
        return std::exp(expo) * zi6 / std::sqrt(kPi);
    }
    const double q = std::sqrt(std::abs(beta) / (1.0 - beta)) * zi6 / 2.0;
    if (beta > 0.0)
        return std::exp(expo) * std::erf(q) / std::sqrt(beta);
    // erfi(q) = exp(q^2) Im w(q); combine exponents before exponentiating.
    const double imw = specfun::faddeeva(Complex(q, 0.0)).imag();
    return std::exp(expo + q * q) * imw / std::sqrt(-beta);
}

} // namespace

Eigen::MatrixXcd t_table(Complex x, int j_max, int l) {
    if (x.imag() > 0.0)
        return t_table_lower(std::conj(x), j_max, l).conjugate();
    return t_table_lower(x, j_max, l);
}

Eigen::MatrixXcd q_table(Complex x, int j_max, int l) {
    const Complex w(-0.5, -std::sqrt(3.0) / 2.0); // e^{-2 i pi / 3}
    if (x.imag() == 0.0 && x.real() > 0.0) {
        return (t_table(x, j_max, l) + 2.0 * t_table(x * w, j_max, l).real().cast<Complex>()) /
               3.0;
    }
    return (t_table(x, j_max, l) + t_table(x * w, j_max, l) +
            t_table(x * std::conj(w), j_max, l)) /
           3.0;
}

Complex q_function(double x, int j, int jp, int l) {
    if (!(x > 0.0)) throw NumericError("q_function requires x > 0");
    return q_table(Complex(x, 0.0), std::max(j, jp), l)(j, jp);
}

namespace {

template <typename Z>
Eigen::MatrixXcd resolvent_spherical_impl(Z z, int l, int n_d_max) {
    const Complex zc(z);
    const Complex x = std::pow(zc, -1.0 / 3.0) / 4.0;
    const Eigen::MatrixXcd q = q_table(x, n_d_max, 2 * l);
    Eigen::MatrixXcd g(n_d_max + 1, n_d_max + 1);
    for (int i = 0; i <= n_d_max; ++i)
        for (int j = 0; j <= n_d_max; ++j) {
            const Complex delta = (i == j) ? 1.0 : 0.0;
            g(i, j) = (delta + norm_N(i, 2 * l) * norm_N(j, 2 * l) * q(i, j)) / zc;
        }
    return g;
}

template <typename Z>
Complex resolvent_element_elliptic(Z z, double beta, int m, int n, int l, int np, int lp) {
    const Complex zc(z);
    // z <Psi'|G|Psi> = delta + prefactor * sum_{l''} (angular) Integral(l'')
    const double pref = ((m % 2 == 0) ? 1.0 : -1.0) * norm_N(n, 2 * l) *
                        norm_N(np, 2 * lp) *
                        std::sqrt((4.0 * l + 1.0) * (4.0 * lp + 1.0));
    std::vector<double> ang; // (4l''+1) * 3j(-m,m,0) * 3j(0,0,0) per l''
    const int l_lo = std::abs(l - lp), l_hi = l + lp;
    double ang_norm = 0.0;
    for (int lpp = l_lo; lpp <= l_hi; ++lpp) {
        const double a = (4.0 * lpp + 1.0) *
                         specfun::wigner3j(2 * l, 2 * lp, 2 * lpp, -m, m, 0) *
                         specfun::wigner3j(2 * l, 2 * lp, 2 * lpp, 0, 0, 0);
        ang.push_back(a);
        ang_norm += std::abs(a);
    }
    if (ang_norm == 0.0) return (n == np && l == lp) ? 1.0 / zc : 0.0;

    std::vector<double> cj(n + 1), cjp(np + 1);
    for (int j = 0; j <= n; ++j) cj[j] = specfun::gen_binomial(l - lp + n - j - 1, n - j);
    for (int j = 0; j <= np; ++j) cjp[j] = specfun::gen_binomial(lp - l + np - j - 1, np - j);

    const Complex x0 = std::pow(zc, -1.0 / 3.0) / 4.0;
    const int j_top = std::max(n, np);
    auto integrand = [&](double u) -> Complex {
        double a_u = 0.0;
        for (int lpp = l_lo; lpp <= l_hi; ++lpp)
            a_u += ang[lpp - l_lo] * specfun::legendre_p(2 * lpp, u);
        if (a_u == 0.0) return 0.0;
        const Eigen::MatrixXcd q = q_table(x0 / (1.0 - beta * u * u), j_top, l + lp);
        Complex b_u = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (cj[j] == 0.0) continue;
            for (int jp = 0; jp <= np; ++jp)
                if (cjp[jp] != 0.0) b_u += cj[j] * cjp[jp] * q(j, jp);
        }
        return a_u * b_u;
    };
    const Complex integral = specfun::quad01c(integrand);
    const Complex delta = (n == np && l == lp) ? 1.0 : 0.0;
    return (delta + pref * integral) / zc;
}

template <typename Z>
Eigen::MatrixXcd resolvent_elliptic_impl(Z z, double beta, int m,
                                         const std::vector<std::pair<int, int>>& nd_ld) {
    const int sz = (int)nd_ld.size();
    Eigen::MatrixXcd g(sz, sz);
    for (int a = 0; a < sz; ++a)
        for (int b = a; b < sz; ++b) {
            // Symmetric under full (n,l) <-> (n',l') swap: the defining
            // integral has a real symmetric kernel.
            g(a, b) = resolvent_element_elliptic(z, beta, m, nd_ld[b].first, nd_ld[b].second,
                                                 nd_ld[a].first, nd_ld[a].second);
            g(b, a) = g(a, b);
        }
    return g;
}

} // namespace

Eigen::MatrixXcd resolvent_block_spherical(double z, int l, int n_d_max) {
    if (!(z > 0.0)) throw NumericError("resolvent_block_spherical requires z > 0");
    return resolvent_spherical_impl(z, l, n_d_max);
}

Eigen::MatrixXcd resolvent_block_spherical(Complex z, int l, int n_d_max) {
    return resolvent_spherical_impl(z, l, n_d_max);
}

Eigen::MatrixXcd resolvent_block_elliptic(double z, double beta, int m,
                                          const std::vector<std::pair<int, int>>& nd_ld) {
    if (!(z > 0.0)) throw NumericError("resolvent_block_elliptic requires z > 0");
    if (!(beta < 1.0)) throw NumericError("resolvent_block_elliptic requires beta < 1");
    return resolvent_elliptic_impl(z, beta, m, nd_ld);
}

Eigen::MatrixXcd resolvent_block_elliptic(Complex z, double beta, int m,
                                          const std::vector<std::pair<int, int>>& nd_ld) {
    if (!(beta < 1.0)) throw NumericError("resolvent_block_elliptic requires beta < 1");
    return resolvent_elliptic_impl(z, beta, m, nd_ld);
}

double radial_wavefunction(int n, int l, double r) {
    return std::pow(2.0 / kPi, 0.25) * norm_N(n, l) * std::pow(r, l) *
           std::exp(-r * r / 4.0) * specfun::laguerre(n, l + 0.5, r * r / 2.0);
}

double dos(double z, double beta) {
    if (!(z > 0.0)) throw NumericError("dos requires z > 0");
    if (!(beta < 1.0)) throw NumericError("dos requires beta < 1");
    // p(z) = exp(-1/(4 z^{1/3})) erf(...) / (12 sqrt(beta) z^{4/3});
    // the beta -> 0 limit gives exp(-1/(4 z^{1/3})) / (12 sqrt(pi) z^{3/2}).
    return erf_scaled_ratio(beta, z) / (12.0 * std::pow(z, 4.0 / 3.0));
}

double z_peak(double beta) {
    // p is unimodal in log z; golden-section maximization.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(1e-7), hi = std::log(1e-1);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = dos(std::exp(x1), beta), f2 = dos(std::exp(x2), beta);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = dos(std::exp(x2), beta);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = dos(std::exp(x1), beta);
        }
    }
    return std::exp((lo + hi) / 2.0);
}

std::vector<DecayChannel> spherical_decay_channels(const basis::BasisIndex& b,
                                                   const CloudGeometry& geom, double z_e) {
    if (b.symmetry() != basis::Symmetry::Spherical)
        throw NumericError("decay channels require a spherical basis");
    const double v0 = std::abs(geom.v0());
    const double r_c = 1.0 / (std::sqrt(2.0) * std::pow(z_e, 1.0 / 6.0));
    std::vector<DecayChannel> out;
    for (int l = 0; 2 * l <= b.n_max(); ++l) {
        for (int n_c = 0; n_c + 2 * l <= b.n_max(); ++n_c) {
            const int n_d_max = b.n_max() - n_c - 2 * l;
            DecayChannel ch;
            ch.n_c = n_c;
            ch.l = l;
            Eigen::VectorXd chi(n_d_max + 1);
            for (int n_d = 0; n_d <= n_d_max; ++n_d) {
                chi(n_d) = radial_wavefunction(n_d, 2 * l, r_c);
                const int idx = b.index_of(basis::SphDoubleIdx{n_c, n_d, l});
                if (idx < 0) throw NumericError("missing double state in channel block");
                ch.members.push_back(idx);
            }
            const double rsum = chi.squaredNorm();
            const double alpha = -(4.0 * kPi / 3.0) * std::pow(r_c, 9) * rsum;
            chi /= std::sqrt(rsum);

            const Eigen::MatrixXcd g = resolvent_block_spherical(z_e, l, n_d_max);
            const Eigen::MatrixXd g_r = g.real();
            Eigen::FullPivLU<Eigen::MatrixXd> lu(g_r);
            if (!lu.isInvertible())
                throw NumericError("G_r singular in block " +
                                   block_name(n_c, l, 0, false) + " at z_e");
            const Eigen::VectorXd gi_chi = lu.solve(chi);           // G_r^{-1} chi
            const double m1 = chi.dot(gi_chi);                      // <chi|G_r^{-1}|chi>
            const double m2 = gi_chi.squaredNorm();                 // <chi|G_r^{-2}|chi>
            ch.rate = -v0 * alpha * m2 / (1.0 + alpha * alpha * m1 * m1);
            ch.zeta = gi_chi / std::sqrt(m2);
            out.push_back(std::move(ch));
        }
    }
    return out;
}

EffectivePotential effective_potential(const basis::BasisIndex& b, const CloudGeometry& geom,
                                       ZeMode mode, double omega) {
    if (b.double_count() == 0) throw NumericError("basis has no double states");
    const double v0s = geom.v0();
    const double v0 = std::abs(v0s);
    const double beta = geom.beta();
    double z_e = 0.0;
    if (mode == ZeMode::FixedPeak) {
        z_e = z_peak(beta);
    } else {
        if (!(omega > 0.0))
            throw NumericError("drive-referenced z_e requires omega > 0");
        z_e = omega / (2.0 * v0);
    }

    const int nd = b.double_count();
    EffectivePotential eff;
    eff.z_e = z_e;
    eff.lambda = Eigen::MatrixXcd::Zero(nd, nd);
    eff.gamma = Eigen::MatrixXcd::Zero(nd, nd);

    struct Block {
        std::vector<int> rows; // indices into the double-state ordering
        Eigen::MatrixXcd g;
        std::string name;
    };
    std::vector<Block> blocks;

    if (b.symmetry() == basis::Symmetry::Spherical) {
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> by_key; // (n_d,row)
        const auto& ds = b.spherical_doubles();
        for (int i = 0; i < nd; ++i)
            by_key[{ds[i].n_c, ds[i].l}].push_back({ds[i].n_d, i});
        for (auto& [key, mem] : by_key) {
            std::sort(mem.begin(), mem.end());
            Block blk;
            for (auto& [n_d, row] : mem) blk.rows.push_back(row);
            blk.g = resolvent_block_spherical(z_e, key.second, (int)mem.size() - 1);
            blk.name = block_name(key.first, key.second, 0, false);
            blocks.push_back(std::move(blk));
        }
    } else {
        std::map<std::tuple<int, int, int>, std::vector<std::pair<std::pair<int, int>, int>>>
            by_key;
        const auto& ds = b.elliptic_doubles();
        for (int i = 0; i < nd; ++i)
            by_key[{ds[i].n_c, ds[i].l_c, ds[i].m}].push_back({{ds[i].n_d, ds[i].l_d}, i});
        for (auto& [key, mem] : by_key) {
            std::sort(mem.begin(), mem.end());
            Block blk;
            std::vector<std::pair<int, int>> pairs;
            for (auto& [p, row] : mem) {
                pairs.push_back(p);
                blk.rows.push_back(row);
            }
            blk.g = resolvent_block_elliptic(z_e, beta, std::get<2>(key), pairs);
            blk.name = block_name(std::get<0>(key), std::get<1>(key), std::get<2>(key), true);
            blocks.push_back(std::move(blk));
        }
    }

    for (const Block& blk : blocks) {
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(blk.g);
        if (!lu.isInvertible())
            throw NumericError("singular resolvent block " + blk.name + " at z_e=" +
                               std::to_string(z_e));
        const int sz = (int)blk.rows.size();
        const Eigen::MatrixXcd ve =
            v0 * (z_e * Eigen::MatrixXcd::Identity(sz, sz) - lu.inverse());
        Eigen::MatrixXcd lam = (ve + ve.adjoint()) / 2.0;
        Eigen::MatrixXcd gam = Complex(0.0, 0.5) * (ve - ve.adjoint());

        // Inversion round-off must not yield negative decay rates.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gam);
        Eigen::VectorXd ev = es.eigenvalues();
        const double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
        for (int i = 0; i < sz; ++i) {
            if (ev(i) < -1e-10 * top)
                throw NumericError("negative decay eigenvalue beyond tolerance in block " +
                                   blk.name);
            if (ev(i) < 0.0) ev(i) = 0.0;
        }
        gam = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        if (v0s < 0.0) lam = -lam; // attractive interaction, experimental

        for (int a = 0; a < sz; ++a)
            for (int c = 0; c < sz; ++c) {
                eff.lambda(blk.rows[a], blk.rows[c]) = lam(a, c);
                eff.gamma(blk.rows[a], blk.rows[c]) = gam(a, c);
            }
    }

    if (b.symmetry() == basis::Symmetry::Spherical)
        eff.channels = spherical_decay_channels(b, geom, z_e);
    return eff;
}

} // namespace superatom::interactions
