#include "superatom/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace superatom::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrtPi = 0.5641895835477562869480794516;

// Weideman's rational approximation of w(z) in the closed upper half
// plane. The expansion coefficients depend only on N and are computed
// once with a plain O(M^2) discrete Fourier transform.
constexpr int kWeidemanN = 64;

struct WeidemanTable {
    double L;
    std::array<double, kWeidemanN> a; // a[0] multiplies Z^(N-1)
};

WeidemanTable make_weideman_table() {
    WeidemanTable t;
    const int N = kWeidemanN;
    const int M = 2 * N;
    const int M2 = 2 * M;
    t.L = std::sqrt(N / std::sqrt(2.0));

    // Sampled function on the unit circle, f(theta) = (L^2+s^2) e^{-s^2}
    // with s = L tan(theta/2).
    std::vector<double> f(M2, 0.0);
    for (int k = -M + 1; k <= M - 1; ++k) {
        const double theta = k * kPi / M;
        const double s = t.L * std::tan(0.5 * theta);
        const double val = std::exp(-s * s) * (t.L * t.L + s * s);
        f[(k + M2) % M2] = val; // index shift puts theta=0 at slot 0
    }
    for (int n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (int k = 0; k < M2; ++k)
            acc += f[k] * std::cos(2.0 * kPi * n * k / M2);
        t.a[N - n] = acc / M2;
    }
    return t;
}

const WeidemanTable& weideman_table() {
    static const WeidemanTable t = make_weideman_table();
    return t;
}

// Valid for Im(z) >= 0.
Complex faddeeva_upper(Complex z) {
    if (std::abs(z) > 1.0e3) {
        // Laplace continued fraction; plenty accurate this far out.
        Complex r = 0.0;
        for (int k = 24; k >= 1; --k) r = 0.5 * k / (z - r);
        return Complex(0.0, kInvSqrtPi) / (z - r);
    }
    const WeidemanTable& t = weideman_table();
    const Complex iz(-z.imag(), z.real());
    const Complex d = t.L - iz;
    const Complex Z = (t.L + iz) / d;
    Complex p = t.a[0];
    for (int k = 1; k < kWeidemanN; ++k) p = p * Z + t.a[k];
    return 2.0 * p / (d * d) + kInvSqrtPi / d;
}

} // namespace

Complex faddeeva(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericError("faddeeva: non-finite argument");
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    // w(z) = 2 exp(-z^2) - w(-z)
    const Complex mz2 = -z * z;
    if (mz2.real() > 700.0)
        throw NumericError("faddeeva: exp(-z^2) overflows in lower-half-plane reflection");
    return 2.0 * std::exp(mz2) - faddeeva_upper(-z);
}

double log_factorial(int k) {
    if (k < 0) throw NumericError("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(k) + 1.0);
}

double double_factorial(int k) {
    if (k < -1) throw NumericError("double_factorial: argument < -1");
    if (k <= 0) return 1.0;
    double p = 1.0;
    for (int i = k; i >= 2; i -= 2) p *= i;
    return p;
}

double log_double_factorial(int k) {
    if (k < -1) throw NumericError("log_double_factorial: argument < -1");
    if (k <= 0) return 0.0;
    if (k % 2 == 0) {
        const int n = k / 2; // (2n)!! = 2^n n!
        return n * std::log(2.0) + log_factorial(n);
    }
    const int n = (k + 1) / 2; // (2n-1)!! = (2n)!/(2^n n!)
    return log_factorial(2 * n) - n * std::log(2.0) - log_factorial(n);
}

double gen_binomial(double alpha, int k) {
    if (k < 0) throw NumericError("gen_binomial: negative k");
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= (alpha - i) / (k - i);
    return p;
}

double legendre_p(int l, double u) {
    if (l < 0) throw NumericError("legendre_p: negative degree");
    double pm1 = 1.0;
    if (l == 0) return pm1;
    double p = u;
    for (int k = 2; k <= l; ++k) {
        const double pk = ((2 * k - 1) * u * p - (k - 1) * pm1) / k;
        pm1 = p;
        p = pk;
    }
    return p;
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw NumericError("laguerre: negative degree");
    double pm1 = 1.0;
    if (n == 0) return pm1;
    double p = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2 * k - 1 + alpha - x) * p - (k - 1 + alpha) * pm1) / k;
        pm1 = p;
        p = pk;
    }
    return p;
}

double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3) {
    if (l1 < 0 || l2 < 0 || l3 < 0) return 0.0;
    if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
    if (m1 + m2 + m3 != 0) return 0.0;
    if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;

    // Racah's formula, with all factorials in the log domain.
    const double log_delta = 0.5 * (log_factorial(l1 + l2 - l3) + log_factorial(l1 - l2 + l3) +
                                    log_factorial(-l1 + l2 + l3) - log_factorial(l1 + l2 + l3 + 1));
    const double log_m = 0.5 * (log_factorial(l1 + m1) + log_factorial(l1 - m1) +
                                log_factorial(l2 + m2) + log_factorial(l2 - m2) +
                                log_factorial(l3 + m3) + log_factorial(l3 - m3));

    const int t_min = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
    const int t_max = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
    double sum = 0.0;
    for (int t = t_min; t <= t_max; ++t) {
        const double log_term = log_factorial(t) + log_factorial(l3 - l2 + t + m1) +
                                log_factorial(l3 - l1 + t - m2) + log_factorial(l1 + l2 - l3 - t) +
                                log_factorial(l1 - t - m1) + log_factorial(l2 - t + m2);
        const double term = std::exp(log_delta + log_m - log_term);
        sum += (t % 2 == 0) ? term : -term;
    }
    const int phase = l1 - l2 - m3;
    return (((phase % 2) + 2) % 2 == 0) ? sum : -sum;
}

namespace {

QuadRule make_gauss_legendre01(int n) {
    // Nodes of P_n on (-1,1) by Newton iteration, then mapped to (0,1).
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5)); // Tricomi initial guess
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double pm1 = 1.0, p = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
                pm1 = p;
                p = pk;
            }
            dp = n * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = 0.5 * (1.0 - x); // descending x -> ascending node
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp); // includes the 1/2 interval scale... see below
    }
    // Weight on (-1,1) is 2/((1-x^2) P_n'^2); halved for the unit interval.
    return r;
}

const QuadRule& cached_rule(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre01(n)).first;
    return it->second;
}

template <typename T, typename F>
T quad_adaptive(const F& f, const QuadOptions& opt) {
    T prev{};
    bool have_prev = false;
    for (int n = opt.initial_nodes; n <= opt.max_nodes; n *= 2) {
        const QuadRule& r = gauss_legendre01(n);
        T acc{};
        for (int i = 0; i < n; ++i) acc += r.weights[i] * f(r.nodes[i]);
        if (have_prev) {
            const double scale = std::max(1.0, std::abs(prev));
            if (std::abs(acc - prev) < opt.tolerance * scale) return acc;
        }
        if (n * 2 > opt.max_nodes)
            throw NumericError("quad01: no convergence at max node count (estimates " +
                               std::to_string(std::abs(prev)) + ", " + std::to_string(std::abs(acc)) +
                               ")");
        prev = acc;
        have_prev = true;
    }
    throw NumericError("quad01: no convergence");
}

} // namespace

const QuadRule& gauss_legendre01(int n) { return cached_rule(n); }

double quad01(const std::function<double(double)>& f, QuadOptions opt) {
    return quad_adaptive<double>(f, opt);
}

Complex quad01c(const std::function<Complex(double)>& f, QuadOptions opt) {
    return quad_adaptive<Complex>(f, opt);
}

} // namespace superatom::specfun
