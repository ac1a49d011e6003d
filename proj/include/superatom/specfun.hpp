#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

// Self-contained special functions and quadrature shared by the whole
// library. Everything here is a pure function of its arguments.

namespace superatom::specfun {

using Complex = std::complex<double>;

/// Thrown when an evaluation would silently overflow or a quadrature
/// fails to converge.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Relative accuracy better than 1e-13 for |z| <= 20. Arguments in the
/// lower half plane are reduced with w(-z) = 2 exp(-z^2) - w(z); if that
/// reflection would overflow, a NumericError is thrown instead of
/// returning Inf.
Complex faddeeva(Complex z);

/// Wigner 3j symbol (l1 l2 l3; m1 m2 m3) for integer momenta, evaluated
/// with Racah's formula in log-factorial form. Returns 0 for any
/// combination violating |mi| <= li, the triangle rule or m1+m2+m3 = 0.
double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3);

/// Legendre polynomial P_l(u), |u| <= 1, by the three-term recurrence.
double legendre_p(int l, double u);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x).
double laguerre(int n, double alpha, double x);

/// k!! for k >= -1, with (-1)!! = 0!! = 1.
double double_factorial(int k);

/// log(k!!), overflow-safe companion of double_factorial.
double log_double_factorial(int k);

/// log(k!)
double log_factorial(int k);

/// Generalized binomial coefficient alpha(alpha-1)...(alpha-k+1)/k!,
/// valid for real alpha and integer k >= 0.
double gen_binomial(double alpha, int k);

/// Gauss-Legendre nodes and weights on [0,1], cached per order.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadRule& gauss_legendre01(int n);

struct QuadOptions {
    int initial_nodes = 64;
    int max_nodes = 1024;
    double tolerance = 1e-11;
};

/// Adaptive Gauss-Legendre estimate of \int_0^1 f(u) du. The node count
/// is doubled until two successive estimates agree to the tolerance;
/// non-convergence throws a NumericError carrying both estimates.
double quad01(const std::function<double(double)>& f, QuadOptions opt = {});
Complex quad01c(const std::function<Complex(double)>& f, QuadOptions opt = {});

} // namespace superatom::specfun
