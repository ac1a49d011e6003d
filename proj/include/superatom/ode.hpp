#pragma once

#include "superatom/specfun.hpp"

#include <algorithm>
#include <cmath>

// Adaptive Dormand-Prince 5(4) integrator shared by the microscopic
// Schroedinger solver and the master-equation propagator. The state type
// only needs Eigen-style arithmetic plus norm().

namespace superatom::ode {

/// Advance y from t0 to t1 with local error controlled by tol (used as
/// both absolute and relative weight). h_hint, if given, carries the
/// step size across segment boundaries.
template <typename V, typename F>
void integrate(F&& f, V& y, double t0, double t1, double tol, double* h_hint = nullptr) {
    if (t1 <= t0) return;
    double h = (h_hint && *h_hint > 0.0) ? std::min(*h_hint, t1 - t0) : (t1 - t0) / 16.0;
    double t = t0;
    const double h_min = 1e-14 * std::max(1.0, std::abs(t1));
    V k1 = f(t, y);
    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < h_min) throw specfun::NumericError("ode::integrate: step underflow");

        const V k2 = f(t + h / 5.0, (y + h * (1.0 / 5.0) * k1).eval());
        const V k3 = f(t + 3.0 * h / 10.0, (y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2)).eval());
        const V k4 = f(t + 4.0 * h / 5.0,
                       (y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3)).eval());
        const V k5 =
            f(t + 8.0 * h / 9.0,
              (y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3 -
                        212.0 / 729.0 * k4))
                  .eval());
        const V k6 = f(t + h, (y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                        46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                        5103.0 / 18656.0 * k5))
                                  .eval());
        const V y5 = (y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                               2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6))
                         .eval();
        const V k7 = f(t + h, y5);
        const V err_v = (h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                              17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7))
                            .eval();

        const double scale = tol * (1.0 + y.norm());
        const double err = err_v.norm() / scale;
        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7; // first-same-as-last
        }
        const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
    }
    if (h_hint) *h_hint = h;
}

} // namespace superatom::ode
