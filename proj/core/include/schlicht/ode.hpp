#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "schlicht/error.hpp"

namespace schlicht {

struct StepControl {
    double initial_step = 1e-3;
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.5;
    double min_step = 1e-14;
};

/// Adaptive Dormand-Prince 5(4) integrator for a complex scalar ODE
/// y' = rhs(t, y). The state persists between calls so a trajectory can be
/// advanced through a sequence of output times.
class DormandPrince {
public:
    DormandPrince(double t0, std::complex<double> y0, StepControl control)
        : t_(t0), y_(y0), h_(control.initial_step), control_(control) {}

    double time() const noexcept { return t_; }
    std::complex<double> value() const noexcept { return y_; }
    std::size_t accepted_steps() const noexcept { return accepted_; }
    std::size_t rejected_steps() const noexcept { return rejected_; }

    template <class Rhs>
    void advance_to(Rhs&& rhs, double t_end) {
        using C = std::complex<double>;
        // Butcher tableau of Dormand and Prince (1980).
        constexpr double a21 = 1.0 / 5.0;
        constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                         a54 = -212.0 / 729.0;
        constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                         a65 = -5103.0 / 18656.0;
        constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                         b6 = 11.0 / 84.0;
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                         e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

        while (t_ < t_end) {
            double h = std::min({h_, control_.max_step, t_end - t_});
            const bool last = h >= t_end - t_;
            const C k1 = rhs(t_, y_);
            const C k2 = rhs(t_ + h / 5.0, y_ + h * (a21 * k1));
            const C k3 = rhs(t_ + 3.0 * h / 10.0, y_ + h * (a31 * k1 + a32 * k2));
            const C k4 = rhs(t_ + 4.0 * h / 5.0, y_ + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const C k5 = rhs(t_ + 8.0 * h / 9.0, y_ + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const C k6 = rhs(t_ + h, y_ + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const C y_new = y_ + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const C k7 = rhs(t_ + h, y_new);
            const C err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double scale = control_.atol + control_.rtol * std::max(std::abs(y_), std::abs(y_new));
            const double ratio = std::abs(err) / scale;
            const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
            if (ratio <= 1.0) {
                t_ = last ? t_end : t_ + h;
                y_ = y_new;
                ++accepted_;
                // A step shortened to hit t_end says nothing about the next one.
                if (!last || factor < 1.0) h_ = h * factor;
            } else {
                ++rejected_;
                h_ = h * factor;
                if (h_ < control_.min_step)
                    throw Error(ErrorCode::SingularityApproach, "step size underflow in ODE integration");
            }
        }
    }

private:
    double t_;
    std::complex<double> y_;
    double h_;
    StepControl control_;
    std::size_t accepted_ = 0;
    std::size_t rejected_ = 0;
};

}  // namespace schlicht
