#pragma once

#include <vector>

namespace latspec {

// Exponentially scaled modified Bessel functions e^{-t} I_k(t) for t >= 0.
struct ScaledBessel {
    double i0 = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double i1_over_t = 0.0;  // e^{-t} I_1(t) / t, equal to (i0 - i2) / 2
};

ScaledBessel scaled_bessel(double t);

double scaled_bessel_i(int k, double t);

// Coefficients c_m of e^{-t} I_k(t) ~ (2 pi t)^{-1/2} sum_m c_m t^{-m}.
std::vector<double> bessel_asymptotic_coefficients(int k, int terms);

}  // namespace latspec
