#include "latspec/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latspec {

namespace {

// Beyond this point the asymptotic series reaches full double precision
// (its smallest term is of order e^{-2t}).
constexpr double kSwitch = 25.0;

double series(int k, double t) {
    const double h = 0.5 * t;
    const double h2 = h * h;
    double term = 1.0;
    for (int j = 1; j <= k; ++j) term *= h / j;
    double sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= h2 / (static_cast<double>(m) * (m + k));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// sum_m (t/2)^{2m} / (m! (m+1)!) / 2 = I_1(t) / t
double series_i1_over_t(double t) {
    const double h2 = 0.25 * t * t;
    double term = 0.5;
    double sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= h2 / (static_cast<double>(m) * (m + 1));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double asymptotic(int k, double t) {
    const double mu = 4.0 * k * k;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 80; ++m) {
        const double odd = 2.0 * m - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * m * t);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * t);
}

}  // namespace

double scaled_bessel_i(int k, double t) {
    if (k < 0) throw std::invalid_argument("scaled_bessel_i: negative order");
    if (!(t >= 0.0)) throw std::invalid_argument("scaled_bessel_i: t must be >= 0");
    if (t < kSwitch) return std::exp(-t) * series(k, t);
    return asymptotic(k, t);
}

ScaledBessel scaled_bessel(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("scaled_bessel: t must be >= 0");
    ScaledBessel out;
    if (t < kSwitch) {
        const double e = std::exp(-t);
        out.i0 = e * series(0, t);
        out.i1 = e * series(1, t);
        out.i2 = e * series(2, t);
        out.i1_over_t = e * series_i1_over_t(t);
    } else {
        out.i0 = asymptotic(0, t);
        out.i1 = asymptotic(1, t);
        out.i2 = asymptotic(2, t);
        out.i1_over_t = out.i1 / t;
    }
    return out;
}

std::vector<double> bessel_asymptotic_coefficients(int k, int terms) {
    std::vector<double> c(static_cast<std::size_t>(terms), 0.0);
    if (terms == 0) return c;
    const double mu = 4.0 * k * k;
    c[0] = 1.0;
    for (int m = 1; m < terms; ++m) {
        const double odd = 2.0 * m - 1.0;
        c[m] = -c[m - 1] * (mu - odd * odd) / (8.0 * m);
    }
    return c;
}

}  // namespace latspec
