#include "latspec/birman_schwinger.hpp"

#include <cmath>
#include <limits>

namespace latspec {

void validate(const ModelParams& params) {
    if (params.n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (!std::isfinite(params.lambda) || !std::isfinite(params.mu))
        throw std::invalid_argument("couplings lambda and mu must be finite");
}

std::string to_string(Sector s) { return s == Sector::Even ? "even" : "odd"; }

double lambda_inf(const GreenValues& g) {
    if (g.z < 0.0) return require(g.a, "a") / require(g.b, "b");
    if (g.n <= 2) return 1.0;
    return require(g.a, "a") / require(g.b, "b");
}

HyperbolaPoint hyperbola(const ModelParams& params, const GreenValues& g) {
    validate(params);
    HyperbolaPoint h;
    h.lambda_inf = lambda_inf(g);
    h.mu_inf = params.n - g.z;
    h.value = (params.lambda - h.lambda_inf) * (params.mu - h.mu_inf) - params.n;
    return h;
}

DeltaValue delta_r(const ModelParams& params, const GreenValues& g, double region_tol) {
    validate(params);
    const int n = params.n;
    if (g.z == 0.0 && n <= 2) {
        const HyperbolaPoint h = hyperbola(params, g);
        if (std::abs(h.value) <= region_tol) return {1.0 - params.mu / n, false};
        return {std::numeric_limits<double>::infinity(), true};
    }
    const double a = require(g.a, "a");
    const double b = require(g.b, "b");
    const double al = require(g.alpha(), "alpha");
    const double v = (1.0 - params.mu * a) * (1.0 - params.lambda * al) - n * params.lambda * params.mu * b * b;
    return {v, false};
}

double delta_c(const ModelParams& params, const GreenValues& g) {
    validate(params);
    if (params.n == 1) return 1.0;
    const double cmd = require(g.c_minus_d, "c-d");
    return std::pow(params.lambda * cmd - 1.0, params.n - 1);
}

double delta_s(const ModelParams& params, const GreenValues& g) {
    validate(params);
    return std::pow(params.lambda * require(g.s, "s") - 1.0, params.n);
}

DeterminantValues determinants(const ModelParams& params, const GreenValues& g, double region_tol) {
    return {delta_r(params, g, region_tol), delta_c(params, g), delta_s(params, g)};
}

CriticalCouplings critical_couplings(int n, const GreenValues& g0) {
    if (g0.z != 0.0) throw std::invalid_argument("critical_couplings needs threshold values (z = 0)");
    if (g0.n != n) throw std::invalid_argument("critical_couplings: Green values for a different n");
    CriticalCouplings c;
    c.n = n;
    c.lambda_s = 1.0 / require(g0.s, "s");
    if (n >= 2) c.lambda_c = 1.0 / require(g0.c_minus_d, "c-d");
    c.lambda_inf0 = lambda_inf(g0);
    return c;
}

ThresholdData threshold_data(int n, const QuadratureConfig& cfg) {
    ThresholdData t;
    t.n = n;
    t.g0 = green_threshold(n, cfg);
    t.crit = critical_couplings(n, t.g0);
    return t;
}

}  // namespace latspec
