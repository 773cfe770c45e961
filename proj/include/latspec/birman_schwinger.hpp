#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "latspec/torus_green.hpp"

namespace latspec {

struct ModelParams {
    int n = 1;
    double lambda = 0.0;
    double mu = 0.0;
};

// Throws std::invalid_argument for n < 1 or non-finite couplings.
void validate(const ModelParams& params);

enum class Sector { Even, Odd };

std::string to_string(Sector s);

template <typename Scalar = double>
struct BSMatrix {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Sector sector = Sector::Even;
    double z = 0.0;
    Matrix entries;
};

/// Even sector, indices 0 <-> c_0 and j <-> c_j:
///   row 0 = (mu a, lambda b/sqrt2, ...), column 0 below = sqrt2 mu b,
///   diagonal lambda c, off-diagonal lambda d.
/// Odd sector: lambda s I.
template <typename Scalar = double>
BSMatrix<Scalar> build_bs_matrix(const ModelParams& params, Sector sector, const GreenValues& g) {
    validate(params);
    if (g.n != params.n) throw std::invalid_argument("build_bs_matrix: Green values for a different n");
    const int n = params.n;
    const Scalar lam(params.lambda), mu(params.mu);
    BSMatrix<Scalar> m;
    m.sector = sector;
    m.z = g.z;
    if (sector == Sector::Odd) {
        const Scalar s(require(g.s, "s"));
        m.entries = (lam * s) * BSMatrix<Scalar>::Matrix::Identity(n, n);
        return m;
    }
    if (!g.a || !g.b || !g.c || (n >= 2 && !g.d))
        throw std::invalid_argument("even Birman-Schwinger matrix has divergent entries at this z");
    using std::sqrt;
    const Scalar r2 = sqrt(Scalar(2));
    const Scalar a(*g.a), b(*g.b), c(*g.c), d(n >= 2 ? *g.d : 0.0);
    m.entries.resize(n + 1, n + 1);
    m.entries(0, 0) = mu * a;
    for (int j = 1; j <= n; ++j) {
        m.entries(0, j) = lam * b / r2;
        m.entries(j, 0) = r2 * mu * b;
        for (int k = 1; k <= n; ++k) m.entries(j, k) = (j == k) ? lam * c : lam * d;
    }
    return m;
}

struct DeltaValue {
    double value = 0.0;
    bool divergent = false;  // tagged +infinity
};

struct DeterminantValues {
    DeltaValue delta_r;
    double delta_c = 1.0;
    double delta_s = 0.0;
};

struct HyperbolaPoint {
    double value = 0.0;  // H_z(lambda, mu)
    double lambda_inf = 0.0;
    double mu_inf = 0.0;
};

/// lambda_inf(z) = a/b for z < 0, X at z = 0 (1 for n <= 2, a(0)/b(0) otherwise).
double lambda_inf(const GreenValues& g);

HyperbolaPoint hyperbola(const ModelParams& params, const GreenValues& g);

/// (1 - mu a)(1 - lambda alpha) - n lambda mu b^2; at z = 0 for n <= 2 the finite
/// limit 1 - mu/n on the limiting hyperbola (|H_0| <= region_tol), +inf elsewhere.
DeltaValue delta_r(const ModelParams& params, const GreenValues& g, double region_tol = 1e-9);

/// (lambda (c - d) - 1)^{n-1}; 1 for n = 1.
double delta_c(const ModelParams& params, const GreenValues& g);

/// (lambda s - 1)^n
double delta_s(const ModelParams& params, const GreenValues& g);

DeterminantValues determinants(const ModelParams& params, const GreenValues& g, double region_tol = 1e-9);

struct CriticalCouplings {
    int n = 0;
    std::optional<double> lambda_c;  // 1 / lim (c - d), n >= 2
    double lambda_s = 0.0;           // 1 / s(0)
    double lambda_inf0 = 0.0;        // X
};

CriticalCouplings critical_couplings(int n, const GreenValues& g0);

/// Threshold integrals and critical couplings for one dimension, computed once and
/// shared by the classifier and the root finder.
struct ThresholdData {
    int n = 0;
    GreenValues g0;
    CriticalCouplings crit;
};

ThresholdData threshold_data(int n, const QuadratureConfig& cfg = {});

}  // namespace latspec
