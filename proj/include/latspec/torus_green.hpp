#pragma once

#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace latspec {

/// E(p) = sum_j (1 - cos p_j)
template <typename Derived>
typename Derived::Scalar dispersion(const Eigen::MatrixBase<Derived>& p) {
    using std::cos;
    typename Derived::Scalar e(0);
    for (Eigen::Index j = 0; j < p.size(); ++j) e += typename Derived::Scalar(1) - cos(p(j));
    return e;
}

double dispersion(std::span<const double> p, int n);

enum class QuadratureMethod { TensorTrapezoid, LaplaceBessel, Both };

std::string to_string(QuadratureMethod m);
QuadratureMethod parse_method(const std::string& s);

struct QuadratureConfig {
    QuadratureMethod method = QuadratureMethod::LaplaceBessel;
    // Trapezoid points per period; 0 picks 256 (n <= 2) or 128 (n = 3).
    int grid_points = 0;
    // Upper bound for the doubling loop; 0 picks a size-dependent cap.
    int max_grid_points = 0;
    // Laplace integrals are cut where e^{zt} < e^{-laplace_cutoff}; at z = 0 the
    // panels stop at laplace_tmax and an asymptotic tail is added.
    double laplace_cutoff = 60.0;
    double laplace_tmax = 1099511627776.0;  // 2^40
    int laplace_nodes = 16;
    // Relative tolerance; 0 picks 1e-10 for z <= -1e-3 and 1e-8 closer to 0.
    double tolerance = 0.0;
};

double effective_tolerance(const QuadratureConfig& cfg, double z);

/// Torus integrals a, b, c, d, s at z, plus c - d evaluated directly.
/// Empty optionals mark integrals that diverge at z = 0 (or d for n = 1).
struct GreenValues {
    int n = 0;
    double z = 0.0;
    std::optional<double> a, b, c, d, s;
    std::optional<double> c_minus_d;
    std::string method;
    double error_estimate = 0.0;

    /// alpha = c + (n-1) d, or c for n = 1
    std::optional<double> alpha() const;
    /// gamma = a alpha - n b^2
    std::optional<double> gamma() const;
};

// Throws std::invalid_argument naming the quantity when it is not finite.
double require(const std::optional<double>& v, const char* name);

GreenValues green_values(int n, double z, const QuadratureConfig& cfg = {});

GreenValues green_threshold(int n, const QuadratureConfig& cfg = {});
// Same without the n = 1 closed-form substitution for s(0).
GreenValues green_threshold_quadrature(int n, const QuadratureConfig& cfg = {});

/// 1 / (sqrt(-z) sqrt(2 - z))
double closed_form_a1(double z);

// n = 1 closed forms used as oracles and by the root finder.
double closed_form_b1(double z);
double closed_form_s1(double z);

}  // namespace latspec
