#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latspec/birman_schwinger.hpp"

namespace latspec {

// ---------------------------------------------------------------------------
// Regions of the coupling plane

enum class HyperbolaRegion { G0, GammaL, G1, GammaR, G2 };
enum class LineSide { Below, On, Above };  // lambda vs a critical coupling

std::string to_string(HyperbolaRegion r);
std::string odd_label(LineSide s);  // S-, S0, S+
std::string c_label(LineSide s);    // C-, C0, C+

struct EvenRegion {
    HyperbolaRegion hyperbola = HyperbolaRegion::G0;
    std::optional<LineSide> c_side;  // absent for n = 1
    LineSide s_side = LineSide::Below;
    std::string cell;  // D_k, B_k, S_k, C_k, A or B
    double h0 = 0.0;   // value of the limiting hyperbola function
    bool near_boundary = false;
};

struct OddRegion {
    LineSide side = LineSide::Below;
    bool near_boundary = false;
};

// A value within tol of a curve is snapped onto it; tol = 0 keeps open regions.
EvenRegion classify_even(const ModelParams& params, const ThresholdData& t, double tol = 1e-9);
EvenRegion classify_even(const ModelParams& params, double tol = 1e-9, const QuadratureConfig& cfg = {});
OddRegion classify_odd(const ModelParams& params, const ThresholdData& t, double tol = 1e-9);
OddRegion classify_odd(const ModelParams& params, double tol = 1e-9, const QuadratureConfig& cfg = {});

/// Cell name from the hyperbola region and the two vertical lines.
std::string cell_label(int n, HyperbolaRegion h, std::optional<LineSide> c_side, LineSide s_side);

/// Number of negative eigenvalues (with multiplicity) at every point of a cell.
int table_count(int n, const std::string& cell);

// ---------------------------------------------------------------------------
// Negative eigenvalues

enum class EigenOrigin { EvenRankR, EvenRankC, Odd };

std::string to_string(EigenOrigin o);

struct EigenvalueRecord {
    double z = 0.0;
    int multiplicity = 1;
    EigenOrigin origin = EigenOrigin::EvenRankR;

    Sector sector() const { return origin == EigenOrigin::Odd ? Sector::Odd : Sector::Even; }
};

struct SolverConfig {
    QuadratureConfig quad;
    double region_tol = 1e-9;
    double root_tol = 1e-13;  // relative accuracy of |z|
};

// One sample of a branch function on the z ladder, kept for error reports.
struct LadderSample {
    double z = 0.0;
    double value = 0.0;
};

std::vector<EigenvalueRecord> negative_eigenvalues(const ModelParams& params, const ThresholdData& t,
                                                   const SolverConfig& cfg = {});
std::vector<EigenvalueRecord> negative_eigenvalues(const ModelParams& params, const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Eigenfunctions f(p) = phi(p) / (E(p) - z)

enum class FormulaId { E1, E11, E2, EigenSin, Z0, Z1, Z2, Sake };

std::string to_string(FormulaId f);

struct EigenState {
    ModelParams params;
    Sector sector = Sector::Even;
    double z = 0.0;
    Eigen::VectorXd w;        // length n+1 (even) or n (odd)
    FormulaId formula = FormulaId::E1;
    Eigen::VectorXd moments;  // u = diag(1, 1/sqrt2, ...) G w

    /// Coefficients of the numerator: even (1, cos p_1, ..., cos p_n),
    /// odd (sin p_1, ..., sin p_n); equal to diag(mu, lambda/sqrt2, ...) w.
    Eigen::VectorXd numerator_coefficients() const;
    double numerator(const Eigen::Ref<const Eigen::VectorXd>& p) const;
    double evaluate(const Eigen::Ref<const Eigen::VectorXd>& p) const;
};

/// Basis of the eigenspace belonging to a negative eigenvalue.
std::vector<EigenState> eigenstates(const ModelParams& params, const EigenvalueRecord& record,
                                    const QuadratureConfig& cfg = {});

/// ||(G(z) - I) w||_inf / ||w||_inf with freshly evaluated integrals.
double residual(const EigenState& state, const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------
// Threshold analysis

enum class Integrability { L2, L1NotL2, LepsNotL1, NotLeps };

std::string to_string(Integrability c);

/// Vanishing order of the numerator at p = 0 (0, 1 or 2).
int vanishing_order(const EigenState& state, double tol = 1e-9);

/// Analytic decision from the vanishing order k: |f| ~ |p|^{k-2} near 0.
Integrability integrability_class(int n, int order);
Integrability integrability_class(const EigenState& state);

struct IntegrabilityProbe {
    double q = 1.0;
    std::vector<double> radii;      // exclusion radii h
    std::vector<double> integrals;  // int_{h < |p| < 1/2} |f|^q
    std::vector<double> increments; // shell contributions between successive radii
    double predicted_exponent = 0.0;  // shell integral ~ h^e
    double observed_ratio = 0.0;      // mean increment ratio over the last halvings
    bool divergent = false;
};

/// Numeric corroboration: integrals of |f|^q over |p| > h for h = 2^{-4} ... 2^{-12}.
IntegrabilityProbe probe_integrability(const EigenState& state, double q, int min_level = 4, int max_level = 12);

enum class ThresholdKind { None, Eigenvalue, Resonance, SuperResonance };

std::string to_string(ThresholdKind k);

struct ThresholdEntry {
    ThresholdKind kind = ThresholdKind::None;
    Sector sector = Sector::Even;
    FormulaId formula = FormulaId::Z0;
    Integrability membership = Integrability::L2;
    int multiplicity = 0;
    std::vector<EigenState> states;
};

struct ThresholdReport {
    // least integrable kind present: super-threshold > resonance > eigenvalue > none
    ThresholdKind kind = ThresholdKind::None;
    std::vector<ThresholdEntry> entries;

    int multiplicity(ThresholdKind k) const;
};

ThresholdReport threshold_report(const ModelParams& params, const ThresholdData& t, double tol = 1e-9);
ThresholdReport threshold_report(const ModelParams& params, double tol = 1e-9, const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------

struct SpectralSummary {
    ModelParams params;
    EvenRegion even;
    OddRegion odd;
    std::vector<EigenvalueRecord> eigenvalues;
    ThresholdReport threshold;
    int total_count = 0;
    double essential_lo = 0.0;
    double essential_hi = 0.0;
};

/// Throws ConsistencyError when the root count differs from the table count.
SpectralSummary summarize(const ModelParams& params, const ThresholdData& t, const SolverConfig& cfg = {});
SpectralSummary summarize(const ModelParams& params, const SolverConfig& cfg = {});

}  // namespace latspec
