#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "latspec/birman_schwinger.hpp"

namespace latspec {

struct TruncatedHamiltonian {
    int n = 1;
    int L = 1;
    double lambda = 0.0;
    double mu = 0.0;
    // Sites of [-L, L]^n in lexicographic order, last coordinate fastest.
    Eigen::SparseMatrix<double> matrix;

    Eigen::Index dimension() const { return matrix.rows(); }
    Eigen::Index site_index(const std::vector<int>& x) const;
};

struct OracleConfig {
    std::int64_t max_sites = 2'000'000;
    Eigen::Index dense_limit = 4000;
    double theta = -1e-3;
    bool attribute_sectors = false;
    std::uint64_t seed = 20240607;
    int max_basis = 1600;    // Lanczos basis size cap (columns)
    double lanczos_tol = 1e-9;
};

/// Diagonal n - V(x), hopping -1/2 between nearest neighbours inside the box.
TruncatedHamiltonian build_hamiltonian(int n, int L, double lambda, double mu, const OracleConfig& cfg = {});

struct OracleSpectrum {
    int L = 0;
    Eigen::Index dimension = 0;
    std::vector<double> eigenvalues;  // sorted ascending
    int count_below = 0;              // exact count below theta (Sylvester inertia)
    double theta = 0.0;
    std::vector<Sector> sectors;      // parity of each returned eigenvector, when requested
    std::string solver;
};

/// k smallest eigenvalues; count_below counts all eigenvalues below cfg.theta.
OracleSpectrum lowest_eigenvalues(const TruncatedHamiltonian& h, int k, const OracleConfig& cfg = {});

/// Every eigenvalue below cfg.theta (count from inertia, locations from the solver).
OracleSpectrum bound_states(const TruncatedHamiltonian& h, const OracleConfig& cfg = {});

/// Number of eigenvalues strictly below theta from an LDL^T factorization of H - theta.
int count_below(const TruncatedHamiltonian& h, double theta);

struct OracleLevel {
    int L = 0;
    Eigen::Index dimension = 0;
    int count = 0;
    int expected = 0;
    bool counts_agree = false;
    std::vector<double> oracle_values;
    std::vector<double> matched_errors;  // |z_oracle - z_bs| per predicted eigenvalue
    std::vector<Sector> sectors;
};

struct OracleComparison {
    ModelParams params;
    double theta = 0.0;
    std::string cell;
    std::vector<double> predicted;  // predicted eigenvalues below theta, with multiplicity
    std::vector<OracleLevel> levels;
    bool all_counts_agree = false;
    bool successive_agree = false;  // last two L values agree with each other and the table
    bool monotone_improvement = false;
};

OracleComparison compare(const ModelParams& params, const std::vector<int>& ladder, const OracleConfig& cfg = {});

}  // namespace latspec
