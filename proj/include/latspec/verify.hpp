#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latspec/birman_schwinger.hpp"
#include "latspec/lattice_oracle.hpp"

namespace latspec {

struct CheckResult {
    std::string name;
    bool passed = true;
    double worst_error = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Integral identities and inequalities on z samples log-spaced in [-50, -1e-4].
VerifyReport verify_identities(int n_lo, int n_hi, int samples = 20, const QuadratureConfig& cfg = {});

/// det(G_e - I) against delta_r delta_c for random (lambda, mu, z).
VerifyReport verify_factorization(int n_lo, int n_hi, int samples = 200, std::uint64_t seed = 7,
                                  const QuadratureConfig& cfg = {});

/// Monotonicity, limits and the sign of (a/b)' on z ladders spanning [-1e4, -1e-6].
VerifyReport verify_monotonicity(int n_lo, int n_hi, int points = 61, const QuadratureConfig& cfg = {});

/// Finite-lattice counts against the classifier on an L ladder.
VerifyReport verify_oracle(const ModelParams& params, const std::vector<int>& ladder, const OracleConfig& cfg = {});

}  // namespace latspec
