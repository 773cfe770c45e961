#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "latspec/birman_schwinger.hpp"

namespace latspec {

struct GoldenEntry {
    int n = 0;
    std::string quantity;  // a0, b0, c0, d0, alpha0, s0 / lambda_s, lambda_c, lambda_inf0
    double value = 0.0;
    std::string method;
    double tolerance = 0.0;
};

struct GoldenFile {
    std::string schema = "1";
    std::vector<GoldenEntry> entries;

    std::optional<double> find(int n, const std::string& quantity) const;
};

/// Threshold integrals for n = 1..n_max, each cross-checked between two quadratures
/// where both apply (NumericError on disagreement).
GoldenFile compute_green_golden(int n_max);
GoldenFile compute_critical_golden(const GoldenFile& green);

void write_golden(const std::filesystem::path& path, const GoldenFile& file);
GoldenFile read_golden(const std::filesystem::path& path);

/// LS_GOLDEN_DIR if set, otherwise the directory the project was built from.
std::filesystem::path golden_dir();

/// Threshold data from golden/green.json and golden/critical.json when they cover n,
/// otherwise computed.
ThresholdData threshold_data_cached(int n, const QuadratureConfig& cfg = {});

}  // namespace latspec
