#include "latspec/golden.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#ifndef LATSPEC_SOURCE_GOLDEN_DIR
#define LATSPEC_SOURCE_GOLDEN_DIR "golden"
#endif

namespace latspec {

namespace {

using ojson = nlohmann::ordered_json;

void add(GoldenFile& f, int n, const std::string& q, double v, const std::string& method, double tol) {
    f.entries.push_back({n, q, v, method, tol});
}

}  // namespace

std::optional<double> GoldenFile::find(int n, const std::string& quantity) const {
    for (const auto& e : entries)
        if (e.n == n && e.quantity == quantity) return e.value;
    return std::nullopt;
}

GoldenFile compute_green_golden(int n_max) {
    GoldenFile f;
    for (int n = 1; n <= n_max; ++n) {
        QuadratureConfig cfg;
        cfg.method = n <= 3 ? QuadratureMethod::Both : QuadratureMethod::LaplaceBessel;
        const GreenValues g = green_threshold(n, cfg);
        const double tol = effective_tolerance(cfg, 0.0);
        if (g.a) add(f, n, "a0", *g.a, g.method, tol);
        if (g.b) add(f, n, "b0", *g.b, g.method, tol);
        if (g.c) add(f, n, "c0", *g.c, g.method, tol);
        if (g.d) add(f, n, "d0", *g.d, g.method, tol);
        if (g.c_minus_d) add(f, n, "alpha0", *g.c_minus_d, g.method, tol);
        add(f, n, "s0", *g.s, g.method, tol);
    }
    return f;
}

GoldenFile compute_critical_golden(const GoldenFile& green) {
    GoldenFile f;
    int n_max = 0;
    for (const auto& e : green.entries) n_max = std::max(n_max, e.n);
    for (int n = 1; n <= n_max; ++n) {
        const auto s0 = green.find(n, "s0");
        if (!s0) continue;
        std::string method = "derived";
        double tol = 0.0;
        for (const auto& e : green.entries)
            if (e.n == n && e.quantity == "s0") {
                method = e.method;
                tol = e.tolerance;
            }
        add(f, n, "lambda_s", 1.0 / *s0, method, tol);
        if (auto al = green.find(n, "alpha0")) add(f, n, "lambda_c", 1.0 / *al, method, tol);
        double X = 1.0;
        if (n >= 3) X = green.find(n, "a0").value() / green.find(n, "b0").value();
        add(f, n, "lambda_inf0", X, method, tol);
    }
    return f;
}

void write_golden(const std::filesystem::path& path, const GoldenFile& file) {
    ojson doc;
    doc["schema"] = file.schema;
    doc["entries"] = ojson::array();
    for (const auto& e : file.entries) {
        ojson j;
        j["n"] = e.n;
        j["quantity"] = e.quantity;
        j["value"] = e.value;
        j["method"] = e.method;
        j["tolerance"] = e.tolerance;
        doc["entries"].push_back(j);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

GoldenFile read_golden(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    const ojson doc = ojson::parse(in);
    GoldenFile f;
    f.schema = doc.at("schema").get<std::string>();
    for (const auto& j : doc.at("entries"))
        f.entries.push_back({j.at("n").get<int>(), j.at("quantity").get<std::string>(), j.at("value").get<double>(),
                             j.at("method").get<std::string>(), j.at("tolerance").get<double>()});
    return f;
}

std::filesystem::path golden_dir() {
    if (const char* env = std::getenv("LS_GOLDEN_DIR"); env && *env) return env;
    return LATSPEC_SOURCE_GOLDEN_DIR;
}

ThresholdData threshold_data_cached(int n, const QuadratureConfig& cfg) {
    const auto dir = golden_dir();
    std::error_code ec;
    if (std::filesystem::exists(dir / "green.json", ec)) {
        try {
            const GoldenFile green = read_golden(dir / "green.json");
            ThresholdData t;
            t.n = n;
            t.g0.n = n;
            t.g0.z = 0.0;
            t.g0.s = green.find(n, "s0");
            t.g0.c_minus_d = green.find(n, "alpha0");
            t.g0.a = green.find(n, "a0");
            t.g0.b = green.find(n, "b0");
            t.g0.c = green.find(n, "c0");
            t.g0.d = green.find(n, "d0");
            t.g0.method = "golden";
            const bool complete = t.g0.s && (n < 2 || t.g0.c_minus_d) && (n < 3 || (t.g0.a && t.g0.b && t.g0.c && t.g0.d));
            if (complete) {
                t.crit = critical_couplings(n, t.g0);
                return t;
            }
        } catch (const std::exception&) {
            // unreadable golden file: fall through to computing
        }
    }
    return threshold_data(n, cfg);
}

}  // namespace latspec
