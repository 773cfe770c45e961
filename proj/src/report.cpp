#include "latspec/report.hpp"

#include <charconv>
#include <cmath>

namespace latspec {

namespace {

Json value_or_null(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json vector_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Json to_json(const GreenValues& g) {
    Json j;
    j["n"] = g.n;
    j["z"] = g.z;
    const bool threshold = g.z == 0.0;
    auto flag = [&](const std::optional<double>& v, bool exists) {
        if (!exists) return "absent";
        return v ? "finite" : "divergent";
    };
    j["a"] = value_or_null(g.a);
    j["b"] = value_or_null(g.b);
    j["c"] = value_or_null(g.c);
    j["d"] = value_or_null(g.d);
    j["s"] = value_or_null(g.s);
    j["c_minus_d"] = value_or_null(g.c_minus_d);
    j["alpha"] = value_or_null(g.alpha());
    j["gamma"] = value_or_null(g.gamma());
    if (threshold) {
        j["alpha0"] = value_or_null(g.c_minus_d);
        j["s0"] = value_or_null(g.s);
    }
    Json flags;
    flags["a"] = flag(g.a, true);
    flags["b"] = flag(g.b, true);
    flags["c"] = flag(g.c, true);
    flags["d"] = flag(g.d, g.n >= 2);
    flags["s"] = flag(g.s, true);
    flags["c_minus_d"] = flag(g.c_minus_d, g.n >= 2);
    j["flags"] = flags;
    j["method"] = g.method;
    j["error_estimate"] = g.error_estimate;
    return j;
}

Json to_json(const EvenRegion& r) {
    Json j;
    j["hyperbola"] = to_string(r.hyperbola);
    j["c_side"] = r.c_side ? Json(c_label(*r.c_side)) : Json(nullptr);
    j["s_side"] = odd_label(r.s_side);
    j["cell"] = r.cell;
    j["h0"] = r.h0;
    j["near_boundary"] = r.near_boundary;
    return j;
}

Json to_json(const OddRegion& r) {
    Json j;
    j["label"] = odd_label(r.side);
    j["near_boundary"] = r.near_boundary;
    return j;
}

Json to_json(const EigenvalueRecord& r) {
    Json j;
    j["z"] = r.z;
    j["mult"] = r.multiplicity;
    j["sector"] = to_string(r.origin);
    return j;
}

Json to_json(const EigenState& s) {
    Json j;
    j["sector"] = to_string(s.sector);
    j["z"] = s.z;
    j["formula"] = to_string(s.formula);
    j["w"] = vector_json(s.w);
    j["moments"] = vector_json(s.moments);
    j["numerator"] = vector_json(s.numerator_coefficients());
    return j;
}

Json to_json(const ThresholdReport& r) {
    Json j;
    j["kind"] = to_string(r.kind);
    int total = 0;
    for (const auto& e : r.entries)
        if (e.kind == r.kind) total += e.multiplicity;
    j["mult"] = total;
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json x;
        x["kind"] = to_string(e.kind);
        x["sector"] = to_string(e.sector);
        x["formula"] = to_string(e.formula);
        x["membership"] = to_string(e.membership);
        x["mult"] = e.multiplicity;
        Json states = Json::array();
        for (const auto& s : e.states) states.push_back(to_json(s));
        x["states"] = states;
        entries.push_back(x);
    }
    j["entries"] = entries;
    return j;
}

Json to_json(const SpectralSummary& s) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = s.params.n;
    j["lambda"] = s.params.lambda;
    j["mu"] = s.params.mu;
    j["region"] = s.even.cell;
    j["even_region"] = to_json(s.even);
    j["odd_region"] = to_json(s.odd);
    Json ev = Json::array();
    for (const auto& e : s.eigenvalues) ev.push_back(to_json(e));
    j["eigenvalues"] = ev;
    j["count"] = s.total_count;
    j["threshold"] = to_json(s.threshold);
    j["essential_spectrum"] = Json::array({s.essential_lo, s.essential_hi});
    return j;
}

Json to_json(const OracleComparison& c) {
    Json j;
    j["n"] = c.params.n;
    j["lambda"] = c.params.lambda;
    j["mu"] = c.params.mu;
    j["theta"] = c.theta;
    j["cell"] = c.cell;
    j["predicted"] = c.predicted;
    Json levels = Json::array();
    for (const auto& l : c.levels) {
        Json x;
        x["L"] = l.L;
        x["dimension"] = l.dimension;
        x["count"] = l.count;
        x["expected"] = l.expected;
        x["counts_agree"] = l.counts_agree;
        x["eigenvalues"] = l.oracle_values;
        x["errors"] = l.matched_errors;
        if (!l.sectors.empty()) {
            Json sec = Json::array();
            for (auto s : l.sectors) sec.push_back(to_string(s));
            x["sectors"] = sec;
        }
        levels.push_back(x);
    }
    j["levels"] = levels;
    j["all_counts_agree"] = c.all_counts_agree;
    j["successive_agree"] = c.successive_agree;
    j["monotone_improvement"] = c.monotone_improvement;
    return j;
}

Json to_json(const CheckResult& c) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["worst_error"] = c.worst_error;
    j["threshold"] = c.threshold;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

Json to_json(const VerifyReport& r) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
    return j;
}

}  // namespace latspec
