#include "latspec/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace latspec {

namespace {

ThresholdKind kind_of(Integrability c) {
    switch (c) {
        case Integrability::L2: return ThresholdKind::Eigenvalue;
        case Integrability::L1NotL2: return ThresholdKind::Resonance;
        case Integrability::LepsNotL1: return ThresholdKind::SuperResonance;
        case Integrability::NotLeps: return ThresholdKind::None;
    }
    return ThresholdKind::None;
}

int severity(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::None: return 0;
        case ThresholdKind::Eigenvalue: return 1;
        case ThresholdKind::Resonance: return 2;
        case ThresholdKind::SuperResonance: return 3;
    }
    return 0;
}

ThresholdEntry make_entry(const ModelParams& params, EigenOrigin origin, const QuadratureConfig& cfg) {
    EigenvalueRecord rec;
    rec.z = 0.0;
    rec.origin = origin;
    ThresholdEntry e;
    e.states = eigenstates(params, rec, cfg);
    e.sector = rec.sector();
    e.formula = e.states.front().formula;
    e.membership = integrability_class(e.states.front());
    e.kind = kind_of(e.membership);
    e.multiplicity = static_cast<int>(e.states.size());
    return e;
}

}  // namespace

std::string to_string(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::None: return "none";
        case ThresholdKind::Eigenvalue: return "threshold-eigenvalue";
        case ThresholdKind::Resonance: return "threshold-resonance";
        case ThresholdKind::SuperResonance: return "super-threshold-resonance";
    }
    return "?";
}

int ThresholdReport::multiplicity(ThresholdKind k) const {
    int m = 0;
    for (const auto& e : entries)
        if (e.kind == k) m += e.multiplicity;
    return m;
}

ThresholdReport threshold_report(const ModelParams& params, const ThresholdData& t, double tol) {
    const EvenRegion even = classify_even(params, t, tol);
    const OddRegion odd = classify_odd(params, t, tol);
    const int n = params.n;
    QuadratureConfig cfg;
    ThresholdReport r;
    // The limiting hyperbola carries a delta_r threshold state only for n >= 3; for
    // n = 1, 2 the integrals diverge there and no solution exists.
    const bool on_hyperbola =
        even.hyperbola == HyperbolaRegion::GammaL || even.hyperbola == HyperbolaRegion::GammaR;
    if (on_hyperbola && n >= 3) {
        // Snap lambda = 0 exactly so the (z1) formula is used on the mu axis.
        ModelParams p = params;
        if (std::abs(p.lambda) <= tol) p.lambda = 0.0;
        r.entries.push_back(make_entry(p, EigenOrigin::EvenRankR, cfg));
    }
    if (n >= 2 && even.c_side == LineSide::On) r.entries.push_back(make_entry(params, EigenOrigin::EvenRankC, cfg));
    if (odd.side == LineSide::On) r.entries.push_back(make_entry(params, EigenOrigin::Odd, cfg));
    for (const auto& e : r.entries)
        if (severity(e.kind) > severity(r.kind)) r.kind = e.kind;
    return r;
}

ThresholdReport threshold_report(const ModelParams& params, double tol, const QuadratureConfig& cfg) {
    validate(params);
    return threshold_report(params, threshold_data(params.n, cfg), tol);
}

}  // namespace latspec
