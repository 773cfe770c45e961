#include "latspec/classifier.hpp"

#include "latspec/errors.hpp"

#include <sstream>

namespace latspec {

SpectralSummary summarize(const ModelParams& params, const ThresholdData& t, const SolverConfig& cfg) {
    SpectralSummary s;
    s.params = params;
    s.even = classify_even(params, t, cfg.region_tol);
    s.odd = classify_odd(params, t, cfg.region_tol);
    s.eigenvalues = negative_eigenvalues(params, t, cfg);
    s.threshold = threshold_report(params, t, cfg.region_tol);
    for (const auto& e : s.eigenvalues) s.total_count += e.multiplicity;
    s.essential_lo = 0.0;
    s.essential_hi = 2.0 * params.n;
    const int expected = table_count(params.n, s.even.cell);
    if (s.total_count != expected) {
        std::ostringstream msg;
        msg << "eigenvalue count " << s.total_count << " from the root finder differs from the table value "
            << expected << " for cell " << s.even.cell << " (n=" << params.n << ", lambda=" << params.lambda
            << ", mu=" << params.mu << ")";
        throw ConsistencyError(msg.str());
    }
    return s;
}

SpectralSummary summarize(const ModelParams& params, const SolverConfig& cfg) {
    validate(params);
    return summarize(params, threshold_data(params.n, cfg.quad), cfg);
}

}  // namespace latspec
