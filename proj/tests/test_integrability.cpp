#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "latspec/classifier.hpp"

using namespace latspec;

namespace {

EigenState threshold_state(const ModelParams& p) {
    const auto r = threshold_report(p);
    REQUIRE_FALSE(r.entries.empty());
    REQUIRE_FALSE(r.entries.front().states.empty());
    return r.entries.front().states.front();
}

}  // namespace

TEST_CASE("shell ratios match the analytic exponent") {
    const double a3 = *green_threshold(3).a;
    const auto f3 = threshold_state({3, 0.0, 1 / a3});
    CHECK(vanishing_order(f3) == 0);
    const auto l1 = probe_integrability(f3, 1.0);
    CHECK(l1.predicted_exponent == 1.0);
    CHECK(l1.observed_ratio == doctest::Approx(0.5).epsilon(0.02));
    CHECK_FALSE(l1.divergent);
    const auto l2 = probe_integrability(f3, 2.0);
    CHECK(l2.observed_ratio == doctest::Approx(2.0).epsilon(0.02));
    CHECK(l2.divergent);

    const double a5 = *green_threshold(5).a;
    const auto f5 = threshold_state({5, 0.0, 1 / a5});
    CHECK_FALSE(probe_integrability(f5, 2.0).divergent);
    CHECK(integrability_class(f5) == Integrability::L2);
}

TEST_CASE("(cos p1 - cos p2)/E is square integrable in two dimensions") {
    const auto t = threshold_data(2);
    const auto f = threshold_state({2, *t.crit.lambda_c, 0.0});
    CHECK(f.formula == FormulaId::Z2);
    CHECK(vanishing_order(f) == 2);
    CHECK(integrability_class(f) == Integrability::L2);
    CHECK(probe_integrability(f, 2.0).observed_ratio == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("sin p/E in one dimension: L^1/2 but not L^1") {
    const auto f = threshold_state({1, 1.0, 0.3});
    CHECK(f.formula == FormulaId::Sake);
    CHECK(integrability_class(f) == Integrability::LepsNotL1);
    const auto half = probe_integrability(f, 0.5);
    CHECK(half.observed_ratio == doctest::Approx(std::sqrt(0.5)).epsilon(0.02));
    CHECK_FALSE(half.divergent);
    const auto one = probe_integrability(f, 1.0, 4, 12);
    CHECK(one.divergent);
    CHECK(one.observed_ratio == doctest::Approx(1.0).epsilon(0.02));
    REQUIRE(one.increments.size() == 8);
    // equal increments per halving: logarithmic growth
    CHECK(one.increments.back() == doctest::Approx(one.increments[3]).epsilon(0.01));
}

TEST_CASE("probe input checks") {
    const auto rec = negative_eigenvalues({1, 0.0, 1.0}).front();
    const auto s = eigenstates({1, 0.0, 1.0}, rec).front();
    CHECK_THROWS_AS(probe_integrability(s, 1.0), std::invalid_argument);
    const auto f = threshold_state({1, 1.0, 0.0});
    CHECK_THROWS_AS(probe_integrability(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(probe_integrability(f, 1.0, 4, 6), std::invalid_argument);
}
