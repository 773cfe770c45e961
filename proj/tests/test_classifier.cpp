#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "latspec/classifier.hpp"
#include "latspec/errors.hpp"

using namespace latspec;

namespace {

int count_origin(const std::vector<EigenvalueRecord>& r, EigenOrigin o) {
    int c = 0;
    for (const auto& e : r)
        if (e.origin == o) c += e.multiplicity;
    return c;
}

// mu on the limiting hyperbola for a given lambda
double mu_on_hyperbola(const ThresholdData& t, double lambda) { return t.n + t.n / (lambda - t.crit.lambda_inf0); }

}  // namespace

TEST_CASE("even classification examples") {
    CHECK(classify_even({3, 0.0, 0.0}).hyperbola == HyperbolaRegion::G0);
    CHECK(classify_even({1, 0.0, 0.0}).hyperbola == HyperbolaRegion::GammaL);
    CHECK(classify_even({1, 0.0, 0.0}).cell == "B0");
    CHECK(classify_even({2, 0.0, 3.0}).hyperbola == HyperbolaRegion::G1);
    CHECK(classify_even({2, 0.0, 3.0}).h0 == doctest::Approx(-3.0));
}

TEST_CASE("odd classification examples") {
    CHECK(classify_odd({3, 0.0, 0.0}).side == LineSide::Below);
    CHECK(classify_odd({1, 1.0, 5.0}).side == LineSide::On);
    CHECK(classify_odd({1, 2.0, 5.0}).side == LineSide::Above);
    CHECK(classify_odd({1, 1.0 + 1e-12, 5.0}).near_boundary);
    CHECK(classify_odd({1, 1.0 + 1e-12, 5.0}, 0.0).side == LineSide::Above);
}

TEST_CASE("cell table") {
    CHECK(cell_label(3, HyperbolaRegion::G1, LineSide::Below, LineSide::Below) == "D1");
    CHECK(cell_label(3, HyperbolaRegion::G2, LineSide::Below, LineSide::Above) == "D5");
    CHECK(cell_label(3, HyperbolaRegion::GammaR, LineSide::On, LineSide::Above) == "B");
    CHECK(cell_label(3, HyperbolaRegion::GammaR, LineSide::Below, LineSide::On) == "A");
    CHECK(cell_label(3, HyperbolaRegion::G2, LineSide::Above, LineSide::Above) == "D7");
    CHECK(cell_label(1, HyperbolaRegion::G2, std::nullopt, LineSide::On) == "D3");
    CHECK(table_count(3, "B") == 4);
    CHECK(table_count(3, "A") == 1);
    CHECK(table_count(4, "D9") == 9);
    CHECK(table_count(2, "C4") == 4);
    CHECK_THROWS_AS(table_count(2, "Q1"), std::invalid_argument);
}

TEST_CASE("negative eigenvalue examples") {
    const auto r = negative_eigenvalues({1, 0.0, 1.0});
    REQUIRE(r.size() == 1);
    CHECK(r[0].z == doctest::Approx(1 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r[0].multiplicity == 1);
    CHECK(r[0].sector() == Sector::Even);

    bool odd = false;
    for (const auto& e : negative_eigenvalues({1, 2.0, 0.0}))
        if (e.origin == EigenOrigin::Odd) {
            odd = true;
            CHECK(std::abs(e.z + 0.25) < 1e-12);
        }
    CHECK(odd);
    CHECK(negative_eigenvalues({2, 0.0, 0.0}).empty());
    CHECK(negative_eigenvalues({4, 0.0, 0.0}).empty());
}

TEST_CASE("eigenstate formulas") {
    SUBCASE("ground state for n = 1 at (0, 1) is 1/(E - z)") {
        const auto rec = negative_eigenvalues({1, 0.0, 1.0}).front();
        const auto st = eigenstates({1, 0.0, 1.0}, rec);
        REQUIRE(st.size() == 1);
        CHECK(st[0].formula == FormulaId::E11);
        const auto num = st[0].numerator_coefficients();
        CHECK(num(1) == 0.0);
        Eigen::VectorXd p(1);
        p << 0.7;
        CHECK(st[0].evaluate(p) == doctest::Approx(num(0) / (1 - std::cos(0.7) - rec.z)));
    }
    SUBCASE("odd states are sin p_j/(E - z)") {
        const ModelParams par{3, 7.0, 0.0};
        for (const auto& rec : negative_eigenvalues(par))
            if (rec.origin == EigenOrigin::Odd) {
                const auto st = eigenstates(par, rec);
                REQUIRE(st.size() == 3);
                for (int j = 0; j < 3; ++j) {
                    CHECK(st[j].formula == FormulaId::EigenSin);
                    CHECK(st[j].w(j) == 1.0);
                    CHECK(st[j].w.norm() == 1.0);
                }
            }
    }
    SUBCASE("delta_c roots carry n - 1 difference vectors") {
        const ModelParams par{4, 8.5, 0.0};
        int found = 0;
        for (const auto& rec : negative_eigenvalues(par))
            if (rec.origin == EigenOrigin::EvenRankC) {
                const auto st = eigenstates(par, rec);
                REQUIRE(st.size() == 3);
                for (const auto& s : st) {
                    CHECK(s.formula == FormulaId::E2);
                    CHECK(s.w(0) == 0.0);
                    CHECK(s.w.sum() == doctest::Approx(0.0));
                }
                CHECK(st[0].w(1) == 1.0);
                CHECK(st[0].w(2) == -1.0);
                ++found;
            }
        CHECK(found == 1);
    }
}

TEST_CASE("every returned state solves the fixed-point equation") {
    for (int n = 1; n <= 4; ++n)
        for (double l : {-3.0, 0.0, 2.5, 6.0, 9.5})
            for (double m : {-4.0, 0.5, 3.0, 12.0}) {
                const ModelParams p{n, l, m};
                for (const auto& rec : negative_eigenvalues(p))
                    for (const auto& s : eigenstates(p, rec)) {
                        CAPTURE(n);
                        CAPTURE(l);
                        CAPTURE(m);
                        CHECK(residual(s) <= 1e-8);
                    }
            }
}

TEST_CASE("residual detects a wrong z and rejects w = 0") {
    const ModelParams p{2, 0.5, 4.0};
    const auto rec = negative_eigenvalues(p).front();
    auto s = eigenstates(p, rec).front();
    CHECK(residual(s) <= 1e-8);
    s.z += 0.01;
    CHECK(residual(s) > 1e-4);
    s.w.setZero();
    CHECK_THROWS_AS(residual(s), std::invalid_argument);
}

TEST_CASE("integrability from the vanishing order") {
    CHECK(integrability_class(3, 0) == Integrability::L1NotL2);
    CHECK(integrability_class(4, 0) == Integrability::L1NotL2);
    CHECK(integrability_class(5, 0) == Integrability::L2);
    CHECK(integrability_class(2, 2) == Integrability::L2);
    CHECK(integrability_class(1, 1) == Integrability::LepsNotL1);
    CHECK(integrability_class(2, 1) == Integrability::L1NotL2);
    CHECK(integrability_class(3, 1) == Integrability::L2);
    CHECK(integrability_class(1, 0) == Integrability::NotLeps);
    CHECK(integrability_class(2, 0) == Integrability::LepsNotL1);
}

TEST_CASE("threshold kinds by formula and dimension") {
    for (int n = 3; n <= 6; ++n) {
        const auto t = threshold_data(n);
        const auto r = threshold_report({n, 0.0, 1 / *t.g0.a}, t);
        REQUIRE(r.entries.size() == 1);
        CHECK(r.entries[0].formula == FormulaId::Z1);
        CHECK(r.kind == (n >= 5 ? ThresholdKind::Eigenvalue : ThresholdKind::Resonance));
        const double lam = 0.5 * t.crit.lambda_inf0;  // Gamma_l with lambda != 0
        const auto r0 = threshold_report({n, lam, mu_on_hyperbola(t, lam)}, t);
        REQUIRE(r0.entries.size() == 1);
        CHECK(r0.entries[0].formula == FormulaId::Z0);
        CHECK(r0.kind == (n >= 5 ? ThresholdKind::Eigenvalue : ThresholdKind::Resonance));
    }
    for (int n = 2; n <= 5; ++n) {
        const auto t = threshold_data(n);
        const auto rc = threshold_report({n, *t.crit.lambda_c, -7.0}, t);
        CHECK(rc.kind == ThresholdKind::Eigenvalue);
        CHECK(rc.multiplicity(ThresholdKind::Eigenvalue) == n - 1);
        CHECK(rc.entries.at(0).formula == FormulaId::Z2);
        const auto rs = threshold_report({n, t.crit.lambda_s, -7.0}, t);
        CHECK(rs.entries.at(0).formula == FormulaId::Sake);
        CHECK(rs.kind == (n == 2 ? ThresholdKind::Resonance : ThresholdKind::Eigenvalue));
        CHECK(rs.entries.at(0).multiplicity == n);
    }
    for (double mu : {-5.0, 0.0, 2.0, 30.0}) {
        const auto r = threshold_report({1, 1.0, mu});
        CHECK(r.kind == ThresholdKind::SuperResonance);
        CHECK(r.entries.back().sector == Sector::Odd);
    }
    CHECK(threshold_report({2, 0.0, 0.0}).kind == ThresholdKind::None);
    CHECK(threshold_report({1, 0.0, 0.0}).kind == ThresholdKind::None);
}

TEST_CASE("summaries per cell") {
    const auto t2 = threshold_data(2);
    const auto d4 = summarize({2, 3.6, 10.0}, t2);
    CHECK(d4.even.cell == "D4");
    CHECK(d4.total_count == 4);
    CHECK(d4.threshold.kind == ThresholdKind::None);
    CHECK(d4.essential_hi == 4.0);

    const auto d3 = summarize({1, 1.5, 5.0});
    CHECK(d3.even.cell == "D3");
    CHECK(d3.total_count == 3);

    const auto t3 = threshold_data(3);
    const double lc = *t3.crit.lambda_c;
    const auto b = summarize({3, lc, mu_on_hyperbola(t3, lc)}, t3);
    CHECK(b.even.cell == "B");
    CHECK(b.total_count == 4);
    CHECK(b.threshold.multiplicity(ThresholdKind::Resonance) == 1);
    CHECK(b.threshold.multiplicity(ThresholdKind::Eigenvalue) == 2);

    const auto t4 = threshold_data(4);
    const auto top = summarize({4, *t4.crit.lambda_c + 3.0, 40.0}, t4);
    CHECK(top.even.cell == "D9");
    CHECK(count_origin(top.eigenvalues, EigenOrigin::EvenRankR) == 2);
    CHECK(count_origin(top.eigenvalues, EigenOrigin::EvenRankC) == 3);
    CHECK(count_origin(top.eigenvalues, EigenOrigin::Odd) == 4);
}

TEST_CASE("region partition on a 200 x 200 grid") {
    for (int n = 1; n <= 3; ++n) {
        const auto t = threshold_data(n);
        const int N = 200;
        std::vector<std::string> lab(N * N);
        auto coord = [&](int i) { return -2.0 + 8.0 * i / (N - 1); };
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const ModelParams p{n, coord(i), coord(j)};
                const auto r = classify_even(p, t, 0.0);
                REQUIRE_NOTHROW(table_count(n, r.cell));
                lab[i * N + j] = r.cell;
                // tiny perturbations away from the curves keep the label
                if (std::abs(r.h0) > 1e-6 && std::abs(p.lambda - t.crit.lambda_s) > 1e-6 &&
                    (!t.crit.lambda_c || std::abs(p.lambda - *t.crit.lambda_c) > 1e-6))
                    for (double e : {-5e-10, 5e-10}) {
                        CHECK(classify_even({n, p.lambda + e, p.mu}, t, 0.0).cell == r.cell);
                        CHECK(classify_even({n, p.lambda, p.mu + e}, t, 0.0).cell == r.cell);
                    }
            }
        int isolated = 0;
        for (int i = 1; i + 1 < N; ++i)
            for (int j = 1; j + 1 < N; ++j) {
                const auto& c = lab[i * N + j];
                if (c != lab[(i - 1) * N + j] && c != lab[(i + 1) * N + j] && c != lab[i * N + j - 1] &&
                    c != lab[i * N + j + 1])
                    ++isolated;
            }
        CHECK(isolated == 0);
    }
}

TEST_CASE("delta_r root counts follow the hyperbola regions") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 12.0);
    for (int n = 1; n <= 3; ++n) {
        const auto t = threshold_data(n);
        std::map<HyperbolaRegion, int> seen;
        int guard = 0;
        while ((seen[HyperbolaRegion::G0] < 50 || seen[HyperbolaRegion::G1] < 50 || seen[HyperbolaRegion::G2] < 50) &&
               ++guard < 20000) {
            const ModelParams p{n, u(rng), u(rng) * 3};
            const auto r = classify_even(p, t);
            if (seen[r.hyperbola] >= 50) continue;
            ++seen[r.hyperbola];
            const int expected = r.hyperbola == HyperbolaRegion::G0 ? 0 : r.hyperbola == HyperbolaRegion::G1 ? 1 : 2;
            CAPTURE(n);
            CAPTURE(p.lambda);
            CAPTURE(p.mu);
            CHECK(count_origin(negative_eigenvalues(p, t), EigenOrigin::EvenRankR) == expected);
        }
        for (double lam : {-3.0, 0.3, t.crit.lambda_inf0 + 0.5, t.crit.lambda_inf0 + 4.0}) {
            const ModelParams p{n, lam, mu_on_hyperbola(t, lam)};
            const int expected = lam < t.crit.lambda_inf0 ? 0 : 1;
            CHECK(count_origin(negative_eigenvalues(p, t), EigenOrigin::EvenRankR) == expected);
        }
    }
}

TEST_CASE("asymptotes translate monotonically with z") {
    for (int n = 1; n <= 4; ++n) {
        double prev_l = -1, prev_m = -1;
        for (double z = -1e-6; z > -1e4; z *= 3.7) {
            const auto h = hyperbola({n, 0.0, 0.0}, green_values(n, z));
            if (prev_l > 0) {
                CHECK(h.lambda_inf > prev_l);
                CHECK(h.mu_inf > prev_m);
            }
            prev_l = h.lambda_inf;
            prev_m = h.mu_inf;
        }
    }
}

TEST_CASE("corrupted threshold data raises an error") {
    auto t = threshold_data(2);
    t.crit.lambda_c = 3.0;  // claims a delta_c root that does not exist
    CHECK_THROWS_AS(summarize({2, 3.2, -3.0}, t), NumericError);
}
