#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include <Eigen/Dense>

#include "latspec/lattice_oracle.hpp"

using namespace latspec;

TEST_CASE("small Hamiltonians are direct transcriptions") {
    const auto h = build_hamiltonian(1, 1, 0.0, 0.0);
    Eigen::Matrix3d expect;
    expect << 1, -0.5, 0, -0.5, 1, -0.5, 0, -0.5, 1;
    CHECK((Eigen::MatrixXd(h.matrix) - expect).norm() == 0.0);
    const auto ev = lowest_eigenvalues(h, 3);
    REQUIRE(ev.eigenvalues.size() == 3);
    CHECK(ev.eigenvalues[0] == doctest::Approx(1 - std::sqrt(2.0) / 2));
    CHECK(ev.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(ev.eigenvalues[2] == doctest::Approx(1 + std::sqrt(2.0) / 2));

    const auto h2 = build_hamiltonian(2, 1, 0.0, 1.0);
    REQUIRE(h2.dimension() == 9);
    const Eigen::MatrixXd d(h2.matrix);
    for (int i = 0; i < 9; ++i) CHECK(d(i, i) == (i == 4 ? 1.0 : 2.0));
    CHECK(h2.site_index({0, 0}) == 4);
}

TEST_CASE("the matrix is exactly symmetric and carries the couplings") {
    const auto h = build_hamiltonian(3, 3, 1.7, -0.4);
    const Eigen::MatrixXd d(h.matrix);
    CHECK((d - d.transpose()).norm() == 0.0);
    const auto o = h.site_index({0, 0, 0});
    CHECK(d(o, o) == doctest::Approx(3.4));
    CHECK(d(h.site_index({1, 0, 0}), h.site_index({1, 0, 0})) == doctest::Approx(3 - 1.7 / 2));
    CHECK(d(h.site_index({1, 1, 0}), h.site_index({1, 1, 0})) == 3.0);
}

TEST_CASE("free Laplacian has no bound states") {
    for (int L : {5, 20, 40}) {
        const auto h = build_hamiltonian(1, L, 0.0, 0.0);
        const auto s = bound_states(h);
        CHECK(s.count_below == 0);
        CHECK(lowest_eigenvalues(h, 1).eigenvalues[0] > 0.0);
    }
    const double e10 = lowest_eigenvalues(build_hamiltonian(2, 10, 0.0, 0.0), 1).eigenvalues[0];
    const double e20 = lowest_eigenvalues(build_hamiltonian(2, 20, 0.0, 0.0), 1).eigenvalues[0];
    CHECK(e20 < e10);
    CHECK(e20 > 0.0);
}

TEST_CASE("n = 1 fixtures at L = 500") {
    const auto s = bound_states(build_hamiltonian(1, 500, 0.0, 1.0));
    REQUIRE(s.eigenvalues.size() == 1);
    CHECK(std::abs(s.eigenvalues[0] - (1 - std::sqrt(2.0))) < 1e-6);

    OracleConfig cfg;
    cfg.attribute_sectors = true;
    const auto t = bound_states(build_hamiltonian(1, 500, 2.0, 0.0), cfg);
    REQUIRE(t.count_below == 2);
    REQUIRE(t.sectors.size() == 2);
    bool quarter = false;
    for (std::size_t i = 0; i < 2; ++i)
        if (t.sectors[i] == Sector::Odd) quarter = std::abs(t.eigenvalues[i] + 0.25) < 1e-6;
    CHECK(quarter);
}

TEST_CASE("Lanczos agrees with the dense solver") {
    const auto h = build_hamiltonian(2, 12, 4.5, 9.0);
    OracleConfig dense, lanczos;
    lanczos.dense_limit = 10;
    const auto a = bound_states(h, dense), b = bound_states(h, lanczos);
    CHECK(a.solver == "dense");
    CHECK(b.solver == "block-lanczos");
    REQUIRE(a.count_below == b.count_below);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) CHECK(a.eigenvalues[i] == doctest::Approx(b.eigenvalues[i]).epsilon(1e-9));
    CHECK(count_below(h, -1e-3) == a.count_below);
}

TEST_CASE("comparison reports") {
    const auto c = compare({1, 0.0, 1.0}, {50, 100, 200});
    CHECK(c.all_counts_agree);
    CHECK(c.successive_agree);
    for (const auto& l : c.levels) CHECK(l.count == 1);

    const auto d = compare({2, 0.0, 3.0}, {10, 20, 30});
    CHECK(d.cell == "D1");
    for (const auto& l : d.levels) CHECK(l.count == 1);
    CHECK(d.monotone_improvement);

    const auto z = compare({2, 0.0, 0.0}, {6, 12});
    for (const auto& l : z.levels) CHECK(l.count == 0);
    CHECK(z.all_counts_agree);
}

TEST_CASE("bad oracle inputs") {
    CHECK_THROWS_AS(build_hamiltonian(1, 0, 0.0, 0.0), std::invalid_argument);
    OracleConfig tiny;
    tiny.max_sites = 100;
    CHECK_THROWS_AS(build_hamiltonian(3, 5, 0.0, 0.0, tiny), std::invalid_argument);
    const auto h = build_hamiltonian(1, 2, 0.0, 0.0);
    CHECK_THROWS_AS(lowest_eigenvalues(h, 0), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenvalues(h, 6), std::invalid_argument);
    OracleConfig pos;
    pos.theta = 0.1;
    CHECK_THROWS_AS(compare({1, 0.0, 1.0}, {10}, pos), std::invalid_argument);
}
