#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "latspec/torus_green.hpp"

using namespace latspec;

namespace {
const double pi = std::acos(-1.0);

QuadratureConfig with(QuadratureMethod m) {
    QuadratureConfig q;
    q.method = m;
    return q;
}
}  // namespace

TEST_CASE("dispersion") {
    CHECK(dispersion(Eigen::Vector3d::Zero()) == 0.0);
    CHECK(dispersion(Eigen::Vector3d::Constant(pi)) == doctest::Approx(6.0));
    CHECK(dispersion(Eigen::Vector2d(pi / 2, pi / 2)) == doctest::Approx(2.0));
    const std::vector<double> p{pi / 2, pi / 2};
    CHECK(dispersion(p, 2) == doctest::Approx(2.0));
    CHECK_THROWS_AS(dispersion(p, 3), std::invalid_argument);
}

TEST_CASE("n = 1 values at z = -1") {
    for (auto m : {QuadratureMethod::LaplaceBessel, QuadratureMethod::TensorTrapezoid, QuadratureMethod::Both}) {
        const auto g = green_values(1, -1.0, with(m));
        CHECK(*g.a == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(*g.b == doctest::Approx(2 / std::sqrt(3.0) - 1).epsilon(1e-12));
        CHECK_FALSE(g.d.has_value());
        CHECK_FALSE(g.c_minus_d.has_value());
    }
}

TEST_CASE("n = 1 closed forms") {
    CHECK(closed_form_a1(-1.0) == doctest::Approx(0.5773502691896258));
    CHECK(closed_form_a1(1 - std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(closed_form_a1(-1e12) < 1e-11);
    CHECK_THROWS_AS(closed_form_a1(0.0), std::invalid_argument);
    CHECK(closed_form_s1(0.0) == 1.0);
    CHECK(closed_form_s1(-0.25) == doctest::Approx(0.5).epsilon(1e-15));
    for (double z : {-1e-6, -1e-3, -0.25, -3.0, -200.0}) {
        const auto g = green_values(1, z);
        CHECK(*g.a == doctest::Approx(closed_form_a1(z)).epsilon(1e-9));
        CHECK(*g.b == doctest::Approx(closed_form_b1(z)).epsilon(1e-9));
        CHECK(*g.s == doctest::Approx(closed_form_s1(z)).epsilon(1e-9));
        CHECK(*g.a * *g.s == doctest::Approx(*g.b).epsilon(1e-9));
    }
}

TEST_CASE("the two quadratures agree for n <= 3") {
    for (int n = 1; n <= 3; ++n)
        for (double z : {-10.0, -2.0, -0.5, -0.05, -1e-3}) {
            const auto l = green_values(n, z, with(QuadratureMethod::LaplaceBessel));
            const auto t = green_values(n, z, with(QuadratureMethod::TensorTrapezoid));
            CAPTURE(n);
            CAPTURE(z);
            for (auto f : {&GreenValues::a, &GreenValues::b, &GreenValues::c, &GreenValues::s, &GreenValues::c_minus_d}) {
                REQUIRE((l.*f).has_value() == (t.*f).has_value());
                if ((l.*f).has_value()) CHECK(*(l.*f) == doctest::Approx(*(t.*f)).epsilon(1e-8));
            }
        }
}

TEST_CASE("threshold constants") {
    const auto g1 = green_threshold(1);
    CHECK(*g1.s == 1.0);
    CHECK_FALSE(g1.a.has_value());
    CHECK(*green_threshold_quadrature(1).s == doctest::Approx(1.0).epsilon(1e-12));

    const auto g2 = green_threshold(2, with(QuadratureMethod::Both));
    CHECK_FALSE(g2.a.has_value());
    CHECK_FALSE(g2.b.has_value());
    CHECK(*g2.s == doctest::Approx(1 - 2 / pi).epsilon(1e-12));
    CHECK(*g2.c_minus_d == doctest::Approx(4 / pi - 1).epsilon(1e-12));

    const auto g3 = green_threshold(3, with(QuadratureMethod::Both));
    const double watson = std::sqrt(6.0) / (96 * pi * pi * pi) * std::tgamma(1.0 / 24) * std::tgamma(5.0 / 24) *
                          std::tgamma(7.0 / 24) * std::tgamma(11.0 / 24);
    CHECK(*g3.a == doctest::Approx(watson).epsilon(1e-12));
    CHECK(*g3.a == doctest::Approx(0.5054620197).epsilon(1e-9));
    CHECK(*g3.a - *g3.b == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(*g3.s == doctest::Approx(0.20984169531629726).epsilon(1e-11));
    CHECK(*g3.c_minus_d == doctest::Approx(0.18523745702555414).epsilon(1e-11));

    // reference values from 30-digit quadrature
    const auto g4 = green_threshold(4), g5 = green_threshold(5);
    CHECK(*g4.a == doctest::Approx(0.30986678046212052).epsilon(1e-11));
    CHECK(*g4.s == doctest::Approx(0.14668788123924401).epsilon(1e-11));
    CHECK(*g4.c_minus_d == doctest::Approx(0.137749491681008).epsilon(1e-11));
    CHECK(*g5.a == doctest::Approx(0.23126162496804623).epsilon(1e-11));
    CHECK(*g5.b == doctest::Approx(0.031261624968046235).epsilon(1e-10));
    CHECK(*g5.s == doctest::Approx(0.11288037695765163).epsilon(1e-11));
}

TEST_CASE("n = 2: a grows like -ln(-z) / (2 pi)") {
    const double z1 = -1e-6, z2 = -1e-8;
    const double slope = (*green_values(2, z2).a - *green_values(2, z1).a) / (std::log(-z2) - std::log(-z1));
    CHECK(slope == doctest::Approx(-1 / (2 * pi)).epsilon(1e-4));
    // a - b stays bounded, so a/b tends to 1 only like 1 / ln|z|
    const auto g = green_values(2, -1e-6);
    CHECK(*g.a - *g.b == doctest::Approx((1 + g.z * *g.a) / 2).epsilon(1e-9));
    CHECK(*g.a / *g.b > 1.2);
}

TEST_CASE("inputs are validated") {
    CHECK_THROWS_AS(green_values(0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(green_values(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(green_values(2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(green_values(2, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(parse_method("simpson"), std::invalid_argument);
    CHECK(parse_method("both") == QuadratureMethod::Both);
    CHECK_THROWS_AS(require(std::nullopt, "a"), std::invalid_argument);
    QuadratureConfig q;
    CHECK(effective_tolerance(q, -1.0) == 1e-10);
    CHECK(effective_tolerance(q, -1e-5) == 1e-8);
    q.tolerance = 1e-6;
    CHECK(effective_tolerance(q, -1.0) == 1e-6);
}

TEST_CASE("results are bit-identical across calls") {
    const auto x = green_values(3, -0.37), y = green_values(3, -0.37);
    CHECK(*x.a == *y.a);
    CHECK(*x.c_minus_d == *y.c_minus_d);
}
