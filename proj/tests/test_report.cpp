#include <doctest.h>

#include <stdexcept>

#include <cstdlib>
#include <filesystem>

#include "latspec/golden.hpp"
#include "latspec/report.hpp"

using namespace latspec;

TEST_CASE("shortest round-trip formatting") {
    for (double v : {0.1, 1.0 / 3, -0.41421356237309515, 1e-300, 6.02214076e23, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("integrals JSON carries flags") {
    const Json j = to_json(green_threshold(2));
    CHECK(j["a"].is_null());
    CHECK(j["flags"]["a"] == "divergent");
    CHECK(j["flags"]["s"] == "finite");
    CHECK(j.contains("alpha0"));
    const Json k = to_json(green_values(1, -1.0));
    CHECK(k["flags"]["d"] == "absent");
    CHECK(k["a"].get<double>() == doctest::Approx(0.5773502691896258));
}

TEST_CASE("summary JSON layout and lossless round trip") {
    const Json j = to_json(summarize({1, 0.0, 1.0}));
    CHECK(j["schema"] == "1");
    CHECK(j["region"] == "D1");
    REQUIRE(j["eigenvalues"].size() == 1);
    CHECK(j["eigenvalues"][0]["mult"] == 1);
    CHECK(j["eigenvalues"][0]["sector"] == "even-rank-r");
    CHECK(j["threshold"]["kind"] == "none");
    CHECK(j["essential_spectrum"][1] == 2.0);
    const std::string text = j.dump();
    CHECK(Json::parse(text).dump() == text);
    CHECK(Json::parse(text)["eigenvalues"][0]["z"].get<double>() == j["eigenvalues"][0]["z"].get<double>());
    CHECK(to_json(summarize({1, 0.0, 1.0})).dump() == text);
}

TEST_CASE("verify report JSON") {
    VerifyReport r;
    r.suite = "x";
    r.checks.push_back({"ok", true, 1e-12, 1e-9, ""});
    r.checks.push_back({"bad", false, 1.0, 0.1, "at n=2"});
    const Json j = to_json(r);
    CHECK(j["passed"] == false);
    CHECK(j["checks"][1]["detail"] == "at n=2");
    CHECK_FALSE(j["checks"][0].contains("detail"));
}

TEST_CASE("golden files round trip and feed the threshold cache") {
    const auto dir = std::filesystem::temp_directory_path() / "latspec_golden_test";
    std::filesystem::create_directories(dir);
    const auto green = compute_green_golden(3);
    const auto crit = compute_critical_golden(green);
    write_golden(dir / "green.json", green);
    write_golden(dir / "critical.json", crit);
    const auto back = read_golden(dir / "green.json");
    REQUIRE(back.entries.size() == green.entries.size());
    CHECK(*back.find(3, "a0") == *green.find(3, "a0"));
    CHECK_FALSE(back.find(2, "a0").has_value());
    CHECK(*read_golden(dir / "critical.json").find(1, "lambda_s") == 1.0);

    setenv("LS_GOLDEN_DIR", dir.c_str(), 1);
    CHECK(golden_dir() == dir);
    const auto cached = threshold_data_cached(3);
    const auto fresh = threshold_data(3);
    CHECK(cached.crit.lambda_s == doctest::Approx(fresh.crit.lambda_s).epsilon(1e-14));
    CHECK(*cached.g0.a == doctest::Approx(*fresh.g0.a).epsilon(1e-14));
    // n = 4 is not in this file: computed on demand
    CHECK(threshold_data_cached(4).crit.lambda_s == doctest::Approx(threshold_data(4).crit.lambda_s));
    unsetenv("LS_GOLDEN_DIR");
    std::filesystem::remove_all(dir);
    CHECK_THROWS(read_golden(dir / "green.json"));
}
