#include "al/harness.hpp"

#include <doctest.h>

#include <filesystem>

using namespace al;
using harness::json;

namespace {

std::string tmp_dir() {
    const auto p = std::filesystem::temp_directory_path() / "alkit_harness_test";
    std::filesystem::create_directories(p);
    return p.string();
}

}  // namespace

TEST_CASE("slope fit of exact power laws") {
    const auto ts = harness::log_spaced(50, 800, 20);
    std::vector<double> e1, e2, e3;
    for (double t : ts) {
        e1.push_back(3.0 / t);
        e2.push_back(0.5 / std::pow(t, 0.75));
        e3.push_back(1.0 / t + 40.0 / (t * t));
    }
    CHECK(std::abs(harness::slope_fit(ts, e1).exponent + 1.0) < 1e-12);
    CHECK(std::abs(harness::slope_fit(ts, e2).exponent + 0.75) < 1e-12);
    const double x = harness::slope_fit(ts, e3).exponent;
    CHECK(x > -1.3);
    CHECK(x < -0.9);
    CHECK(harness::slope_fit(ts, e1).r_squared == doctest::Approx(1.0));
}

TEST_CASE("slope fit input checks") {
    CHECK_THROWS_AS(harness::slope_fit({1, 2, 3, 4}, {1, 1, 1, 1}), DomainError);
    CHECK_THROWS_AS(harness::slope_fit({1, 2, 3, 4, 5}, {1, 1, 0, 1, 1}), DomainError);
}

TEST_CASE("log-spaced grid endpoints") {
    const auto g = harness::log_spaced(50, 800, 20);
    CHECK(g.size() == 20);
    CHECK(g.front() == 50.0);
    CHECK(g.back() == 800.0);
}

TEST_CASE("pole JSON round trip") {
    DiscreteSpectrum s;
    s.poles.push_back({cplx(0.3, 1.4), 2, {cplx(0.7, -0.2), cplx(0.1, 0.0)}});
    const auto back = harness::parse_poles(harness::poles_to_json(s));
    REQUIRE(back.poles.size() == 1);
    CHECK(back.poles[0].lambda == s.poles[0].lambda);
    CHECK(back.poles[0].order == 2);
    CHECK(back.poles[0].betas[1] == s.poles[0].betas[1]);
}

TEST_CASE("scenario validation") {
    CHECK_THROWS_AS(harness::parse_scenario(json{{"name", "x"}, {"check", "nope"}}), DomainError);
    CHECK_THROWS_AS(harness::parse_scenario(json{{"name", "x"}, {"check", "region_decay"}, {"rays", {0.97}}}),
                    DomainError);
    CHECK_THROWS_AS(harness::parse_scenario(json{{"name", "x"}, {"check", "zero_data"}, {"t_grid", {1.0, 1.0}}}),
                    DomainError);
}

TEST_CASE("zero data scenario passes") {
    const auto s = harness::parse_scenario(json{{"name", "zero"},
                                                {"check", "zero_data"},
                                                {"initial", {{"kind", "zero"}, {"half_window", 8}}},
                                                {"dt", 0.05},
                                                {"t_final", 1.0}});
    const auto r = harness::run_scenario(s, tmp_dir());
    CHECK(r.passed);
    CHECK(std::filesystem::exists(std::filesystem::path(tmp_dir()) / "zero" / "report.json"));
}

TEST_CASE("one-soliton scenario reports a small sup error") {
    json poles = json::array({{{"re", 0.0}, {"im", 1.5}, {"order", 1}, {"betas", {{1.0, 0.0}}}}});
    const auto s = harness::parse_scenario(json{{"name", "soliton"},
                                                {"check", "soliton_consistency"},
                                                {"initial", {{"kind", "soliton"}, {"half_window", 40}, {"poles", poles}}},
                                                {"dt", 1e-3},
                                                {"t_final", 2.0}});
    const auto r = harness::run_scenario(s, tmp_dir());
    CHECK(r.passed);
    CHECK(r.metrics["sup_error"].get<double>() < 1e-6);
}

TEST_CASE("decay along a ray outside the light cone") {
    const auto s = harness::parse_scenario(json{{"name", "radiation"},
                                                {"check", "region_decay"},
                                                {"initial", {{"kind", "gaussian"}, {"amplitude", 0.1}, {"width", 4}, {"half_window", 32}}},
                                                {"dt", 5e-3},
                                                {"t_grid", {{"start", 20}, {"stop", 120}, {"count", 8}}},
                                                {"rays", {-1.5}}});
    const auto r = harness::run_scenario(s, tmp_dir());
    REQUIRE(r.metrics.contains("fits"));
    CHECK(r.metrics["fits"][0]["exponent"].get<double>() <= -0.7);
}
