#include "al/asympt.hpp"
#include "al/lattice.hpp"
#include "al/soliton.hpp"

#include <doctest.h>

using namespace al;

namespace {

// Simulated field of the small pulse at the sites n(t) = round(2 xi t).
struct Run {
    std::vector<double> ts;
    std::vector<cplx> q;
    std::vector<long> n;
};

Run simulate(double xi, const std::vector<double>& ts) {
    const auto q0 = lattice::gaussian_pulse(0.1, 4, static_cast<long>(2 * ts.back()) + 64);
    Run r;
    auto s = q0;
    for (double t : ts) {
        s = lattice::advance(s, t, 5e-3);
        const long n = std::lround(2 * xi * t);
        r.ts.push_back(t);
        r.n.push_back(n);
        r.q.push_back(s.at(n));
    }
    return r;
}

}  // namespace

TEST_CASE("zero data predicts zero") {
    asympt::ScatteringInput in{[](cplx) { return cplx{}; }, {}};
    for (long n : {-30L, 12L, 150L}) {
        const auto p = asympt::predict(in, n, 50.0);
        CHECK(std::abs(p.q_pred) < 1e-14);
    }
}

TEST_CASE("region I prediction tracks the lattice and improves with t") {
    const auto in = asympt::from_state(lattice::gaussian_pulse(0.1, 4, 32));
    const auto run = simulate(0.3, {30.0, 60.0});
    std::vector<double> err;
    for (size_t k = 0; k < run.ts.size(); ++k) {
        const auto p = asympt::predict(in, run.n[k], run.ts[k]);
        CHECK(p.region == phase::Region::I);
        err.push_back(std::abs(p.q_pred - run.q[k]));
        CHECK(err.back() < 0.2 * std::abs(run.q[k]));
    }
    CHECK(err[1] < err[0]);
}

TEST_CASE("a soliton moving along the ray is reproduced") {
    // For |lambda| = R the soliton travels with xi = -(R - 1/R) sin(theta) / (2 ln R).
    const double t = 20.0;
    const long n = 12;
    const double xi = (n + 1) / (2.0 * t), R = 1.5;  // the restriction is evaluated at the shifted site
    const double th = std::asin(-xi * 2.0 * std::log(R) / (R - 1.0 / R));
    DiscreteSpectrum sp;
    sp.poles.push_back({std::polar(R, th), 1, {cplx(0.8, 0.3)}});
    asympt::ScatteringInput in{[](cplx) { return cplx{}; }, sp};
    const auto p = asympt::predict(in, n, t);
    CHECK(std::abs(p.q_pred - soliton::field_at(sp, n, t)) < 1e-8);
    CHECK(std::abs(p.q_pred) > 1e-3);
}

TEST_CASE("outside the light cone only the soliton part remains") {
    const auto in = asympt::from_state(lattice::gaussian_pulse(0.1, 4, 32));
    for (long n : {-300L, 300L}) {
        const auto p = asympt::predict(in, n, 100.0);
        CHECK(p.region != phase::Region::I);
        CHECK(std::abs(p.q_pred) < 1e-12);
    }
}

TEST_CASE("oscillatory term is tied to region I") {
    const auto in = asympt::from_state(lattice::gaussian_pulse(0.1, 4, 32));
    CHECK_THROWS_AS(asympt::oscillatory_term(in, 300, 100.0), DomainError);
    CHECK_THROWS_AS(asympt::predict(in, 10, 0.0), DomainError);
}
