#include "al/phase.hpp"

#include <doctest.h>

using namespace al;

TEST_CASE("phase vanishes at lambda = 1") { CHECK(std::abs(phase::phi(1.0, 7, 3.0)) < 1e-15); }

TEST_CASE("phase is imaginary on the unit circle") {
    for (double th : {0.1, 1.3, 2.9, -2.0}) CHECK(std::abs(phase::phi(std::polar(1.0, th), 5, 2.0).real()) < 1e-13);
}

TEST_CASE("exp_phi agrees with exp of phi") {
    const cplx l{0.7, 1.6};
    for (int s : {1, -1}) {
        const cplx want = std::exp(static_cast<double>(s) * phase::phi(l, -4, 1.5));
        CHECK(std::abs(phase::exp_phi(l, -4, 1.5, s) - want) < 1e-12 * std::abs(want));
    }
}

TEST_CASE("phase derivatives match finite differences") {
    const cplx l{0.4, 1.2};
    const long n = 3;
    const double t = 0.8, h = 1e-5;
    const CVec d = phase::phi_derivatives(l, n, t, 2);
    const cplx fd1 = (phase::phi(l + h, n, t) - phase::phi(l - h, n, t)) / (2 * h);
    const cplx fd2 = (phase::phi(l + h, n, t) - 2.0 * phase::phi(l, n, t) + phase::phi(l - h, n, t)) / (h * h);
    CHECK(std::abs(d[1] - fd1) < 1e-8);
    CHECK(std::abs(d[2] - fd2) < 1e-4);
}

TEST_CASE("Taylor coefficients of exp(phi)") {
    const cplx l0{1.1, 0.9};
    const CVec c = phase::exp_phi_taylor(l0, 2, 0.5, -1, 6);
    const cplx h{0.01, -0.02};
    cplx sum = 0.0, p = 1.0;
    for (const auto& x : c) {
        sum += x * p;
        p *= h;
    }
    const cplx want = phase::exp_phi(l0 + h, 2, 0.5, -1);
    CHECK(std::abs(sum - want) < 1e-10 * std::abs(want));
}

TEST_CASE("stationary points are critical and unimodular") {
    for (double xi : {-0.7, 0.0, 0.3, 0.9}) {
        const auto [s1, s2] = phase::stationary_points(xi);
        const double t = 10.0;
        const long n = static_cast<long>(std::lround(2 * xi * t));
        const double xr = n / (2 * t);
        const auto [r1, r2] = phase::stationary_points(xr);
        CHECK(std::abs(std::abs(s1) - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(s2) - 1.0) < 1e-14);
        CHECK(std::abs(phase::phi_derivatives(r1, n, t, 1)[1]) < 1e-12);
        CHECK(std::abs(phase::phi_derivatives(r2, n, t, 1)[1]) < 1e-12);
    }
    CHECK_THROWS_AS(phase::stationary_points(1.2), DomainError);
}

TEST_CASE("region classification") {
    CHECK(phase::classify_region(60, 100.0).region == phase::Region::I);
    CHECK(phase::classify_region(-60, 100.0).region == phase::Region::I);
    CHECK(phase::classify_region(300, 100.0).region != phase::Region::I);
    CHECK(phase::classify_region(-300, 100.0).region != phase::Region::I);
    CHECK(phase::classify_region(300, 100.0).region != phase::classify_region(-300, 100.0).region);
    CHECK(phase::classify_region(199, 100.0).region == phase::Region::TransitionPos);
    CHECK(phase::classify_region(-199, 100.0).region == phase::Region::TransitionNeg);
    CHECK_THROWS_AS(phase::classify_region(1, 0.0), DomainError);
}

TEST_CASE("sign of Re phi") {
    CHECK(phase::re_phi_sign(std::polar(1.0, 0.7), 0.3, 1e-12) == 0);
    const cplx l{0.0, 2.0};
    const int s = phase::re_phi_sign(l, 0.3);
    CHECK(s == (phase::re_phi_rate(l, 0.3) > 0 ? 1 : -1));
}
