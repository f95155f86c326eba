#include "al/scattering.hpp"
#include "al/soliton.hpp"

#include <doctest.h>

using namespace al;

TEST_CASE("single site with q0 = 1 is exact") {
    lattice::LatticeState s;
    s.n0 = -1;
    s.q = {0.0, 1.0, 0.0};
    const auto d = scattering::transfer_scattering(s, scattering::CircleGrid::uniform(64));
    for (size_t k = 0; k < 64; ++k) {
        const cplx l = d.grid.points[k];
        CHECK(std::abs(d.a_vals[k] - 1.0) < 1e-12);
        CHECK(std::abs(d.b_vals[k] + l) < 1e-12);
        CHECK(std::abs(d.r_vals[k] + l) < 1e-12);
    }
}

TEST_CASE("unitarity on the circle") {
    const auto q = lattice::gaussian_pulse(0.3, 8, 64);
    const auto d = scattering::transfer_scattering(q, scattering::CircleGrid::uniform(256));
    for (size_t k = 0; k < 256; ++k)
        CHECK(std::abs(std::norm(d.a_vals[k]) + std::norm(d.b_vals[k]) - d.c_inf) < 1e-10);
}

TEST_CASE("continuation of a matches the circle values") {
    const auto q = lattice::gaussian_pulse(0.2, 4, 24);
    const auto grid = scattering::CircleGrid::uniform(16);
    const auto d = scattering::transfer_scattering(q, grid);
    for (size_t k = 0; k < 16; ++k) CHECK(std::abs(scattering::continue_a(q, grid.points[k]) - d.a_vals[k]) < 1e-11);
}

TEST_CASE("Taylor series of a reproduces nearby values") {
    const auto q = lattice::gaussian_pulse(0.3, 6, 32);
    const cplx l0{0.4, 1.3};
    const auto s = scattering::a_taylor(q, l0, 12);
    const cplx h{0.01, -0.015};
    const cplx want = scattering::continue_a(q, l0 + h);
    CHECK(std::abs(series::eval(s, h) - want) < 1e-10 * std::abs(want));
}

TEST_CASE("small pulses carry no discrete spectrum") {
    CHECK(scattering::find_spectrum(lattice::gaussian_pulse(0.1, 4, 32), 1.001, 50.0).empty());
}

TEST_CASE("a strong pulse carries one real eigenvalue") {
    const auto sp = scattering::find_spectrum(lattice::gaussian_pulse(0.3, 8, 64), 1.001, 50.0);
    REQUIRE(sp.poles.size() == 1);
    CHECK(sp.poles[0].order == 1);
    CHECK(std::abs(sp.poles[0].lambda - 1.48931) < 1e-4);
}

TEST_CASE("soliton data is recovered") {
    DiscreteSpectrum spec;
    spec.poles.push_back({cplx(0.3, 1.4), 1, {cplx(0.7, -0.2)}});
    const auto d = scattering::analyze(soliton::soliton_state(spec, 96, 0.0));
    REQUIRE(d.spectrum.poles.size() == 1);
    const auto& p = d.spectrum.poles[0];
    CHECK(std::abs(p.lambda - spec.poles[0].lambda) < 1e-8);
    CHECK(std::abs(p.betas[0] - spec.poles[0].betas[0]) < 1e-7);
    for (const auto& r : d.r_vals) CHECK(std::abs(r) < 1e-10);
}

TEST_CASE("annulus validation") {
    const auto q = lattice::gaussian_pulse(0.1, 4, 16);
    CHECK_THROWS_AS(scattering::find_spectrum(q, 0.9, 2.0), DomainError);
    CHECK_THROWS_AS(scattering::norming_constants(q, cplx(0, 2), 0), DomainError);
}
