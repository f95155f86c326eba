#include "al/lattice.hpp"
#include "al/soliton.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace al;

namespace {

lattice::LatticeState three_site(cplx a) {
    lattice::LatticeState s;
    s.n0 = -1;
    s.q = {0.0, a, 0.0};
    return s;
}

}  // namespace

TEST_CASE("rhs of a single excited site") {
    const cplx a{0.3, -0.4};
    const CVec r = lattice::al_rhs(three_site(a));
    // neighbours couple linearly, the centre sees only the discrete Laplacian
    CHECK(std::abs(r[1] - 2.0 * I * a) < 1e-15);
    CHECK(std::abs(r[0] + I * a) < 1e-15);
    CHECK(std::abs(r[2] + I * a) < 1e-15);
}

TEST_CASE("zero data stays zero") {
    lattice::LatticeState s;
    s.n0 = -8;
    s.q.assign(17, 0.0);
    const auto out = lattice::advance(s, 1.0, 0.1);
    for (const auto& z : out.q) CHECK(z == cplx{});
    CHECK(lattice::c_infty(out) == 1.0);
}

TEST_CASE("c_infty of a single site") {
    const auto s = three_site(0.6);
    CHECK(lattice::c_infty(s) == doctest::Approx(1.36).epsilon(1e-14));
}

TEST_CASE("advance lands exactly on t_final") {
    const auto s = lattice::gaussian_pulse(0.2, 4, 24);
    const auto out = lattice::advance(s, 0.25, 0.1);
    CHECK(out.t == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("c_infty is conserved") {
    const auto s = lattice::gaussian_pulse(0.3, 8, 64);
    lattice::IntegrateOptions opt;
    opt.stride = 50;
    const auto tr = lattice::integrate(s, 2.0, 1e-3, opt);
    const double c0 = tr.observables.front().c_infty;
    for (const auto& o : tr.observables) CHECK(std::abs(o.c_infty - c0) / c0 < 1e-10);
}

TEST_CASE("RK4 converges at fourth order against the one-soliton") {
    DiscreteSpectrum spec;
    spec.poles.push_back({cplx(0.0, 1.5), 1, {1.0}});
    const auto s0 = soliton::soliton_state(spec, 40, 0.0);
    const auto exact = soliton::soliton_state(spec, 40, 1.0);
    auto err = [&](double dt) {
        const auto s = lattice::advance(s0, 1.0, dt);
        double e = 0.0;
        for (long n = -20; n <= 20; ++n) e = std::max(e, std::abs(s.at(n) - exact.at(n)));
        return e;
    };
    const double ratio = err(0.04) / err(0.02);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("initial data CSV round trip") {
    const auto path = std::filesystem::temp_directory_path() / "alkit_lattice_test.csv";
    {
        std::ofstream f(path);
        f << "# schema_version=1\nn,re,im\n-1,0,0\n0,0.25,-0.5\n1,0,0.125\n";
    }
    const auto s = lattice::read_csv(path.string());
    CHECK(s.n_min() == -1);
    CHECK(s.n_max() == 1);
    CHECK(s.at(0) == cplx(0.25, -0.5));
    CHECK(s.at(1) == cplx(0.0, 0.125));
    std::filesystem::remove(path);
}

TEST_CASE("invalid input is rejected") {
    lattice::LatticeState s;
    s.q = {0.0, 1.0};
    CHECK_THROWS_AS(lattice::validate(s), DomainError);
    CHECK_THROWS_AS(lattice::advance(three_site(0.1), 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(lattice::weighted_norm(three_site(0.1), 3), DomainError);
}
