#include "al/scattering.hpp"
#include "al/tfun.hpp"

#include <doctest.h>

using namespace al;

namespace {

std::function<cplx(cplx)> pulse_reflection() {
    const auto q = lattice::gaussian_pulse(0.1, 4, 24);
    return [q](cplx l) { return scattering::reflection(q, l); };
}

// (1 / 2 pi i) \int_arc log(1 + |rho|^2) / (s - lambda) ds by brute-force trapezoid, arc clockwise a2 -> a1.
cplx brute_log_delta(const tfun::TFunctionContext& c, cplx lambda, int nodes = 20000) {
    cplx acc = 0.0;
    const double h = (c.a2 - c.a1) / nodes;
    for (int k = 0; k < nodes; ++k) {
        const double al = c.a2 - (k + 0.5) * h;
        const cplx s = std::polar(1.0, al);
        acc += std::log1p(std::norm(c.rho(s))) / (s - lambda) * (-I * s * h);
    }
    return acc / (2.0 * pi * I);
}

}  // namespace

TEST_CASE("arc geometry in region I") {
    const auto c = tfun::make_context(pulse_reflection(), {}, 0.3);
    CHECK(c.region == phase::Region::I);
    CHECK(c.has_arc);
    CHECK(std::abs(std::polar(1.0, c.a1) - c.s1) + std::abs(std::polar(1.0, c.a2) - c.s2) < 1e-12);
    CHECK_NOTHROW(tfun::check_arc_orientation(c));
    CHECK_THROWS_AS(tfun::make_context(pulse_reflection(), {}, 0.98), DomainError);
}

TEST_CASE("log delta agrees with direct quadrature away from the arc") {
    const auto c = tfun::make_context(pulse_reflection(), {}, 0.3);
    for (cplx l : {cplx(0.2, 0.1), cplx(0.0, 2.5), cplx(-1.7, -0.4)})
        CHECK(std::abs(tfun::log_delta(c, l) - brute_log_delta(c, l)) < 1e-8);
}

TEST_CASE("jump across the arc") {
    const auto r = pulse_reflection();
    const auto c = tfun::make_context(r, {}, -0.4);
    for (int k = 1; k < 10; ++k) {
        const cplx s = std::polar(1.0, c.a1 + (c.a2 - c.a1) * k / 10.0);
        const cplx ratio = tfun::t_boundary(c, s, 1) / tfun::t_boundary(c, s, -1);
        CHECK(std::abs(ratio - (1.0 + std::norm(r(s)))) < 1e-10);
    }
}

TEST_CASE("symmetry and normalisation with a pole") {
    DiscreteSpectrum p;
    p.poles.push_back({cplx(1.2, 1.1), 1, {1.0}});
    const auto c = tfun::make_context(pulse_reflection(), p, 0.3);
    const cplx T0 = tfun::t_eval(c, 0.0);
    for (cplx l : {cplx(0.3, 0.4), cplx(2.0, -1.0), cplx(-0.1, 1.8)})
        CHECK(std::abs(tfun::t_eval(c, 1.0 / std::conj(l)) * std::conj(tfun::t_eval(c, l)) - T0) < 1e-9 * std::abs(T0));
    CHECK(std::abs(tfun::t_eval(c, 1e7) - 1.0) < 1e-6);
}

TEST_CASE("regions outside the light cone") {
    const auto a = tfun::make_context(pulse_reflection(), {}, 1.5);
    const auto b = tfun::make_context(pulse_reflection(), {}, -1.5);
    CHECK(a.region != phase::Region::I);
    CHECK(b.region != phase::Region::I);
    CHECK(a.has_arc != b.has_arc);
    CHECK((a.full_circle || b.full_circle));
    for (const auto* c : {&a, &b}) CHECK(std::abs(tfun::t_eval(*c, 1e7) - 1.0) < 1e-6);
}

TEST_CASE("local behaviour near a stationary point") {
    const auto r = pulse_reflection();
    const auto c = tfun::make_context(r, {}, 0.3);
    for (int j : {1, 2}) {
        const auto na = tfun::nu_alpha_at(c, j);
        const cplx s = j == 1 ? c.s1 : c.s2;
        CHECK(std::abs(na.nu - std::log1p(std::norm(r(s))) / (2.0 * pi)) < 1e-12);
        const cplx l = s * cplx(1.0 + 1e-4, 1e-4);
        CHECK(std::abs(tfun::t_local(c, j, l) / tfun::t_eval(c, l) - 1.0) < 1e-2);
    }
}
