#include "al/lattice.hpp"
#include "al/phase.hpp"
#include "al/soliton.hpp"

#include <doctest.h>

#include <random>

using namespace al;

namespace {

// Closed-form one-pole field from the 2x2 residue system solved by hand.
cplx one_pole(cplx l1, cplx b0, long n, double t) {
    const long m = n + 1;
    const cplx m1 = 1.0 / std::conj(l1);
    const cplx c1 = (l1 - m1) * b0 * phase::exp_phi(l1, m, t, -1);
    const cplx c2 = ((m1 - l1) / std::norm(l1)) * (-std::conj(b0)) * phase::exp_phi(m1, m, t, 1);
    const cplx B0 = c2 / (1.0 + c1 * c2 / ((l1 - m1) * (l1 - m1)));
    return -B0 / m1;
}

double al_residual(const DiscreteSpectrum& s, long lo, long hi, double t) {
    const double h = 1e-5;
    double r = 0.0;
    for (long k = lo; k <= hi; ++k) {
        auto q = [&](long m, double tt) { return soliton::field_at(s, m, tt); };
        const cplx dq = (q(k, t + h) - q(k, t - h)) / (2 * h);
        const cplx qn = q(k, t), qp = q(k + 1, t), qm = q(k - 1, t);
        r = std::max(r, std::abs(dq + I * (qp - 2.0 * qn + qm + std::norm(qn) * (qp + qm))));
    }
    return r;
}

DiscreteSpectrum mixed() {
    DiscreteSpectrum d;
    d.poles.push_back({cplx(0.2, 1.5), 2, {cplx(0.5, 0.1), cplx(0.3, -0.4)}});
    d.poles.push_back({cplx(-0.8, 1.3), 1, {cplx(-0.4, 0.2)}});
    return d;
}

}  // namespace

TEST_CASE("one pole matches the hand-solved closed form") {
    DiscreteSpectrum sp;
    sp.poles.push_back({cplx(0.3, 1.4), 1, {cplx(0.7, -0.2)}});
    for (long n : {-5L, 0L, 3L, 9L})
        for (double t : {0.0, 0.7})
            CHECK(std::abs(soliton::field_at(sp, n, t) - one_pole(cplx(0.3, 1.4), cplx(0.7, -0.2), n, t)) < 1e-13);
}

TEST_CASE("reflectionless fields solve the lattice equation") {
    DiscreteSpectrum sp;
    sp.poles.push_back({cplx(0.0, 1.5), 1, {1.0}});
    CHECK(al_residual(sp, -10, 10, 0.4) < 1e-8);
    CHECK(al_residual(mixed(), -6, 6, 0.7) < 1e-7);
}

TEST_CASE("determinant of M is one and M tends to I") {
    const auto sol = soliton::solve(mixed(), 2, 0.3);
    for (cplx l : {cplx(0.1, 0.2), cplx(3.0, -1.0), cplx(-0.5, 0.5)})
        CHECK(std::abs(sol.eval(l).determinant() - 1.0) < 1e-10);
    CHECK((sol.eval(1e8) - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("generalized Vandermonde examples") {
    const auto v1 = soliton::vandermonde_general({1.0, 2.0}, {1, 1});
    CHECK(std::abs(v1.det_closed - 1.0) < 1e-14);
    CHECK(std::abs(v1.det_direct - 1.0) < 1e-14);
    const auto v2 = soliton::vandermonde_general({1.0, 3.0}, {2, 1});
    CHECK(std::abs(v2.det_closed - 4.0) < 1e-13);
    CHECK(std::abs(v2.det_direct - 4.0) < 1e-13);
    CHECK_THROWS_AS(soliton::vandermonde_general({1.0, 1.0}, {1, 1}), DomainError);
}

TEST_CASE("Vandermonde closed form on random instances") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 30; ++k) {
        std::vector<int> alphas{1 + static_cast<int>(u(rng) * 3), 1 + static_cast<int>(u(rng) * 3)};
        CVec l{std::polar(1.0 + u(rng), 6.0 * u(rng)), std::polar(1.0 + u(rng), 6.0 * u(rng))};
        const auto v = soliton::vandermonde_general(l, alphas);
        CHECK(std::abs(v.det_direct - v.det_closed) < 1e-10 * std::abs(v.det_closed));
    }
}

TEST_CASE("remover cancels principal parts") {
    const auto spec = mixed();
    const long n = 1;
    const double t = 0.2;
    const auto sol = soliton::solve(spec, n, t);
    const auto f = soliton::pole_removal(spec, soliton::Side::Upper);
    for (const auto& p : spec.poles) {
        for (int k = 1; k <= p.order; ++k) {
            auto g = [&](cplx l) {
                const Mat2 M = sol.eval(l);
                return M(0, 0) - f(l) * phase::exp_phi(l, n, t, -1) * M(0, 1);
            };
            CHECK(std::abs(soliton::laurent_coefficient(g, p.lambda, k)) < 1e-8);
        }
    }
}

TEST_CASE("ray restriction drops only decaying poles") {
    const auto spec = mixed();
    const auto r = soliton::restrict_to_ray(spec, 0.3);
    CHECK(r.poles.size() <= spec.poles.size());
    for (const auto& p : r.poles) CHECK(phase::re_phi_sign(p.lambda, 0.3, 1e-10) == 0);
}

TEST_CASE("invalid spectra are rejected") {
    DiscreteSpectrum in;
    in.poles.push_back({cplx(0.0, 0.5), 1, {1.0}});
    CHECK_THROWS_AS(soliton::field_at(in, 0, 0.0), DomainError);
    DiscreteSpectrum miss;
    miss.poles.push_back({cplx(0.0, 2.0), 2, {1.0}});
    CHECK_THROWS_AS(soliton::field_at(miss, 0, 0.0), DomainError);
}
