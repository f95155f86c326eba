#include "al/rhsolver.hpp"
#include "al/scattering.hpp"
#include "al/soliton.hpp"

#include <doctest.h>

using namespace al;
using rhsolver::Circle;
using rhsolver::Orientation;

namespace {

CVec sample(size_t K, double radius, const std::function<cplx(cplx)>& f) {
    CVec v(K);
    for (size_t j = 0; j < K; ++j) v[j] = f(std::polar(radius, 2.0 * pi * j / K));
    return v;
}

}  // namespace

TEST_CASE("Fourier modes round trip") {
    const CVec s = sample(32, 1.0, [](cplx l) { return l * l + 0.5 / l + 2.0; });
    const CVec back = rhsolver::from_modes(rhsolver::to_modes(s));
    for (size_t j = 0; j < s.size(); ++j) CHECK(std::abs(back[j] - s[j]) < 1e-13);
}

TEST_CASE("Cauchy transform of simple densities") {
    const Circle ccw{1.0, Orientation::Counterclockwise}, cw{1.0, Orientation::Clockwise};
    const CVec c = sample(16, 1.0, [](cplx) { return cplx(2.0, -1.0); });
    CHECK(std::abs(rhsolver::cauchy_at(c, ccw, 0.0) - cplx(2.0, -1.0)) < 1e-14);
    CHECK(std::abs(rhsolver::cauchy_at(c, ccw, 3.0)) < 1e-14);
    CHECK(std::abs(rhsolver::cauchy_at(c, cw, 0.2) + cplx(2.0, -1.0)) < 1e-14);
    // 1/s is the boundary value of a function analytic outside and vanishing at infinity
    const CVec inv = sample(16, 1.0, [](cplx l) { return 1.0 / l; });
    CHECK(std::abs(rhsolver::cauchy_at(inv, ccw, 0.3)) < 1e-14);
    CHECK(std::abs(rhsolver::cauchy_at(inv, ccw, cplx(0, 2)) + 1.0 / cplx(0, 2)) < 1e-14);
}

TEST_CASE("Plemelj jump of the boundary values") {
    const Circle c{1.3, Orientation::Clockwise};
    const CVec f = sample(64, 1.3, [](cplx l) { return std::exp(0.3 * l) + 1.0 / (l - 3.0) + 0.2 / l; });
    const CVec p = rhsolver::cauchy_boundary(f, c, 1), m = rhsolver::cauchy_boundary(f, c, -1);
    for (size_t j = 0; j < f.size(); ++j) CHECK(std::abs(p[j] - m[j] - f[j]) < 1e-12);
}

TEST_CASE("three-circle solve reproduces a reflectionless field") {
    DiscreteSpectrum sp;
    sp.poles.push_back({cplx(0.0, 1.5), 1, {1.0}});
    rhsolver::BuildOptions opt;
    opt.K = 128;
    for (long n : {-4L, 0L, 5L})
        for (double t : {0.0, 0.5})
            CHECK(std::abs(rhsolver::solve_q({}, sp, n, t, opt) - soliton::field_at(sp, n, t)) < 1e-8);
}

TEST_CASE("three-circle solve inverts radiation data") {
    const auto q = lattice::gaussian_pulse(0.1, 4, 16);
    auto r = [q](cplx l) { return scattering::reflection(q, l); };
    rhsolver::BuildOptions opt;
    opt.K = 128;
    for (long n : {-3L, 0L, 2L}) CHECK(std::abs(rhsolver::solve_q(r, {}, n, 0.0, opt) - q.at(n)) < 1e-9);
}

TEST_CASE("solution satisfies the jump on every circle") {
    DiscreteSpectrum sp;
    sp.poles.push_back({cplx(0.4, 1.3), 1, {cplx(0.5, 0.2)}});
    rhsolver::BuildOptions opt;
    opt.K = 128;
    const auto p = rhsolver::build_three_circle_problem({}, sp, 2, 0.3, opt);
    const auto s = rhsolver::solve_bc(p);
    CHECK(s.residual < 1e-8);
    for (size_t c = 0; c < p.circles.size(); ++c)
        for (size_t j : {size_t{0}, size_t{17}, size_t{90}}) {
            const double th = 2.0 * pi * static_cast<double>(j) / static_cast<double>(p.K);
            const Mat2 plus = rhsolver::reconstruct_boundary(p, s, c, th, 1);
            const Mat2 minus = rhsolver::reconstruct_boundary(p, s, c, th, -1);
            CHECK((plus - minus * rhsolver::jump(p, c, j)).cwiseAbs().maxCoeff() < 1e-8);
        }
}

TEST_CASE("overflowing phases are rejected") {
    DiscreteSpectrum sp;
    sp.poles.push_back({cplx(0.0, 3.0), 1, {1.0}});
    CHECK_THROWS_AS(rhsolver::build_three_circle_problem({}, sp, 2000, 0.0), DomainError);
}
