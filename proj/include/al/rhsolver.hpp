#pragma once

#include "al/soliton.hpp"
#include "al/types.hpp"

#include <functional>

namespace al::rhsolver {

enum class Orientation { Counterclockwise, Clockwise };

// Samples on a uniform angular grid theta_j = 2 pi j / K of a circle centred
// at the origin. Modes are indexed k = -K/2 .. K/2 - 1.
struct Circle {
    double radius = 1.0;
    Orientation orientation = Orientation::Clockwise;
};

CVec to_modes(const CVec& samples);
CVec from_modes(const CVec& modes);
int mode_index(size_t slot, size_t K);

// Cauchy integral (1/2 pi i) \oint h(s) ds / (s - lambda) of the trigonometric
// interpolant of the samples, at a point off the circle.
cplx cauchy_at(const CVec& samples, const Circle& c, cplx lambda);
// Boundary value on the same circle; side = +1 from the left of the
// orientation, -1 from the right.
CVec cauchy_boundary(const CVec& samples, const Circle& c, int side);
// Values on another concentric circle of radius target_radius.
CVec cauchy_to_circle(const CVec& samples, const Circle& c, double target_radius);

// Three clockwise circles of radii rho, 1, 1/rho. On each circle the jump
// is V = (I - w_minus)^{-1} (I + w_plus) with w_plus strictly lower and
// w_minus strictly upper triangular; only the nonzero entries are stored.
struct ContourProblem {
    std::vector<Circle> circles;
    size_t K = 0;
    long n = 0;
    double t = 0.0;
    std::vector<CVec> wp21, wm12;       // per circle
    std::vector<CVec> r, f_upper, f_lower;  // diagnostics, sampled per circle
};

struct BuildOptions {
    size_t K = 256;
    double rho = 0.0;  // 0: 1.2 max |lambda_j|, or 1.2 without poles
};

// r is the reflection coefficient on |lambda| = 1; `a` supplies Taylor
// coefficients of a at the poles (defaults to the reflectionless product).
ContourProblem build_three_circle_problem(const std::function<cplx(cplx)>& r, const DiscreteSpectrum& spec, long n,
                                          double t, const BuildOptions& opt = {}, const soliton::ATaylor& a = {});

// Jump matrix at sample j of circle c.
Mat2 jump(const ContourProblem& p, size_t c, size_t j);

struct BCSolution {
    // mu rows: m1[row][circle] and m2[row][circle], row 0 and 1 of mu
    std::array<std::vector<CVec>, 2> m1, m2;
    double residual = 0.0;
    double rcond = 0.0;
};

BCSolution solve_bc(const ContourProblem& p, double tol = 1e-8);

Mat2 reconstruct(const ContourProblem& p, const BCSolution& s, cplx lambda);
// One-sided boundary value at angle theta on circle c (side as in cauchy_boundary).
Mat2 reconstruct_boundary(const ContourProblem& p, const BCSolution& s, size_t c, double theta, int side);
// q_n = M_12(0) of the problem built at site n + 1.
cplx reconstruct_q(const ContourProblem& p, const BCSolution& s);

// Builds and solves at site n + 1 and returns q_n(t).
cplx solve_q(const std::function<cplx(cplx)>& r, const DiscreteSpectrum& spec, long n, double t,
             const BuildOptions& opt = {}, const soliton::ATaylor& a = {});

}  // namespace al::rhsolver
