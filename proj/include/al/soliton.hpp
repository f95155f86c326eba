#pragma once

#include "al/lattice.hpp"
#include "al/series.hpp"
#include "al/types.hpp"

#include <functional>

namespace al::soliton {

// Taylor coefficients of the transmission denominator a about a point.
using ATaylor = std::function<series::Series(cplx lambda0, size_t n_terms)>;

// a(lambda) = prod ((lambda - l_j) / (lambda - 1/conj(l_j)))^{alpha_j}
ATaylor blaschke(const DiscreteSpectrum& spec);
cplx blaschke_value(const DiscreteSpectrum& spec, cplx lambda);

// Weights g_l (pole) and gm_l (mirror) of the residue conditions: the
// principal part of column 1 at l equals that of g_l M_2 / (lambda - l)^alpha,
// and of column 2 at the mirror point that of gm_l M_1 / (lambda - mu)^alpha.
series::Series pole_weight(const DiscreteSpectrum& spec, size_t l, long n, double t, const ATaylor& a);
series::Series mirror_weight(const DiscreteSpectrum& spec, size_t l, long n, double t, const ATaylor& a);

// The residue polynomial coefficients p_j from derivative data, with h the
// function (lambda - l)^alpha / a, betas the connection derivatives and
// ephi the derivatives of exp(-phi); all lists start at order 0.
CVec residue_polynomial(const CVec& h_derivs, const CVec& betas, const CVec& ephi_derivs);

struct ResidueSystem {
    Eigen::MatrixXcd matrix;
    Eigen::MatrixXcd rhs;  // one column per component of the M columns
    std::vector<size_t> offset;  // first unknown of each pole block
    size_t tau = 0;
    double rcond = 0.0;
};

ResidueSystem assemble(const DiscreteSpectrum& spec, long n, double t, const ATaylor& a);

struct Solution {
    DiscreteSpectrum spec;
    long n = 0;
    double t = 0.0;
    Eigen::MatrixXcd coeffs;  // rows: unknowns (poles then mirrors), cols: components
    std::vector<size_t> offset;
    size_t tau = 0;
    double rcond = 0.0;

    Mat2 eval(cplx lambda) const;
    // Laurent coefficient of order -k (k >= 1) of column col at pole l (mirror if mirror).
    Eigen::Vector2cd principal(size_t l, int k, bool mirror) const;
};

Solution solve(const DiscreteSpectrum& spec, long n, double t, const ATaylor& a = {});
std::vector<Mat2> solve_reflectionless(const DiscreteSpectrum& spec, long n, double t, const CVec& points);

// q_n(t) = M_12(0) at site n + 1.
cplx field_at(const DiscreteSpectrum& spec, long n, double t);
CVec soliton_field(const DiscreteSpectrum& spec, long n_lo, long n_hi, double t);
lattice::LatticeState soliton_state(const DiscreteSpectrum& spec, long half_window, double t);

// Poles with Re phi = 0 along the lattice ray xi (dead band 1e-10).
DiscreteSpectrum restrict_to_ray(const DiscreteSpectrum& spec, double xi, double dead_band = 1e-10);
cplx soliton_restricted(const DiscreteSpectrum& spec, double xi, long n, double t);

struct Vandermonde {
    Eigen::MatrixXcd matrix;
    cplx det_closed;
    cplx det_direct;
};
// Confluent Vandermonde with Taylor-normalized rows: row (j, i) holds the
// i-th Taylor coefficient of lambda^k at lambda_j.
Vandermonde vandermonde_general(const CVec& lambdas, const std::vector<int>& alphas);

enum class Side { Upper, Lower };

struct RationalRemover {
    CVec centers;
    std::vector<CVec> coeffs;     // coeffs[l][s-1] multiplies (lambda - center)^{-s}
    CVec shifts;                  // constants added to factors that vanished at other centers
    CVec g;                       // polynomial coefficients, ascending
    double condition = 0.0;

    cplx local(size_t l, cplx lambda) const;
    cplx operator()(cplx lambda) const;
};

// Upper: poles lambda_j, weights built from (lambda - l)^alpha / a and beta.
// Lower: mirror points, weights from the mirror data.
RationalRemover pole_removal(const DiscreteSpectrum& spec, Side side, const ATaylor& a = {});

// Literal per-pole coefficients f_{l,s}, s = 1..alpha, from derivatives of
// (lambda - l)^alpha / a and the connection derivatives.
CVec remover_coefficients(const CVec& h_derivs, const CVec& betas);

// Laurent coefficient of order -k at `center` of a function, by trapezoidal
// quadrature on a circle of the given radius.
cplx laurent_coefficient(const std::function<cplx(cplx)>& f, cplx center, int k, double radius = 1e-2,
                         int nodes = 128);

}  // namespace al::soliton
