#pragma once

#include "al/lattice.hpp"
#include "al/series.hpp"
#include "al/types.hpp"

#include <array>
#include <functional>

namespace al::scattering {

using lattice::LatticeState;

struct CircleGrid {
    std::vector<double> thetas;
    CVec points;
    static CircleGrid uniform(size_t n);
};

struct SpectralData {
    CircleGrid grid;
    CVec a_vals, b_vals, r_vals;
    double c_inf = 1.0;
    DiscreteSpectrum spectrum;
};

// Sites [lo, hi] carrying amplitude above `threshold`; `dropped_l1` is the
// discarded mass. An all-zero state gives lo > hi.
struct Support {
    long lo, hi;
    double dropped_l1;
};
Support support(const LatticeState& q, double threshold = 1e-12);

// a = S11, b = z S21 of the transfer product, with z a square root of lambda.
std::pair<cplx, cplx> transfer_ab(const LatticeState& q, cplx lambda, cplx z);
std::pair<cplx, cplx> transfer_ab(const LatticeState& q, cplx lambda);

SpectralData transfer_scattering(const LatticeState& q, const CircleGrid& grid);

// Smallest power-of-two grid (>= n0) on which trigonometric interpolation of
// a and b reproduces midpoint values within tol.
size_t adequate_grid_size(const LatticeState& q, size_t n0 = 1024, double tol = 1e-9);

cplx continue_a(const LatticeState& q, cplx lambda);
cplx reflection(const LatticeState& q, cplx lambda);

using Vec2S = std::array<series::Series, 2>;

// Jost columns as Taylor series about lambda0 (n_terms coefficients), at site n.
Vec2S jost_left(const LatticeState& q, int column, cplx lambda0, size_t n_terms, long n);
Vec2S jost_right(const LatticeState& q, int column, cplx lambda0, size_t n_terms, long n);

// Taylor coefficients of a and b about lambda0 through the Jost route.
series::Series a_taylor(const LatticeState& q, cplx lambda0, size_t n_terms);
series::Series b_taylor(const LatticeState& q, cplx lambda0, size_t n_terms);

struct FindOptions {
    int theta_cells = 32;
    int radial_cells = 4;
    int max_depth = 24;
    double cell_size = 1e-4;  // leaf size in log-polar units
    double theta_offset = 0.1234;  // rotation of the angular cell grid
};

DiscreteSpectrum find_spectrum(const LatticeState& q, double r_in, double r_out, const FindOptions& opt = {});

// Winding number of a around the boundary of the log-polar cell.
int winding(const LatticeState& q, double u0, double u1, double th0, double th1);

struct NormingResult {
    CVec betas;  // derivatives of the connection function at lambda_j
    double condition;
    double residual;
    long site;
};
NormingResult norming_constants(const LatticeState& q, cplx lambda_j, int alpha);

// Connection constant at the mirror point 1/conj(lambda_j).
cplx mirror_beta0(const LatticeState& q, cplx lambda_j);

struct ScatterOptions {
    size_t grid_points = 1024;
    double r_in = 1.0 + 1e-3;
    double r_out = 50.0;
};
SpectralData analyze(const LatticeState& q, const ScatterOptions& opt = {});

}  // namespace al::scattering
