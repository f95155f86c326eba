#pragma once

#include "al/types.hpp"

namespace al::specfun {

// log Gamma(z) continued from the positive real axis; exp() of it is Gamma(z).
cplx log_gamma(cplx z);
// 1/Gamma(z), entire (zero at the nonpositive integers).
cplx rgamma(cplx z);

double nu_of_tau(cplx tau);

// Closed-form constants taken literally: nu >= 0, gamma2 = conj(gamma1).
struct PCModelParams {
    cplx tau;
    double nu;
    cplx gamma1, gamma2;
};
PCModelParams gamma12(cplx tau);

// Constants of the explicit model solution that is continuous across the
// real axis: nu < 0 with |nu| = nu_of_tau(tau), gamma2 = -conj(gamma1).
// Defined for tau = 0 by continuity (all zero).
PCModelParams model_params(cplx tau);

struct PcfdResult {
    cplx value;
    double error_estimate;  // relative
    bool flagged;
};

// D_a(z): solution of D'' + (a + 1/2 - z^2/4) D = 0 decaying along the positive real axis.
cplx pcf_d(cplx a, cplx z);
PcfdResult pcf_d_checked(cplx a, cplx z);
// D_a'(z).
cplx pcf_d_prime(cplx a, cplx z);

// Sector index 1..6 of the model problem (rays at odd multiples of pi/4,
// and the real axis).
int pc_sector(cplx zeta);

// Model solution evaluated with the sector forced (boundary values on rays).
Mat2 pc_model_in_sector(cplx zeta, cplx tau, int sector);
Mat2 pc_model(cplx zeta, cplx tau);

// Jump on ray k (1..4) in the convention M_+ = M_- V, where the + side is
// the counter-clockwise side for rays 1, 4 and the clockwise side for 2, 3.
Mat2 pc_jump(cplx zeta, cplx tau, int ray);

// Sectors on the + and - side of ray k.
std::pair<int, int> pc_ray_sides(int ray);

}  // namespace al::specfun
