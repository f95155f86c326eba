#pragma once

#include "al/types.hpp"

#include <optional>
#include <utility>

namespace al::phase {

enum class Region { I, II, III, TransitionNeg, TransitionPos };

const char* region_name(Region r);

struct RegionData {
    double xi = 0.0;
    Region region = Region::I;
    std::optional<cplx> s1, s2;
};

// phi = -i t (lambda + 1/lambda - 2) + n log(lambda), principal log.
cplx phi(cplx lambda, long n, double t);

// Branch-free exp(sign * phi).
cplx exp_phi(cplx lambda, long n, double t, int sign = 1);

// [phi, d phi, ..., d^k phi] at lambda.
CVec phi_derivatives(cplx lambda, long n, double t, int k);

// Taylor coefficients of exp(sign * phi) about lambda0 up to order k.
CVec exp_phi_taylor(cplx lambda0, long n, double t, int sign, int k);

std::pair<cplx, cplx> stationary_points(double xi);

RegionData classify_region(long n, double t, double delta_trans = 0.05);

// Re phi(lambda, n, t) / t at fixed xi = n / (2t).
double re_phi_rate(cplx lambda, double xi);

// Sign of Re phi along the ray xi; values within `dead_band` count as zero.
int re_phi_sign(cplx lambda, double xi, double dead_band = 0.0);

}  // namespace al::phase
