#pragma once

#include "al/phase.hpp"
#include "al/types.hpp"

#include <functional>

namespace al::tfun {

// Everything here is in the frame where the jump on |lambda| = 1 has the
// reflection coefficient `rho` and the poles live in |lambda| > 1. The
// partition of the poles uses the sign of Re phi along the ray xi.
struct TFunctionContext {
    std::function<cplx(cplx)> rho;
    DiscreteSpectrum poles;
    double xi = 0.0;
    phase::Region region = phase::Region::I;
    cplx s1, s2;                  // region I only
    std::vector<size_t> plus;     // Re phi > 0
    std::vector<size_t> on_ray;   // Re phi = 0 within the dead band
    bool has_arc = false;
    bool full_circle = false;     // region III: the whole circle carries the jump
    double a1 = 0.0, a2 = 0.0;    // arc angles; the arc runs clockwise from a2 to a1
    double max_panel = 0.1;       // widest quadrature panel in angle
};

TFunctionContext make_context(std::function<cplx(cplx)> rho, const DiscreteSpectrum& poles, double xi,
                              double delta_trans = 0.05, double dead_band = 1e-10);

// ln(1 + |rho|^2) at a point of the unit circle.
double jump_log(const TFunctionContext& ctx, cplx s);

struct TValue {
    cplx value;
    double error;  // change under node doubling
};

cplx pole_product(const TFunctionContext& ctx, cplx lambda);
cplx log_delta(const TFunctionContext& ctx, cplx lambda);
TValue t_eval_checked(const TFunctionContext& ctx, cplx lambda);
cplx t_eval(const TFunctionContext& ctx, cplx lambda);
// One-sided value on the arc; side = +1 outside the unit disk, -1 inside.
cplx t_boundary(const TFunctionContext& ctx, cplx lambda, int side);

struct NuAlpha {
    double nu;
    cplx alpha;
};
NuAlpha nu_alpha_at(const TFunctionContext& ctx, int j);

// Leading local behaviour of T near S_j (outside the disk).
cplx t_local(const TFunctionContext& ctx, int j, cplx lambda);

// The local constant T_j of the model problem at S_j.
cplx t_j_const(const TFunctionContext& ctx, int j, long n, double t);

// Evaluates T on both sides of the arc and of its complement; throws if the
// jump is not carried by the arc.
void check_arc_orientation(const TFunctionContext& ctx);

// ln delta(0) = -(1/2 pi) \int_arc ln(1+|rho|^2) d alpha.
double log_delta0(const TFunctionContext& ctx);

}  // namespace al::tfun
