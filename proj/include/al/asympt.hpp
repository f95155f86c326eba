#pragma once

#include "al/lattice.hpp"
#include "al/phase.hpp"
#include "al/tfun.hpp"
#include "al/types.hpp"

#include <functional>

namespace al::asympt {

// Scattering data in the lattice frame: r on |lambda| = 1 and the poles.
struct ScatteringInput {
    std::function<cplx(cplx)> r;
    DiscreteSpectrum spec;
};

ScatteringInput from_state(const lattice::LatticeState& q, const DiscreteSpectrum& spec = {});

// The long-time formulas are stated for the reflected lattice
// p_m(t) = conj(q_{-m-1}(t)); this builds the T-function context for that
// frame at the site m = -n-1 corresponding to lattice site n.
tfun::TFunctionContext reflected_context(const ScatteringInput& in, long n, double t, double delta_trans = 0.05);

struct PredictOptions {
    double delta_trans = 0.05;
    // The literal oscillatory formula is indexed one site off; true evaluates
    // its right-hand side at n + 1 to obtain the term at n.
    bool shift_literal_index = true;
};

struct AsymptoticPrediction {
    long n = 0;
    double t = 0.0;
    double xi = 0.0;
    phase::Region region = phase::Region::I;
    cplx q_pred;
    cplx prefactor;       // multiplies q_soliton + t^{-1/2} q_osc
    cplx q_soliton;
    cplx q_osc;
    double error_order = -0.75;
    // Alternative assemblies reported alongside.
    cplx prefactor_all_poles;  // product over every pole
    cplx q_pred_all_poles;
    cplx q_osc_literal;
    cplx q_pred_literal;
};

// prod |lambda|^{2 alpha} exp( \int_{S1}^{S2} ln(1+|r|^2) ds / (2 pi i s) );
// all_poles = false restricts the product to the poles with Re phi > 0.
cplx prefactor(const tfun::TFunctionContext& ctx, bool all_poles = true);

// Oscillatory coefficient from the parabolic-cylinder local models.
cplx oscillatory_term(const ScatteringInput& in, long n, double t, double delta_trans = 0.05);
// The closed-form oscillatory formula evaluated literally (diagnostic).
cplx oscillatory_term_literal(const ScatteringInput& in, long n, double t, const PredictOptions& opt = {});

// Restricted soliton q^{Z_xi}: poles with Re phi(lambda, n + 1, t) = 0.
cplx soliton_term(const ScatteringInput& in, long n, double t);

AsymptoticPrediction predict(const ScatteringInput& in, long n, double t, const PredictOptions& opt = {});

}  // namespace al::asympt
