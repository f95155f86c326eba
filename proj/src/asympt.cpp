#include "al/asympt.hpp"
#include "al/scattering.hpp"
#include "al/soliton.hpp"
#include "al/specfun.hpp"

#include <cmath>

namespace al::asympt {

namespace {

DiscreteSpectrum conjugated(const DiscreteSpectrum& s) {
    DiscreteSpectrum o = s;
    for (auto& p : o.poles) {
        p.lambda = std::conj(p.lambda);
        for (auto& b : p.betas) b = std::conj(b);
    }
    return o;
}

// Restricted reflectionless solution at site n + 1 in the lattice frame.
soliton::Solution restricted_solution(const ScatteringInput& in, long n, double t) {
    const double xi1 = static_cast<double>(n + 1) / (2.0 * t);
    return soliton::solve(soliton::restrict_to_ray(in.spec, xi1), n + 1, t);
}

cplx pole_modulus_product(const tfun::TFunctionContext& ctx, bool all_poles) {
    double v = 1.0;
    auto add = [&](const Pole& p) { v *= std::pow(std::norm(p.lambda), p.order); };
    if (all_poles)
        for (const auto& p : ctx.poles.poles) add(p);
    else
        for (size_t i : ctx.plus) add(ctx.poles.poles[i]);
    return v;
}

std::pair<cplx, cplx> literal_gammas(cplx tau) {
    if (tau == cplx{}) return {0.0, 0.0};
    const auto g = specfun::gamma12(tau);
    return {g.gamma1, g.gamma2};
}

void require_unimodular(cplx v, const char* what) {
    if (std::abs(std::abs(v) - 1.0) > 1e-9) throw NumericalError(std::string(what) + " is not unimodular");
}

}  // namespace

ScatteringInput from_state(const lattice::LatticeState& q, const DiscreteSpectrum& spec) {
    return {[q](cplx l) { return scattering::reflection(q, l); }, spec};
}

tfun::TFunctionContext reflected_context(const ScatteringInput& in, long n, double t, double delta_trans) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    const double xi = static_cast<double>(-n - 1) / (2.0 * t);
    auto r = in.r;
    auto rho = [r](cplx l) { return r ? std::conj(r(std::conj(l))) : cplx{}; };
    return tfun::make_context(rho, conjugated(in.spec), xi, delta_trans);
}

cplx prefactor(const tfun::TFunctionContext& ctx, bool all_poles) {
    return pole_modulus_product(ctx, all_poles) * std::exp(-tfun::log_delta0(ctx));
}

cplx soliton_term(const ScatteringInput& in, long n, double t) {
    const double xi1 = static_cast<double>(n + 1) / (2.0 * t);
    return soliton::field_at(soliton::restrict_to_ray(in.spec, xi1), n, t);
}

cplx oscillatory_term(const ScatteringInput& in, long n, double t, double delta_trans) {
    const tfun::TFunctionContext ctx = reflected_context(in, n, t, delta_trans);
    if (ctx.region != phase::Region::I) throw DomainError("oscillatory term exists only in region I");
    const long m = -n - 1;
    const double xi = ctx.xi, w = 1.0 - xi * xi;
    const double kappa = 2.0 * std::sqrt(2.0) * std::pow(w, 0.75) * std::sqrt(t);
    const double c = 1.0 / (std::sqrt(2.0) * std::pow(w, 0.25) * std::sqrt(t));
    const double bend = pi / 2.0 + std::asin(xi);

    const auto na1 = tfun::nu_alpha_at(ctx, 1), na2 = tfun::nu_alpha_at(ctx, 2);
    const cplx pp1 = tfun::pole_product(ctx, ctx.s1), pp2 = tfun::pole_product(ctx, ctx.s2);
    const cplx e1 = phase::exp_phi(ctx.s1, m, t, -1), e2 = phase::exp_phi(ctx.s2, m, t, -1);
    require_unimodular(e1, "exp(-phi(S1))");
    require_unimodular(e2, "exp(-phi(S2))");
    const cplx D1 = std::exp(2.0 * (I * na1.nu * std::log(kappa) - na1.nu * bend + na1.alpha)) / (pp1 * pp1) * e1;
    const cplx D2 = std::exp(2.0 * (-I * na2.nu * std::log(kappa) - na2.nu * bend + na2.alpha)) / (pp2 * pp2) * e2;

    const auto g1 = specfun::model_params(ctx.rho(ctx.s1));
    const auto g2 = specfun::model_params(-std::conj(ctx.rho(ctx.s2)));
    Mat2 A1, A2;
    A1 << 0.0, -I * g1.gamma1 * D1, I * g1.gamma2 / D1, 0.0;
    A2 << 0.0, I * g2.gamma2 * D2, -I * g2.gamma1 / D2, 0.0;

    Mat2 Mo1 = Mat2::Identity(), Mo2 = Mat2::Identity(), Mo0 = Mat2::Identity();
    const soliton::Solution sol = restricted_solution(in, n, t);
    if (!sol.spec.empty()) {
        Mo1 = sol.eval(std::conj(ctx.s1)).conjugate();
        Mo2 = sol.eval(std::conj(ctx.s2)).conjugate();
        Mo0 = sol.eval(0.0).conjugate();
    }
    const Mat2 E = I * c * (Mo1 * A1 * Mo1.inverse()) - I * c * (Mo2 * A2 * Mo2.inverse());
    const Mat2 Q = E * Mo0;
    return std::conj(std::sqrt(t) * Q(0, 1));
}

cplx oscillatory_term_literal(const ScatteringInput& in, long n, double t, const PredictOptions& opt) {
    const long np = n + (opt.shift_literal_index ? 1 : 0);
    const double xi = static_cast<double>(np) / (2.0 * t);
    const tfun::TFunctionContext ctx = tfun::make_context(in.r, in.spec, xi, opt.delta_trans);
    if (ctx.region != phase::Region::I) throw DomainError("oscillatory term exists only in region I");
    const cplx T1 = tfun::t_j_const(ctx, 1, np, t), T2 = tfun::t_j_const(ctx, 2, np, t);
    Mat2 M1 = Mat2::Identity(), M2 = Mat2::Identity();
    const DiscreteSpectrum z = soliton::restrict_to_ray(in.spec, xi);
    if (!z.empty()) {
        const soliton::Solution s = soliton::solve(z, np, t);
        M1 = s.eval(ctx.s1);
        M2 = s.eval(ctx.s2);
    }
    const cplx r1 = in.r ? in.r(ctx.s1) : cplx{}, r2 = in.r ? in.r(ctx.s2) : cplx{};
    const auto [g1a, g2a] = literal_gammas(r1);
    const cplx g1b = literal_gammas(std::conj(r2)).first;
    // the last term carries gamma_2 of conj r(S1) as displayed
    const cplx g2c = literal_gammas(std::conj(r1)).second;
    const cplx sum = T1 * T1 * M1(0, 1) * g2a + M1(0, 0) * g1a / (T1 * T1) + T2 * T2 * M2(0, 1) * g1b +
                     M2(0, 0) * g2c / (T2 * T2);
    return -sum / (std::sqrt(2.0) * std::pow(1.0 - xi * xi, 0.25));
}

AsymptoticPrediction predict(const ScatteringInput& in, long n, double t, const PredictOptions& opt) {
    AsymptoticPrediction p;
    p.n = n;
    p.t = t;
    p.xi = static_cast<double>(n) / (2.0 * t);
    const tfun::TFunctionContext ctx = reflected_context(in, n, t, opt.delta_trans);
    p.q_soliton = soliton_term(in, n, t);
    if (ctx.region != phase::Region::I) {
        // the reflected frame swaps the half-lines
        p.region = ctx.region == phase::Region::II ? phase::Region::III : phase::Region::II;
        p.prefactor = 1.0;
        p.q_osc = 0.0;
        p.error_order = -1.0;
        p.q_pred = p.q_soliton;
        p.prefactor_all_poles = 1.0;
        p.q_pred_all_poles = p.q_soliton;
        p.q_pred_literal = p.q_soliton;
        return p;
    }
    p.region = phase::Region::I;
    p.error_order = -0.75;
    p.prefactor = prefactor(ctx, false);
    p.q_osc = oscillatory_term(in, n, t, opt.delta_trans);
    p.q_pred = p.prefactor * (p.q_soliton + p.q_osc / std::sqrt(t));
    p.prefactor_all_poles = prefactor(ctx, true);
    p.q_pred_all_poles = p.prefactor_all_poles * (p.q_soliton + p.q_osc / std::sqrt(t));
    p.q_osc_literal = oscillatory_term_literal(in, n, t, opt);
    p.q_pred_literal = p.prefactor_all_poles * (p.q_soliton + p.q_osc_literal / std::sqrt(t));
    return p;
}

}  // namespace al::asympt
