#include "al/tfun.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace al::tfun {

namespace {

struct Rule {
    std::vector<double> x, w;  // on [-1, 1]
};

template <int N>
Rule make_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    Rule r;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    for (size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0.0) {
            r.x.push_back(0.0);
            r.w.push_back(wt[i]);
            continue;
        }
        r.x.push_back(-ab[i]);
        r.w.push_back(wt[i]);
        r.x.push_back(ab[i]);
        r.w.push_back(wt[i]);
    }
    return r;
}

const Rule& rule_fine() {
    static const Rule r = make_rule<20>();
    return r;
}
const Rule& rule_coarse() {
    static const Rule r = make_rule<10>();
    return r;
}

std::vector<std::pair<double, double>> dyadic_panels(double a, double b, double min_width) {
    std::vector<std::pair<double, double>> out;
    const double len = b - a;
    if (!(len > 0.0)) return out;
    const int depth = std::clamp(static_cast<int>(std::ceil(std::log2(0.5 * len / min_width))), 0, 50);
    double lo = a + 0.5 * len * std::ldexp(1.0, -depth);
    out.emplace_back(a, lo);
    for (int k = depth - 1; k >= 0; --k) {
        double hi = a + 0.5 * len * std::ldexp(1.0, -k);
        out.emplace_back(lo, hi);
        lo = hi;
    }
    double hi = b - 0.5 * len * std::ldexp(1.0, -depth);
    std::vector<std::pair<double, double>> right;
    right.emplace_back(hi, b);
    for (int k = depth - 1; k >= 0; --k) {
        double l2 = b - 0.5 * len * std::ldexp(1.0, -k);
        right.emplace_back(l2, hi);
        hi = l2;
    }
    out.insert(out.end(), right.rbegin(), right.rend());
    return out;
}

// Panels on [a, b] refined dyadically toward both ends down to min_width,
// none wider than max_width.
std::vector<std::pair<double, double>> graded_panels(double a, double b, double min_width, double max_width) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : dyadic_panels(a, b, min_width)) {
        const int pieces = std::max(1, static_cast<int>(std::ceil((p.second - p.first) / max_width)));
        const double h = (p.second - p.first) / pieces;
        for (int k = 0; k < pieces; ++k) out.emplace_back(p.first + k * h, k + 1 == pieces ? p.second : p.first + (k + 1) * h);
    }
    return out;
}

double wrap_into(double theta, double a1) {
    double t = std::fmod(theta - a1, 2.0 * pi);
    if (t < 0) t += 2.0 * pi;
    return a1 + t;
}

struct ArcPoint {
    double alpha;
    bool interior;
};

ArcPoint nearest_arc_point(const TFunctionContext& ctx, cplx lambda) {
    if (std::abs(lambda) == 0.0) return {0.5 * (ctx.a1 + ctx.a2), true};
    double th = wrap_into(std::arg(lambda), ctx.a1);
    if (th <= ctx.a2) return {th, true};
    // outside the arc: nearest endpoint on the circle
    double d1 = 2.0 * pi - (th - ctx.a1), d2 = th - ctx.a2;
    return {d1 < d2 ? ctx.a1 : ctx.a2, false};
}

// -(1/2 pi) \int_{a1}^{a2} (f(s) - f0) s / (s - lambda) d alpha
cplx regular_part(const TFunctionContext& ctx, cplx lambda, double f0, const ArcPoint& p, const Rule& rule) {
    const double d = std::max(std::abs(lambda - std::polar(1.0, p.alpha)), 1e-13);
    std::vector<double> breaks{ctx.a1};
    if (p.interior && p.alpha > ctx.a1 && p.alpha < ctx.a2) breaks.push_back(p.alpha);
    breaks.push_back(ctx.a2);
    cplx acc{};
    for (size_t b = 0; b + 1 < breaks.size(); ++b) {
        for (const auto& [lo, hi] : graded_panels(breaks[b], breaks[b + 1], 0.25 * d, ctx.max_panel)) {
            const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            for (size_t i = 0; i < rule.x.size(); ++i) {
                const double al = c + h * rule.x[i];
                const cplx s = std::polar(1.0, al);
                const cplx den = s - lambda;
                const double df = jump_log(ctx, s) - f0;
                if (df == 0.0) continue;
                acc += rule.w[i] * h * df * s / den;
            }
        }
    }
    return -acc / (2.0 * pi);
}

// \int_arc ds / (s - lambda) along the clockwise arc, lambda off the arc.
cplx arc_cauchy_constant(const TFunctionContext& ctx, cplx lambda) {
    const bool inside = std::abs(lambda) < 1.0;
    if (ctx.full_circle) return inside ? -2.0 * pi * I : cplx{};
    cplx v = std::log((ctx.s1 - lambda) / (ctx.s2 - lambda));
    if (inside && lambda.imag() > -ctx.xi) v -= 2.0 * pi * I;
    return v;
}

// Principal value of the same integral for lambda on the arc.
cplx arc_cauchy_pv(const TFunctionContext& ctx, cplx lambda) {
    if (ctx.full_circle) return -pi * I;
    return std::log(std::abs(ctx.s1 - lambda) / std::abs(ctx.s2 - lambda)) + I * (ctx.a1 - ctx.a2) / 2.0;
}

bool on_arc(const TFunctionContext& ctx, cplx lambda) {
    if (!ctx.has_arc || std::abs(std::abs(lambda) - 1.0) > 1e-14) return false;
    return nearest_arc_point(ctx, lambda).interior;
}

cplx log_delta_with(const TFunctionContext& ctx, cplx lambda, const Rule& rule) {
    if (!ctx.has_arc) return 0.0;
    const ArcPoint p = nearest_arc_point(ctx, lambda);
    const double f0 = jump_log(ctx, std::polar(1.0, p.alpha));
    return regular_part(ctx, lambda, f0, p, rule) + f0 / (2.0 * pi * I) * arc_cauchy_constant(ctx, lambda);
}

cplx principal_pow(cplx base, cplx e) { return std::exp(e * std::log(base)); }

}  // namespace

TFunctionContext make_context(std::function<cplx(cplx)> rho, const DiscreteSpectrum& poles, double xi,
                              double delta_trans, double dead_band) {
    TFunctionContext c;
    c.rho = std::move(rho);
    c.poles = poles;
    c.xi = xi;
    if (std::abs(xi) < 1.0 - delta_trans) {
        c.region = phase::Region::I;
        std::tie(c.s1, c.s2) = phase::stationary_points(xi);
        c.has_arc = true;
        c.a1 = -std::asin(xi);
        c.a2 = pi + std::asin(xi);
    } else if (xi < -1.0 - delta_trans) {
        c.region = phase::Region::II;
    } else if (xi > 1.0 + delta_trans) {
        c.region = phase::Region::III;
        c.has_arc = true;
        c.full_circle = true;
        c.a1 = -pi;
        c.a2 = pi;
    } else {
        throw DomainError("xi lies in a transition region");
    }
    for (size_t i = 0; i < poles.poles.size(); ++i) {
        const int s = phase::re_phi_sign(poles.poles[i].lambda, xi, dead_band);
        if (s > 0) c.plus.push_back(i);
        if (s == 0) c.on_ray.push_back(i);
    }
    return c;
}

double jump_log(const TFunctionContext& ctx, cplx s) { return ctx.rho ? std::log1p(std::norm(ctx.rho(s))) : 0.0; }

cplx pole_product(const TFunctionContext& ctx, cplx lambda) {
    cplx v = 1.0;
    for (size_t i : ctx.plus) {
        const Pole& p = ctx.poles.poles[i];
        v *= std::pow((lambda - p.lambda) / (lambda - 1.0 / std::conj(p.lambda)), p.order);
    }
    return v;
}

cplx log_delta(const TFunctionContext& ctx, cplx lambda) {
    if (on_arc(ctx, lambda)) throw DomainError("T evaluated on the arc; use t_boundary");
    return log_delta_with(ctx, lambda, rule_fine());
}

TValue t_eval_checked(const TFunctionContext& ctx, cplx lambda) {
    if (on_arc(ctx, lambda)) throw DomainError("T evaluated on the arc; use t_boundary");
    const cplx pp = pole_product(ctx, lambda);
    const cplx fine = std::exp(log_delta_with(ctx, lambda, rule_fine())) * pp;
    const cplx coarse = std::exp(log_delta_with(ctx, lambda, rule_coarse())) * pp;
    return {fine, std::abs(fine - coarse)};
}

cplx t_eval(const TFunctionContext& ctx, cplx lambda) { return std::exp(log_delta(ctx, lambda)) * pole_product(ctx, lambda); }

cplx t_boundary(const TFunctionContext& ctx, cplx lambda, int side) {
    if (!on_arc(ctx, lambda)) throw DomainError("t_boundary needs a point on the arc");
    if (!ctx.full_circle && (std::abs(lambda - ctx.s1) < 1e-6 || std::abs(lambda - ctx.s2) < 1e-6))
        throw DomainError("t_boundary too close to a stationary point; use t_local");
    const ArcPoint p{wrap_into(std::arg(lambda), ctx.a1), true};
    const double f0 = jump_log(ctx, lambda);
    const cplx ld = regular_part(ctx, lambda, f0, p, rule_fine()) + f0 / (2.0 * pi * I) * arc_cauchy_pv(ctx, lambda) +
                    (side > 0 ? 0.5 : -0.5) * f0;
    return std::exp(ld) * pole_product(ctx, lambda);
}

NuAlpha nu_alpha_at(const TFunctionContext& ctx, int j) {
    if (ctx.region != phase::Region::I) throw DomainError("stationary points exist only in region I");
    const cplx s = j == 1 ? ctx.s1 : ctx.s2;
    const double fj = jump_log(ctx, s);
    const ArcPoint p{j == 1 ? ctx.a1 : ctx.a2, false};
    return {fj / (2.0 * pi), regular_part(ctx, s, fj, p, rule_fine())};
}

cplx t_local(const TFunctionContext& ctx, int j, cplx lambda) {
    const NuAlpha na = nu_alpha_at(ctx, j);
    return pole_product(ctx, lambda) * principal_pow((lambda - ctx.s2) / (lambda - ctx.s1), I * na.nu) *
           std::exp(na.alpha);
}

cplx t_j_const(const TFunctionContext& ctx, int j, long /*n*/, double t) {
    const NuAlpha na = nu_alpha_at(ctx, j);
    const double xi = ctx.xi, sq = std::sqrt(1.0 - xi * xi);
    const cplx s = j == 1 ? ctx.s1 : ctx.s2;
    const double sgn = j == 1 ? 1.0 : -1.0;  // (-1)^{j-1}
    const cplx scale = -2.0 * std::sqrt(2.0) * std::pow(1.0 - xi * xi, 0.75) * std::sqrt(t);
    const cplx num = principal_pow(scale, sgn * I * na.nu) * principal_pow(I * s, -sgn * I * na.nu);
    const double bracket = 1.0 + sq + xi * ((1.0 - sgn) / 4.0 * pi + sgn * std::asin(xi));
    return pole_product(ctx, s) * num / std::exp(I * t * bracket - na.alpha);
}

void check_arc_orientation(const TFunctionContext& ctx) {
    if (!ctx.has_arc) return;
    const double eps = 1e-7;
    auto ratio = [&](double al) {
        const cplx s = std::polar(1.0, al);
        return t_eval(ctx, s * (1.0 + eps)) / t_eval(ctx, s * (1.0 - eps));
    };
    const double mid = 0.5 * (ctx.a1 + ctx.a2);
    const cplx on = ratio(mid);
    const double want = std::exp(jump_log(ctx, std::polar(1.0, mid)));
    if (std::abs(on - want) > 1e-4 * want) throw NumericalError("T does not jump by 1+|r|^2 across the arc");
    if (!ctx.full_circle) {
        const cplx off = ratio(mid + pi);
        if (std::abs(off - 1.0) > 1e-4) throw NumericalError("T jumps across the complement of the arc");
    }
}

double log_delta0(const TFunctionContext& ctx) { return ctx.has_arc ? log_delta(ctx, 0.0).real() : 0.0; }

}  // namespace al::tfun
