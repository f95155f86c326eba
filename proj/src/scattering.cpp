#include "al/scattering.hpp"

#include <cmath>
#include <functional>
#include <iterator>
#include <sstream>

namespace al::scattering {

using series::Series;

CircleGrid CircleGrid::uniform(size_t n) {
    CircleGrid g;
    g.thetas.resize(n);
    g.points.resize(n);
    for (size_t k = 0; k < n; ++k) {
        g.thetas[k] = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
        g.points[k] = std::polar(1.0, g.thetas[k]);
    }
    return g;
}

Support support(const LatticeState& q, double threshold) {
    Support s{q.n_max() + 1, q.n_max(), 0.0};
    long lo = q.n_max() + 1, hi = q.n_min() - 1;
    for (size_t i = 0; i < q.q.size(); ++i) {
        long n = q.n0 + static_cast<long>(i);
        if (std::abs(q.q[i]) > threshold) {
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
    }
    if (lo > hi) return {0, -1, 0.0};
    s.lo = lo;
    s.hi = hi;
    for (size_t i = 0; i < q.q.size(); ++i) {
        long n = q.n0 + static_cast<long>(i);
        if (n < lo || n > hi) s.dropped_l1 += std::abs(q.q[i]);
    }
    return s;
}

std::pair<cplx, cplx> transfer_ab(const LatticeState& q, cplx lambda, cplx z) {
    const Support sp = support(q);
    // Each factor z^{-(n+1)s3} (z^{s3} + Q(n)) z^{n s3} = [[1, q z^{-2n-1}], [-conj(q) z^{2n+1}, 1]].
    Mat2 s = Mat2::Identity();
    for (long n = sp.lo; n <= sp.hi; ++n) {
        const cplx qn = q.at(n);
        const cplx zp = std::pow(z, static_cast<int>(2 * n + 1));
        Mat2 d;
        d << 1.0, qn / zp, -std::conj(qn) * zp, 1.0;
        s = d * s;
    }
    (void)lambda;
    return {s(0, 0), z * s(1, 0)};
}

std::pair<cplx, cplx> transfer_ab(const LatticeState& q, cplx lambda) {
    return transfer_ab(q, lambda, std::sqrt(lambda));
}

SpectralData transfer_scattering(const LatticeState& q, const CircleGrid& grid) {
    lattice::validate(q);
    SpectralData d;
    d.grid = grid;
    d.c_inf = lattice::c_infty(q);
    const size_t n = grid.points.size();
    d.a_vals.resize(n);
    d.b_vals.resize(n);
    d.r_vals.resize(n);
    for (size_t k = 0; k < n; ++k) {
        auto [a, b] = transfer_ab(q, grid.points[k]);
        if (std::abs(a) < 1e-14) {
            std::ostringstream os;
            os << "spectral singularity: a vanishes at theta = " << grid.thetas[k];
            throw NumericalError(os.str());
        }
        d.a_vals[k] = a;
        d.b_vals[k] = b;
        d.r_vals[k] = b / a;
    }
    return d;
}

namespace {
// Trigonometric interpolant of uniform samples evaluated at theta.
cplx trig_interp(const CVec& v, double theta) {
    const long n = static_cast<long>(v.size());
    cplx acc{};
    for (long k = -n / 2; k < n / 2; ++k) {
        cplx ck{};
        for (long j = 0; j < n; ++j) ck += v[static_cast<size_t>(j)] * std::polar(1.0, -2.0 * pi * k * j / n);
        acc += ck / static_cast<double>(n) * std::polar(1.0, k * theta);
    }
    return acc;
}
}  // namespace

size_t adequate_grid_size(const LatticeState& q, size_t n0, double tol) {
    const Support sp = support(q);
    // a, b are trigonometric polynomials of degree <= support length; probe a
    // grid of size max(16, next power of two) for interpolation consistency.
    size_t n = 16;
    while (n < 4 * static_cast<size_t>(std::max(1L, sp.hi - sp.lo + 2))) n *= 2;
    for (;; n *= 2) {
        auto g = CircleGrid::uniform(n);
        CVec a(n), b(n);
        for (size_t k = 0; k < n; ++k) std::tie(a[k], b[k]) = transfer_ab(q, g.points[k]);
        double err = 0.0;
        for (int j = 0; j < 8; ++j) {
            double th = 2.0 * pi * (j + 0.37) / 8.0;
            auto [ae, be] = transfer_ab(q, std::polar(1.0, th));
            err = std::max({err, std::abs(trig_interp(a, th) - ae), std::abs(trig_interp(b, th) - be)});
        }
        if (err < tol || n >= (1u << 14)) break;
    }
    return std::max(n, n0);
}

cplx continue_a(const LatticeState& q, cplx lambda) {
    if (lambda == cplx{}) throw DomainError("continue_a at lambda = 0");
    return transfer_ab(q, lambda).first;
}

cplx reflection(const LatticeState& q, cplx lambda) {
    auto [a, b] = transfer_ab(q, lambda);
    return b / a;
}

// ---------------------------------------------------------------- Jost series

namespace {

struct SMat {
    Series m[2][2];
};

Vec2S apply(const SMat& a, const Vec2S& y, size_t n) {
    Vec2S r;
    for (int i = 0; i < 2; ++i)
        r[i] = series::add(series::mul(a.m[i][0], y[0], n), series::mul(a.m[i][1], y[1], n));
    return r;
}

SMat step_matrix(cplx qn, int column, bool inverse, const Series& lam, const Series& inv, size_t n) {
    SMat a;
    const cplx qb = std::conj(qn);
    const Series one = series::constant(1.0, n);
    if (!inverse) {
        if (column == 0) {  // [[1, q/l], [-qb, 1/l]]
            a.m[0][0] = one;
            a.m[0][1] = series::scale(inv, qn);
            a.m[1][0] = series::constant(-qb, n);
            a.m[1][1] = inv;
        } else {  // [[l, q], [-qb l, 1]]
            a.m[0][0] = lam;
            a.m[0][1] = series::constant(qn, n);
            a.m[1][0] = series::scale(lam, -qb);
            a.m[1][1] = one;
        }
    } else {
        const double c = 1.0 / (1.0 + std::norm(qn));
        if (column == 0) {  // [[1, -q], [l qb, l]] / (1+|q|^2)
            a.m[0][0] = series::constant(c, n);
            a.m[0][1] = series::constant(-qn * c, n);
            a.m[1][0] = series::scale(lam, qb * c);
            a.m[1][1] = series::scale(lam, c);
        } else {  // [[1/l, -q/l], [qb, 1]] / (1+|q|^2)
            a.m[0][0] = series::scale(inv, c);
            a.m[0][1] = series::scale(inv, -qn * c);
            a.m[1][0] = series::constant(qb * c, n);
            a.m[1][1] = series::constant(c, n);
        }
    }
    return a;
}

Vec2S unit(int column, size_t n) {
    Vec2S y{series::constant(column == 0 ? 1.0 : 0.0, n), series::constant(column == 1 ? 1.0 : 0.0, n)};
    return y;
}

}  // namespace

Vec2S jost_left(const LatticeState& q, int column, cplx lambda0, size_t n_terms, long n) {
    const Support sp = support(q);
    const Series lam = series::linear(lambda0, 0.0, n_terms);
    const Series inv = series::inverse_variable(lambda0, n_terms);
    Vec2S y = unit(column, n_terms);
    for (long k = sp.lo; k < n && k <= sp.hi; ++k) y = apply(step_matrix(q.at(k), column, false, lam, inv, n_terms), y, n_terms);
    return y;
}

Vec2S jost_right(const LatticeState& q, int column, cplx lambda0, size_t n_terms, long n) {
    const Support sp = support(q);
    const Series lam = series::linear(lambda0, 0.0, n_terms);
    const Series inv = series::inverse_variable(lambda0, n_terms);
    Vec2S y = unit(column, n_terms);
    for (long k = sp.hi; k >= n && k >= sp.lo; --k) y = apply(step_matrix(q.at(k), column, true, lam, inv, n_terms), y, n_terms);
    return y;
}

Series a_taylor(const LatticeState& q, cplx lambda0, size_t n_terms) {
    const Support sp = support(q);
    return jost_left(q, 0, lambda0, n_terms, sp.hi + 1)[0];
}

Series b_taylor(const LatticeState& q, cplx lambda0, size_t n_terms) {
    const Support sp = support(q);
    Series y = jost_left(q, 0, lambda0, n_terms, sp.hi + 1)[1];
    Series p = series::pow(series::linear(lambda0, 0.0, n_terms), static_cast<int>(sp.hi + 1), n_terms);
    return series::mul(y, p, n_terms);
}

// ---------------------------------------------------------------- spectrum

namespace {

cplx lp(double u, double th) { return std::exp(cplx{u, th}); }

}  // namespace

int winding(const LatticeState& q, double u0, double u1, double th0, double th1) {
    // vertices in counter-clockwise order in the (u, theta) plane
    const double us[5] = {u0, u1, u1, u0, u0};
    const double ts[5] = {th0, th0, th1, th1, th0};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        const int steps = 4;
        for (int s = 0; s < steps; ++s) {
            double f0 = static_cast<double>(s) / steps, f1 = static_cast<double>(s + 1) / steps;
            double ua = us[e] + (us[e + 1] - us[e]) * f0, ub = us[e] + (us[e + 1] - us[e]) * f1;
            double ta = ts[e] + (ts[e + 1] - ts[e]) * f0, tb = ts[e] + (ts[e + 1] - ts[e]) * f1;
            cplx la = lp(ua, ta), lb = lp(ub, tb);
            cplx aa = continue_a(q, la), ab = continue_a(q, lb);
            // midpoint bisection in (u, theta) so edges stay straight in log-polar coordinates
            std::function<double(double, double, double, double, cplx, cplx, int)> rec =
                [&](double u_a, double t_a, double u_b, double t_b, cplx fa, cplx fb, int depth) -> double {
                double d = std::arg(fb / fa);
                if (depth >= 1 && std::abs(d) < 0.3) return d;
                if (depth > 40) throw NumericalError("winding edge refinement did not converge");
                double um = 0.5 * (u_a + u_b), tm = 0.5 * (t_a + t_b);
                cplx fm = continue_a(q, lp(um, tm));
                if (std::abs(fm) < 1e-300) throw NumericalError("zero of a on a cell boundary");
                return rec(u_a, t_a, um, tm, fa, fm, depth + 1) + rec(um, tm, u_b, t_b, fm, fb, depth + 1);
            };
            total += rec(ua, ta, ub, tb, aa, ab, 0);
        }
    }
    double w = total / (2.0 * pi);
    if (std::abs(w - std::round(w)) > 0.1) throw NumericalError("non-integer winding number");
    return static_cast<int>(std::lround(w));
}

namespace {

cplx newton_simple(const LatticeState& q, cplx l) {
    for (int it = 0; it < 60; ++it) {
        const double h = 1e-6 * std::abs(l);
        cplx d = (-continue_a(q, l + 2.0 * h) + 8.0 * continue_a(q, l + h) - 8.0 * continue_a(q, l - h) +
                  continue_a(q, l - 2.0 * h)) /
                 (12.0 * h);
        cplx step = continue_a(q, l) / d;
        l -= step;
        if (std::abs(step) < 1e-15 * std::abs(l)) break;
    }
    return l;
}

cplx newton_multiple(const LatticeState& q, cplx l, int m) {
    for (int it = 0; it < 60; ++it) {
        Series s = a_taylor(q, l, static_cast<size_t>(m + 1));
        cplx step = s[static_cast<size_t>(m - 1)] / (static_cast<double>(m) * s[static_cast<size_t>(m)]);
        l -= step;
        if (std::abs(step) < 1e-15 * std::abs(l)) break;
    }
    return l;
}

}  // namespace

DiscreteSpectrum find_spectrum(const LatticeState& q, double r_in, double r_out, const FindOptions& opt) {
    if (!(r_in > 1.0) || !(r_out > r_in)) throw DomainError("annulus must satisfy 1 < r_in < r_out");
    DiscreteSpectrum out;
    const double u_lo = std::log(r_in), u_hi = std::log(r_out);

    struct Leaf {
        cplx center;
        int mult;
    };
    std::vector<Leaf> leaves;
    std::function<void(double, double, double, double, int, int)> refine =
        [&](double u0, double u1, double t0, double t1, int w, int depth) {
            if (w == 0) return;
            if ((u1 - u0) + (t1 - t0) < opt.cell_size || depth >= opt.max_depth) {
                if (depth >= opt.max_depth && (u1 - u0) + (t1 - t0) >= opt.cell_size) {
                    std::ostringstream os;
                    os << "winding inconsistency in cell u=[" << u0 << "," << u1 << "] theta=[" << t0 << "," << t1 << "]";
                    throw NumericalError(os.str());
                }
                leaves.push_back({lp(0.5 * (u0 + u1), 0.5 * (t0 + t1)), w});
                return;
            }
            // once a cell holds a single simple zero of moderate size, Newton takes over
            if (w == 1 && (u1 - u0) + (t1 - t0) < 1e-2) {
                leaves.push_back({lp(0.5 * (u0 + u1), 0.5 * (t0 + t1)), 1});
                return;
            }
            const double um = 0.5 * (u0 + u1), tm = 0.5 * (t0 + t1);
            int w00 = winding(q, u0, um, t0, tm), w10 = winding(q, um, u1, t0, tm);
            int w01 = winding(q, u0, um, tm, t1), w11 = winding(q, um, u1, tm, t1);
            if (w00 + w10 + w01 + w11 != w) {
                std::ostringstream os;
                os << "winding inconsistency at depth " << depth;
                throw NumericalError(os.str());
            }
            refine(u0, um, t0, tm, w00, depth + 1);
            refine(um, u1, t0, tm, w10, depth + 1);
            refine(u0, um, tm, t1, w01, depth + 1);
            refine(um, u1, tm, t1, w11, depth + 1);
        };

    // Real or symmetric data put zeros on the axes, so the cell grid is
    // rotated off them; a zero on a cell edge triggers a retry with another rotation.
    const double du = (u_hi - u_lo) / opt.radial_cells, dt = 2.0 * pi / opt.theta_cells;
    const double offsets[] = {opt.theta_offset, 0.61803 * dt, 0.29289 * dt};
    for (size_t attempt = 0;; ++attempt) {
        leaves.clear();
        try {
            for (int i = 0; i < opt.radial_cells; ++i)
                for (int j = 0; j < opt.theta_cells; ++j) {
                    double u0 = u_lo + i * du, t0 = offsets[attempt] + j * dt;
                    refine(u0, u0 + du, t0, t0 + dt, winding(q, u0, u0 + du, t0, t0 + dt), 0);
                }
            break;
        } catch (const NumericalError&) {
            if (attempt + 1 == std::size(offsets)) throw;
        }
    }

    for (const auto& leaf : leaves) {
        cplx z = leaf.mult == 1 ? newton_simple(q, leaf.center) : newton_multiple(q, leaf.center, leaf.mult);
        bool dup = false;
        for (auto& p : out.poles)
            if (std::abs(p.lambda - z) < 1e-8 * std::abs(z)) dup = true;
        if (dup) continue;
        Pole p;
        p.lambda = z;
        p.order = leaf.mult;
        out.poles.push_back(p);
    }
    return out;
}

NormingResult norming_constants(const LatticeState& q, cplx lambda_j, int alpha) {
    if (alpha < 1) throw DomainError("pole order must be positive");
    const Support sp = support(q);
    const long nc = (sp.lo + sp.hi) / 2;
    const size_t n = static_cast<size_t>(alpha);
    Vec2S u = jost_left(q, 0, lambda_j, n, nc);
    Vec2S v = jost_right(q, 1, lambda_j, n, nc);
    // exp(-phi) at t = 0 is lambda^{-n}
    const Series e = series::pow(series::linear(lambda_j, 0.0, n), static_cast<int>(-nc), n);
    Vec2S w{series::mul(v[0], e, n), series::mul(v[1], e, n)};
    const int i = std::abs(w[0][0]) >= std::abs(w[1][0]) ? 0 : 1;
    Series p = series::mul(u[static_cast<size_t>(i)], series::recip(w[static_cast<size_t>(i)], n), n);
    const int o = 1 - i;
    Series res = series::add(u[static_cast<size_t>(o)], series::scale(series::mul(p, w[static_cast<size_t>(o)], n), -1.0));
    double rn = 0.0, un = 0.0;
    for (size_t k = 0; k < n; ++k) {
        rn = std::max(rn, std::abs(res[k]));
        un = std::max(un, std::abs(u[static_cast<size_t>(o)][k]) + std::abs(p[k] * w[static_cast<size_t>(o)][0]));
    }
    NormingResult r;
    r.site = nc;
    r.residual = un > 0 ? rn / un : rn;
    r.condition = (std::abs(w[0][0]) + std::abs(w[1][0])) / std::abs(w[static_cast<size_t>(i)][0]) *
                  (std::abs(u[0][0]) + std::abs(u[1][0])) / std::max(std::abs(u[static_cast<size_t>(i)][0]), 1e-300);
    double fact = 1.0;
    for (size_t k = 0; k < n; ++k) {
        if (k) fact *= static_cast<double>(k);
        r.betas.push_back(p[k] * fact);
    }
    if (std::abs(r.betas[0]) < 1e-10) throw NumericalError("vanishing leading norming constant: inconsistent data");
    return r;
}

cplx mirror_beta0(const LatticeState& q, cplx lambda_j) {
    const Support sp = support(q);
    const long nc = (sp.lo + sp.hi) / 2;
    const cplx mu = 1.0 / std::conj(lambda_j);
    Vec2S u = jost_left(q, 1, mu, 1, nc);
    Vec2S v = jost_right(q, 0, mu, 1, nc);
    const cplx e = std::pow(mu, static_cast<int>(nc));
    const int i = std::abs(v[0][0]) >= std::abs(v[1][0]) ? 0 : 1;
    return u[static_cast<size_t>(i)][0] / (e * v[static_cast<size_t>(i)][0]);
}

SpectralData analyze(const LatticeState& q, const ScatterOptions& opt) {
    size_t n = adequate_grid_size(q, opt.grid_points);
    SpectralData d = transfer_scattering(q, CircleGrid::uniform(n));
    d.spectrum = find_spectrum(q, opt.r_in, opt.r_out);
    for (auto& p : d.spectrum.poles) p.betas = norming_constants(q, p.lambda, p.order).betas;
    return d;
}

}  // namespace al::scattering
