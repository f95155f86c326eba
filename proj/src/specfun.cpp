#include "al/specfun.hpp"

#include <array>
#include <cmath>

namespace al::specfun {

namespace {

bool nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> stirling = {
    1.0 / 12.0,       -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,       1.0 / 1188.0,
    -691.0 / 360360.0, 1.0 / 156.0,       -3617.0 / 122400.0,  43867.0 / 244188.0, -174611.0 / 125400.0};

cplx log_gamma_right(cplx z) {
    cplx shift{};
    while (std::abs(z) < 15.0 || z.real() < 0.5) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx zinv = 1.0 / z, zinv2 = zinv * zinv;
    cplx sum{}, p = zinv;
    for (double c : stirling) {
        sum += c * p;
        p *= zinv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + sum - shift;
}

cplx log_sin_pi(cplx z) {
    const double y = z.imag();
    if (y > 0) return cplx{-std::log(2.0), pi / 2} - I * pi * z + std::log(1.0 - std::exp(2.0 * I * pi * z));
    if (y < 0) return cplx{-std::log(2.0), -pi / 2} + I * pi * z + std::log(1.0 - std::exp(-2.0 * I * pi * z));
    return std::log(cplx{std::sin(pi * z.real()), 0.0});
}

}  // namespace

cplx log_gamma(cplx z) {
    if (nonpositive_integer(z)) throw DomainError("log_gamma pole at a nonpositive integer");
    if (z.real() < 0.5) return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    return log_gamma_right(z);
}

cplx rgamma(cplx z) {
    if (nonpositive_integer(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

double nu_of_tau(cplx tau) { return std::log1p(std::norm(tau)) / (2.0 * pi); }

PCModelParams gamma12(cplx tau) {
    if (tau == cplx{}) throw DomainError("gamma constants undefined for tau = 0");
    PCModelParams p;
    p.tau = tau;
    p.nu = nu_of_tau(tau);
    const double s = std::sqrt(2.0 * pi);
    p.gamma1 = s * std::exp(I * pi / 4.0 - pi * p.nu / 2.0) * rgamma(-I * p.nu) / tau;
    p.gamma2 = s * std::exp(-I * pi / 4.0 - pi * p.nu / 2.0) * rgamma(I * p.nu) / std::conj(tau);
    return p;
}

PCModelParams model_params(cplx tau) {
    PCModelParams p;
    p.tau = tau;
    p.nu = -nu_of_tau(tau);
    if (tau == cplx{}) {
        p.gamma1 = p.gamma2 = 0.0;
        return p;
    }
    // 1/Gamma(-i nu) = (-i nu) / Gamma(1 - i nu) keeps tau -> 0 regular.
    cplx nu_over_tau = -std::log1p(std::norm(tau)) / (2.0 * pi * tau);
    p.gamma1 = std::sqrt(2.0 * pi) * std::exp(I * pi / 4.0 - pi * p.nu / 2.0) * (-I * nu_over_tau) *
               rgamma(1.0 - I * p.nu);
    p.gamma2 = -std::conj(p.gamma1);
    return p;
}

// ---------------------------------------------------------------- D_a(z)

namespace {

constexpr double switch_radius = 8.0;
constexpr int tail_terms = 40;

struct AsySum {
    cplx value;
    double last_term;
};

// sum_s (-1)^s (p)_{2s} / (s! (2 z^2)^s) with p = -a (sign = -1) or
// sum_s (p)_{2s} / (s! (2 z^2)^s) with p = a + 1 (sign = +1); stops at the smallest term.
AsySum asy_sum(cplx p, cplx z, double sign) {
    cplx x = 1.0 / (2.0 * z * z);
    cplx term = 1.0, sum = 1.0;
    double prev = 1.0;
    for (int s = 1; s <= tail_terms; ++s) {
        cplx next = term * sign * (p + 2.0 * s - 2.0) * (p + 2.0 * s - 1.0) / static_cast<double>(s) * x;
        double m = std::abs(next);
        if (m > prev) break;
        term = next;
        sum += term;
        prev = m;
        if (m < 1e-17 * std::abs(sum)) break;
    }
    return {sum, prev / std::max(std::abs(sum), 1e-300)};
}

PcfdResult asymptotic(cplx a, cplx z) {
    const double th = std::arg(z);
    AsySum s1 = asy_sum(-a, z, -1.0);
    cplx v = std::exp(-z * z / 4.0 + a * std::log(z)) * s1.value;
    double err = s1.last_term;
    // The recessive exponential switches on across the Stokes line |arg z| = pi/2,
    // where it is below e^{-|z|^2/2} relative to the dominant series.
    if (std::abs(th) > pi / 2.0) {
        double sg = th > 0 ? 1.0 : -1.0;
        AsySum s2 = asy_sum(a + 1.0, z, 1.0);
        cplx w = -std::sqrt(2.0 * pi) * rgamma(-a) * std::exp(sg * I * pi * a) *
                 std::exp(z * z / 4.0 - (a + 1.0) * std::log(z)) * s2.value;
        err = std::max(err * std::abs(v), s2.last_term * std::abs(w)) / std::max(std::abs(v + w), 1e-300);
        v += w;
    }
    return {v, err, err > 1e-8};
}

// Taylor stepping of y'' = (z^2/4 - a - 1/2) y along a segment.
void ode_walk(cplx a, cplx z0, cplx z1, cplx& y, cplx& dy) {
    const double len = std::abs(z1 - z0);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.25)));
    const cplx h = (z1 - z0) / static_cast<double>(steps);
    cplx z = z0;
    for (int k = 0; k < steps; ++k) {
        const cplx p0 = z * z / 4.0 - a - 0.5;
        cplx cm2{}, cm1{}, c0 = y, c1 = dy * h;  // scaled coefficients c_k h^k
        cplx ysum = c0 + c1, dsum = c1;
        const cplx h2 = h * h;
        int small = 0;
        for (int j = 0; j < 120; ++j) {
            // c_{j+2} h^{j+2} from c_j h^j, c_{j-1} h^{j-1}, c_{j-2} h^{j-2}
            cplx c2 = (p0 * c0 * h2 + 0.5 * z * cm1 * h2 * h + 0.25 * cm2 * h2 * h2) /
                      (static_cast<double>(j + 2) * (j + 1));
            ysum += c2;
            dsum += static_cast<double>(j + 2) * c2;
            double scale = std::abs(ysum) + std::abs(dsum) + 1e-300;
            small = std::abs(c2) * (j + 2) < 1e-18 * scale ? small + 1 : 0;
            cm2 = cm1;
            cm1 = c0;
            c0 = c1;
            c1 = c2;
            if (small >= 3) break;
        }
        y = ysum;
        dy = dsum / h;
        z += h;
    }
}

PcfdResult pcfd_impl(cplx a, cplx z, bool derivative);

PcfdResult from_origin(cplx a, cplx z, bool derivative) {
    const double sp = std::sqrt(pi);
    cplx y = std::pow(2.0, a / 2.0) * sp * rgamma((1.0 - a) / 2.0);
    cplx dy = -std::pow(2.0, (a + 1.0) / 2.0) * sp * rgamma(-a / 2.0);
    ode_walk(a, 0.0, z, y, dy);
    return {derivative ? dy : y, 1e-13, false};
}

PcfdResult from_far(cplx a, cplx z, bool derivative) {
    const cplx zf = z / std::abs(z) * switch_radius;
    PcfdResult d0 = asymptotic(a, zf);
    PcfdResult dm = asymptotic(a - 1.0, zf);
    cplx y = d0.value;
    cplx dy = a * dm.value - zf / 2.0 * d0.value;
    ode_walk(a, zf, z, y, dy);
    double err = std::max(d0.error_estimate, dm.error_estimate);
    return {derivative ? dy : y, err, err > 1e-8};
}

PcfdResult pcfd_impl(cplx a, cplx z, bool derivative) {
    const double r = std::abs(z);
    const double th = std::arg(z);
    if (std::abs(th) > 3.0 * pi / 4.0) {
        // Reflect into the sectors where D is computed stably.
        const double sg = th > 0 ? 1.0 : -1.0;
        PcfdResult u = pcfd_impl(a, -z, derivative);
        PcfdResult v = pcfd_impl(-a - 1.0, sg * I * z, derivative);
        cplx cu = std::exp(-sg * I * pi * a);
        cplx cv = std::sqrt(2.0 * pi) * rgamma(-a) * std::exp(-sg * (a + 1.0) * I * pi / 2.0);
        // d/dz D(-z) = -D'(-z); d/dz D(+-iz) = +-i D'(+-iz)
        cplx val = derivative ? -cu * u.value + cv * sg * I * v.value : cu * u.value + cv * v.value;
        double err = std::max(u.error_estimate, v.error_estimate);
        return {val, err, u.flagged || v.flagged};
    }
    if (r >= switch_radius) {
        if (!derivative) return asymptotic(a, z);
        PcfdResult d0 = asymptotic(a, z), dm = asymptotic(a - 1.0, z);
        return {a * dm.value - z / 2.0 * d0.value, std::max(d0.error_estimate, dm.error_estimate),
                d0.flagged || dm.flagged};
    }
    if (std::abs(th) <= pi / 4.0 && r > 2.0) return from_far(a, z, derivative);
    return from_origin(a, z, derivative);
}

}  // namespace

PcfdResult pcf_d_checked(cplx a, cplx z) { return pcfd_impl(a, z, false); }
cplx pcf_d(cplx a, cplx z) { return pcfd_impl(a, z, false).value; }
cplx pcf_d_prime(cplx a, cplx z) { return pcfd_impl(a, z, true).value; }

// ---------------------------------------------------------------- model

int pc_sector(cplx zeta) {
    double th = std::arg(zeta);
    if (th == pi) return 3;  // principal log puts the negative axis on the upper side
    if (th < 0) th += 2.0 * pi;
    int k = static_cast<int>(std::floor(th / (pi / 4.0)));
    static constexpr int map[8] = {1, 2, 2, 3, 4, 5, 5, 6};
    return map[std::clamp(k, 0, 7)];
}

Mat2 pc_model_in_sector(cplx zeta, cplx tau, int sector) {
    const PCModelParams p = model_params(tau);
    const double nu = p.nu;
    const cplx inu = I * nu;
    const bool upper = sector <= 3;
    auto e = [](cplx x) { return std::exp(x); };
    Mat2 phi;
    if (upper) {
        cplx w3 = e(-3.0 * pi * I / 4.0) * zeta, w1 = e(-pi * I / 4.0) * zeta;
        phi << e(-3.0 * pi * nu / 4.0) * pcf_d(inu, w3),
            -I * p.gamma1 * e(pi * (nu - I) / 4.0) * pcf_d(-inu - 1.0, w1),
            I * p.gamma2 * e(-3.0 * pi * (nu + I) / 4.0) * pcf_d(inu - 1.0, w3),
            e(pi * nu / 4.0) * pcf_d(-inu, w1);
    } else {
        cplx w1 = e(pi * I / 4.0) * zeta, w3 = e(3.0 * pi * I / 4.0) * zeta;
        phi << e(pi * nu / 4.0) * pcf_d(inu, w1),
            -I * p.gamma1 * e(-3.0 * pi * (nu - I) / 4.0) * pcf_d(-inu - 1.0, w3),
            I * p.gamma2 * e(pi * (nu + I) / 4.0) * pcf_d(inu - 1.0, w1),
            e(-3.0 * pi * nu / 4.0) * pcf_d(-inu, w3);
    }
    const double d = 1.0 + std::norm(tau);
    Mat2 q = Mat2::Identity();
    switch (sector) {
        case 1: q(1, 0) = -tau; break;
        case 3: q(0, 1) = -std::conj(tau) / d; break;
        case 4: q(1, 0) = tau / d; break;
        case 6: q(0, 1) = std::conj(tau); break;
        default: break;
    }
    const cplx lz = std::log(zeta);
    const cplx ph = e(-inu * lz + I * zeta * zeta / 4.0);
    Mat2 f = Mat2::Zero();
    f(0, 0) = ph;
    f(1, 1) = 1.0 / ph;
    return phi * q * f;
}

Mat2 pc_model(cplx zeta, cplx tau) { return pc_model_in_sector(zeta, tau, pc_sector(zeta)); }

std::pair<int, int> pc_ray_sides(int ray) {
    switch (ray) {
        case 1: return {2, 1};
        case 2: return {2, 3};
        case 3: return {4, 5};
        case 4: return {6, 5};
        default: throw DomainError("ray index must be 1..4");
    }
}

Mat2 pc_jump(cplx zeta, cplx tau, int ray) {
    const PCModelParams p = model_params(tau);
    const cplx lz = std::log(zeta);
    const cplx lower = std::exp(-2.0 * I * p.nu * lz + I * zeta * zeta / 2.0);
    const cplx upper = std::exp(2.0 * I * p.nu * lz - I * zeta * zeta / 2.0);
    const double d = 1.0 + std::norm(tau);
    Mat2 v = Mat2::Identity();
    switch (ray) {
        case 1: v(1, 0) = tau * lower; break;
        case 2: v(0, 1) = std::conj(tau) / d * upper; break;
        case 3: v(1, 0) = tau / d * lower; break;
        case 4: v(0, 1) = std::conj(tau) * upper; break;
        default: throw DomainError("ray index must be 1..4");
    }
    return v;
}

}  // namespace al::specfun
