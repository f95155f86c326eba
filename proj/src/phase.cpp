#include "al/phase.hpp"
#include "al/series.hpp"

#include <cmath>

namespace al::phase {

const char* region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::TransitionNeg: return "transition-";
        case Region::TransitionPos: return "transition+";
    }
    return "?";
}

namespace {
void require_nonzero(cplx lambda) {
    if (lambda == cplx{}) throw DomainError("phase function undefined at lambda = 0");
}
}  // namespace

cplx phi(cplx lambda, long n, double t) {
    require_nonzero(lambda);
    return -I * t * (lambda + 1.0 / lambda - 2.0) + static_cast<double>(n) * std::log(lambda);
}

cplx exp_phi(cplx lambda, long n, double t, int sign) {
    require_nonzero(lambda);
    cplx e = std::exp(-I * t * (lambda + 1.0 / lambda - 2.0) * static_cast<double>(sign));
    return e * std::pow(lambda, static_cast<int>(sign * n));
}

CVec phi_derivatives(cplx lambda, long n, double t, int k) {
    require_nonzero(lambda);
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    CVec d(static_cast<size_t>(k + 1));
    d[0] = phi(lambda, n, t);
    const double nn = static_cast<double>(n);
    if (k >= 1) d[1] = -I * t * (1.0 - 1.0 / (lambda * lambda)) + nn / lambda;
    double fact = 1.0;  // (j-1)!
    for (int j = 2; j <= k; ++j) {
        fact *= (j - 1);
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        cplx inv = std::pow(lambda, -j);
        // d^j (1/lambda) = (-1)^j j! lambda^{-j-1}; d^j log = (-1)^{j-1} (j-1)! lambda^{-j}
        d[j] = -I * t * sgn * (fact * j) * inv / lambda - nn * sgn * fact * inv;
    }
    return d;
}

CVec exp_phi_taylor(cplx lambda0, long n, double t, int sign, int k) {
    CVec d = phi_derivatives(lambda0, n, t, k);
    series::Series s(static_cast<size_t>(k + 1));
    double fact = 1.0;
    for (int j = 1; j <= k; ++j) {
        fact *= j;
        s[j] = static_cast<double>(sign) * d[j] / fact;
    }
    series::Series e = series::exp0(s, k + 1);
    cplx base = exp_phi(lambda0, n, t, sign);
    for (auto& c : e) c *= base;
    return e;
}

std::pair<cplx, cplx> stationary_points(double xi) {
    if (!(std::abs(xi) < 1.0)) throw DomainError("no stationary points on the circle for |xi| >= 1");
    double root = std::sqrt(1.0 - xi * xi);
    return {cplx{root, -xi}, cplx{-root, -xi}};
}

RegionData classify_region(long n, double t, double delta_trans) {
    if (!(t > 0)) throw DomainError("region classification needs t > 0");
    RegionData r;
    r.xi = static_cast<double>(n) / (2.0 * t);
    const double a = std::abs(r.xi);
    if (a < 1.0 - delta_trans) {
        r.region = Region::I;
        auto [s1, s2] = stationary_points(r.xi);
        r.s1 = s1;
        r.s2 = s2;
    } else if (r.xi < -1.0 - delta_trans) {
        r.region = Region::II;
    } else if (r.xi > 1.0 + delta_trans) {
        r.region = Region::III;
    } else {
        r.region = r.xi < 0 ? Region::TransitionNeg : Region::TransitionPos;
    }
    return r;
}

double re_phi_rate(cplx lambda, double xi) {
    require_nonzero(lambda);
    return (lambda + 1.0 / lambda).imag() + 2.0 * xi * std::log(std::abs(lambda));
}

int re_phi_sign(cplx lambda, double xi, double dead_band) {
    require_nonzero(lambda);
    if (std::abs(std::abs(lambda) - 1.0) < 1e-14) return 0;
    double v = re_phi_rate(lambda, xi);
    if (std::abs(v) <= dead_band) return 0;
    return v > 0 ? 1 : -1;
}

}  // namespace al::phase
