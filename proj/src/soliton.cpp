#include "al/soliton.hpp"
#include "al/phase.hpp"

#include <cmath>
#include <sstream>

namespace al::soliton {

using series::Series;

namespace {

cplx mirror_point(cplx l) { return 1.0 / std::conj(l); }

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// m-th Taylor coefficient of (lambda - c)^{-k} about lambda0, with d = lambda0 - c.
cplx pole_taylor(int k, int m, cplx d) {
    double s = (m % 2 == 0) ? 1.0 : -1.0;
    return s * binom(k + m - 1, m) * std::pow(d, -(k + m));
}

// Connection function as a Taylor series about the pole.
Series beta_series(const Pole& p, size_t n) {
    Series b(n, cplx{});
    for (size_t k = 0; k < n && k < p.betas.size(); ++k) b[k] = p.betas[k] / factorial(static_cast<int>(k));
    return b;
}

void check_spec(const DiscreteSpectrum& spec) {
    for (size_t i = 0; i < spec.poles.size(); ++i) {
        const Pole& p = spec.poles[i];
        if (!(std::abs(p.lambda) > 1.0)) throw DomainError("poles must lie in |lambda| > 1");
        if (p.order < 1) throw DomainError("pole order must be positive");
        if (static_cast<int>(p.betas.size()) < p.order) throw DomainError("each pole needs alpha connection coefficients");
        for (size_t j = 0; j < i; ++j)
            if (std::abs(spec.poles[j].lambda - p.lambda) < 1e-14) throw DomainError("poles must be distinct");
    }
}

ATaylor default_a(const DiscreteSpectrum& spec, const ATaylor& a) { return a ? a : blaschke(spec); }

// (lambda - l)^alpha / a about l.
Series h_series(const ATaylor& a, cplx l, int alpha) {
    const size_t n = static_cast<size_t>(alpha);
    Series at = a(l, 2 * n);
    return series::recip(series::shift_down(at, n), n);
}

// (lambda - mu)^alpha / conj(a(1/conj lambda)) about the mirror point mu.
Series h_mirror_series(const ATaylor& a, cplx l, int alpha) {
    const size_t n = static_cast<size_t>(alpha);
    const cplx mu = mirror_point(l);
    Series am = series::compose(series::conj(a(l, 2 * n)), series::inverse_variable(mu, 2 * n), 2 * n);
    return series::recip(series::shift_down(am, n), n);
}

// Mirror connection function -conj(beta(1/conj lambda)) about mu.
Series beta_mirror_series(const Pole& p, size_t n) {
    const cplx mu = mirror_point(p.lambda);
    Series b = series::conj(beta_series(p, n));
    return series::scale(series::compose(b, series::inverse_variable(mu, n), n), -1.0);
}

}  // namespace

ATaylor blaschke(const DiscreteSpectrum& spec) {
    return [spec](cplx l0, size_t n) {
        Series r = series::constant(1.0, n);
        for (const auto& p : spec.poles) {
            Series num = series::pow(series::linear(l0, p.lambda, n), p.order, n);
            Series den = series::pow(series::recip(series::linear(l0, mirror_point(p.lambda), n), n), p.order, n);
            r = series::mul(r, series::mul(num, den, n), n);
        }
        return r;
    };
}

cplx blaschke_value(const DiscreteSpectrum& spec, cplx lambda) {
    cplx r = 1.0;
    for (const auto& p : spec.poles) r *= std::pow((lambda - p.lambda) / (lambda - mirror_point(p.lambda)), p.order);
    return r;
}

Series pole_weight(const DiscreteSpectrum& spec, size_t l, long n, double t, const ATaylor& a) {
    const Pole& p = spec.poles.at(l);
    const size_t m = static_cast<size_t>(p.order);
    Series h = h_series(default_a(spec, a), p.lambda, p.order);
    Series e = phase::exp_phi_taylor(p.lambda, n, t, -1, p.order - 1);
    return series::mul(series::mul(h, beta_series(p, m), m), e, m);
}

Series mirror_weight(const DiscreteSpectrum& spec, size_t l, long n, double t, const ATaylor& a) {
    const Pole& p = spec.poles.at(l);
    const size_t m = static_cast<size_t>(p.order);
    Series h = h_mirror_series(default_a(spec, a), p.lambda, p.order);
    Series e = phase::exp_phi_taylor(mirror_point(p.lambda), n, t, 1, p.order - 1);
    return series::mul(series::mul(h, beta_mirror_series(p, m), m), e, m);
}

CVec residue_polynomial(const CVec& h, const CVec& betas, const CVec& ephi) {
    const int alpha = static_cast<int>(h.size());
    CVec p(static_cast<size_t>(alpha), cplx{});
    for (int j = 0; j < alpha; ++j)
        for (int j1 = 0; j1 <= j; ++j1)
            for (int j2 = 0; j2 <= j1; ++j2)
                p[static_cast<size_t>(j)] += h[static_cast<size_t>(j2)] * betas[static_cast<size_t>(j1 - j2)] *
                                             ephi[static_cast<size_t>(j - j1)] /
                                             (factorial(j - j1) * factorial(j1 - j2) * factorial(j2) * ephi[0]);
    return p;
}

ResidueSystem assemble(const DiscreteSpectrum& spec, long n, double t, const ATaylor& a_in) {
    check_spec(spec);
    const ATaylor a = default_a(spec, a_in);
    ResidueSystem rs;
    const size_t L = spec.poles.size();
    rs.offset.resize(L);
    for (size_t l = 0; l < L; ++l) {
        rs.offset[l] = rs.tau;
        rs.tau += static_cast<size_t>(spec.poles[l].order);
    }
    const size_t tau = rs.tau;
    rs.matrix = Eigen::MatrixXcd::Identity(static_cast<long>(2 * tau), static_cast<long>(2 * tau));
    rs.rhs = Eigen::MatrixXcd::Zero(static_cast<long>(2 * tau), 2);
    for (size_t l = 0; l < L; ++l) {
        const Pole& p = spec.poles[l];
        const int al = p.order;
        const cplx lam = p.lambda, mu = mirror_point(lam);
        const Series g = pole_weight(spec, l, n, t, a);
        const Series gm = mirror_weight(spec, l, n, t, a);
        for (int k = 1; k <= al; ++k) {
            const long rowA = static_cast<long>(rs.offset[l]) + k - 1;
            const long rowB = rowA + static_cast<long>(tau);
            rs.rhs(rowA, 1) = g[static_cast<size_t>(al - k)];
            rs.rhs(rowB, 0) = gm[static_cast<size_t>(al - k)];
            for (int m = 0; m <= al - k; ++m) {
                const cplx wa = g[static_cast<size_t>(al - k - m)];
                const cplx wb = gm[static_cast<size_t>(al - k - m)];
                for (size_t j = 0; j < L; ++j) {
                    const cplx lj = spec.poles[j].lambda, mj = mirror_point(lj);
                    for (int k2 = 1; k2 <= spec.poles[j].order; ++k2) {
                        const long colA = static_cast<long>(rs.offset[j]) + k2 - 1;
                        const long colB = colA + static_cast<long>(tau);
                        rs.matrix(rowA, colB) -= wa * pole_taylor(k2, m, lam - mj);
                        rs.matrix(rowB, colA) -= wb * pole_taylor(k2, m, mu - lj);
                    }
                }
            }
        }
    }
    return rs;
}

Solution solve(const DiscreteSpectrum& spec, long n, double t, const ATaylor& a) {
    Solution s;
    s.spec = spec;
    s.n = n;
    s.t = t;
    if (spec.empty()) return s;
    ResidueSystem rs = assemble(spec, n, t, a);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(rs.matrix);
    s.rcond = lu.rcond();
    if (!(s.rcond > 1e-15)) {
        std::ostringstream os;
        os << "singular residue system (reciprocal condition " << s.rcond << ")";
        throw NumericalError(os.str());
    }
    s.coeffs = lu.solve(rs.rhs);
    s.offset = rs.offset;
    s.tau = rs.tau;
    return s;
}

Mat2 Solution::eval(cplx lambda) const {
    Mat2 m = Mat2::Identity();
    for (size_t l = 0; l < spec.poles.size(); ++l) {
        const cplx lam = spec.poles[l].lambda, mu = mirror_point(lam);
        for (int k = 1; k <= spec.poles[l].order; ++k) {
            const long ia = static_cast<long>(offset[l]) + k - 1, ib = ia + static_cast<long>(tau);
            const cplx pa = std::pow(lambda - lam, -k), pb = std::pow(lambda - mu, -k);
            for (int c = 0; c < 2; ++c) {
                m(c, 0) += coeffs(ia, c) * pa;
                m(c, 1) += coeffs(ib, c) * pb;
            }
        }
    }
    return m;
}

Eigen::Vector2cd Solution::principal(size_t l, int k, bool mirror) const {
    const long i = static_cast<long>(offset.at(l)) + k - 1 + (mirror ? static_cast<long>(tau) : 0);
    return {coeffs(i, 0), coeffs(i, 1)};
}

std::vector<Mat2> solve_reflectionless(const DiscreteSpectrum& spec, long n, double t, const CVec& points) {
    Solution s = solve(spec, n, t);
    std::vector<Mat2> out;
    for (const auto& z : points) out.push_back(s.eval(z));
    return out;
}

cplx field_at(const DiscreteSpectrum& spec, long n, double t) {
    if (spec.empty()) return 0.0;
    return solve(spec, n + 1, t).eval(0.0)(0, 1);
}

CVec soliton_field(const DiscreteSpectrum& spec, long n_lo, long n_hi, double t) {
    CVec out;
    for (long n = n_lo; n <= n_hi; ++n) out.push_back(field_at(spec, n, t));
    return out;
}

lattice::LatticeState soliton_state(const DiscreteSpectrum& spec, long half_window, double t) {
    lattice::LatticeState s;
    s.n0 = -half_window;
    s.t = t;
    s.q = soliton_field(spec, -half_window, half_window, t);
    return s;
}

DiscreteSpectrum restrict_to_ray(const DiscreteSpectrum& spec, double xi, double dead_band) {
    DiscreteSpectrum r;
    for (const auto& p : spec.poles)
        if (phase::re_phi_sign(p.lambda, xi, dead_band) == 0) r.poles.push_back(p);
    return r;
}

cplx soliton_restricted(const DiscreteSpectrum& spec, double xi, long n, double t) {
    return field_at(restrict_to_ray(spec, xi), n, t);
}

// ---------------------------------------------------------------- Vandermonde

Vandermonde vandermonde_general(const CVec& lambdas, const std::vector<int>& alphas) {
    if (lambdas.size() != alphas.size()) throw DomainError("lambdas and alphas differ in length");
    for (size_t i = 0; i < lambdas.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (lambdas[i] == lambdas[j]) throw DomainError("repeated node in Vandermonde matrix");
    int tau = 0;
    for (int a : alphas) tau += a;
    Vandermonde v;
    v.matrix = Eigen::MatrixXcd::Zero(tau, tau);
    int row = 0;
    for (size_t j = 0; j < lambdas.size(); ++j)
        for (int i = 0; i < alphas[j]; ++i, ++row)
            for (int k = i; k < tau; ++k) v.matrix(row, k) = binom(k, i) * std::pow(lambdas[j], k - i);
    v.det_closed = 1.0;
    for (size_t j = 0; j < lambdas.size(); ++j)
        for (size_t k = j + 1; k < lambdas.size(); ++k)
            v.det_closed *= std::pow(lambdas[k] - lambdas[j], alphas[j] * alphas[k]);
    // Nearby nodes make the matrix ill-conditioned; eliminate in extended precision.
    using cld = std::complex<long double>;
    Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic> wide(tau, tau);
    for (int r = 0; r < tau; ++r)
        for (int k = 0; k < tau; ++k) wide(r, k) = 0.0L;
    row = 0;
    for (size_t j = 0; j < lambdas.size(); ++j)
        for (int i = 0; i < alphas[j]; ++i, ++row) {
            const cld l{lambdas[j].real(), lambdas[j].imag()};
            cld p = 1.0L;
            for (int k = i; k < tau; ++k, p *= l) wide(row, k) = static_cast<long double>(binom(k, i)) * p;
        }
    const cld d = wide.fullPivLu().determinant();
    v.det_direct = cplx{static_cast<double>(d.real()), static_cast<double>(d.imag())};
    return v;
}

// ---------------------------------------------------------------- removers

CVec remover_coefficients(const CVec& h, const CVec& betas) {
    const int alpha = static_cast<int>(h.size());
    CVec f(static_cast<size_t>(alpha), cplx{});
    for (int s = 1; s <= alpha; ++s)
        for (int s1 = 0; s1 <= alpha - s; ++s1)
            f[static_cast<size_t>(s - 1)] += h[static_cast<size_t>(s1)] * betas[static_cast<size_t>(alpha - s - s1)] /
                                              (factorial(alpha - s - s1) * factorial(s1));
    return f;
}

cplx RationalRemover::local(size_t l, cplx lambda) const {
    cplx v = shifts[l];
    for (size_t s = 0; s < coeffs[l].size(); ++s) v += coeffs[l][s] * std::pow(lambda - centers[l], -static_cast<int>(s + 1));
    return v;
}

cplx RationalRemover::operator()(cplx lambda) const {
    cplx v = series::eval(g, lambda);
    for (size_t l = 0; l < centers.size(); ++l) v *= local(l, lambda);
    return v;
}

namespace {

Series local_taylor(const RationalRemover& f, size_t l, cplx at, size_t n) {
    Series r = series::constant(f.shifts[l], n);
    for (size_t s = 0; s < f.coeffs[l].size(); ++s)
        r = series::add(r, series::scale(series::pow(series::linear(at, f.centers[l], n), -static_cast<int>(s + 1), n),
                                         f.coeffs[l][s]));
    return r;
}

void solve_polynomial(RationalRemover& f, const std::vector<int>& alphas) {
    const size_t L = f.centers.size();
    int tau = 0;
    for (int a : alphas) tau += a;
    Vandermonde v = vandermonde_general(f.centers, alphas);
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(tau, tau);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(tau);
    int off = 0;
    for (size_t l = 0; l < L; ++l) {
        const size_t n = static_cast<size_t>(alphas[l]);
        Series P = series::constant(1.0, n);
        for (size_t o = 0; o < L; ++o)
            if (o != l) P = series::mul(P, local_taylor(f, o, f.centers[l], n), n);
        for (int i = 0; i < alphas[l]; ++i)
            for (int j = 0; j <= i; ++j) J(off + i, off + j) = P[static_cast<size_t>(i - j)];
        e(off) = 1.0;
        off += alphas[l];
    }
    Eigen::MatrixXcd A = J * v.matrix;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    f.condition = sv(0) / sv(sv.size() - 1);
    if (!(f.condition < 1e12)) {
        std::ostringstream os;
        os << "remover system ill-conditioned (condition " << f.condition << ")";
        throw NumericalError(os.str());
    }
    Eigen::VectorXcd g = A.fullPivLu().solve(e);
    f.g.assign(g.data(), g.data() + g.size());
}

}  // namespace

RationalRemover pole_removal(const DiscreteSpectrum& spec, Side side, const ATaylor& a_in) {
    check_spec(spec);
    const ATaylor a = default_a(spec, a_in);
    RationalRemover f;
    std::vector<int> alphas;
    for (const auto& p : spec.poles) {
        const size_t m = static_cast<size_t>(p.order);
        Series h = side == Side::Upper ? h_series(a, p.lambda, p.order) : h_mirror_series(a, p.lambda, p.order);
        Series b = side == Side::Upper ? beta_series(p, m) : beta_mirror_series(p, m);
        CVec hd(m), bd(m);
        for (size_t k = 0; k < m; ++k) {
            hd[k] = h[k] * factorial(static_cast<int>(k));
            bd[k] = b[k] * factorial(static_cast<int>(k));
        }
        f.centers.push_back(side == Side::Upper ? p.lambda : mirror_point(p.lambda));
        f.coeffs.push_back(remover_coefficients(hd, bd));
        f.shifts.push_back(0.0);
        alphas.push_back(p.order);
    }
    if (f.centers.empty()) return f;
    for (size_t l = 0; l < f.centers.size(); ++l)
        for (size_t o = 0; o < f.centers.size(); ++o)
            if (o != l && std::abs(f.local(o, f.centers[l])) < 1e-12) f.shifts[o] = 1.0;
    solve_polynomial(f, alphas);
    return f;
}

cplx laurent_coefficient(const std::function<cplx(cplx)>& fn, cplx center, int k, double radius, int nodes) {
    // c_{-k} = (1/2 pi i) \oint f (lambda - center)^{k-1} d lambda
    cplx acc{};
    for (int j = 0; j < nodes; ++j) {
        const cplx w = std::polar(radius, 2.0 * pi * j / nodes);
        acc += fn(center + w) * std::pow(w, k);
    }
    return acc / static_cast<double>(nodes);
}

}  // namespace al::soliton
