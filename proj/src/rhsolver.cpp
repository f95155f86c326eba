#include "al/rhsolver.hpp"
#include "al/phase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace al::rhsolver {

namespace {

double orient_sign(const Circle& c) { return c.orientation == Orientation::Counterclockwise ? 1.0 : -1.0; }

double theta_of(size_t j, size_t K) { return 2.0 * pi * static_cast<double>(j) / static_cast<double>(K); }

// Multiplier of mode k when a density on `src` is sent to a circle of
// radius r_target (side selects the limit when the radii coincide).
cplx mode_factor(const Circle& src, int k, double r_target, int side) {
    const double s = orient_sign(src);
    bool inside;
    if (r_target == src.radius) {
        if (side == 0) throw DomainError("Cauchy target on the source circle needs a side");
        // left of a counterclockwise circle is its interior
        inside = (side > 0) == (src.orientation == Orientation::Counterclockwise);
    } else {
        inside = r_target < src.radius;
    }
    const double ratio = r_target / src.radius;
    if (inside) return k >= 0 ? s * std::pow(ratio, k) : 0.0;
    return k < 0 ? -s * std::pow(ratio, k) : 0.0;
}

CVec apply_modes(const CVec& samples, const Circle& src, double r_target, int side) {
    const size_t K = samples.size();
    CVec m = to_modes(samples);
    for (size_t i = 0; i < K; ++i) m[i] *= mode_factor(src, mode_index(i, K), r_target, side);
    return from_modes(m);
}

// Dense circulant block of the map above.
Eigen::MatrixXcd block(const Circle& src, double r_target, int side, size_t K) {
    CVec sym(K);
    for (size_t i = 0; i < K; ++i) sym[i] = mode_factor(src, mode_index(i, K), r_target, side);
    CVec col = from_modes(sym);  // p(m) = sum_k d_k e^{i k theta_m}
    Eigen::MatrixXcd B(static_cast<long>(K), static_cast<long>(K));
    for (size_t i = 0; i < K; ++i)
        for (size_t j = 0; j < K; ++j) B(static_cast<long>(i), static_cast<long>(j)) = col[(i + K - j) % K] / static_cast<double>(K);
    return B;
}

// Blocks (target circle in rows, source circle in cols) of the Cauchy map.
Eigen::MatrixXcd cauchy_matrix(const ContourProblem& p, const std::vector<size_t>& rows,
                               const std::vector<size_t>& cols, int side) {
    const size_t K = p.K;
    Eigen::MatrixXcd M(static_cast<long>(rows.size() * K), static_cast<long>(cols.size() * K));
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b)
            M.block(static_cast<long>(a * K), static_cast<long>(b * K), static_cast<long>(K), static_cast<long>(K)) =
                block(p.circles[cols[b]], p.circles[rows[a]].radius, side, K);
    return M;
}

// Cauchy boundary values (side) on every circle of a density given per circle.
std::vector<CVec> apply_cauchy(const ContourProblem& p, const std::vector<CVec>& h, int side) {
    std::vector<CVec> out(p.circles.size(), CVec(p.K, cplx{}));
    for (size_t s = 0; s < p.circles.size(); ++s) {
        bool zero = true;
        for (const auto& v : h[s]) zero = zero && v == cplx{};
        if (zero) continue;
        for (size_t c = 0; c < p.circles.size(); ++c) {
            const CVec v = apply_modes(h[s], p.circles[s], p.circles[c].radius, side);
            for (size_t j = 0; j < p.K; ++j) out[c][j] += v[j];
        }
    }
    return out;
}

std::vector<size_t> support_circles(const std::vector<CVec>& w) {
    std::vector<size_t> out;
    for (size_t c = 0; c < w.size(); ++c)
        if (std::any_of(w[c].begin(), w[c].end(), [](cplx v) { return v != cplx{}; })) out.push_back(c);
    return out;
}

Eigen::VectorXcd gather(const std::vector<CVec>& v, const std::vector<size_t>& idx) {
    const size_t K = v.empty() ? 0 : v[0].size();
    Eigen::VectorXcd out(static_cast<long>(idx.size() * K));
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t j = 0; j < K; ++j) out(static_cast<long>(a * K + j)) = v[idx[a]][j];
    return out;
}

CVec product(const CVec& a, const CVec& b) {
    CVec o(a.size());
    for (size_t i = 0; i < a.size(); ++i) o[i] = a[i] * b[i];
    return o;
}

// Trigonometric interpolant at an arbitrary angle.
cplx interpolate(const CVec& samples, double theta) {
    const size_t K = samples.size();
    CVec m = to_modes(samples);
    cplx v{};
    for (size_t i = 0; i < K; ++i) v += m[i] * std::polar(1.0, mode_index(i, K) * theta);
    return v;
}

}  // namespace

int mode_index(size_t slot, size_t K) {
    const long s = static_cast<long>(slot), k = static_cast<long>(K);
    return static_cast<int>(s < k / 2 ? s : s - k);
}

CVec to_modes(const CVec& samples) {
    const size_t K = samples.size();
    CVec m(K, cplx{});
    for (size_t i = 0; i < K; ++i) {
        const int k = mode_index(i, K);
        cplx acc{};
        for (size_t j = 0; j < K; ++j) acc += samples[j] * std::polar(1.0, -k * theta_of(j, K));
        m[i] = acc / static_cast<double>(K);
    }
    return m;
}

CVec from_modes(const CVec& modes) {
    const size_t K = modes.size();
    CVec s(K, cplx{});
    for (size_t j = 0; j < K; ++j) {
        cplx acc{};
        for (size_t i = 0; i < K; ++i) acc += modes[i] * std::polar(1.0, mode_index(i, K) * theta_of(j, K));
        s[j] = acc;
    }
    return s;
}

cplx cauchy_at(const CVec& samples, const Circle& c, cplx lambda) {
    const size_t K = samples.size();
    const double r = std::abs(lambda);
    if (std::abs(r - c.radius) < 1e-14 * c.radius) throw DomainError("Cauchy target on the source circle needs a side");
    const CVec m = to_modes(samples);
    const cplx z = lambda / c.radius;
    cplx v{};
    for (size_t i = 0; i < K; ++i) {
        const int k = mode_index(i, K);
        v += m[i] * mode_factor(c, k, r, 0) * (r == 0.0 ? (k == 0 ? 1.0 : 0.0) : std::pow(z / std::abs(z), k));
    }
    return v;
}

CVec cauchy_boundary(const CVec& samples, const Circle& c, int side) { return apply_modes(samples, c, c.radius, side); }

CVec cauchy_to_circle(const CVec& samples, const Circle& c, double target_radius) {
    if (target_radius == c.radius) throw DomainError("Cauchy target on the source circle needs a side");
    return apply_modes(samples, c, target_radius, 0);
}

ContourProblem build_three_circle_problem(const std::function<cplx(cplx)>& r, const DiscreteSpectrum& spec, long n,
                                          double t, const BuildOptions& opt, const soliton::ATaylor& a) {
    double rmax = 1.0;
    for (const auto& p : spec.poles) {
        if (!(std::abs(p.lambda) > 1.0 + 1e-6)) throw DomainError("poles must lie strictly outside the unit circle");
        rmax = std::max(rmax, std::abs(p.lambda));
    }
    const double rho = opt.rho > 0.0 ? opt.rho : 1.2 * rmax;
    for (const auto& p : spec.poles)
        if (std::abs(std::abs(p.lambda) - rho) < 1e-3 * rho || std::abs(p.lambda) > rho)
            throw DomainError("pole on or outside the outer circle; increase rho");

    ContourProblem pr;
    pr.K = opt.K;
    pr.n = n;
    pr.t = t;
    pr.circles = {{rho, Orientation::Clockwise}, {1.0, Orientation::Clockwise}, {1.0 / rho, Orientation::Clockwise}};
    const bool poles = !spec.empty();
    soliton::RationalRemover fu, fl;
    if (poles) {
        fu = soliton::pole_removal(spec, soliton::Side::Upper, a);
        fl = soliton::pole_removal(spec, soliton::Side::Lower, a);
    }
    const size_t K = opt.K;
    pr.wp21.assign(3, CVec(K, cplx{}));
    pr.wm12.assign(3, CVec(K, cplx{}));
    pr.r.assign(3, CVec(K, cplx{}));
    pr.f_upper.assign(3, CVec(K, cplx{}));
    pr.f_lower.assign(3, CVec(K, cplx{}));
    for (size_t j = 0; j < K; ++j) {
        const double th = theta_of(j, K);
        for (size_t c = 0; c < 3; ++c) {
            const cplx lam = std::polar(pr.circles[c].radius, th);
            const double lg = std::abs(phase::phi(lam, n, t).real());
            if (lg > 690.0) throw DomainError("exp(phi) overflows on the contour; the solver is limited to small (n, t)");
            const cplx em = phase::exp_phi(lam, n, t, -1), ep = phase::exp_phi(lam, n, t, 1);
            const cplx f = poles ? fu(lam) : 0.0, fb = poles ? fl(lam) : 0.0;
            pr.f_upper[c][j] = f;
            pr.f_lower[c][j] = fb;
            if (c == 0) {
                pr.wp21[c][j] = f * em;
            } else if (c == 1) {
                const cplx rv = r ? r(lam) : 0.0;
                pr.r[c][j] = rv;
                pr.wm12[c][j] = (std::conj(rv) + fb) * ep;
                pr.wp21[c][j] = (rv - f) * em;
            } else {
                pr.wm12[c][j] = -fb * ep;
            }
        }
    }
    return pr;
}

Mat2 jump(const ContourProblem& p, size_t c, size_t j) {
    Mat2 wp = Mat2::Zero(), wm = Mat2::Zero();
    wp(1, 0) = p.wp21[c][j];
    wm(0, 1) = p.wm12[c][j];
    return (Mat2::Identity() + wm) * (Mat2::Identity() + wp);
}

// Only the first column of mu w_- and the second of mu w_+ are nonzero, so
// with mu = (m1, m2) row by row: m2 = e2 + C_+(m1 w-12) and
// m1 = e1 + C_-(m2 w+21). Eliminating m2 leaves a system for m1 on the
// circles that carry w-12.
BCSolution solve_bc(const ContourProblem& p, double tol) {
    const size_t C = p.circles.size(), K = p.K;
    const std::vector<size_t> A = support_circles(p.wm12), P = support_circles(p.wp21);
    const long NA = static_cast<long>(A.size() * K);
    BCSolution s;
    s.rcond = 1.0;
    Eigen::MatrixXcd x(NA, 2);
    if (NA > 0 && !P.empty()) {
        const Eigen::VectorXcd wm = gather(p.wm12, A), wp = gather(p.wp21, P);
        const Eigen::MatrixXcd Cp = cauchy_matrix(p, P, A, +1) * wm.asDiagonal();
        const Eigen::MatrixXcd Cm = cauchy_matrix(p, A, P, -1);
        Eigen::MatrixXcd sys = -(Cm * wp.asDiagonal()) * Cp;
        sys.diagonal().array() += 1.0;
        Eigen::MatrixXcd rhs(NA, 2);
        rhs.col(0).setOnes();
        rhs.col(1) = Cm * wp;
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
        x = lu.solve(rhs);
        s.rcond = lu.rcond();
        s.residual = (sys * x - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
        if (!(s.residual < tol)) {
            std::ostringstream os;
            os << "Beals-Coifman solve residual " << s.residual << " above tolerance (reciprocal condition " << s.rcond
               << ")";
            throw NumericalError(os.str());
        }
    } else if (NA > 0) {
        x.col(0).setOnes();
        x.col(1).setZero();
    }
    for (size_t row = 0; row < 2; ++row) {
        std::vector<CVec> m1w(C, CVec(K, cplx{}));
        for (size_t a = 0; a < A.size(); ++a)
            for (size_t j = 0; j < K; ++j) m1w[A[a]][j] = x(static_cast<long>(a * K + j), static_cast<long>(row)) * p.wm12[A[a]][j];
        std::vector<CVec> m2 = apply_cauchy(p, m1w, +1);
        for (auto& c : m2)
            for (auto& v : c) v += row == 1 ? 1.0 : 0.0;
        std::vector<CVec> m2w(C, CVec(K, cplx{}));
        for (size_t c = 0; c < C; ++c) m2w[c] = product(m2[c], p.wp21[c]);
        std::vector<CVec> m1 = apply_cauchy(p, m2w, -1);
        for (auto& c : m1)
            for (auto& v : c) v += row == 0 ? 1.0 : 0.0;
        s.m1[row] = std::move(m1);
        s.m2[row] = std::move(m2);
    }
    return s;
}

Mat2 reconstruct(const ContourProblem& p, const BCSolution& s, cplx lambda) {
    Mat2 M = Mat2::Identity();
    for (size_t c = 0; c < p.circles.size(); ++c)
        for (int row = 0; row < 2; ++row) {
            const auto r = static_cast<size_t>(row);
            M(row, 0) += cauchy_at(product(s.m2[r][c], p.wp21[c]), p.circles[c], lambda);
            M(row, 1) += cauchy_at(product(s.m1[r][c], p.wm12[c]), p.circles[c], lambda);
        }
    return M;
}

Mat2 reconstruct_boundary(const ContourProblem& p, const BCSolution& s, size_t c, double theta, int side) {
    Mat2 M = Mat2::Identity();
    const double rc = p.circles[c].radius;
    for (size_t src = 0; src < p.circles.size(); ++src)
        for (int row = 0; row < 2; ++row) {
            const auto r = static_cast<size_t>(row);
            const CVec h1 = product(s.m2[r][src], p.wp21[src]), h2 = product(s.m1[r][src], p.wm12[src]);
            if (src == c) {
                M(row, 0) += interpolate(cauchy_boundary(h1, p.circles[src], side), theta);
                M(row, 1) += interpolate(cauchy_boundary(h2, p.circles[src], side), theta);
            } else {
                const cplx lam = std::polar(rc, theta);
                M(row, 0) += cauchy_at(h1, p.circles[src], lam);
                M(row, 1) += cauchy_at(h2, p.circles[src], lam);
            }
        }
    return M;
}

cplx reconstruct_q(const ContourProblem& p, const BCSolution& s) { return reconstruct(p, s, 0.0)(0, 1); }

cplx solve_q(const std::function<cplx(cplx)>& r, const DiscreteSpectrum& spec, long n, double t, const BuildOptions& opt,
             const soliton::ATaylor& a) {
    const ContourProblem p = build_three_circle_problem(r, spec, n + 1, t, opt, a);
    return reconstruct_q(p, solve_bc(p));
}

}  // namespace al::rhsolver
