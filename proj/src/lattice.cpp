#include "al/lattice.hpp"
#include "al/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace al::lattice {

void validate(const LatticeState& s) {
    if (s.q.size() < 3) throw DomainError("lattice window needs at least 3 sites");
    for (size_t i = 0; i < s.q.size(); ++i) {
        if (!std::isfinite(s.q[i].real()) || !std::isfinite(s.q[i].imag())) {
            throw DomainError("non-finite amplitude at site " + std::to_string(s.n0 + static_cast<long>(i)));
        }
    }
}

namespace {

void rhs_into(const CVec& q, CVec& out) {
    const size_t m = q.size();
    for (size_t i = 0; i < m; ++i) {
        cplx left = i > 0 ? q[i - 1] : cplx{};
        cplx right = i + 1 < m ? q[i + 1] : cplx{};
        cplx side = left + right;
        out[i] = -I * (side - 2.0 * q[i] + std::norm(q[i]) * side);
    }
}

bool all_finite(const CVec& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

// Scratch-reusing RK4 stepper for long runs.
struct Stepper {
    CVec k1, k2, k3, k4, tmp;
    explicit Stepper(size_t m) : k1(m), k2(m), k3(m), k4(m), tmp(m) {}

    void step(CVec& q, double dt) {
        const size_t m = q.size();
        rhs_into(q, k1);
        for (size_t i = 0; i < m; ++i) tmp[i] = q[i] + 0.5 * dt * k1[i];
        rhs_into(tmp, k2);
        for (size_t i = 0; i < m; ++i) tmp[i] = q[i] + 0.5 * dt * k2[i];
        rhs_into(tmp, k3);
        for (size_t i = 0; i < m; ++i) tmp[i] = q[i] + dt * k3[i];
        rhs_into(tmp, k4);
        for (size_t i = 0; i < m; ++i) q[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
};

long step_count(double span, double dt) {
    return static_cast<long>(std::ceil(span / dt - 1e-9));
}

}  // namespace

CVec al_rhs(const LatticeState& s) {
    validate(s);
    CVec out(s.q.size());
    rhs_into(s.q, out);
    return out;
}

LatticeState step_rk4(const LatticeState& s, double dt) {
    if (!(dt > 0)) throw DomainError("step size must be positive");
    validate(s);
    LatticeState r = s;
    Stepper st(r.q.size());
    st.step(r.q, dt);
    if (!all_finite(r.q)) throw NumericalError("overflow in RK4 stage; step rejected");
    r.t = s.t + dt;
    return r;
}

LatticeState advance(LatticeState s, double t_final, double dt) {
    if (!(dt > 0)) throw DomainError("step size must be positive");
    validate(s);
    const double span = t_final - s.t;
    if (span <= 0) return s;
    const long steps = step_count(span, dt);
    const double h = span / static_cast<double>(steps);
    Stepper st(s.q.size());
    for (long k = 0; k < steps; ++k) st.step(s.q, h);
    if (!all_finite(s.q)) throw NumericalError("overflow during integration");
    s.t = t_final;
    return s;
}

namespace {
Observables observe(const LatticeState& s) {
    return {s.t, c_infty(s), weighted_norm(s, 2), weighted_norm(s, 1)};
}
}  // namespace

Trajectory integrate(const LatticeState& s0, double t_final, double dt, const IntegrateOptions& opt) {
    if (!(t_final > s0.t)) throw DomainError("t_final must exceed the initial time");
    if (!(dt > 0)) throw DomainError("step size must be positive");
    validate(s0);
    Trajectory tr;
    const long steps = step_count(t_final - s0.t, dt);
    tr.dt = (t_final - s0.t) / static_cast<double>(steps);
    LatticeState s = s0;
    const double lc0 = log_c_infty(s0);
    tr.observables.push_back(observe(s));
    if (opt.keep_states) tr.states.push_back(s);
    Stepper st(s.q.size());
    for (long k = 1; k <= steps; ++k) {
        st.step(s.q, tr.dt);
        s.t = s0.t + tr.dt * static_cast<double>(k);
        if (k % opt.stride == 0 || k == steps) {
            if (!all_finite(s.q)) throw NumericalError("overflow at step " + std::to_string(k));
            double drift = std::abs(std::expm1(log_c_infty(s) - lc0));
            if (drift > opt.tol_cons) {
                throw NumericalError("c_infty drift " + std::to_string(drift) + " at step " + std::to_string(k));
            }
            tr.observables.push_back(observe(s));
            if (opt.keep_states) tr.states.push_back(s);
        }
    }
    return tr;
}

double c_infty(const LatticeState& s) { return std::exp(log_c_infty(s)); }

double log_c_infty(const LatticeState& s) {
    double acc = 0.0;
    for (const auto& z : s.q) acc += std::log1p(std::norm(z));
    return acc;
}

double weighted_norm(const LatticeState& s, int k) {
    if (k != 1 && k != 2) throw DomainError("weighted norm order must be 1 or 2");
    double acc = 0.0;
    for (size_t i = 0; i < s.q.size(); ++i) {
        double n = static_cast<double>(s.n0 + static_cast<long>(i));
        double a = std::abs(s.q[i]);
        acc += (1.0 + n * n) * (k == 1 ? a : a * a);
    }
    return k == 1 ? acc : std::sqrt(acc);
}

double edge_amplitude(const LatticeState& s, int width) {
    double m = 0.0;
    const size_t w = std::min(static_cast<size_t>(width), s.q.size());
    for (size_t i = 0; i < w; ++i) {
        m = std::max(m, std::abs(s.q[i]));
        m = std::max(m, std::abs(s.q[s.q.size() - 1 - i]));
    }
    return m;
}

LatticeState gaussian_pulse(double amplitude, double width, long half_window) {
    LatticeState s;
    s.n0 = -half_window;
    s.q.resize(static_cast<size_t>(2 * half_window + 1));
    for (long n = -half_window; n <= half_window; ++n) {
        double x = static_cast<double>(n) / width;
        s.q[static_cast<size_t>(n + half_window)] = amplitude * std::exp(-x * x);
    }
    return s;
}

LatticeState read_csv(const std::string& path) {
    auto rows = csv::read(path, {"n", "re", "im"});
    if (rows.empty()) throw DomainError("empty initial-data file " + path);
    long lo = static_cast<long>(rows.front()[0]), hi = lo;
    for (const auto& r : rows) {
        lo = std::min(lo, static_cast<long>(r[0]));
        hi = std::max(hi, static_cast<long>(r[0]));
    }
    LatticeState s;
    s.n0 = lo;
    s.q.assign(static_cast<size_t>(hi - lo + 1), cplx{});
    for (const auto& r : rows) s.q[static_cast<size_t>(static_cast<long>(r[0]) - lo)] = {r[1], r[2]};
    validate(s);
    return s;
}

void write_state_csv(const std::string& path, const std::vector<LatticeState>& states) {
    csv::Writer w(path, {"t", "n", "re", "im"});
    for (const auto& s : states)
        for (size_t i = 0; i < s.q.size(); ++i)
            w.row({s.t, static_cast<double>(s.n0 + static_cast<long>(i)), s.q[i].real(), s.q[i].imag()});
}

void write_observables_csv(const std::string& path, const std::vector<Observables>& obs) {
    csv::Writer w(path, {"t", "c_infty", "l2_norm", "l21_norm"});
    for (const auto& o : obs) w.row({o.t, o.c_infty, o.l2_norm, o.l21_norm});
}

}  // namespace al::lattice
