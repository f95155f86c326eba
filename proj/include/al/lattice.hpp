#pragma once

#include "al/types.hpp"

#include <functional>
#include <string>

namespace al::lattice {

struct LatticeState {
    long n0 = 0;  // index of q[0]
    CVec q;
    double t = 0.0;

    long n_min() const { return n0; }
    long n_max() const { return n0 + static_cast<long>(q.size()) - 1; }
    cplx at(long n) const {
        long i = n - n0;
        return (i < 0 || i >= static_cast<long>(q.size())) ? cplx{} : q[static_cast<size_t>(i)];
    }
};

struct Observables {
    double t;
    double c_infty;
    double l2_norm;
    double l21_norm;
};

struct Trajectory {
    std::vector<LatticeState> states;
    double dt = 0.0;
    std::vector<Observables> observables;
};

struct IntegrateOptions {
    int stride = 1;             // keep every stride-th state
    double tol_cons = 1e-8;     // relative drift of c_infty that aborts the run
    bool keep_states = true;
};

void validate(const LatticeState& s);

CVec al_rhs(const LatticeState& s);
LatticeState step_rk4(const LatticeState& s, double dt);

// Advances to t_final with steps of at most dt; the last step is shortened.
LatticeState advance(LatticeState s, double t_final, double dt);

Trajectory integrate(const LatticeState& s, double t_final, double dt,
                     const IntegrateOptions& opt = {});

double c_infty(const LatticeState& s);
double log_c_infty(const LatticeState& s);
double weighted_norm(const LatticeState& s, int k);

// Largest modulus among the `width` outermost sites on either side.
double edge_amplitude(const LatticeState& s, int width = 8);

LatticeState gaussian_pulse(double amplitude, double width, long half_window);

LatticeState read_csv(const std::string& path);
void write_state_csv(const std::string& path, const std::vector<LatticeState>& states);
void write_observables_csv(const std::string& path, const std::vector<Observables>& obs);

}  // namespace al::lattice
