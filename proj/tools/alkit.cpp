#include "al/asympt.hpp"
#include "al/csv.hpp"
#include "al/harness.hpp"
#include "al/lattice.hpp"
#include "al/phase.hpp"
#include "al/rhsolver.hpp"
#include "al/scattering.hpp"
#include "al/soliton.hpp"
#include "al/specfun.hpp"
#include "al/tfun.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace al;
namespace fs = std::filesystem;
using harness::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    return json::parse(in);
}

// Reflection coefficient on the unit circle rebuilt from scatter CSV samples
// by trigonometric interpolation.
struct SampledReflection {
    CVec modes;   // modes[k + N/2] multiplies lambda^k
    long half = 0;
    cplx operator()(cplx lambda) const {
        const cplx u = lambda / std::abs(lambda);
        cplx acc = 0.0, p = std::pow(u, -half);
        for (const auto& m : modes) {
            acc += m * p;
            p *= u;
        }
        return acc;
    }
};

SampledReflection load_reflection(const std::string& path) {
    const auto rows = csv::read(path, {"theta", "re_a", "im_a", "re_b", "im_b", "re_r", "im_r"});
    if (rows.size() < 8) throw DomainError("scattering CSV needs at least 8 samples");
    SampledReflection s;
    const long N = static_cast<long>(rows.size());
    s.half = N / 2;
    s.modes.assign(static_cast<size_t>(N), 0.0);
    for (long k = -s.half; k < N - s.half; ++k) {
        cplx acc = 0.0;
        for (const auto& r : rows) acc += cplx{r[5], r[6]} * std::polar(1.0, -k * r[0]);
        s.modes[static_cast<size_t>(k + s.half)] = acc / static_cast<double>(N);
    }
    return s;
}

// --scattering accepts a path prefix (prefix.csv + prefix.json) or an explicit "csv,json" pair.
asympt::ScatteringInput load_scattering(const std::string& arg) {
    std::string csv_path = arg + ".csv", json_path = arg + ".json";
    if (const auto parts = split(arg, ','); parts.size() == 2) {
        csv_path = parts[0];
        json_path = parts[1];
    }
    asympt::ScatteringInput in;
    in.r = load_reflection(csv_path);
    in.spec = harness::parse_poles(read_json(json_path));
    return in;
}

std::pair<long, long> parse_range(const std::string& s) {
    const auto p = split(s, ':');
    if (p.size() != 2) throw DomainError("range must be a:b");
    return {std::stol(p[0]), std::stol(p[1])};
}

std::vector<double> parse_grid(const std::string& s, bool log_spacing) {
    const auto p = split(s, ':');
    if (p.size() != 3) throw DomainError("t-grid must be a:b:steps");
    const double a = std::stod(p[0]), b = std::stod(p[1]);
    const size_t n = std::stoul(p[2]);
    if (log_spacing) return harness::log_spaced(a, b, n);
    if (n < 2 || !(b > a)) throw DomainError("t-grid needs a < b and at least 2 steps");
    std::vector<double> out(n);
    for (size_t k = 0; k < n; ++k) out[k] = a + (b - a) * static_cast<double>(k) / (n - 1);
    return out;
}

cplx parse_cplx(const std::string& s) {
    const auto p = split(s, ',');
    if (p.size() != 2) throw DomainError("complex values are written re,im");
    return {std::stod(p[0]), std::stod(p[1])};
}

lattice::LatticeState initial_from(const std::string& input, const std::string& scenario) {
    if (!input.empty()) return lattice::read_csv(input);
    if (!scenario.empty()) {
        auto s = harness::load_scenario(scenario);
        if (s.initial.kind == "csv" && fs::path(s.initial.path).is_relative())
            s.initial.path = (fs::path(s.base_dir) / s.initial.path).string();
        return harness::make_initial(s.initial);
    }
    throw DomainError("give --input or --scenario");
}

int run_simulate(const std::string& input, const std::string& scenario, double t_final, double dt, int stride,
                 const fs::path& out) {
    auto q0 = initial_from(input, scenario);
    if (!scenario.empty()) {
        const auto s = harness::load_scenario(scenario);
        if (t_final <= 0) t_final = s.t_final;
        if (dt <= 0) dt = s.dt;
    }
    if (dt <= 0) dt = 1e-3;
    lattice::IntegrateOptions opt;
    opt.stride = stride;
    const auto tr = lattice::integrate(q0, t_final, dt, opt);
    lattice::write_state_csv((out / "trajectory.csv").string(), tr.states);
    lattice::write_observables_csv((out / "observables.csv").string(), tr.observables);
    std::printf("c_infty %.17g -> %.17g\n", tr.observables.front().c_infty, tr.observables.back().c_infty);
    return 0;
}

int run_scatter(const std::string& input, const std::string& scenario, size_t grid, const fs::path& out) {
    const auto q = initial_from(input, scenario);
    scattering::ScatterOptions opt;
    opt.grid_points = grid;
    const auto d = scattering::analyze(q, opt);
    csv::Writer w((out / "scattering.csv").string(), {"theta", "re_a", "im_a", "re_b", "im_b", "re_r", "im_r"});
    for (size_t k = 0; k < d.grid.points.size(); ++k)
        w.row({d.grid.thetas[k], d.a_vals[k].real(), d.a_vals[k].imag(), d.b_vals[k].real(), d.b_vals[k].imag(),
               d.r_vals[k].real(), d.r_vals[k].imag()});
    json side = harness::poles_to_json(d.spectrum);
    side["c_inf"] = d.c_inf;
    std::ofstream(out / "scattering.json") << side.dump(2) << '\n';
    std::printf("c_inf %.17g, %zu discrete eigenvalue(s)\n", d.c_inf, d.spectrum.poles.size());
    return 0;
}

int run_soliton(const std::string& poles, const std::string& range, double t, const fs::path& out) {
    const auto spec = harness::parse_poles(read_json(poles));
    const auto [lo, hi] = parse_range(range);
    const CVec q = soliton::soliton_field(spec, lo, hi, t);
    csv::Writer w((out / "soliton.csv").string(), {"n", "re_q", "im_q"});
    for (long n = lo; n <= hi; ++n) {
        const cplx z = q[static_cast<size_t>(n - lo)];
        w.row({static_cast<double>(n), z.real(), z.imag()});
    }
    return 0;
}

int run_rh_solve(const std::string& scat, const std::string& input, long n, double t, size_t modes) {
    const auto in = load_scattering(scat);
    rhsolver::BuildOptions opt;
    opt.K = modes;
    soliton::ATaylor a;
    if (!input.empty()) {
        const auto q = lattice::read_csv(input);
        a = [q](cplx l, size_t m) { return scattering::a_taylor(q, l, m); };
    }
    const auto p = rhsolver::build_three_circle_problem(in.r, in.spec, n + 1, t, opt, a);
    const auto sol = rhsolver::solve_bc(p);
    const cplx q = rhsolver::reconstruct_q(p, sol);
    json j{{"schema_version", csv::schema_version},
           {"n", n},
           {"t", t},
           {"q", {q.real(), q.imag()}},
           {"residual", sol.residual},
           {"rcond", sol.rcond},
           {"modes", modes}};
    if (!in.spec.empty()) j["q_reflectionless"] = {soliton::field_at(in.spec, n, t).real(),
                                                   soliton::field_at(in.spec, n, t).imag()};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_asymptotics(const std::string& scat, const std::string& input, const std::string& ray,
                    const std::string& grid, bool log_grid, bool with_sim, double dt, bool dump_t,
                    const fs::path& out) {
    if (ray.rfind("xi=", 0) != 0) throw DomainError("ray must be given as xi=<v>");
    const double xi = std::stod(ray.substr(3));
    const auto ts = parse_grid(grid, log_grid);
    asympt::ScatteringInput in;
    lattice::LatticeState q0;
    if (!input.empty()) {
        q0 = lattice::read_csv(input);
        in = asympt::from_state(q0, scat.empty() ? DiscreteSpectrum{} : load_scattering(scat).spec);
    } else if (!scat.empty()) {
        in = load_scattering(scat);
    } else {
        throw DomainError("give --scattering or --input");
    }
    if (with_sim && input.empty()) throw DomainError("--simulate needs --input initial data");
    std::vector<lattice::LatticeState> states;
    if (with_sim) {
        const long half = std::max({std::abs(q0.n_min()), std::abs(q0.n_max())}) +
                          static_cast<long>(std::ceil(2.0 * std::max(1.0, std::abs(xi)) * ts.back())) + 32;
        lattice::LatticeState s;
        s.n0 = -half;
        s.q.assign(static_cast<size_t>(2 * half + 1), 0.0);
        for (long m = q0.n_min(); m <= q0.n_max(); ++m) s.q[static_cast<size_t>(m + half)] = q0.at(m);
        for (double t : ts) {
            s = lattice::advance(s, t, dt);
            states.push_back(s);
        }
    }
    csv::Writer w((out / "asymptotics.csv").string(),
                  {"t", "n", "re_pred", "im_pred", "re_sim", "im_sim", "abs_err"});
    const double nan = std::nan("");
    for (size_t k = 0; k < ts.size(); ++k) {
        const long n = std::lround(2.0 * xi * ts[k]);
        const auto p = asympt::predict(in, n, ts[k]);
        const cplx qs = with_sim ? states[k].at(n) : cplx{nan, nan};
        w.row({ts[k], static_cast<double>(n), p.q_pred.real(), p.q_pred.imag(), qs.real(), qs.imag(),
               with_sim ? std::abs(qs - p.q_pred) : nan});
    }
    if (dump_t) {
        const long n = std::lround(2.0 * xi * ts.front());
        const auto ctx = asympt::reflected_context(in, n, ts.front());
        csv::Writer d((out / "t_dump.csv").string(), {"re_lambda", "im_lambda", "re_T", "im_T"});
        for (double rad : {0.5, 0.8, 0.95, 1.05, 1.25, 2.0})
            for (int i = 0; i < 64; ++i) {
                const cplx l = std::polar(rad, 2.0 * pi * (i + 0.5) / 64);
                const cplx v = tfun::t_eval(ctx, l);
                d.row({l.real(), l.imag(), v.real(), v.imag()});
            }
    }
    return 0;
}

int run_verify(const std::vector<std::string>& scenarios, const fs::path& out) {
    bool ok = true;
    for (const auto& path : scenarios) {
        const auto s = harness::load_scenario(path);
        for (double xi : s.rays) {
            const long t = 100;
            const auto rd = phase::classify_region(std::lround(2.0 * xi * t), t);
            std::printf("ray xi=%g: region %s\n", xi, phase::region_name(rd.region));
        }
        const auto r = harness::run_scenario(s, out.string());
        std::puts(harness::format_line(r).c_str());
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

int run_pc_check(const std::string& tau_s, double radius, const fs::path& out) {
    const cplx tau = parse_cplx(tau_s);
    const auto mp = specfun::model_params(tau);
    Mat2 A;
    A << 0.0, -I * mp.gamma1, I * mp.gamma2, 0.0;
    csv::Writer w((out / "pc_check.csv").string(),
                  {"ray", "re_zeta", "im_zeta", "jump_residual", "asymptotic_residual"});
    double worst_jump = 0.0, worst_asym = 0.0;
    for (int ray = 1; ray <= 4; ++ray) {
        const double ang = pi / 4.0 + (ray - 1) * pi / 2.0;
        const auto [sp, sm] = specfun::pc_ray_sides(ray);
        for (int k = 0; k <= 16; ++k) {
            const double rad = 0.25 * std::pow(radius / 0.25, k / 16.0);
            const cplx z = std::polar(rad, ang);
            const Mat2 d = specfun::pc_model_in_sector(z, tau, sp) -
                           specfun::pc_model_in_sector(z, tau, sm) * specfun::pc_jump(z, tau, ray);
            // Asymptotic residual |zeta|^2 |M - I - A/zeta| at the mid-sector point of the same radius.
            const cplx zm = std::polar(rad, ang + pi / 4.0);
            const double asym = std::norm(zm) * (specfun::pc_model(zm, tau) - Mat2::Identity() - A / zm).cwiseAbs().maxCoeff();
            const double jr = d.cwiseAbs().maxCoeff();
            worst_jump = std::max(worst_jump, jr);
            if (rad >= 0.5 * radius) worst_asym = std::max(worst_asym, asym);
            w.row({static_cast<double>(ray), z.real(), z.imag(), jr, asym});
        }
    }
    std::printf("gamma1 = %.12g%+.12gi, gamma2 = %.12g%+.12gi, nu = %.12g\n", mp.gamma1.real(), mp.gamma1.imag(),
                mp.gamma2.real(), mp.gamma2.imag(), mp.nu);
    std::printf("max jump residual %.3g, max |zeta|^2 tail residual near R %.3g\n", worst_jump, worst_asym);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ablowitz-Ladik inverse scattering and long-time asymptotics toolkit"};
    app.require_subcommand(1);
    std::string out_dir = "out";
    app.add_option("--out-dir", out_dir, "directory for CSV and JSON outputs");

    std::string input, scenario, poles, range, scat, ray, grid, tau = "1,0";
    double t_final = 0.0, dt = 0.0, t = 0.0, radius = 50.0;
    int stride = 100;
    long n = 0;
    size_t grid_points = 1024, modes = 256;
    bool log_grid = false, with_sim = false, dump_t = false;
    std::vector<std::string> scenario_list;

    auto* sim = app.add_subcommand("simulate", "integrate the lattice and write trajectory and observables");
    sim->add_option("--input", input, "initial data CSV (n,re,im)");
    sim->add_option("--scenario", scenario, "scenario JSON supplying initial data, dt and t_final");
    sim->add_option("--t-final", t_final);
    sim->add_option("--dt", dt);
    sim->add_option("--stride", stride, "keep every stride-th step");

    auto* sc = app.add_subcommand("scatter", "direct scattering: a, b, r on the circle plus discrete spectrum");
    sc->add_option("--input", input, "initial data CSV (n,re,im)");
    sc->add_option("--scenario", scenario);
    sc->add_option("--grid", grid_points, "circle samples");

    auto* so = app.add_subcommand("soliton", "reflectionless field from discrete data");
    so->add_option("--poles", poles, "pole JSON (scatter sidecar schema)")->required();
    so->add_option("--n-range", range, "a:b")->required();
    so->add_option("--t", t);

    auto* rh = app.add_subcommand("rh-solve", "three-circle Beals-Coifman solve for q_n(t)");
    rh->add_option("--scattering", scat, "prefix of scattering.csv/.json or csv,json")->required();
    rh->add_option("--input", input, "initial data CSV; supplies a(lambda) for the residue weights");
    rh->add_option("--n", n)->required();
    rh->add_option("--t", t);
    rh->add_option("--modes", modes, "Fourier modes per circle");

    auto* as = app.add_subcommand("asymptotics", "long-time prediction along a ray");
    as->add_option("--scattering", scat, "prefix of scattering.csv/.json or csv,json");
    as->add_option("--input", input, "initial data CSV (direct scattering computed in process)");
    as->add_option("--ray", ray, "xi=<v>")->required();
    as->add_option("--t-grid", grid, "a:b:steps")->required();
    as->add_flag("--log", log_grid, "log-spaced t-grid");
    as->add_flag("--simulate", with_sim, "fill the simulation columns (needs --input)");
    as->add_option("--dt", dt, "step for --simulate");
    as->add_flag("--dump-t", dump_t, "write T on circles around the unit circle at the first t");

    auto* vr = app.add_subcommand("verify-region", "run scenario files and report pass/fail");
    vr->add_option("--scenario", scenario_list, "scenario JSON file(s)")->required();

    auto* pc = app.add_subcommand("pc-check", "parabolic-cylinder model jump and asymptotic residuals");
    pc->add_option("--tau", tau, "re,im");
    pc->add_option("--radius", radius);

    CLI11_PARSE(app, argc, argv);
    try {
        const fs::path out(out_dir);
        fs::create_directories(out);
        if (*sim) return run_simulate(input, scenario, t_final, dt, stride, out);
        if (*sc) return run_scatter(input, scenario, grid_points, out);
        if (*so) return run_soliton(poles, range, t, out);
        if (*rh) return run_rh_solve(scat, input, n, t, modes);
        if (*as) return run_asymptotics(scat, input, ray, grid, log_grid, with_sim, dt > 0 ? dt : 2e-3, dump_t, out);
        if (*vr) return run_verify(scenario_list, out);
        if (*pc) return run_pc_check(tau, radius, out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
