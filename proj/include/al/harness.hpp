#pragma once

#include "al/lattice.hpp"
#include "al/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace al::harness {

using json = nlohmann::json;

struct SlopeFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    size_t points = 0;
};

// Least-squares line through (ln t, ln err); needs at least 5 positive points.
SlopeFit slope_fit(const std::vector<double>& ts, const std::vector<double>& errs);

std::vector<double> log_spaced(double a, double b, size_t count);

struct InitialData {
    std::string kind = "zero";  // zero | gaussian | csv | soliton | single_site
    double amplitude = 0.0;
    double width = 1.0;
    long half_window = 16;
    std::string path;
    DiscreteSpectrum poles;
};

struct Scenario {
    std::string name;
    std::string check;
    InitialData initial;
    double dt = 1e-3;
    double t_final = 0.0;
    std::vector<double> t_grid;
    std::vector<double> rays;
    json tolerances = json::object();
    json params = json::object();
    double budget_seconds = 0.0;  // 0: unlimited
    std::string known_failure;     // documented reason when a criterion cannot be met
    std::string base_dir;          // directory of the scenario file
};

Scenario parse_scenario(const json& j, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

DiscreteSpectrum parse_poles(const json& j);
json poles_to_json(const DiscreteSpectrum& s);

lattice::LatticeState make_initial(const InitialData& init);

struct Report {
    std::string name;
    std::string check;
    bool passed = false;
    std::string summary;
    json metrics = json::object();
    double seconds = 0.0;
    std::string known_failure;
};

// Runs the scenario, writing CSV outputs and report.json under out_dir/name.
Report run_scenario(const Scenario& s, const std::string& out_dir);

// One-line rendering used by the CLI and the acceptance runner.
std::string format_line(const Report& r);

}  // namespace al::harness
