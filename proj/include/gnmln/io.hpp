#pragma once
// Persistence: field snapshots (JSON header + raw binary sidecar), ground
// state sidecars, run configuration, sweep CSV, SVG curve reports.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gnmln/solvers.hpp"
#include "gnmln/verify.hpp"

namespace gnmln {

// Snapshot = <base>.json (header) + <base>.bin (row-major float64 LE).
// The header carries an FNV-1a hash of the sidecar bytes; a mismatch on
// load throws solver_error with exit code 6.
void save_field_snapshot(const std::string& base, const Field& f,
                         const ProblemParams& pp);

struct Snapshot {
    Field field;
    ProblemParams params;
};

Snapshot load_field_snapshot(const std::string& json_path);

// Snapshot plus a ground-state sidecar <base>.state.json (omega, residual,
// boundary_decay, report, params, options, iterations, timestamp).
void save_ground_state(const std::string& base, const GroundState& g,
                       const ProblemParams& pp, const SolverOptions& opts);

struct RunConfig {
    ProblemParams params;
    SpectralGrid grid{1, 512, 32.0};
    SolverOptions opts;
    double omega = 0.0;  // 0 => critical_mass_search
    int n_samples = 1000;
    std::uint64_t seed = 1;
    std::string out = "gnmln_out";
    std::string csv = "sweep.csv";
    std::vector<double> sweep_s_low, sweep_s_high, sweep_p;
    int jobs = 1;
};

std::string render_config(const RunConfig& c);
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Append-only sweep CSV, versioned by a "# schema=1" comment header.
// Returns the "N,s_low,s_high,p" keys already present (for resume).
std::vector<std::string> csv_existing_keys(const std::string& path);
void csv_append_row(const std::string& path, const std::string& row);
std::string csv_param_key(const ProblemParams& pp);

// Standalone SVG polyline chart with the data table embedded in a comment.
// Empty series produce empty axes (and the caller may warn).
void write_svg_curve(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<std::pair<double, double>>& points);

}  // namespace gnmln
