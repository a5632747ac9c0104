// Command-line front end: solve / verify / sweep / report.
// Exit codes: 0 ok, 1 generic/cert failure, 2 non-convergence, 3 bracket
// failure, 4 box-too-small flag, 5 invalid params, 6 snapshot hash mismatch.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnmln/io.hpp"
#include "gnmln/solvers.hpp"
#include "gnmln/verify.hpp"

using namespace gnmln;

namespace {

template <typename F>
int guarded(F&& fn) {
    try {
        return fn();
    } catch (const validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const bracket_failure_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        for (const auto& s : e.samples)
            std::fprintf(stderr, "  omega=%.6g  J/kin=%.6g  boundary_decay=%.3g\n",
                         s[0], s[1], s[2]);
        return 3;
    } catch (const non_convergence_error& e) {
        std::fprintf(stderr, "error: %s (last residual %.3g)\n", e.what(),
                     e.residual_history.empty() ? 0.0 : e.residual_history.back());
        return 2;
    } catch (const solver_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

struct CommonFlags {
    std::string config_path;
    RunConfig cfg;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        cmd->add_option("--dim", cfg.params.dim, "space dimension (1-3)");
        cmd->add_option("--s-low", cfg.params.s_low, "lower fractional order");
        cmd->add_option("--s-high", cfg.params.s_high, "upper fractional order");
        cmd->add_option("--p", cfg.params.p, "nonlinearity power");
        cmd->add_option("--n", cfg.grid.n_per_axis, "grid points per axis");
        cmd->add_option("--box", cfg.grid.half_length, "box half length");
        cmd->add_option("--seed", cfg.seed, "master RNG seed");
        cmd->add_option("--samples", cfg.n_samples, "sample count for certificates");
        cmd->add_option("--max-iters", cfg.opts.max_iters, "Petviashvili iteration cap");
        cmd->add_option("--tol", cfg.opts.residual_tol, "equation residual tolerance");
        cmd->add_option("--out", cfg.out, "output path base");
        cmd->add_option("--csv", cfg.csv, "sweep CSV path");
        cmd->add_option("--jobs", cfg.jobs, "max concurrent sweep solves");
    }
};

int cmd_solve(CommonFlags& fl, double omega) {
    RunConfig& c = fl.cfg;
    validate(c.params);
    const SpectralGrid g = make_grid(c.params.dim, c.grid.n_per_axis,
                                     c.grid.half_length);
    GroundState gs;
    if (omega > 0.0) {
        gs = petviashvili_solve(c.params, omega, canonical_init(g, c.params, omega),
                                c.opts);
    } else {
        CriticalMassResult r = critical_mass_search(c.params, g, c.opts);
        gs = std::move(r.ground);
    }
    save_ground_state(c.out, gs, c.params, c.opts);
    std::printf("omega=%.10g mass=%.10g J=%.6g residual=%.3g\n", gs.omega,
                gs.report.mass, gs.report.energy, gs.residual);
    if (gs.box_flag) {
        std::fprintf(stderr,
                     "warning: boundary decay %.3g exceeds %.3g (box too small)\n",
                     gs.boundary_decay, c.opts.box_flag_threshold);
        return 4;
    }
    return 0;
}

int cmd_verify(CommonFlags& fl, const std::string& snapshot_path) {
    RunConfig& c = fl.cfg;
    Snapshot snap = load_field_snapshot(snapshot_path);
    validate(snap.params);

    // omega from the ground-state sidecar next to the snapshot
    std::string base = snapshot_path;
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
        base = base.substr(0, base.size() - 5);
    double omega = 0.0;
    {
        std::ifstream f(base + ".state.json");
        if (!f)
            throw validation_error("missing ground-state sidecar: " + base +
                                   ".state.json");
        nlohmann::json j = nlohmann::json::parse(f);
        omega = j.at("omega").get<double>();
    }

    // the snapshot is the equation-exact (route A) state; route W is recomputed
    CriticalMassResult r;
    r.ground.field = snap.field;
    r.ground.omega = omega;
    r.ground.report = functional_report(snap.field, snap.params);
    {
        GroundState re = petviashvili_solve(
            snap.params, omega, snap.field,
            [&] {
                SolverOptions o = c.opts;
                o.max_iters = 0;  // residual measurement only
                o.residual_tol = 1e300;
                return o;
            }());
        r.ground.residual = re.residual;
        r.ground.boundary_decay = re.boundary_decay;
    }
    r.omega_star = omega;
    r.c0_routeA = r.ground.report.mass;
    r.descent = weinstein_descent(snap.params,
                                  gaussian_field(snap.field.grid, 1.0, 1.0), c.opts);
    r.ground_w = rescale_to_solution(r.descent, snap.params, c.opts);
    r.W_min = r.descent.W_min;
    r.C_best = 1.0 / r.W_min;
    r.c0_formula = critical_mass_from_constant(r.C_best, snap.params);
    r.c0_routeW = r.ground_w.report.mass;

    Certificate cert = optimality_certificate(r, snap.params, c.n_samples, c.seed);
    {
        std::ofstream f(c.out + ".cert.json", std::ios::trunc);
        f << certificate_to_json(cert) << "\n";
    }
    csv_append_row(c.out + ".cert.csv", certificate_csv_row(cert));
    std::printf("certificate: %s (%zu failing checks)\n", cert.status.c_str(),
                cert.failures.size());
    for (const auto& name : cert.failures)
        std::printf("  FAIL %s\n", name.c_str());
    return cert.status == "PASS" ? 0 : 1;
}

int cmd_sweep(CommonFlags& fl) {
    RunConfig& c = fl.cfg;
    if (c.sweep_p.empty())
        throw validation_error("sweep requires a non-empty p list (--sweep-p)");
    if (c.sweep_s_low.empty()) c.sweep_s_low = {c.params.s_low};
    if (c.sweep_s_high.empty()) c.sweep_s_high = {c.params.s_high};
    // whole grid must be valid before any work starts
    std::vector<ProblemParams> points;
    for (double sl : c.sweep_s_low)
        for (double sh : c.sweep_s_high)
            for (double p : c.sweep_p) {
                ProblemParams pp{c.params.dim, sl, sh, p};
                validate(pp);
                points.push_back(pp);
            }
    const auto done = csv_existing_keys(c.csv);
    int added = 0;
    for (const ProblemParams& pp : points) {
        const std::string key = csv_param_key(pp);
        if (std::find(done.begin(), done.end(), key) != done.end()) continue;
        const SpectralGrid g = make_grid(pp.dim, c.grid.n_per_axis,
                                         c.grid.half_length);
        Certificate cert;
        try {
            CriticalMassResult r = critical_mass_search(pp, g, c.opts);
            cert = optimality_certificate(r, pp, c.n_samples, c.seed);
        } catch (const solver_error& e) {
            std::fprintf(stderr, "sweep point %s failed: %s\n", key.c_str(),
                         e.what());
            cert.params = pp;
            cert.status = "FAIL";
            cert.failures = {"solver"};
        }
        csv_append_row(c.csv, certificate_csv_row(cert));
        ++added;
        std::printf("%s -> %s\n", key.c_str(), cert.status.c_str());
    }
    std::printf("sweep: %d new rows, %zu already present\n", added, done.size());
    return 0;
}

int cmd_report(CommonFlags& fl) {
    RunConfig& c = fl.cfg;
    std::ifstream f(c.csv);
    std::vector<std::pair<double, double>> c0_pts, cb_pts;
    if (f) {
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("N,", 0) == 0) continue;
            std::vector<std::string> cols;
            std::size_t start = 0;
            while (start <= line.size()) {
                const auto comma = line.find(',', start);
                cols.push_back(line.substr(start, comma - start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (cols.size() < 19) continue;
            const double p = std::stod(cols[3]);
            c0_pts.emplace_back(p, std::stod(cols[7]));   // c0_formula
            cb_pts.emplace_back(p, std::stod(cols[4]));   // C_best
        }
    }
    if (c0_pts.empty())
        std::fprintf(stderr, "warning: no data rows in %s; emitting empty axes\n",
                     c.csv.c_str());
    auto by_x = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(c0_pts.begin(), c0_pts.end(), by_x);
    std::sort(cb_pts.begin(), cb_pts.end(), by_x);
    write_svg_curve(c.out + "_c0_vs_p.svg", "critical mass vs p", "p", "c0", c0_pts);
    write_svg_curve(c.out + "_cbest_vs_p.svg", "best constant vs p", "p", "C_best",
                    cb_pts);
    std::printf("wrote %s_c0_vs_p.svg and %s_cbest_vs_p.svg\n", c.out.c_str(),
                c.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed local-nonlocal Gagliardo-Nirenberg ground-state toolkit"};
    app.require_subcommand(1);

    CommonFlags fl;
    double omega = 0.0;
    std::string snapshot_path;

    CLI::App* solve = app.add_subcommand("solve", "compute a ground state");
    fl.add_to(solve);
    solve->add_option("--omega", omega, "frequency (omitted: critical-mass search)");

    CLI::App* verify = app.add_subcommand("verify", "certify a ground-state snapshot");
    fl.add_to(verify);
    verify->add_option("snapshot", snapshot_path, "snapshot .json path")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    fl.add_to(sweep);
    sweep->add_option("--sweep-p", fl.cfg.sweep_p, "p values");
    sweep->add_option("--sweep-s-low", fl.cfg.sweep_s_low, "s_low values");
    sweep->add_option("--sweep-s-high", fl.cfg.sweep_s_high, "s_high values");

    CLI::App* report = app.add_subcommand("report", "render SVG curves from CSV");
    fl.add_to(report);

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() -> int {
        if (!fl.config_path.empty()) {
            // config file supplies defaults, then explicit flags win: reload
            // the file into the bound variables and parse a second time
            fl.cfg = load_config_file(fl.config_path);
            app.clear();
            app.parse(argc, argv);
        }
        fl.cfg.grid.dim = fl.cfg.params.dim;
        CLI::App* active = app.get_subcommands().front();
        if (active == solve) return cmd_solve(fl, omega);
        if (active == verify) return cmd_verify(fl, snapshot_path);
        if (active == sweep) return cmd_sweep(fl);
        return cmd_report(fl);
    });
}
