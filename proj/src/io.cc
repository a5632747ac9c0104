#include "gnmln/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gnmln {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string basename_of(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

ordered_json params_json(const ProblemParams& pp) {
    return {{"dim", pp.dim}, {"s_low", pp.s_low}, {"s_high", pp.s_high}, {"p", pp.p}};
}

ProblemParams params_from(const json& j) {
    ProblemParams pp;
    pp.dim = j.at("dim").get<int>();
    pp.s_low = j.at("s_low").get<double>();
    pp.s_high = j.at("s_high").get<double>();
    pp.p = j.at("p").get<double>();
    return pp;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw validation_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw validation_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string iso_timestamp() {
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void save_field_snapshot(const std::string& base, const Field& f,
                         const ProblemParams& pp) {
    if (f.size() != f.grid.size())
        throw validation_error("field size does not match its grid");
    const std::string bin = base + ".bin";
    {
        std::ofstream out(bin, std::ios::binary | std::ios::trunc);
        if (!out) throw validation_error("cannot open for writing: " + bin);
        out.write(reinterpret_cast<const char*>(f.values.data()),
                  static_cast<std::streamsize>(f.values.size() * sizeof(double)));
        if (!out) throw validation_error("write failed: " + bin);
    }
    ordered_json j;
    j["dim"] = f.grid.dim;
    j["n_per_axis"] = f.grid.n_per_axis;
    j["half_length"] = f.grid.half_length;
    j["params"] = params_json(pp);
    j["byte_order"] = "little-endian";
    j["element"] = "float64";
    j["layout"] = "row-major";
    j["sidecar"] = basename_of(bin);
    j["content_hash"] = hash_hex(content_hash(f.values));
    write_text(base + ".json", j.dump(2) + "\n");
}

Snapshot load_field_snapshot(const std::string& json_path) {
    const json j = json::parse(read_text(json_path));
    Snapshot s;
    s.params = params_from(j.at("params"));
    s.field.grid = make_grid(j.at("dim").get<int>(), j.at("n_per_axis").get<int>(),
                             j.at("half_length").get<double>());
    const auto dir_pos = json_path.find_last_of('/');
    const std::string dir =
        dir_pos == std::string::npos ? "" : json_path.substr(0, dir_pos + 1);
    const std::string bin = dir + j.at("sidecar").get<std::string>();
    const std::string raw = read_text(bin);
    if (raw.size() != s.field.grid.size() * sizeof(double))
        throw solver_error("snapshot sidecar has wrong size: " + bin, 6);
    s.field.values.resize(s.field.grid.size());
    std::copy(raw.begin(), raw.end(),
              reinterpret_cast<char*>(s.field.values.data()));
    if (hash_hex(content_hash(s.field.values)) != j.at("content_hash").get<std::string>())
        throw solver_error("snapshot content hash mismatch: " + bin, 6);
    return s;
}

static ordered_json opts_json(const SolverOptions& o) {
    return {{"max_iters", o.max_iters},
            {"residual_tol", o.residual_tol},
            {"stabilization_gamma", o.stabilization_gamma},
            {"damping", o.damping},
            {"seed", o.seed},
            {"box_flag_threshold", o.box_flag_threshold},
            {"descent_w_tol", o.descent_w_tol},
            {"descent_w_window", o.descent_w_window},
            {"descent_patience", o.descent_patience},
            {"descent_max_iters", o.descent_max_iters},
            {"flow_grad_tol", o.flow_grad_tol},
            {"flow_max_iters", o.flow_max_iters},
            {"flow_delocalization_threshold", o.flow_delocalization_threshold}};
}

static void opts_from(const json& j, SolverOptions& o) {
    o.max_iters = j.value("max_iters", o.max_iters);
    o.residual_tol = j.value("residual_tol", o.residual_tol);
    o.stabilization_gamma = j.value("stabilization_gamma", o.stabilization_gamma);
    o.damping = j.value("damping", o.damping);
    o.seed = j.value("seed", o.seed);
    o.box_flag_threshold = j.value("box_flag_threshold", o.box_flag_threshold);
    o.descent_w_tol = j.value("descent_w_tol", o.descent_w_tol);
    o.descent_w_window = j.value("descent_w_window", o.descent_w_window);
    o.descent_patience = j.value("descent_patience", o.descent_patience);
    o.descent_max_iters = j.value("descent_max_iters", o.descent_max_iters);
    o.flow_grad_tol = j.value("flow_grad_tol", o.flow_grad_tol);
    o.flow_max_iters = j.value("flow_max_iters", o.flow_max_iters);
    o.flow_delocalization_threshold =
        j.value("flow_delocalization_threshold", o.flow_delocalization_threshold);
}

void save_ground_state(const std::string& base, const GroundState& g,
                       const ProblemParams& pp, const SolverOptions& opts) {
    save_field_snapshot(base, g.field, pp);
    ordered_json j;
    j["omega"] = g.omega;
    j["residual"] = g.residual;
    j["boundary_decay"] = g.boundary_decay;
    j["iterations"] = g.iterations;
    j["box_flag"] = g.box_flag;
    j["report"] = {{"energy", g.report.energy},
                   {"kinetic_high", g.report.kinetic_high},
                   {"kinetic_low", g.report.kinetic_low},
                   {"potential", g.report.potential},
                   {"mass", g.report.mass},
                   {"weinstein", g.report.weinstein}};
    j["params"] = params_json(pp);
    j["options"] = opts_json(opts);
    j["snapshot"] = basename_of(base) + ".json";
    j["timestamp"] = iso_timestamp();  // excluded from determinism checks
    write_text(base + ".state.json", j.dump(2) + "\n");
}

std::string render_config(const RunConfig& c) {
    ordered_json j;
    j["params"] = params_json(c.params);
    j["grid"] = {{"dim", c.grid.dim},
                 {"n_per_axis", c.grid.n_per_axis},
                 {"half_length", c.grid.half_length}};
    j["options"] = opts_json(c.opts);
    j["omega"] = c.omega;
    j["n_samples"] = c.n_samples;
    j["seed"] = c.seed;
    j["out"] = c.out;
    j["csv"] = c.csv;
    j["sweep_s_low"] = c.sweep_s_low;
    j["sweep_s_high"] = c.sweep_s_high;
    j["sweep_p"] = c.sweep_p;
    j["jobs"] = c.jobs;
    return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
    const json j = json::parse(json_text);
    RunConfig c;
    if (j.contains("params")) c.params = params_from(j.at("params"));
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        c.grid = SpectralGrid{g.value("dim", c.grid.dim),
                              g.value("n_per_axis", c.grid.n_per_axis),
                              g.value("half_length", c.grid.half_length)};
    }
    if (j.contains("options")) opts_from(j.at("options"), c.opts);
    c.omega = j.value("omega", c.omega);
    c.n_samples = j.value("n_samples", c.n_samples);
    c.seed = j.value("seed", c.seed);
    c.out = j.value("out", c.out);
    c.csv = j.value("csv", c.csv);
    c.sweep_s_low = j.value("sweep_s_low", c.sweep_s_low);
    c.sweep_s_high = j.value("sweep_s_high", c.sweep_s_high);
    c.sweep_p = j.value("sweep_p", c.sweep_p);
    c.jobs = j.value("jobs", c.jobs);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    return parse_config(read_text(path));
}

std::string csv_param_key(const ProblemParams& pp) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g", pp.dim, pp.s_low,
                  pp.s_high, pp.p);
    return buf;
}

std::vector<std::string> csv_existing_keys(const std::string& path) {
    std::vector<std::string> keys;
    std::ifstream f(path);
    if (!f) return keys;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("N,", 0) == 0) continue;
        int commas = 0;
        std::size_t i = 0;
        for (; i < line.size(); ++i)
            if (line[i] == ',' && ++commas == 4) break;
        keys.push_back(line.substr(0, i));
    }
    return keys;
}

void csv_append_row(const std::string& path, const std::string& row) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream f(path, std::ios::app);
    if (!f) throw validation_error("cannot open for writing: " + path);
    if (fresh) f << kCsvHeader << "\n";
    f << row << "\n";
    if (!f) throw validation_error("write failed: " + path);
}

void write_svg_curve(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<std::pair<double, double>>& points) {
    const int W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    if (!points.empty()) {
        x0 = x1 = points[0].first;
        y0 = y1 = points[0].second;
        for (const auto& [x, y] : points) {
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
        if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
        if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
    }
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    s << "<!-- data\nx,y\n";
    char buf[64];
    for (const auto& [x, y] : points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, y);
        s << buf;
    }
    s << "-->\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xlabel << "</text>\n";
    s << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " << (mt + H - mb) / 2 << ")\">"
      << ylabel << "</text>\n";
    if (!points.empty()) {
        // ticks at the extremes
        for (double xv : {x0, x1}) {
            std::snprintf(buf, sizeof(buf), "%.4g", xv);
            s << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"11\">" << buf << "</text>\n";
        }
        for (double yv : {y0, y1}) {
            std::snprintf(buf, sizeof(buf), "%.4g", yv);
            s << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
              << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                 "font-size=\"11\">" << buf << "</text>\n";
        }
        s << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : points) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x), py(y));
            s << buf;
        }
        s << "\"/>\n";
        for (const auto& [x, y] : points)
            s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
              << "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
    }
    s << "</svg>\n";
    write_text(path, s.str());
}

}  // namespace gnmln
