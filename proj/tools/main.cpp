// nlveh: command-line front end for the harvester toolkit.
//
// Every subcommand builds its full output in memory and only then writes it,
// so a run that fails (bad flag, bad config, divergence) leaves no files behind.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_io.hpp"
#include "nlveh/config.hpp"
#include "nlveh/duffing_analysis.hpp"
#include "nlveh/errors.hpp"
#include "nlveh/excitation.hpp"
#include "nlveh/frequency_sweep.hpp"
#include "nlveh/harvester_sim.hpp"
#include "nlveh/optimizer.hpp"
#include "nlveh/sizing.hpp"
#include "nlveh/spring_mechanics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlveh;
using cli::csv_row;
using cli::num;
using cli::write_output;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kDivergence = 3, kInfeasible = 4 };

/// String-valued flags are stored verbatim and fed through the same unit
/// parser as config files, so "--L 1cm" and {"L": "1 cm"} behave alike.
struct Overrides {
    std::map<std::string, std::string> values;

    void add(CLI::App* app, const std::string& key, const std::string& help) {
        app->add_option("--" + key, values[key], help);
    }

    json merged(json base) const {
        if (base.is_null()) base = json::object();
        for (const auto& [k, v] : values) {
            if (!v.empty()) base[k] = v;
        }
        return base;
    }
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    json doc = cli::read_json(path);
    config::check_schema(doc);
    return doc;
}

json section(const json& doc, const char* key) {
    return doc.contains(key) ? doc.at(key) : doc;
}

json with_schema(json body) {
    body["schema"] = config::kSchema;
    return body;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- spring

struct SpringArgs {
    std::string config;
    Overrides geo;
    bool holding_sweep = false;
    std::string out = "-";
    std::string force_csv;
    double x_max_over_e = 10.0;
    std::size_t points = 201;
};

std::string holding_sweep_csv() {
    const Material mat(131e9);
    const BeamGeometry main(1e-2, 1e-3, 100e-6);
    std::string out = "a_m,k_trac_N_per_m,k_parr_N_per_m,k0_N_per_m,k3_N_per_m3,alpha\n";
    for (int i = 1; i <= 10; ++i) {
        const HShapeGeometry h(main, i * 1e-4, 100e-6, 100e-6);
        const SpringLaw law = spring_law_from_geometry(mat, h);
        out += csv_row(h.holding_length(), traction_stiffness(mat, main), holding_stiffness(mat, h), law.k0(),
                       law.k3(), law.alpha());
    }
    return out;
}

int run_spring(const SpringArgs& args) {
    if (args.holding_sweep) {
        write_output(args.out, holding_sweep_csv());
        return kOk;
    }
    json doc = section(load_config(args.config), "spring");
    for (const char* nested : {"material", "beam", "holding"}) {
        if (!doc.contains(nested)) continue;
        json inner = doc.at(nested);
        doc.erase(nested);
        doc.update(inner);
    }
    doc = args.geo.merged(doc);
    const Material mat = config::material_from_json(doc);
    const BeamGeometry beam = config::beam_from_json(doc);
    const bool has_holding = doc.contains("a");

    json report{{"E_Pa", mat.youngs_modulus},
                {"L_m", beam.length()},
                {"b_m", beam.width()},
                {"e_m", beam.thickness()},
                {"k_trac_N_per_m", traction_stiffness(mat, beam)}};
    SpringLaw law = spring_law_from_geometry(mat, beam);
    if (has_holding) {
        const HShapeGeometry h = config::hshape_from_json(doc);
        law = spring_law_from_geometry(mat, h);
        report["a_m"] = h.holding_length();
        report["k_parr_N_per_m"] = holding_stiffness(mat, h);
    } else {
        report["k_parr_N_per_m"] = nullptr;
    }
    report["law"] = config::to_json(law);

    std::string force;
    if (!args.force_csv.empty()) {
        if (args.points < 2) throw ConfigError("--points must be at least 2");
        const SpringLaw cubic = spring_law_from_geometry(mat, beam);
        const double x_max = args.x_max_over_e * beam.thickness();
        force = "x_m,force_exact_N,force_cubic_N\n";
        for (std::size_t i = 0; i < args.points; ++i) {
            const double x = -x_max + 2.0 * x_max * static_cast<double>(i) / static_cast<double>(args.points - 1);
            force += csv_row(x, exact_elongation_force(mat, beam, x), spring_force(cubic, x));
        }
    }
    if (!force.empty()) write_output(args.force_csv, force);
    write_output(args.out, dump(with_schema(report)));
    return kOk;
}

// ---------------------------------------------------------------- feq

struct FeqArgs {
    double alpha = 1.0;
    std::string e = "100um";
    std::optional<double> beta;
    std::string f0 = "100";
    double max_ratio = 10.0;
    std::size_t points = 101;
    std::string out = "-";
};

int run_feq(const FeqArgs& args) {
    const double e = units::parse(args.e, units::Dimension::length);
    const double f0 = units::parse(args.f0, units::Dimension::frequency);
    if (!(e > 0.0) || !(f0 > 0.0)) throw ConfigError("e and f0 must be positive");
    if (args.points < 2 || !(args.max_ratio > 0.0)) throw ConfigError("need --points >= 2 and --max-ratio > 0");
    const double beta = args.beta ? *args.beta : args.alpha / (2.0 * e * e);
    if (!(beta >= 0.0)) throw ConfigError("beta must be non-negative");

    std::vector<double> amps(args.points);
    for (std::size_t i = 0; i < args.points; ++i) {
        amps[i] = e * args.max_ratio * static_cast<double>(i) / static_cast<double>(args.points - 1);
    }
    std::string out = "x_max_over_e,lambda,feq_over_f0,feq_Hz\n";
    for (const BackbonePoint& p : backbone_curve(beta, f0, amps)) {
        out += csv_row(p.x_max / e, p.lambda, p.f_eq_over_f0, p.f_eq);
    }
    write_output(args.out, out);
    return kOk;
}

// ---------------------------------------------------------------- traces

struct TraceArgs {
    std::string path;
    std::string amplitude = "1";
    std::string frequency;  ///< defaults to the harvester f0 where one exists
    double duration = 10.0;
    double sample_rate = 10000.0;

    void add(CLI::App* app) {
        app->add_option("--trace", path, "Acceleration CSV (time_s, accel_ms2)")->check(CLI::ExistingFile);
        app->add_option("--amplitude", amplitude, "Synthetic sine amplitude, m/s^2 or g0 units")->capture_default_str();
        app->add_option("--frequency", frequency, "Synthetic sine frequency");
        app->add_option("--duration", duration, "Synthetic duration, s")->capture_default_str();
        app->add_option("--sample-rate", sample_rate, "Synthetic sample rate, Hz")->capture_default_str();
    }

    VibrationTrace load(double default_frequency) const {
        if (!path.empty()) return load_trace(path);
        if (!(sample_rate > 0.0)) throw ConfigError("--sample-rate must be positive");
        const double f = frequency.empty() ? default_frequency : units::parse(frequency, units::Dimension::frequency);
        const SineSpec spec{units::parse(amplitude, units::Dimension::acceleration), f, duration};
        spec.validate();
        return synth_sine(spec, 1.0 / sample_rate);
    }
};

void add_param_flags(CLI::App* app, std::string& file, Overrides& o) {
    app->add_option("--params", file, "Harvester JSON (m, f0, Q | xi_m, xi_e, beta | alpha+e)")
        ->check(CLI::ExistingFile);
    o.add(app, "m", "Moving mass, e.g. 1g");
    o.add(app, "f0", "Natural frequency, e.g. 100Hz");
    o.add(app, "Q", "Mechanical quality factor");
    o.add(app, "xi_m", "Mechanical damping ratio");
    o.add(app, "xi_e", "Electrical damping ratio (defaults to xi_m)");
    o.add(app, "beta", "Cubic-to-linear stiffness ratio, 1/m^2");
    o.add(app, "alpha", "Nonlinearity ratio, with --e");
    o.add(app, "e", "Beam thickness for --alpha");
}

HarvesterParams params_from(const std::string& file, const Overrides& o) {
    return config::harvester_from_json(o.merged(section(load_config(file), "harvester")));
}

// ---------------------------------------------------------------- sim

struct SimArgs {
    std::string params;
    Overrides overrides;
    TraceArgs trace;
    double dt = 0.0;
    std::size_t stride = 0;
    std::string out;
    std::string summary = "-";
};

int run_sim(const SimArgs& args) {
    const HarvesterParams p = params_from(args.params, args.overrides);
    const VibrationTrace trace = args.trace.load(p.f0);

    SimOptions opt;
    opt.dt = args.dt;
    if (!args.out.empty()) {
        const double step = args.dt > 0.0 ? args.dt : default_step(p, trace.dt());
        opt.record_stride = args.stride > 0 ? args.stride
                                            : static_cast<std::size_t>(std::max(1.0, std::round(trace.dt() / step)));
    }
    const SimResult r = simulate(p, trace, {}, opt);

    std::string series;
    if (!args.out.empty()) {
        series = "t_s,x_m,v_m_per_s,p_inst_W\n";
        for (const SimSample& s : r.series) series += csv_row(s.t, s.x, s.v, s.p);
    }
    const json summary{{"trace", trace.label()},
                       {"params", config::to_json(p)},
                       {"mean_power_W", r.mean_power},
                       {"mean_power_uW_per_g", r.mean_power_uw_per_g(p.m)},
                       {"max_abs_x", r.max_abs_x},
                       {"dt_s", r.dt},
                       {"steps", r.steps}};
    if (!series.empty()) write_output(args.out, series);
    write_output(args.summary, dump(with_schema(summary)));
    return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string params;
    Overrides overrides;
    std::string amplitude = "1";
    std::string f_lo;
    std::string f_hi;
    std::size_t points = 200;
    double jump_factor = 3.0;
    std::string out_dir = "sweep_out";
};

std::string sweep_csv(const SweepResult& r) {
    std::string out = "f_Hz,X_m,P_W\n";
    for (const SweepPoint& pt : r.points) out += csv_row(pt.f, pt.amplitude, pt.power);
    return out;
}

int run_sweep(const SweepArgs& args) {
    const HarvesterParams p = params_from(args.params, args.overrides);
    const double amplitude = units::parse(args.amplitude, units::Dimension::acceleration);
    const double lo = args.f_lo.empty() ? 0.5 * p.f0 : units::parse(args.f_lo, units::Dimension::frequency);
    const double hi = args.f_hi.empty() ? 3.0 * p.f0 : units::parse(args.f_hi, units::Dimension::frequency);
    if (!(lo > 0.0 && hi > lo) || args.points < 2) throw ConfigError("need 0 < f-lo < f-hi and --points >= 2");

    const std::vector<double> grid = log_grid(lo, hi, args.points, SweepDirection::up);
    SweepOptions opt;
    opt.jump_factor = args.jump_factor;
    const auto [up, down] = sweep_both(p, amplitude, grid, opt);

    const json metrics{{"params", config::to_json(p)},
                       {"amplitude_m_per_s2", amplitude},
                       {"up", config::to_json(up)},
                       {"down", config::to_json(down)},
                       {"hysteresis_area_W_Hz", hysteresis_area(up, down)}};
    const fs::path dir(args.out_dir);
    write_output(dir / "up.csv", sweep_csv(up));
    write_output(dir / "down.csv", sweep_csv(down));
    write_output(dir / "metrics.json", dump(with_schema(metrics)));
    return kOk;
}

// ---------------------------------------------------------------- optimize / compare

struct OptimizeArgs {
    std::string spec;
    std::string trace;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> restarts;
    std::string out = "-";
    std::string history;
};

fs::path trace_path(const std::string& flag, const json& doc, const std::string& spec_file) {
    if (!flag.empty()) return flag;
    if (!doc.contains("trace")) throw ConfigError("no trace given (use --trace or a \"trace\" key)");
    fs::path p = doc.at("trace").get<std::string>();
    if (p.is_relative() && !spec_file.empty()) p = fs::path(spec_file).parent_path() / p;
    return p;
}

std::string history_csv(const OptResult& r) {
    std::string out = "start,f0_Hz,xi_e,beta_per_m2,power_W,diverged\n";
    for (const Evaluation& e : r.history) {
        out += std::to_string(e.start) + ',' + num(e.params.f0) + ',' + num(e.params.xi_e) + ',' +
               num(e.params.beta) + ',' + num(e.power) + ',' + (e.diverged ? "1" : "0") + '\n';
    }
    return out;
}

int run_optimize(const OptimizeArgs& args) {
    json doc = section(load_config(args.spec), "optimize");
    if (!args.mode.empty()) doc["mode"] = args.mode;
    if (args.seed) doc["seed"] = *args.seed;
    if (args.restarts) doc["restarts"] = *args.restarts;
    const OptSpec spec = config::opt_spec_from_json(doc);
    const VibrationTrace trace = load_trace(trace_path(args.trace, doc, args.spec));

    const OptResult r = optimize(spec, trace);
    json out = config::to_json(r);
    out["mode"] = spec.mode == OptMode::linear ? "linear" : "nonlinear";
    out["trace"] = trace.label();
    out["seed"] = spec.seed;
    if (!args.history.empty()) write_output(args.history, history_csv(r));
    write_output(args.out, dump(with_schema(out)));
    return kOk;
}

struct CompareArgs {
    std::string spec;
    std::string trace;
    std::string m = "1g";
    double q = 100.0;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> restarts;
    std::string format = "md";
    std::string out = "-";
};

int run_compare(const CompareArgs& args) {
    json doc = section(load_config(args.spec), "optimize");
    if (args.seed) doc["seed"] = *args.seed;
    if (args.restarts) doc["restarts"] = *args.restarts;
    const OptSpec overrides = config::opt_spec_from_json(doc);
    const double m = doc.contains("m") ? overrides.m : units::parse(args.m, units::Dimension::mass);
    const double q = doc.contains("Q") ? overrides.q : args.q;
    const VibrationTrace trace = load_trace(trace_path(args.trace, doc, args.spec));

    const ComparisonReport rep = compare_linear_nonlinear(trace, m, q, overrides);
    std::string text;
    if (args.format == "md") {
        text = render_markdown(rep);
    } else if (args.format == "csv") {
        text = render_csv(rep);
    } else {
        text = dump(with_schema(config::to_json(rep)));
    }
    write_output(args.out, text);
    return kOk;
}

// ---------------------------------------------------------------- size

struct SizeArgs {
    std::string spec;
    std::string out = "-";
    std::string table;
};

int run_size(const SizeArgs& args) {
    const json doc = load_config(args.spec);
    const SizingSpec spec = config::sizing_spec_from_json(section(doc, "sizing"));
    const SizingResult r = size_harvester(spec);

    json out = config::to_json(r);
    if (doc.contains("coil")) {
        json coil_doc = doc.at("coil");
        if (!coil_doc.contains("m")) coil_doc["m"] = spec.m;
        if (!coil_doc.contains("omega") && !coil_doc.contains("f")) coil_doc["omega"] = 2.0 * std::numbers::pi * spec.f0;
        const CoilSpec coil = config::coil_from_json(coil_doc);
        const double target = config::quantity(doc, "target_xi_e", units::Dimension::none);
        const LoadResistance load = solve_load_resistance(coil, target);
        out["load"] = {{"target_xi_e", target},
                       {"R_ohm", load.ohms},
                       {"impractical", load.impractical},
                       {"achieved_xi_e", em_damping_ratio(coil, load.ohms)}};
    }
    if (!args.table.empty()) write_output(args.table, render_sizing_table(spec, r));
    write_output(args.out, dump(with_schema(out)));
    return kOk;
}

// ---------------------------------------------------------------- spectrum / synth

struct SpectrumArgs {
    std::string trace;
    std::size_t segment = 8192;
    std::string out = "-";
};

int run_spectrum(const SpectrumArgs& args) {
    const VibrationTrace trace = load_trace(args.trace);
    const std::size_t seg = std::min(args.segment, trace.size());
    std::string out = "f_Hz,amplitude_m_per_s2\n";
    for (const SpectrumBin& b : periodogram(trace, seg)) out += csv_row(b.frequency, b.amplitude);
    write_output(args.out, out);
    return kOk;
}

struct SynthArgs {
    std::string kind = "sine";
    std::string amplitude = "1";
    std::vector<double> frequencies{100.0};
    double f_start = 50.0;
    double f_end = 200.0;
    std::optional<double> rate;
    double duration = 10.0;
    double sample_rate = 10000.0;
    std::string out = "-";
};

int run_synth(const SynthArgs& args) {
    if (!(args.sample_rate > 0.0)) throw ConfigError("--sample-rate must be positive");
    const double dt = 1.0 / args.sample_rate;
    const double a = units::parse(args.amplitude, units::Dimension::acceleration);
    VibrationTrace trace = [&] {
        if (args.kind == "sine") {
            const SineSpec s{a, args.frequencies.at(0), args.duration};
            s.validate();
            return synth_sine(s, dt);
        }
        if (args.kind == "sweep") {
            const double rate = args.rate ? *args.rate : std::abs(args.f_end - args.f_start) / args.duration;
            const SweepSpec s{a, args.f_start, args.f_end, rate, std::nullopt};
            s.validate();
            return synth_sweep(s, dt);
        }
        if (args.kind == "multitone") {
            std::vector<Tone> tones;
            for (double f : args.frequencies) tones.push_back({a, f, 0.0});
            return synth_multitone(tones, args.duration, dt, "multitone");
        }
        throw ConfigError("--kind must be sine, sweep or multitone");
    }();
    std::ostringstream os;
    write_trace(trace, os);
    write_output(args.out, os.str());
    return kOk;
}

int report_error(int code, const char* type, const std::string& message, json extra = json::object()) {
    json err{{"code", code}, {"type", type}, {"message", message}};
    for (auto& [k, v] : extra.items()) err[k] = v;
    std::cerr << with_schema({{"error", err}}).dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear vibration energy harvester toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "nlveh 0.1.0");

    SpringArgs spring;
    auto* c_spring = app.add_subcommand("spring", "Stiffness of a clamped-guided or H-shaped spring");
    c_spring->add_option("--config", spring.config, "Geometry JSON")->check(CLI::ExistingFile);
    spring.geo.add(c_spring, "E", "Young's modulus, e.g. 131GPa");
    spring.geo.add(c_spring, "L", "Main beam length");
    spring.geo.add(c_spring, "b", "Main beam width");
    spring.geo.add(c_spring, "e", "Main beam thickness");
    spring.geo.add(c_spring, "a", "Holding beam length (H-shape)");
    spring.geo.add(c_spring, "l1", "Holding beam width");
    spring.geo.add(c_spring, "l3", "Holding beam width");
    c_spring->add_flag("--holding-sweep", spring.holding_sweep, "Emit the ten-row H-spring sweep over a = 0.1..1 mm as CSV");
    c_spring->add_option("--force-csv", spring.force_csv, "Write exact vs cubic force of the main beam");
    c_spring->add_option("--x-max", spring.x_max_over_e, "Force CSV range, in units of e")->capture_default_str();
    c_spring->add_option("--points", spring.points, "Force CSV points")->capture_default_str();
    c_spring->add_option("-o,--out", spring.out, "Output path, - for stdout")->capture_default_str();

    FeqArgs feq;
    auto* c_feq = app.add_subcommand("feq", "Backbone curve f_eq(x_max) as CSV");
    c_feq->add_option("--alpha", feq.alpha, "Nonlinearity ratio in [0, 1]")->capture_default_str();
    c_feq->add_option("--e", feq.e, "Beam thickness")->capture_default_str();
    c_feq->add_option("--beta", feq.beta, "Overrides alpha, 1/m^2");
    c_feq->add_option("--f0", feq.f0, "Linear natural frequency")->capture_default_str();
    c_feq->add_option("--max-ratio", feq.max_ratio, "Largest x_max/e")->capture_default_str();
    c_feq->add_option("--points", feq.points, "Number of amplitudes")->capture_default_str();
    c_feq->add_option("-o,--out", feq.out, "Output CSV, - for stdout")->capture_default_str();

    SimArgs sim;
    auto* c_sim = app.add_subcommand("sim", "Time-domain simulation driven by a trace");
    add_param_flags(c_sim, sim.params, sim.overrides);
    sim.trace.add(c_sim);
    c_sim->add_option("--dt", sim.dt, "Fixed integration step, s (0 = automatic)");
    c_sim->add_option("--stride", sim.stride, "Record every n-th step (default: about one row per trace sample)");
    c_sim->add_option("--series", sim.out, "Output CSV of t, x, v, p_inst");
    c_sim->add_option("-o,--summary", sim.summary, "JSON summary path, - for stdout")->capture_default_str();

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand("sweep", "Stepped-sine up and down frequency sweeps");
    add_param_flags(c_sweep, sweep.params, sweep.overrides);
    c_sweep->add_option("--amplitude", sweep.amplitude, "Base acceleration amplitude")->capture_default_str();
    c_sweep->add_option("--f-lo", sweep.f_lo, "Lowest frequency (default 0.5 f0)");
    c_sweep->add_option("--f-hi", sweep.f_hi, "Highest frequency (default 3 f0)");
    c_sweep->add_option("--points", sweep.points, "Log-spaced grid points")->capture_default_str();
    c_sweep->add_option("--jump-factor", sweep.jump_factor, "Adjacent power ratio flagged as a jump")
        ->capture_default_str();
    c_sweep->add_option("-d,--out-dir", sweep.out_dir, "Directory for up.csv, down.csv, metrics.json")
        ->capture_default_str();

    OptimizeArgs optimize_args;
    auto* c_opt = app.add_subcommand("optimize", "Maximize mean power over a trace");
    c_opt->add_option("--spec", optimize_args.spec, "Optimization spec JSON")->check(CLI::ExistingFile);
    c_opt->add_option("--trace", optimize_args.trace, "Trace CSV (overrides the spec)")->check(CLI::ExistingFile);
    c_opt->add_option("--mode", optimize_args.mode, "linear or nonlinear")
        ->check(CLI::IsMember({"linear", "nonlinear"}));
    c_opt->add_option("--seed", optimize_args.seed, "Multi-start seed");
    c_opt->add_option("--restarts", optimize_args.restarts, "Number of starts");
    c_opt->add_option("-o,--out", optimize_args.out, "Result JSON, - for stdout")->capture_default_str();
    c_opt->add_option("--history", optimize_args.history, "Evaluation history CSV");

    CompareArgs compare;
    auto* c_cmp = app.add_subcommand("compare", "Linear vs nonlinear optimum for one trace");
    c_cmp->add_option("--spec", compare.spec, "Optimization spec JSON (bounds, seed, restarts)")
        ->check(CLI::ExistingFile);
    c_cmp->add_option("--trace", compare.trace, "Trace CSV")->check(CLI::ExistingFile);
    c_cmp->add_option("--m", compare.m, "Moving mass")->capture_default_str();
    c_cmp->add_option("--Q", compare.q, "Mechanical quality factor")->capture_default_str();
    c_cmp->add_option("--seed", compare.seed, "Multi-start seed");
    c_cmp->add_option("--restarts", compare.restarts, "Number of starts");
    c_cmp->add_option("--format", compare.format, "md, csv or json")
        ->check(CLI::IsMember({"md", "csv", "json"}))
        ->capture_default_str();
    c_cmp->add_option("-o,--out", compare.out, "Report path, - for stdout")->capture_default_str();

    SizeArgs size;
    auto* c_size = app.add_subcommand("size", "Spring dimensions and load resistance for a target design");
    c_size->add_option("--spec", size.spec, "Sizing spec JSON")->required()->check(CLI::ExistingFile);
    c_size->add_option("-o,--out", size.out, "Result JSON, - for stdout")->capture_default_str();
    c_size->add_option("--table", size.table, "Text table path, - for stdout");

    SpectrumArgs spectrum;
    auto* c_spec = app.add_subcommand("spectrum", "Welch amplitude spectrum of a trace");
    c_spec->add_option("--trace", spectrum.trace, "Trace CSV")->required()->check(CLI::ExistingFile);
    c_spec->add_option("--segment", spectrum.segment, "Segment length in samples")->capture_default_str();
    c_spec->add_option("-o,--out", spectrum.out, "Output CSV, - for stdout")->capture_default_str();

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "Generate a synthetic acceleration trace");
    c_synth->add_option("--kind", synth.kind, "sine, sweep or multitone")
        ->check(CLI::IsMember({"sine", "sweep", "multitone"}))
        ->capture_default_str();
    c_synth->add_option("--amplitude", synth.amplitude, "Amplitude per tone")->capture_default_str();
    c_synth->add_option("--frequency", synth.frequencies, "Tone frequencies, Hz")->delimiter(',');
    c_synth->add_option("--f-start", synth.f_start, "Sweep start, Hz")->capture_default_str();
    c_synth->add_option("--f-end", synth.f_end, "Sweep end, Hz")->capture_default_str();
    c_synth->add_option("--rate", synth.rate, "Sweep rate, Hz/s (default spans the duration)");
    c_synth->add_option("--duration", synth.duration, "Seconds")->capture_default_str();
    c_synth->add_option("--sample-rate", synth.sample_rate, "Hz")->capture_default_str();
    c_synth->add_option("-o,--out", synth.out, "Output CSV, - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(kConfig, "usage", e.what());
    }

    try {
        if (c_spring->parsed()) return run_spring(spring);
        if (c_feq->parsed()) return run_feq(feq);
        if (c_sim->parsed()) return run_sim(sim);
        if (c_sweep->parsed()) return run_sweep(sweep);
        if (c_opt->parsed()) return run_optimize(optimize_args);
        if (c_cmp->parsed()) return run_compare(compare);
        if (c_size->parsed()) return run_size(size);
        if (c_spec->parsed()) return run_spectrum(spectrum);
        if (c_synth->parsed()) return run_synth(synth);
    } catch (const InfeasibleError& e) {
        return report_error(kInfeasible, "infeasible", e.what(), {{"max_feasible_beta", e.max_feasible_beta()}});
    } catch (const ConfigError& e) {
        return report_error(kConfig, "config", e.what());
    } catch (const DomainError& e) {
        return report_error(kConfig, "domain", e.what());
    } catch (const DivergenceError& e) {
        return report_error(kDivergence, "divergence", e.what());
    } catch (const NumericError& e) {
        return report_error(kDivergence, "numeric", e.what());
    } catch (const json::exception& e) {
        return report_error(kConfig, "config", e.what());
    } catch (const std::exception& e) {
        return report_error(kFailure, "internal", e.what());
    }
    return kFailure;
}
