// Copyright 2026 The slashsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "slash/audit.h"
#include "slash/montecarlo.h"
#include "slash/scenario.h"
#include "slash/scenario_io.h"
#include "theta_spec.h"

namespace slash {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char *kVersion = "1.0.0";
/// CPTP runs whose signalling delta exceeds this mean the engine is broken.
constexpr double kPhysicsTolerance = 1e-10;

class PhysicsFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string opt_num(const std::optional<double> &v) {
    return v ? num(*v) : "";
}

Json opt_json(const std::optional<double> &v) {
    return v ? Json(*v) : Json(nullptr);
}

std::string model_label(const NlModel &m) {
    if (std::holds_alternative<CptpModel>(m)) {
        return "physical model (CPTP channel)";
    }
    if (std::holds_alternative<AttenuatedModel>(m)) {
        return "non-physical model (SLASH ansatz, distance-attenuated)";
    }
    return "non-physical model (SLASH ansatz)";
}

struct DeviceFlags {
    std::string model = "ansatz";
    std::string population = "inf";
    double p_align = 1;
    double p_noise = 0;
    std::string attenuation = "exponential";
    double scale = 1;
    double cutoff = 1;
    double distance = 0;

    CLI::Option *model_opt = nullptr;
    CLI::Option *population_opt = nullptr;

    void add_to(CLI::App &cmd) {
        model_opt = cmd.add_option("--model", model, "Nonlinear device model: ansatz, cptp, attenuated")
                        ->check(CLI::IsMember({"ansatz", "cptp", "attenuated"}));
        population_opt = cmd.add_option("--n,--population", population, "Device population: integer, real or inf");
        cmd.add_option("--p-align", p_align, "CPTP: probability of dephasing along the device axis");
        cmd.add_option("--p-noise", p_noise, "CPTP: probability of depolarizing noise");
        cmd.add_option("--attenuation", attenuation, "ATTENUATED: exponential, inverse_square, step");
        cmd.add_option("--scale", scale, "ATTENUATED: length scale of exponential / inverse_square");
        cmd.add_option("--cutoff", cutoff, "ATTENUATED: cutoff distance of step");
        cmd.add_option("--distance", distance, "ATTENUATED: device distance");
    }

    bool given() const {
        return model_opt->count() > 0 || population_opt->count() > 0;
    }

    NlDevice device() const {
        NlDevice d;
        d.population = Population::parse(population);
        if (model == "cptp") {
            d.model = CptpModel{p_align, p_noise};
        } else if (model == "attenuated") {
            AttenuatedModel a;
            a.attenuation.kind = parse_attenuation_kind(attenuation);
            a.attenuation.scale = scale;
            a.attenuation.cutoff = cutoff;
            a.distance = distance;
            d.model = a;
        }
        return d;
    }
};

struct Loaded {
    Scenario scenario;
    bool builtin = false;
};

Loaded load(const std::string &name) {
    if (std::filesystem::exists(name) || name.ends_with(".yaml") || name.ends_with(".yml")) {
        return {load_scenario_file(name), false};
    }
    return {builtin_scenario(name), true};
}

bool has_analyzer(const Scenario &s) {
    for (const auto &p : s.paths) {
        for (const auto &e : p.elements) {
            if (e.kind == ElementKind::kPolarizer) {
                return true;
            }
        }
    }
    return false;
}

double first_analyzer_angle(const Scenario &s) {
    for (const auto &p : s.paths) {
        for (const auto &e : p.elements) {
            if (e.kind == ElementKind::kPolarizer) {
                return e.theta;
            }
        }
    }
    return 0;
}

/// Device the report describes: the override, else the first device hooked
/// in by the choice.
NlDevice reported_device(const Scenario &s, const std::optional<NlDevice> &override_device) {
    if (override_device) {
        return *override_device;
    }
    for (const auto &e : s.tail_in) {
        if (e.kind == ElementKind::kNlDevice) {
            return e.device;
        }
    }
    return NlDevice{};
}

struct Sink {
    std::ostream &fallback;
    std::string path;

    void write(const std::string &text) const {
        if (path.empty() || path == "-") {
            fallback << text;
            return;
        }
        std::ofstream f(path);
        if (!f) {
            throw CLI::ValidationError("--output", "cannot open '" + path + "' for writing");
        }
        f << text;
    }
};

struct DetectorRow {
    std::string id;
    bool remote = false;
    std::optional<double> out;
    std::optional<double> in;

    std::optional<double> delta() const {
        if (out && in) {
            return *in - *out;
        }
        return std::nullopt;
    }
};

std::vector<DetectorRow> merge_singles(const DetectorStats &out, const DetectorStats &in) {
    std::vector<DetectorRow> rows;
    auto find = [&](const std::string &id) -> DetectorRow & {
        for (auto &r : rows) {
            if (r.id == id) {
                return r;
            }
        }
        DetectorRow row;
        row.id = id;
        rows.push_back(row);
        return rows.back();
    };
    for (const auto &d : out.singles) {
        auto &r = find(d.id);
        r.remote = d.remote;
        r.out = d.rate;
    }
    for (const auto &d : in.singles) {
        auto &r = find(d.id);
        r.remote = d.remote;
        r.in = d.rate;
    }
    return rows;
}

std::vector<DetectorRow> merge_coincidences(const DetectorStats &out, const DetectorStats &in,
                                            const std::vector<DetectorRow> &singles) {
    std::vector<DetectorRow> rows;
    auto remote = [&](const std::string &id) {
        for (const auto &s : singles) {
            if (s.id == id) {
                return s.remote;
            }
        }
        return false;
    };
    auto find = [&](const CoincidenceRate &c) -> DetectorRow & {
        for (auto &r : rows) {
            if (r.id == c.id()) {
                return r;
            }
        }
        DetectorRow row;
        row.id = c.id();
        row.remote = remote(c.first) && remote(c.second);
        rows.push_back(row);
        return rows.back();
    };
    for (const auto &c : out.coincidences) {
        find(c).out = c.rate;
    }
    for (const auto &c : in.coincidences) {
        find(c).in = c.rate;
    }
    return rows;
}

Json record_json(const CountRecord &r) {
    return Json{{"clicks", r.clicks},
                {"trials", r.trials},
                {"rate_estimate", r.rate_estimate},
                {"ci95_halfwidth", r.ci95_halfwidth}};
}

const CountRecord *find_record(const std::vector<CountRecord> &records, const std::string &id) {
    for (const auto &r : records) {
        if (r.id == id) {
            return &r;
        }
    }
    return nullptr;
}

struct RunOptions {
    std::string scenario;
    DeviceFlags device;
    std::string theta;
    std::string theta_choice;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    double efficiency = 1;
    unsigned workers = 1;
    std::string format = "csv";
    std::string output;
    CLI::Option *theta_opt = nullptr;
    CLI::Option *theta_choice_opt = nullptr;
    CLI::Option *trials_opt = nullptr;
};

int cmd_run(const RunOptions &o, std::ostream &out, std::ostream &err) {
    Loaded loaded = load(o.scenario);
    const Scenario &base = loaded.scenario;
    std::optional<NlDevice> device;
    if (o.device.given() || loaded.builtin) {
        device = o.device.device();
    }
    const NlDevice shown = reported_device(base, device);

    bool override_theta = false;
    std::vector<double> grid;
    if (o.theta_opt->count() > 0) {
        grid = parse_theta_grid(o.theta);
        override_theta = true;
    } else if (loaded.builtin && has_analyzer(base)) {
        grid = default_theta_grid();
        override_theta = true;
    } else {
        grid = {first_analyzer_angle(base)};
    }
    std::optional<double> choice_theta;
    if (o.theta_choice_opt->count() > 0) {
        choice_theta = parse_angle(o.theta_choice);
    }
    const bool sample = o.trials_opt->count() > 0;
    if (sample && o.trials == 0) {
        throw CLI::ValidationError("--trials", "must be at least 1");
    }

    std::ostringstream csv;
    csv << "scenario,model,model_label,population,theta_rad,detector,remote,rate_choice_out,rate_choice_in,delta,"
           "signalling_delta";
    if (sample) {
        csv << ",mc_trials,mc_clicks_choice_out,mc_rate_choice_out,mc_ci95_choice_out,mc_clicks_choice_in,"
               "mc_rate_choice_in,mc_ci95_choice_in";
    }
    csv << "\n";

    Json report{{"command", "run"},
                {"version", kVersion},
                {"scenario", base.name},
                {"model", model_name(shown.model)},
                {"model_label", model_label(shown.model)},
                {"physical", is_physical(shown.model)},
                {"population", shown.population.to_string()}};
    if (sample) {
        report["monte_carlo"] = Json{{"trials", o.trials},
                                     {"seed", o.seed},
                                     {"detector_efficiency", o.efficiency},
                                     {"seed_rule", "point k uses seed + k"}};
    }
    Json points = Json::array();
    double worst = 0;

    for (std::size_t k = 0; k < grid.size(); k++) {
        Scenario at = base;
        if (override_theta) {
            set_analyzer_angle(at, grid[k]);
        }
        if (choice_theta) {
            set_choice_analyzer_angle(at, *choice_theta);
        }
        DetectorStats s_out = run_scenario(at, false, device);
        DetectorStats s_in = run_scenario(at, true, device);
        double delta = signalling_delta(at, device);
        worst = std::max(worst, delta);
        auto singles = merge_singles(s_out, s_in);
        auto coincidences = merge_coincidences(s_out, s_in, singles);

        std::vector<CountRecord> mc_out, mc_in;
        if (sample) {
            mc_out = sample_counts(at, false, o.trials, o.seed + k, o.efficiency, device, o.workers);
            mc_in = sample_counts(at, true, o.trials, o.seed + k, o.efficiency, device, o.workers);
        }

        Json point{{"theta_rad", grid[k]}, {"signalling_delta", delta}};
        for (const char *group : {"detectors", "coincidences"}) {
            const auto &rows = std::string(group) == "detectors" ? singles : coincidences;
            Json list = Json::array();
            for (const auto &r : rows) {
                csv << csv_field(base.name) << "," << model_name(shown.model) << "," << csv_field(model_label(shown.model)) << ","
                    << shown.population.to_string() << "," << num(grid[k]) << "," << csv_field(r.id) << ","
                    << (r.remote ? "true" : "false") << "," << opt_num(r.out) << "," << opt_num(r.in) << ","
                    << opt_num(r.delta()) << "," << num(delta);
                Json row{{"id", r.id},
                         {"remote", r.remote},
                         {"rate_choice_out", opt_json(r.out)},
                         {"rate_choice_in", opt_json(r.in)},
                         {"delta", opt_json(r.delta())}};
                if (sample) {
                    const CountRecord *a = find_record(mc_out, r.id);
                    const CountRecord *b = find_record(mc_in, r.id);
                    csv << "," << o.trials;
                    for (const CountRecord *c : {a, b}) {
                        if (c) {
                            csv << "," << c->clicks << "," << num(c->rate_estimate) << "," << num(c->ci95_halfwidth);
                        } else {
                            csv << ",,,";
                        }
                    }
                    row["mc"] = Json{{"choice_out", a ? record_json(*a) : Json(nullptr)},
                                     {"choice_in", b ? record_json(*b) : Json(nullptr)}};
                }
                csv << "\n";
                list.push_back(row);
            }
            point[group] = list;
        }
        points.push_back(point);
    }
    report["points"] = points;
    report["max_signalling_delta"] = worst;

    Sink{out, o.output}.write(o.format == "json" ? report.dump(2) + "\n" : csv.str());
    if (is_physical(shown.model) && worst > kPhysicsTolerance) {
        throw PhysicsFailure("CPTP device produced signalling delta " + num(worst) + " > " + num(kPhysicsTolerance));
    }
    (void)err;
    return kExitOk;
}

struct SweepOptions {
    std::string scenario;
    DeviceFlags device;
    std::string axis;
    std::string from;
    std::string to;
    std::size_t steps = 0;
    std::string theta = "0";
    std::string format = "csv";
    std::string output;
    CLI::Option *theta_opt = nullptr;
};

int cmd_sweep(const SweepOptions &o, std::ostream &out) {
    Loaded loaded = load(o.scenario);
    double lo = 0;
    double hi = 0;
    try {
        if (o.axis == "theta") {
            lo = parse_angle(o.from);
            hi = parse_angle(o.to);
        } else {
            lo = std::stod(o.from);
            hi = std::stod(o.to);
        }
    } catch (const std::exception &) {
        throw CLI::ValidationError("--from/--to", "not a number");
    }
    if (o.steps == 0 || !(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw CLI::ValidationError("--from/--to/--steps", "empty sweep range (need from <= to and steps >= 1)");
    }
    std::vector<double> values = linear_grid(lo, hi, o.steps);

    NlDevice base_device = o.device.device();
    if (o.axis == "distance") {
        if (o.device.model_opt->count() > 0 && o.device.model != "attenuated") {
            throw CLI::ValidationError("--axis distance", "requires --model attenuated");
        }
        DeviceFlags f = o.device;
        f.model = "attenuated";
        base_device = f.device();
    } else if (o.axis == "p_noise") {
        if (o.device.model_opt->count() > 0 && o.device.model != "cptp") {
            throw CLI::ValidationError("--axis p_noise", "requires --model cptp");
        }
        DeviceFlags f = o.device;
        f.model = "cptp";
        base_device = f.device();
    }
    Scenario base = loaded.scenario;
    if (o.axis != "theta" && (loaded.builtin || o.theta_opt->count() > 0)) {
        set_analyzer_angle(base, parse_angle(o.theta));
    }

    std::ostringstream csv;
    csv << "axis,value,detector,remote,rate_choice_out,rate_choice_in,delta,n_eff\n";
    Json rows = Json::array();
    double worst = 0;
    for (double v : values) {
        NlDevice dev = base_device;
        Scenario at = base;
        if (o.axis == "n") {
            dev.population = v == std::floor(v) ? Population::quanta(static_cast<std::int64_t>(v)) : Population::effective(v);
        } else if (o.axis == "theta") {
            set_analyzer_angle(at, v);
        } else if (o.axis == "distance") {
            std::get<AttenuatedModel>(dev.model).distance = v;
        } else {
            std::get<CptpModel>(dev.model).p_noise = v;
        }
        DetectorStats s_out = run_scenario(at, false, dev);
        DetectorStats s_in = run_scenario(at, true, dev);
        std::optional<std::string> n_eff;
        if (!is_physical(dev.model)) {
            n_eff = effective_population(dev).to_string();
        }
        for (const auto &r : merge_singles(s_out, s_in)) {
            if (is_physical(dev.model) && r.remote && r.delta()) {
                worst = std::max(worst, std::abs(*r.delta()));
            }
            csv << o.axis << "," << num(v) << "," << csv_field(r.id) << "," << (r.remote ? "true" : "false") << ","
                << opt_num(r.out) << "," << opt_num(r.in) << "," << opt_num(r.delta()) << "," << n_eff.value_or("")
                << "\n";
            rows.push_back(Json{{"value", v},
                                {"detector", r.id},
                                {"remote", r.remote},
                                {"rate_choice_out", opt_json(r.out)},
                                {"rate_choice_in", opt_json(r.in)},
                                {"delta", opt_json(r.delta())},
                                {"n_eff", n_eff ? Json(*n_eff) : Json(nullptr)}});
        }
    }
    Json report{{"command", "sweep"},
                {"version", kVersion},
                {"scenario", base.name},
                {"axis", o.axis},
                {"model", model_name(base_device.model)},
                {"model_label", model_label(base_device.model)},
                {"physical", is_physical(base_device.model)},
                {"rows", rows}};
    Sink{out, o.output}.write(o.format == "json" ? report.dump(2) + "\n" : csv.str());
    if (worst > kPhysicsTolerance) {
        throw PhysicsFailure("CPTP device produced signalling delta " + num(worst));
    }
    return kExitOk;
}

struct AuditOptions {
    std::size_t fuzz = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool ansatz = false;
    std::string population = "inf";
    std::string grid;
    bool snr = false;
    double p_align = 1;
    double p_noise = 0;
    std::int64_t n_claimed = 1;
    std::string format = "text";
    std::string output;
};

int cmd_audit(const AuditOptions &o, std::ostream &out) {
    if (o.fuzz == 0) {
        throw CLI::ValidationError("--fuzz", "must be at least 1");
    }
    FuzzSummary f = fuzz_no_signalling(o.fuzz, o.seed, o.workers);
    FuzzCase worst = fuzz_case(o.seed, f.worst_index);
    std::vector<double> grid = o.grid.empty() ? default_theta_grid() : parse_theta_grid(o.grid);

    Json worst_json{{"index", worst.index},
                    {"dims", worst.shape.dims},
                    {"target", worst.target},
                    {"kraus_count", worst.kraus_count},
                    {"state_rank", worst.rank},
                    {"max_marginal_deviation", worst.report.max_marginal_deviation}};
    Json report{{"command", "audit"},
                {"version", kVersion},
                {"fuzz",
                 {{"seed", f.seed},
                  {"cases", f.cases},
                  {"max_deviation", f.max_deviation},
                  {"threshold", kSignallingThreshold},
                  {"signalling_cases", f.signalling_cases},
                  {"verdict", to_string(f.verdict)},
                  {"worst_case", worst_json}}}};

    std::ostringstream text;
    text << "no-signalling fuzz: " << f.cases << " random CPTP channels, seed " << f.seed << "\n"
         << "  max remote-marginal deviation: " << num(f.max_deviation) << " (threshold " << num(kSignallingThreshold)
         << ")\n"
         << "  worst case: index " << worst.index << ", dims " << worst.shape.dims[0] << "x" << worst.shape.dims[1]
         << ", target " << worst.target << ", " << worst.kraus_count << " Kraus ops, state rank " << worst.rank << "\n"
         << "  verdict: " << to_string(f.verdict) << "\n";

    if (o.ansatz) {
        Population n = Population::parse(o.population);
        SignallingReport a = ansatz_signalling_report(n, grid);
        Json deltas = Json::array();
        text << "\n" << model_label(AnsatzModel{}) << ", n = " << n.to_string() << "\n"
             << "  max remote-marginal deviation: " << num(a.max_marginal_deviation) << "\n"
             << "  verdict: " << to_string(a.verdict) << "\n"
             << "  theta_rad,remote_rate_delta\n";
        for (const auto &d : a.rate_delta_at_theta) {
            deltas.push_back(Json{{"theta_rad", d.theta}, {"delta", d.delta}});
            text << "  " << num(d.theta) << "," << num(d.delta) << "\n";
        }
        report["ansatz"] = Json{{"model_label", model_label(AnsatzModel{})},
                                {"population", n.to_string()},
                                {"max_marginal_deviation", a.max_marginal_deviation},
                                {"verdict", to_string(a.verdict)},
                                {"rate_delta", deltas}};
    }
    if (o.snr) {
        SnrReport s = snr_report(o.p_align, o.p_noise, o.n_claimed);
        text << "\nsignal vs noise floor, CPTP amplifier (p_align " << num(o.p_align) << ", p_noise " << num(o.p_noise)
             << ")\n"
             << "  signal: " << num(s.signal) << "\n"
             << "  noise floor: " << num(s.noise_floor) << "\n"
             << "  distinguishable: " << (s.distinguishable ? "true" : "false") << "\n"
             << "  ansatz claimed signal at n = " << o.n_claimed << ": " << num(s.ansatz_claimed_signal) << "\n";
        report["snr"] = Json{{"p_align", o.p_align},
                             {"p_noise", o.p_noise},
                             {"signal", s.signal},
                             {"noise_floor", s.noise_floor},
                             {"distinguishable", s.distinguishable},
                             {"n_claimed", o.n_claimed},
                             {"ansatz_claimed_signal", s.ansatz_claimed_signal}};
    }
    Sink{out, o.output}.write(o.format == "json" ? report.dump(2) + "\n" : text.str());
    // Only the CPTP campaign decides the exit code; the ansatz section is
    // expected to signal.
    if (f.verdict == Verdict::kSignalling) {
        throw PhysicsFailure("CPTP fuzz campaign found " + std::to_string(f.signalling_cases) + " signalling case(s)");
    }
    return kExitOk;
}

int cmd_list(const std::string &format, const std::string &output, std::ostream &out) {
    std::ostringstream csv;
    csv << "name,description\n";
    Json list = Json::array();
    for (const auto &name : builtin_scenario_names()) {
        Scenario s = builtin_scenario(name);
        csv << s.name << "," << csv_field(s.description) << "\n";
        list.push_back(Json{{"name", s.name}, {"description", s.description}});
    }
    Json report{{"command", "scenarios"}, {"version", kVersion}, {"scenarios", list}};
    Sink{out, output}.write(format == "json" ? report.dump(2) + "\n" : csv.str());
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"slash: polarization-bench simulator and no-signalling auditor"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunOptions run;
    CLI::App *run_cmd = app.add_subcommand("run", "Analytic (and optionally sampled) rates for both choices");
    run_cmd->add_option("scenario", run.scenario, "Built-in name (fig1, fig2, fig3) or YAML scenario file")->required();
    run.device.add_to(*run_cmd);
    run.theta_opt = run_cmd->add_option(
        "--theta", run.theta, "Analyzer angle grid: 0.5, 45deg, a,b,c or start:stop:count (default 0:180deg:13)");
    run.theta_choice_opt = run_cmd->add_option("--theta-choice", run.theta_choice, "Angle of polarizers in the choice tails");
    run.trials_opt = run_cmd->add_option("--trials", run.trials, "Monte Carlo trials per choice and grid point");
    run_cmd->add_option("--seed", run.seed, "Monte Carlo seed; grid point k uses seed + k");
    run_cmd->add_option("--efficiency", run.efficiency, "Detector efficiency in (0, 1]");
    run_cmd->add_option("--workers", run.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_option("--format", run.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("-o,--output", run.output, "Output file (default stdout)");

    SweepOptions sweep;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Rates and deltas along one parameter axis");
    sweep_cmd->add_option("scenario", sweep.scenario, "Built-in name or YAML scenario file")->required();
    sweep.device.add_to(*sweep_cmd);
    sweep_cmd->add_option("--axis", sweep.axis, "n, theta, distance or p_noise")
        ->required()
        ->check(CLI::IsMember({"n", "theta", "distance", "p_noise"}));
    sweep_cmd->add_option("--from", sweep.from, "First axis value")->required();
    sweep_cmd->add_option("--to", sweep.to, "Last axis value")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "Number of axis values")->required();
    sweep.theta_opt = sweep_cmd->add_option("--theta", sweep.theta, "Analyzer angle for non-theta axes (default 0)");
    sweep_cmd->add_option("--format", sweep.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("-o,--output", sweep.output, "Output file (default stdout)");

    AuditOptions audit;
    CLI::App *audit_cmd = app.add_subcommand("audit", "No-signalling fuzz campaign over random CPTP channels");
    audit_cmd->add_option("--fuzz", audit.fuzz, "Number of random channel/state cases");
    audit_cmd->add_option("--seed", audit.seed, "Campaign seed");
    audit_cmd->add_option("--workers", audit.workers, "Worker threads")->check(CLI::PositiveNumber);
    audit_cmd->add_flag("--ansatz", audit.ansatz, "Also report the ansatz state family (expected to signal)");
    audit_cmd->add_option("--n,--population", audit.population, "Ansatz population for --ansatz");
    audit_cmd->add_option("--theta", audit.grid, "Angle grid of the ansatz delta table");
    audit_cmd->add_flag("--snr", audit.snr, "Report CPTP amplifier signal against the coincidence noise floor");
    audit_cmd->add_option("--p-align", audit.p_align, "--snr amplifier dephasing probability");
    audit_cmd->add_option("--p-noise", audit.p_noise, "--snr amplifier noise probability");
    audit_cmd->add_option("--n-claimed", audit.n_claimed, "--snr ansatz population for contrast");
    audit_cmd->add_option("--format", audit.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    audit_cmd->add_option("-o,--output", audit.output, "Output file (default stdout)");

    std::string list_format = "csv";
    std::string list_output;
    CLI::App *scenarios_cmd = app.add_subcommand("scenarios", "Built-in scenarios");
    scenarios_cmd->require_subcommand(1);
    CLI::App *list_cmd = scenarios_cmd->add_subcommand("list", "List built-in scenarios");
    list_cmd->add_option("--format", list_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    list_cmd->add_option("-o,--output", list_output, "Output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (run_cmd->parsed()) {
            return cmd_run(run, out, err);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep, out);
        }
        if (audit_cmd->parsed()) {
            return cmd_audit(audit, out);
        }
        return cmd_list(list_format, list_output, out);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const ScenarioError &e) {
        err << "error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const PhysicsFailure &e) {
        err << "physics invariant failure: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const ContractViolation &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ChannelValidityError &e) {
        err << "physics invariant failure: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace slash
