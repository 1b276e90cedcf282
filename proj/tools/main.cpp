#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "beepower/report_json.hpp"
#include "beepower/scenario_io.hpp"

namespace {

using namespace beepower;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct OutputMode {
    bool json = false;
};

// With --json, machine output owns stdout and the human table moves to stderr.
std::ostream& human_stream(const OutputMode& mode) {
    return mode.json ? std::cerr : std::cout;
}

void emit_json(const OutputMode& mode, const Json& doc) {
    if (mode.json) std::cout << doc.dump(2) << "\n";
}

ScenarioFile load_named_scenario(const std::string& ref) {
    if (ref == "makers-beehive") return makers_beehive_scenario();
    return load_scenario_file(ref);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << content;
}

std::pair<double, double> parse_band(const std::string& v) {
    auto colon = v.find(':');
    if (colon == std::string::npos)
        throw ModelError("expected low:high for --idle-band, got '" + v + "'");
    return {std::stod(v.substr(0, colon)), std::stod(v.substr(colon + 1))};
}

// ---- profile ---------------------------------------------------------------

struct ProfileArgs {
    std::string trace_path;
    std::string config_path;
    std::string idle_band;
    std::string csv_path;
    double off_threshold = -1.0;
    double min_segment = -1.0;
    double smoothing = -1.0;
    OutputMode out;
};

int run_profile(const ProfileArgs& args) {
    const PowerTrace trace = ingest_trace_file(args.trace_path);

    SegmentationConfig cfg;
    bool have_band = false;
    if (!args.config_path.empty()) {
        const ScenarioFile sf = load_named_scenario(args.config_path);
        if (sf.segmentation) {
            cfg = *sf.segmentation;
            have_band = true;
        }
    }
    if (!args.idle_band.empty()) {
        std::tie(cfg.idle_low_w, cfg.idle_high_w) = parse_band(args.idle_band);
        have_band = true;
    }
    if (!have_band)
        throw ModelError("no idle band configured: pass --idle-band low:high or a config "
                         "file with a [segmentation] section");
    if (args.off_threshold > 0.0) cfg.off_threshold_w = args.off_threshold;
    if (args.min_segment > 0.0) cfg.min_segment_s = args.min_segment;
    if (args.smoothing >= 0.0) cfg.smoothing_window_s = args.smoothing;

    const std::vector<Segment> segments = segment(trace, cfg);
    const auto phases = phase_report(segments);
    const double total_j = energy(trace);

    Json doc = {{"trace", args.trace_path},
                {"total_energy_j", total_j},
                {"segments", segments_to_json(segments)},
                {"phases", phase_report_to_json(phases)}};
    emit_json(args.out, doc);

    std::ostream& os = human_stream(args.out);
    os << "trace: " << args.trace_path << "  (" << trace.size() << " samples, "
       << trace.extent().duration() << " s, " << total_j << " J)\n";
    os << "segments:\n";
    for (const Segment& s : segments) {
        os << "  " << to_string(s.label) << "  [" << s.interval.t0 << ", " << s.interval.t1
           << ") s  " << s.energy_j << " J  " << s.mean_power_w << " W\n";
    }
    os << "phases:\n";
    for (const auto& [label, t] : phases) {
        os << "  " << to_string(label) << "  count=" << t.count << "  energy=" << t.energy_j
           << " J  duration=" << t.duration_s << " s\n";
    }

    if (!args.csv_path.empty()) {
        std::ostringstream csv;
        csv << "t0_s,t1_s,label,energy_j,mean_power_w\n";
        for (const Segment& s : segments)
            csv << s.interval.t0 << "," << s.interval.t1 << "," << to_string(s.label) << ","
                << s.energy_j << "," << s.mean_power_w << "\n";
        write_file(args.csv_path, csv.str());
    }
    return kExitOk;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string scenario_ref;
    std::string harvest_path;
    std::string csv_path;
    double battery_mah = -1.0;
    double voltage = -1.0;
    double initial_charge = -1.0;
    std::uint64_t max_cycles = LifetimeOptions{}.max_cycles;
    OutputMode out;
};

int run_simulate(const SimulateArgs& args) {
    ScenarioFile sf = load_named_scenario(args.scenario_ref);
    if (args.battery_mah >= 0.0) sf.battery.capacity_mah = args.battery_mah;
    if (args.voltage > 0.0) sf.battery.nominal_voltage_v = args.voltage;
    if (args.initial_charge >= 0.0) sf.battery.initial_charge_fraction = args.initial_charge;
    if (!args.harvest_path.empty()) {
        const ScenarioFile hf = load_scenario_file(args.harvest_path);
        if (!hf.harvest)
            throw ModelError("harvest file has no [harvest] section: " + args.harvest_path);
        sf.harvest = hf.harvest;
    }

    const CycleReport cycle = run_cycle(sf.scenario);
    LifetimeOptions opts;
    opts.max_cycles = args.max_cycles;
    const LifetimeReport life = simulate_lifetime(sf.scenario, sf.battery, sf.harvest, opts);

    Json doc = {{"scenario", args.scenario_ref},
                {"cycle", cycle_report_to_json(cycle)},
                {"lifetime", lifetime_report_to_json(life)}};
    emit_json(args.out, doc);

    std::ostream& os = human_stream(args.out);
    os << "cycle energy: " << cycle.total_j << " J  (active " << cycle.active_j() << " J over "
       << cycle.active_window_s << " s, off " << cycle.off_j << " J over " << cycle.off_s
       << " s)\n";
    for (const StepReport& s : cycle.steps)
        os << "  step " << s.name << ": " << s.duration_s << " s, " << s.energy_j << " J\n";
    os << "  boot: " << cycle.boot_j << " J, shutdown: " << cycle.shutdown_j
       << " J, idle baseline: " << cycle.active_baseline_j << " J\n";
    if (cycle.watchdog_tripped) os << "  watchdog tripped: active window forced to "
                                   << cycle.active_window_s << " s\n";
    os << "charge per cycle: " << life.charge_per_cycle_mah << " mAh\n";
    if (life.indefinite) {
        os << "lifetime: not depleted within " << args.max_cycles
           << " cycles (harvest covers the draw)\n";
    } else {
        os << "lifetime: " << life.cycles_to_depletion << " cycles, "
           << life.time_to_depletion_s << " s (~" << life.depletion_day_hour << ")\n";
    }

    if (!args.csv_path.empty()) {
        std::ostringstream csv;
        csv << "phase,duration_s,energy_j\n";
        for (const RealizedPhase& ph : cycle.schedule) {
            const double energy = ph.label == PhaseLabel::off
                                      ? cycle.off_j
                                      : ph.extra_w * ph.duration_s;
            csv << ph.name << "," << ph.duration_s << "," << energy << "\n";
        }
        write_file(args.csv_path, csv.str());
    }
    return kExitOk;
}

// ---- sweep -------------------------------------------------------------------

struct SweepArgs {
    std::string scenario_ref;
    std::string parameter;
    std::vector<std::string> values;
    std::string csv_path;
    double battery_mah = -1.0;
    OutputMode out;
};

int run_sweep(const SweepArgs& args) {
    ScenarioFile sf = load_named_scenario(args.scenario_ref);
    if (args.battery_mah >= 0.0) sf.battery.capacity_mah = args.battery_mah;
    if (args.values.empty()) throw ModelError("sweep needs at least one value");

    const auto points = sweep(sf.scenario, args.parameter, args.values, sf.battery, sf.harvest);
    emit_json(args.out, sweep_to_json(args.parameter, points));

    std::ostream& os = human_stream(args.out);
    os << "sweep " << args.parameter << ":\n";
    for (const SweepPoint& p : points) {
        os << "  " << args.parameter << "=" << p.value << "  cycle=" << p.cycle.total_j
           << " J  charge=" << p.lifetime.charge_per_cycle_mah
           << " mAh  cycles=" << p.lifetime.cycles_to_depletion << "  ("
           << p.lifetime.depletion_day_hour << ")\n";
    }

    if (!args.csv_path.empty()) {
        std::ostringstream csv;
        csv << "value,cycle_total_j,charge_per_cycle_mah,cycles_to_depletion,"
               "time_to_depletion_s\n";
        for (const SweepPoint& p : points)
            csv << p.value << "," << p.cycle.total_j << "," << p.lifetime.charge_per_cycle_mah
                << "," << p.lifetime.cycles_to_depletion << "," << p.lifetime.time_to_depletion_s
                << "\n";
        write_file(args.csv_path, csv.str());
    }
    return kExitOk;
}

// ---- links -------------------------------------------------------------------

struct LinksArgs {
    std::string config_path;
    std::string direction = "upload";
    double payload_mb = 50.0;
    double overhead = -1.0;
    OutputMode out;
};

int run_links(const LinksArgs& args) {
    if (!(args.payload_mb > 0.0)) throw ModelError("--payload must be positive");
    const auto payload = static_cast<std::uint64_t>(args.payload_mb * 1e6);
    const Direction dir = direction_from_string(args.direction);

    LinkSet links;
    if (!args.config_path.empty()) links = load_named_scenario(args.config_path).scenario.links;
    LinkModel wifi = links.get(LinkType::wifi, dir);
    LinkModel eth = links.get(LinkType::ethernet, dir);
    if (args.overhead >= 0.0) eth.idle_overhead_w = args.overhead;

    const double t_wifi = transfer_time(wifi, payload);
    const double t_eth = transfer_time(eth, payload);
    const double e_wifi = transfer_energy(wifi, payload);
    const double e_eth = transfer_energy(eth, payload);
    const double break_even = break_even_idle_time(wifi, eth, payload);

    Json doc = {{"payload_bytes", payload},
                {"direction", to_string(dir)},
                {"wifi", {{"transfer_time_s", t_wifi}, {"transfer_energy_j", e_wifi}}},
                {"ethernet",
                 {{"transfer_time_s", t_eth},
                  {"transfer_energy_j", e_eth},
                  {"idle_overhead_w", eth.idle_overhead_w}}},
                {"break_even_idle_s", break_even}};
    emit_json(args.out, doc);

    std::ostream& os = human_stream(args.out);
    os << args.payload_mb << " MB " << to_string(dir) << ":\n";
    os << "  wifi:     " << t_wifi << " s, " << e_wifi << " J\n";
    os << "  ethernet: " << t_eth << " s, " << e_eth << " J (+" << eth.idle_overhead_w
       << " W while idle)\n";
    os << "  sessions idling longer than " << break_even << " s favor wifi\n";
    return kExitOk;
}

// ---- capture-plan --------------------------------------------------------------

struct CaptureArgs {
    std::string config_path;
    std::string resolution = "800x600";
    std::string csv_path;
    int images = 20;
    bool free_running = false;
    double ambient = 20.5;
    OutputMode out;
};

int run_capture_plan(const CaptureArgs& args) {
    if (args.images < 1) throw ModelError("--images must be at least 1");
    const Resolution res = resolution_from_string(args.resolution);

    ScenarioFile sf =
        args.config_path.empty() ? makers_beehive_scenario() : load_named_scenario(args.config_path);
    const double min_interval = args.free_running ? 0.0 : sf.scenario.capture_min_interval_s;

    Json rows = Json::array();
    for (int n = 1; n <= args.images; ++n) {
        const double dur = capture_duration(sf.scenario.capture_table, n, res, min_interval);
        const double e = capture_energy(sf.scenario.capture_table, sf.scenario.device, n, res,
                                        args.ambient, min_interval);
        rows.push_back({{"n_images", n}, {"duration_s", dur}, {"energy_j", e}});
    }
    Json doc = {{"resolution", to_string(res)},
                {"min_interval_s", min_interval},
                {"ambient_c", args.ambient},
                {"plan", rows}};
    emit_json(args.out, doc);

    std::ostream& os = human_stream(args.out);
    const double per_image =
        capture_duration(sf.scenario.capture_table, 1, res, min_interval);
    os << "capture plan at " << to_string(res) << " (" << per_image << " s/image"
       << (args.free_running ? ", free-running" : "") << "):\n";
    const double dur = capture_duration(sf.scenario.capture_table, args.images, res, min_interval);
    const double e = capture_energy(sf.scenario.capture_table, sf.scenario.device, args.images,
                                    res, args.ambient, min_interval);
    os << "  " << args.images << " images: " << dur << " s, " << e << " J\n";

    if (!args.csv_path.empty()) {
        std::ostringstream csv;
        csv << "n_images,duration_s,energy_j\n";
        for (const auto& row : rows)
            csv << row["n_images"] << "," << row["duration_s"].get<double>() << ","
                << row["energy_j"].get<double>() << "\n";
        write_file(args.csv_path, csv.str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-trace profiling and energy-budget simulation for duty-cycled nodes"};
    app.set_version_flag("--version", std::string(BEEPOWER_VERSION));
    app.require_subcommand(1);

    ProfileArgs profile_args;
    auto* profile_cmd = app.add_subcommand("profile", "Segment a trace CSV into labeled phases");
    profile_cmd->add_option("trace", profile_args.trace_path, "trace CSV path")->required();
    profile_cmd->add_option("--config", profile_args.config_path,
                            "scenario file (or 'makers-beehive') supplying [segmentation]");
    profile_cmd->add_option("--idle-band", profile_args.idle_band, "idle band low:high in watts");
    profile_cmd->add_option("--off-threshold", profile_args.off_threshold, "off threshold, watts");
    profile_cmd->add_option("--min-segment", profile_args.min_segment, "minimum segment seconds");
    profile_cmd->add_option("--smoothing", profile_args.smoothing, "smoothing window seconds");
    profile_cmd->add_option("--csv", profile_args.csv_path, "write segment table CSV here");
    profile_cmd->add_flag("--json", profile_args.out.json, "JSON on stdout, tables on stderr");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the duty cycle and battery lifetime");
    sim_cmd->add_option("scenario", sim_args.scenario_ref, "scenario file or 'makers-beehive'")
        ->required();
    sim_cmd->add_option("--battery-mah", sim_args.battery_mah, "override battery capacity");
    sim_cmd->add_option("--voltage", sim_args.voltage, "override nominal voltage");
    sim_cmd->add_option("--initial-charge", sim_args.initial_charge,
                        "initial charge fraction [0,1]");
    sim_cmd->add_option("--harvest", sim_args.harvest_path, "file with a [harvest] section");
    sim_cmd->add_option("--max-cycles", sim_args.max_cycles, "simulation horizon in cycles");
    sim_cmd->add_option("--csv", sim_args.csv_path, "write per-phase cycle CSV here");
    sim_cmd->add_flag("--json", sim_args.out.json, "JSON on stdout, tables on stderr");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Re-run the scenario across parameter values");
    sweep_cmd->add_option("scenario", sweep_args.scenario_ref, "scenario file or 'makers-beehive'")
        ->required();
    sweep_cmd->add_option("--param", sweep_args.parameter,
                          "wake_period_s | watchdog_limit_s | ambient_c | link")
        ->required();
    sweep_cmd->add_option("--values", sweep_args.values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--battery-mah", sweep_args.battery_mah, "override battery capacity");
    sweep_cmd->add_option("--csv", sweep_args.csv_path, "write one row per value here");
    sweep_cmd->add_flag("--json", sweep_args.out.json, "JSON on stdout, tables on stderr");

    LinksArgs links_args;
    auto* links_cmd = app.add_subcommand("links", "Transfer cost and wifi/ethernet break-even");
    links_cmd->add_option("--payload", links_args.payload_mb, "payload in MB (default 50)");
    links_cmd->add_option("--direction", links_args.direction, "download | upload");
    links_cmd->add_option("--overhead", links_args.overhead, "ethernet idle overhead, watts");
    links_cmd->add_option("--config", links_args.config_path, "scenario file with [link]");
    links_cmd->add_flag("--json", links_args.out.json, "JSON on stdout, tables on stderr");

    CaptureArgs cap_args;
    auto* cap_cmd = app.add_subcommand("capture-plan", "Image batch duration/energy table");
    cap_cmd->add_option("--images", cap_args.images, "batch size (table spans 1..N)");
    cap_cmd->add_option("--resolution", cap_args.resolution, "e.g. 800x600");
    cap_cmd->add_flag("--free-running", cap_args.free_running, "no pacing floor");
    cap_cmd->add_option("--ambient", cap_args.ambient, "ambient temperature, Celsius");
    cap_cmd->add_option("--config", cap_args.config_path, "scenario file or 'makers-beehive'");
    cap_cmd->add_option("--csv", cap_args.csv_path, "write n,duration,energy rows here");
    cap_cmd->add_flag("--json", cap_args.out.json, "JSON on stdout, tables on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (profile_cmd->parsed()) return run_profile(profile_args);
        if (sim_cmd->parsed()) return run_simulate(sim_args);
        if (sweep_cmd->parsed()) return run_sweep(sweep_args);
        if (links_cmd->parsed()) return run_links(links_args);
        if (cap_cmd->parsed()) return run_capture_plan(cap_args);
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
