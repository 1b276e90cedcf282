#include "beepower/sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace beepower {

void Battery::validate() const {
    if (!(capacity_mah > 0.0) && capacity_mah != 0.0)
        throw ModelError("battery capacity must be non-negative");
    if (!(nominal_voltage_v > 0.0)) throw ModelError("battery voltage must be positive");
    if (initial_charge_fraction < 0.0 || initial_charge_fraction > 1.0)
        throw ModelError("initial_charge_fraction must lie in [0, 1]");
}

HarvestProfile::HarvestProfile(std::vector<Point> points) : points_(std::move(points)) {
    for (size_t i = 0; i < points_.size(); ++i) {
        const Point& p = points_[i];
        if (p.start_hour < 0.0 || p.start_hour >= 24.0)
            throw ModelError("harvest start hours must lie in [0, 24)");
        if (p.watts < 0.0) throw ModelError("harvest power must be non-negative");
        if (i > 0 && !(p.start_hour > points_[i - 1].start_hour))
            throw ModelError("harvest start hours must be strictly increasing");
    }
}

double HarvestProfile::power_at_hour(double hour_of_day) const {
    if (points_.empty()) return 0.0;
    double h = std::fmod(hour_of_day, 24.0);
    if (h < 0.0) h += 24.0;
    // Piecewise constant; before the first start the last entry wraps around.
    double watts = points_.back().watts;
    for (const Point& p : points_) {
        if (p.start_hour <= h) watts = p.watts;
    }
    return watts;
}

double HarvestProfile::energy_j(double t0_s, double t1_s) const {
    if (points_.empty() || !(t1_s > t0_s)) return 0.0;
    double total = 0.0;
    double t = t0_s;
    while (t < t1_s) {
        const double hour = std::fmod(t / 3600.0, 24.0);
        // Next boundary strictly after `hour` within this day, else midnight.
        double next_hour = 24.0;
        for (const Point& p : points_) {
            if (p.start_hour > hour + 1e-12) {
                next_hour = p.start_hour;
                break;
            }
        }
        const double seg_end = std::min(t1_s, t + (next_hour - hour) * 3600.0);
        total += power_at_hour(hour) * (seg_end - t);
        t = seg_end;
    }
    return total;
}

const LinkModel& LinkSet::get(LinkType link, Direction dir) const {
    if (link == LinkType::wifi)
        return dir == Direction::download ? wifi_download : wifi_upload;
    return dir == Direction::download ? ethernet_download : ethernet_upload;
}

LinkModel& LinkSet::get(LinkType link, Direction dir) {
    if (link == LinkType::wifi)
        return dir == Direction::download ? wifi_download : wifi_upload;
    return dir == Direction::download ? ethernet_download : ethernet_upload;
}

double LinkSet::idle_overhead_w(LinkType link) const {
    return std::max(get(link, Direction::download).idle_overhead_w,
                    get(link, Direction::upload).idle_overhead_w);
}

void Scenario::validate() const {
    if (!(wake_period_s > 0.0)) throw ModelError("wake_period_s must be positive");
    if (!(watchdog_limit_s > 0.0)) throw ModelError("watchdog_limit_s must be positive");
    if (watchdog_limit_s > wake_period_s)
        throw ModelError("watchdog_limit_s must not exceed wake_period_s");
    device.idle_power(attached, true); // rejects unknown peripheral names
}

namespace {

struct PlannedPhase {
    std::string name;
    PhaseLabel label;
    double duration_s;
    double extra_w;
    bool is_transfer = false;
};

PlannedPhase plan_step(const Scenario& sc, const Step& step) {
    const double temp_factor = sc.device.temperature().factor_at(sc.ambient_c);
    if (const auto* t = std::get_if<TaskStep>(&step)) {
        const TaskSpec& spec = sc.device.task(t->task);
        return {spec.name, PhaseLabel::task, spec.duration_s, spec.extra_power_w() * temp_factor};
    }
    if (const auto* c = std::get_if<CaptureStep>(&step)) {
        const double dur = capture_duration(sc.capture_table, c->n_images, c->resolution,
                                            sc.capture_min_interval_s, sc.capture_jitter);
        const double extra_j = capture_energy(sc.capture_table, sc.device, c->n_images,
                                              c->resolution, sc.ambient_c,
                                              sc.capture_min_interval_s);
        return {"capture", PhaseLabel::task, dur, extra_j / dur};
    }
    if (const auto* x = std::get_if<TransferStep>(&step)) {
        const LinkType link = x->link.value_or(sc.link);
        const LinkModel& lm = sc.links.get(link, x->direction);
        const double dur = transfer_time(lm, x->payload_bytes);
        const double extra_j = transfer_energy(lm, x->payload_bytes);
        PlannedPhase ph{"transfer:" + to_string(link) + ":" + to_string(x->direction),
                        PhaseLabel::task, dur, dur > 0.0 ? extra_j / dur : 0.0};
        ph.is_transfer = true;
        return ph;
    }
    const auto& w = std::get<WaitStep>(step);
    if (!(w.duration_s > 0.0)) throw ModelError("wait step duration must be positive");
    return {"wait", PhaseLabel::idle, w.duration_s, 0.0};
}

} // namespace

CycleReport run_cycle(const Scenario& scenario) {
    scenario.validate();
    CycleReport report;
    const double off_power = scenario.device.idle_power(scenario.attached, false);

    if (scenario.steps.empty()) {
        // Node left sleeping: no boot, no shutdown, the whole period off.
        report.off_s = scenario.wake_period_s;
        report.off_j = off_power * report.off_s;
        report.total_j = report.off_j;
        report.schedule.push_back({"off", PhaseLabel::off, report.off_s, 0.0});
        return report;
    }

    std::vector<PlannedPhase> plan;
    {
        const TaskSpec& boot = scenario.device.task(scenario.boot_task);
        const double f = scenario.device.temperature().factor_at(scenario.ambient_c);
        plan.push_back({boot.name, PhaseLabel::boot, boot.duration_s, boot.extra_power_w() * f});
        for (const Step& s : scenario.steps) plan.push_back(plan_step(scenario, s));
        const TaskSpec& shut = scenario.device.task(scenario.shutdown_task);
        plan.push_back(
            {shut.name, PhaseLabel::shutdown, shut.duration_s, shut.extra_power_w() * f});
    }

    // Walk the plan against the watchdog budget; a step that would run past the
    // limit is cut there and contributes energy proportionally to elapsed time.
    std::vector<PlannedPhase> realized;
    double active_s = 0.0;
    for (const PlannedPhase& ph : plan) {
        if (ph.duration_s <= 0.0) continue;
        const double remaining = scenario.watchdog_limit_s - active_s;
        if (ph.duration_s > remaining) {
            report.watchdog_tripped = true;
            if (remaining > 0.0) {
                PlannedPhase cut = ph;
                cut.duration_s = remaining;
                realized.push_back(cut);
                active_s = scenario.watchdog_limit_s;
            }
            break;
        }
        realized.push_back(ph);
        active_s += ph.duration_s;
    }

    const double idle_w = scenario.device.idle_power(scenario.attached, true);
    const double overhead_w = scenario.links.idle_overhead_w(scenario.link);
    double transfer_s = 0.0;

    for (const PlannedPhase& ph : realized) {
        const double extra_j = ph.extra_w * ph.duration_s;
        if (ph.label == PhaseLabel::boot) {
            report.boot_j += extra_j;
        } else if (ph.label == PhaseLabel::shutdown) {
            report.shutdown_j += extra_j;
        } else {
            report.steps.push_back({ph.name, ph.duration_s, extra_j});
        }
        if (ph.is_transfer) transfer_s += ph.duration_s;
        report.schedule.push_back({ph.name, ph.label, ph.duration_s, ph.extra_w});
    }

    report.active_window_s = active_s;
    report.active_baseline_j = idle_w * active_s;
    report.link_overhead_j = overhead_w * std::max(active_s - transfer_s, 0.0);
    report.off_s = scenario.wake_period_s - active_s;
    report.off_j = off_power * report.off_s;
    if (report.off_s > 0.0)
        report.schedule.push_back({"off", PhaseLabel::off, report.off_s, 0.0});

    double steps_j = 0.0;
    for (const StepReport& s : report.steps) steps_j += s.energy_j;
    report.total_j = report.off_j + report.active_baseline_j + report.boot_j +
                     report.shutdown_j + report.link_overhead_j + steps_j;
    return report;
}

PowerTrace synthesize_cycle_trace(const Scenario& scenario, const CycleReport& report,
                                  double sample_dt_s) {
    if (!(sample_dt_s > 0.0)) throw ModelError("sample_dt_s must be positive");
    const double idle_w = scenario.device.idle_power(scenario.attached, true);
    const double off_w = scenario.device.idle_power(scenario.attached, false);
    const double overhead_w = scenario.links.idle_overhead_w(scenario.link);

    std::vector<Sample> samples;
    double t = 0.0;
    for (const RealizedPhase& ph : report.schedule) {
        if (!(ph.duration_s > 0.0)) continue;
        double p;
        if (ph.label == PhaseLabel::off) {
            p = off_w;
        } else {
            p = idle_w + ph.extra_w;
            // The port's idle overhead rides on every non-transfer active phase.
            if (ph.name.rfind("transfer:", 0) != 0) p += overhead_w;
        }
        const double end = t + ph.duration_s;
        const double closing = end - std::min(sample_dt_s, ph.duration_s) * 1e-9;
        for (double ts = t; ts < closing; ts += sample_dt_s) samples.push_back({ts, p});
        samples.push_back({closing, p});
        t = end;
    }
    if (!samples.empty()) samples.push_back({t, samples.back().p});
    return PowerTrace(std::move(samples));
}

namespace {

std::string format_day_hour(double seconds) {
    const auto days = static_cast<std::uint64_t>(seconds / 86400.0);
    const auto hours =
        static_cast<std::uint64_t>((seconds - static_cast<double>(days) * 86400.0) / 3600.0);
    return std::to_string(days) + "d " + std::to_string(hours) + "h";
}

} // namespace

LifetimeReport simulate_lifetime(const Scenario& scenario, const Battery& battery,
                                 const std::optional<HarvestProfile>& harvest,
                                 const LifetimeOptions& options) {
    battery.validate();
    const CycleReport cycle = run_cycle(scenario);
    const double volts = battery.nominal_voltage_v;
    const double draw_mah = cycle.total_j / volts / 3.6;

    LifetimeReport report;
    report.charge_per_cycle_mah = draw_mah;

    double charge = battery.capacity_mah * battery.initial_charge_fraction;
    const bool harvesting = harvest && !harvest->empty();

    if (draw_mah <= 0.0) {
        report.indefinite = true;
        report.cycles_to_depletion = options.max_cycles;
        report.time_to_depletion_s = static_cast<double>(options.max_cycles) * scenario.wake_period_s;
        report.depletion_day_hour = format_day_hour(report.time_to_depletion_s);
        return report;
    }

    std::uint64_t cycles = 0;
    if (!harvesting) {
        cycles = static_cast<std::uint64_t>(charge / draw_mah);
        cycles = std::min<std::uint64_t>(cycles, options.max_cycles);
        report.indefinite = cycles >= options.max_cycles;
    } else {
        while (cycles < options.max_cycles && charge >= draw_mah) {
            const double t0 = static_cast<double>(cycles) * scenario.wake_period_s;
            const double gain_mah =
                harvest->energy_j(t0, t0 + scenario.wake_period_s) / volts / 3.6;
            charge = std::min(charge - draw_mah + gain_mah, battery.capacity_mah);
            ++cycles;
        }
        report.indefinite = cycles >= options.max_cycles;
    }

    report.cycles_to_depletion = cycles;
    report.time_to_depletion_s = static_cast<double>(cycles) * scenario.wake_period_s;
    report.depletion_day_hour = format_day_hour(report.time_to_depletion_s);
    return report;
}

void apply_parameter(Scenario& scenario, const std::string& name, const std::string& value) {
    auto as_double = [&](const std::string& v) {
        try {
            size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ModelError("invalid numeric value '" + v + "' for parameter " + name);
        }
    };
    if (name == "wake_period_s") {
        scenario.wake_period_s = as_double(value);
    } else if (name == "watchdog_limit_s") {
        scenario.watchdog_limit_s = as_double(value);
    } else if (name == "ambient_c") {
        scenario.ambient_c = as_double(value);
    } else if (name == "link") {
        scenario.link = link_type_from_string(value);
    } else {
        throw ModelError("unknown sweep parameter: " + name);
    }
}

std::vector<SweepPoint> sweep(const Scenario& scenario, const std::string& name,
                              const std::vector<std::string>& values, const Battery& battery,
                              const std::optional<HarvestProfile>& harvest,
                              const LifetimeOptions& options) {
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (const std::string& v : values) {
        Scenario point = scenario;
        apply_parameter(point, name, v);
        SweepPoint sp;
        sp.value = v;
        sp.cycle = run_cycle(point);
        sp.lifetime = simulate_lifetime(point, battery, harvest, options);
        out.push_back(std::move(sp));
    }
    return out;
}

} // namespace beepower
