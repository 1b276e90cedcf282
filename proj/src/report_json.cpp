#include "beepower/report_json.hpp"

namespace beepower {

Json segments_to_json(const std::vector<Segment>& segments) {
    Json arr = Json::array();
    for (const Segment& s : segments) {
        arr.push_back({{"t0", s.interval.t0},
                       {"t1", s.interval.t1},
                       {"label", to_string(s.label)},
                       {"energy_j", s.energy_j},
                       {"mean_power_w", s.mean_power_w}});
    }
    return arr;
}

Json phase_report_to_json(const std::map<PhaseLabel, PhaseTotals>& report) {
    Json obj = Json::object();
    for (const auto& [label, totals] : report) {
        obj[to_string(label)] = {{"count", totals.count},
                                 {"energy_j", totals.energy_j},
                                 {"duration_s", totals.duration_s}};
    }
    return obj;
}

Json cycle_report_to_json(const CycleReport& report) {
    Json steps = Json::array();
    for (const StepReport& s : report.steps)
        steps.push_back({{"name", s.name}, {"duration_s", s.duration_s}, {"energy_j", s.energy_j}});
    return {{"steps", steps},
            {"boot_j", report.boot_j},
            {"shutdown_j", report.shutdown_j},
            {"active_baseline_j", report.active_baseline_j},
            {"link_overhead_j", report.link_overhead_j},
            {"off_j", report.off_j},
            {"active_window_s", report.active_window_s},
            {"off_s", report.off_s},
            {"total_j", report.total_j},
            {"watchdog_tripped", report.watchdog_tripped}};
}

Json lifetime_report_to_json(const LifetimeReport& report) {
    return {{"charge_per_cycle_mah", report.charge_per_cycle_mah},
            {"cycles_to_depletion", report.cycles_to_depletion},
            {"time_to_depletion_s", report.time_to_depletion_s},
            {"depletion_day_hour", report.depletion_day_hour},
            {"indefinite", report.indefinite}};
}

Json sweep_to_json(const std::string& parameter, const std::vector<SweepPoint>& points) {
    Json arr = Json::array();
    for (const SweepPoint& p : points) {
        arr.push_back({{"value", p.value},
                       {"cycle", cycle_report_to_json(p.cycle)},
                       {"lifetime", lifetime_report_to_json(p.lifetime)}});
    }
    return {{"parameter", parameter}, {"points", arr}};
}

} // namespace beepower
