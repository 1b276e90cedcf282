#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "beepower/trace.hpp"

namespace beepower {

/// Fixed power cost of an attached peripheral, split by host state.
struct PeripheralCost {
    std::string name;
    double active_idle_w = 0.0; // drawn while the host is on
    double off_w = 0.0;         // drawn while the host is off
};

/// A named activity with a nominal duration and its energy above the idle baseline.
/// Extra power density is energy_j / duration_s; scheduling the task for a
/// different length draws that density for the scheduled time.
struct TaskSpec {
    std::string name;
    double duration_s = 0.0;
    double energy_j = 0.0;

    double extra_power_w() const { return energy_j / duration_s; }
};

/// Linear energy scaling between two measured ambient conditions.
/// factor(T) interpolates between cold_energy_factor at the cold-range midpoint
/// and 1.0 at the reference-range midpoint, clamped outside that span.
struct TemperatureModifier {
    double reference_low_c = 19.0;
    double reference_high_c = 22.0;
    double cold_low_c = 3.0;
    double cold_high_c = 5.0;
    double cold_energy_factor = 1.099;

    double reference_mid_c() const { return 0.5 * (reference_low_c + reference_high_c); }
    double cold_mid_c() const { return 0.5 * (cold_low_c + cold_high_c); }
    double factor_at(double ambient_c) const;
};

/// One entry of a synthesis schedule: a built-in level ("off", "idle") or the
/// name of a task in the device model, held for `duration_s`.
struct SchedulePhase {
    std::string phase; // "off", "idle", or a task name
    double duration_s = 0.0;
};

/// The measured power/energy model of the node: baselines, peripheral fixed
/// costs, task specs, stress ceilings and the temperature modifier.
class DeviceModel {
public:
    DeviceModel() = default;
    DeviceModel(double idle_baseline_w,
                std::vector<PeripheralCost> peripherals,
                std::vector<TaskSpec> tasks,
                double stress_safe_w = 2.65,
                double stress_burn_w = 4.5,
                double off_standby_w = 0.5,
                TemperatureModifier temp = {});

    double idle_baseline_w() const { return idle_baseline_w_; }
    double stress_safe_w() const { return stress_safe_w_; }
    double stress_burn_w() const { return stress_burn_w_; }
    double off_standby_w() const { return off_standby_w_; }
    const TemperatureModifier& temperature() const { return temp_; }
    const std::map<std::string, PeripheralCost>& peripherals() const { return peripherals_; }
    const std::map<std::string, TaskSpec>& tasks() const { return tasks_; }

    bool has_task(const std::string& name) const { return tasks_.count(name) != 0; }
    const TaskSpec& task(const std::string& name) const;

    /// Total idle draw for the given attachment set. Host on: baseline plus
    /// active costs; host off: standby plus off costs. Unknown names throw.
    double idle_power(const std::set<std::string>& attached, bool host_on = true) const;

    /// Base task energy scaled by the ambient temperature factor.
    double task_energy(const std::string& name, double ambient_c) const;

    /// Piecewise-constant ground-truth trace for a schedule: off phases at
    /// off-mode power, idle at idle power, tasks at idle power plus the
    /// temperature-scaled extra power density. Each plateau gets a closing
    /// sample just before its boundary so the trapezoidal energy matches the
    /// analytic sum to rounding.
    PowerTrace synthesize_trace(const std::vector<SchedulePhase>& schedule,
                                const std::set<std::string>& attached,
                                double ambient_c,
                                double sample_dt_s) const;

    /// Analytic energy of a schedule (what synthesize_trace integrates to).
    double schedule_energy(const std::vector<SchedulePhase>& schedule,
                           const std::set<std::string>& attached,
                           double ambient_c) const;

    /// Power level of one phase under this model, as synthesized.
    double phase_power(const SchedulePhase& phase,
                       const std::set<std::string>& attached,
                       double ambient_c) const;

private:
    double idle_baseline_w_ = 0.0;
    std::map<std::string, PeripheralCost> peripherals_;
    std::map<std::string, TaskSpec> tasks_;
    double stress_safe_w_ = 2.65;
    double stress_burn_w_ = 4.5;
    double off_standby_w_ = 0.5;
    TemperatureModifier temp_;
};

/// The measured model of the deployed node, with the idle baseline calibrated
/// so a full 300 s acquisition window (boot, the four script steps, shutdown,
/// idle fill) totals 548 J: full-setup idle power = 40/33 W exactly.
DeviceModel makers_beehive_model();

/// Full-setup idle power (arduino attached) of the calibrated model, 40/33 W.
inline constexpr double kMakersBeehiveIdleW = 40.0 / 33.0;

} // namespace beepower
