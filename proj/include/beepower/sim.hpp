#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "beepower/capture.hpp"
#include "beepower/device_model.hpp"
#include "beepower/network.hpp"
#include "beepower/segmentation.hpp"

namespace beepower {

struct Battery {
    double capacity_mah = 33000.0;
    double nominal_voltage_v = 5.0;
    double initial_charge_fraction = 1.0;

    void validate() const;
};

/// Daily energy income as a piecewise-constant power schedule; start hours in
/// [0, 24), strictly increasing. The last entry wraps past midnight.
class HarvestProfile {
public:
    struct Point {
        double start_hour = 0.0;
        double watts = 0.0;
    };

    HarvestProfile() = default;
    explicit HarvestProfile(std::vector<Point> points);

    const std::vector<Point>& points() const { return points_; }
    bool empty() const { return points_.empty(); }
    double power_at_hour(double hour_of_day) const;
    /// Integral of harvest power over wall-clock seconds [t0, t1), t=0 at hour 0.
    double energy_j(double t0_s, double t1_s) const;

private:
    std::vector<Point> points_;
};

// Step descriptors: a named device task, a camera batch, a network transfer,
// or an idle dwell inside the active window.
struct TaskStep {
    std::string task;
};
struct CaptureStep {
    int n_images = 1;
    Resolution resolution{800, 600};
};
struct TransferStep {
    std::uint64_t payload_bytes = 0;
    Direction direction = Direction::upload;
    std::optional<LinkType> link; // defaults to the scenario's selected link
};
struct WaitStep {
    double duration_s = 0.0;
};
using Step = std::variant<TaskStep, CaptureStep, TransferStep, WaitStep>;

/// The four measured link configurations plus a selector.
struct LinkSet {
    LinkModel wifi_download = default_link(LinkType::wifi, Direction::download);
    LinkModel wifi_upload = default_link(LinkType::wifi, Direction::upload);
    LinkModel ethernet_download = default_link(LinkType::ethernet, Direction::download);
    LinkModel ethernet_upload = default_link(LinkType::ethernet, Direction::upload);

    const LinkModel& get(LinkType link, Direction dir) const;
    LinkModel& get(LinkType link, Direction dir);
    double idle_overhead_w(LinkType link) const;
};

/// A full duty-cycle description. Empty steps mean a pure-off cycle (boot and
/// shutdown suppressed), which models the node left sleeping.
struct Scenario {
    DeviceModel device = makers_beehive_model();
    std::vector<Step> steps;
    double wake_period_s = 3600.0;
    double watchdog_limit_s = 300.0;
    double ambient_c = 20.5;
    std::set<std::string> attached;
    LinkType link = LinkType::wifi;
    LinkSet links;
    CaptureTimeTable capture_table;
    double capture_min_interval_s = 1.0;
    std::optional<CaptureJitter> capture_jitter;
    std::string boot_task = "boot";
    std::string shutdown_task = "shutdown";

    void validate() const;
};

/// One realized phase of a cycle: label, clock time, and extra power above
/// the idle baseline (0 for waits, off-mode power itself for off).
struct RealizedPhase {
    std::string name;
    PhaseLabel label = PhaseLabel::unknown;
    double duration_s = 0.0;
    double extra_w = 0.0; // above idle; ignored for off phases
};

struct StepReport {
    std::string name;
    double duration_s = 0.0;
    double energy_j = 0.0; // above the idle baseline
};

struct CycleReport {
    std::vector<StepReport> steps;
    double boot_j = 0.0;
    double shutdown_j = 0.0;
    double active_baseline_j = 0.0; // idle power over the active window
    double link_overhead_j = 0.0;   // port idle overhead on non-transfer active time
    double off_j = 0.0;
    double active_window_s = 0.0;
    double off_s = 0.0;
    double total_j = 0.0;
    bool watchdog_tripped = false;
    std::vector<RealizedPhase> schedule; // active phases then the off remainder

    double active_j() const { return total_j - off_j; }
};

struct LifetimeReport {
    double charge_per_cycle_mah = 0.0;
    std::uint64_t cycles_to_depletion = 0;
    double time_to_depletion_s = 0.0;
    std::string depletion_day_hour; // e.g. "11d 10h"
    bool indefinite = false;        // harvest covers the draw within the horizon
};

/// Execute one duty cycle: boot, the steps in order, graceful shutdown, then
/// off for the rest of the wake period. If cumulative active time would exceed
/// the watchdog limit the cycle is cut at exactly that limit with a forced
/// power-off and the running step prorated by elapsed time.
CycleReport run_cycle(const Scenario& scenario);

/// Piecewise-constant trace of a realized cycle, for cross-checks against the
/// report's energy accounting.
PowerTrace synthesize_cycle_trace(const Scenario& scenario, const CycleReport& report,
                                  double sample_dt_s);

struct LifetimeOptions {
    std::uint64_t max_cycles = 200000; // horizon before declaring indefinite runtime
};

/// Coulomb-counting lifetime at nominal voltage: each cycle draws
/// total_j / V / 3.6 mAh, harvesting refills up to capacity, and the clock
/// stops when the remaining charge cannot cover the next cycle.
LifetimeReport simulate_lifetime(const Scenario& scenario, const Battery& battery,
                                 const std::optional<HarvestProfile>& harvest = std::nullopt,
                                 const LifetimeOptions& options = {});

struct SweepPoint {
    std::string value;
    CycleReport cycle;
    LifetimeReport lifetime;
};

/// Set one addressable scenario field from its text form. Supported:
/// wake_period_s, watchdog_limit_s, ambient_c, link.
void apply_parameter(Scenario& scenario, const std::string& name, const std::string& value);

/// Independent runs of the scenario with `name` set to each value in turn.
std::vector<SweepPoint> sweep(const Scenario& scenario, const std::string& name,
                              const std::vector<std::string>& values, const Battery& battery,
                              const std::optional<HarvestProfile>& harvest = std::nullopt,
                              const LifetimeOptions& options = {});

} // namespace beepower
