#pragma once

// Test-side oracles, deliberately independent of the library's computation
// paths: a brute-force rectangle-rule integrator with its own interpolation,
// plus random generators for traces and plateau schedules.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "beepower/device_model.hpp"
#include "beepower/trace.hpp"

namespace oracles {

// Left-rectangle rule over the piecewise-linear signal, each sample gap split
// into `refine` substeps. Does not touch PowerTrace::power_at or energy().
inline double rectangle_energy(const std::vector<beepower::Sample>& s, double a, double b,
                               int refine = 100) {
    if (s.size() < 2) return 0.0;
    a = std::max(a, s.front().t);
    b = std::min(b, s.back().t);
    if (!(b > a)) return 0.0;

    auto lerp = [&](size_t i, double t) {
        const double w = (t - s[i].t) / (s[i + 1].t - s[i].t);
        return s[i].p + w * (s[i + 1].p - s[i].p);
    };

    double total = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        const double lo = std::max(a, s[i].t);
        const double hi = std::min(b, s[i + 1].t);
        if (!(hi > lo)) continue;
        const double h = (hi - lo) / refine;
        for (int k = 0; k < refine; ++k) total += lerp(i, lo + k * h) * h;
    }
    return total;
}

inline double rectangle_energy(const beepower::PowerTrace& trace, beepower::Interval over,
                               int refine = 100) {
    return rectangle_energy(trace.samples(), over.t0, over.t1, refine);
}

// Irregularly sampled random trace: jittered timestamps, power random-walking
// across plateaus, everything non-negative.
inline beepower::PowerTrace random_trace(std::mt19937_64& rng, size_t n_samples = 1000) {
    std::uniform_real_distribution<double> dt(0.02, 0.3);
    std::uniform_real_distribution<double> level(0.0, 5.0);
    std::uniform_real_distribution<double> wobble(-0.2, 0.2);
    std::uniform_int_distribution<int> plateau_len(5, 60);

    std::vector<beepower::Sample> samples;
    samples.reserve(n_samples);
    double t = 0.0;
    double p = level(rng);
    int remaining = plateau_len(rng);
    for (size_t i = 0; i < n_samples; ++i) {
        samples.push_back({t, p});
        t += dt(rng);
        if (--remaining <= 0) {
            p = level(rng);
            remaining = plateau_len(rng);
        } else {
            p = std::max(0.0, p + wobble(rng));
        }
    }
    return beepower::PowerTrace(std::move(samples));
}

// One generated plateau with its analytic ground truth.
struct TruthPhase {
    beepower::PhaseLabel label;
    double start_s = 0.0;
    double duration_s = 0.0;
    double power_w = 0.0; // synthesized plateau level

    double energy_j() const { return power_w * duration_s; }
};

// A randomized off/boot/tasks/idle/shutdown/off cycle, mirroring the measured
// phase structure. Returns schedule phases for the generator plus analytic
// truth rows with absolute start times.
struct RandomCycle {
    std::vector<beepower::SchedulePhase> schedule;
    std::vector<TruthPhase> truth;
};

inline RandomCycle random_cycle(std::mt19937_64& rng, const beepower::DeviceModel& model,
                                double idle_w, double off_w) {
    std::uniform_real_distribution<double> off_d(8.0, 30.0);
    std::uniform_real_distribution<double> boot_d(6.0, 12.0);
    std::uniform_real_distribution<double> idle_d(4.0, 15.0);
    std::uniform_real_distribution<double> task_d(5.0, 40.0);
    std::uniform_real_distribution<double> task_extra(0.6, 2.5);
    std::uniform_real_distribution<double> shut_d(1.5, 4.0);
    std::uniform_int_distribution<int> n_tasks(1, 4);

    RandomCycle rc;
    double t = 0.0;
    auto push = [&](beepower::PhaseLabel label, const std::string& phase, double dur, double p) {
        rc.schedule.push_back({phase, dur});
        rc.truth.push_back({label, t, dur, p});
        t += dur;
    };

    using beepower::PhaseLabel;
    push(PhaseLabel::off, "off", off_d(rng), off_w);

    // Boot rides above the idle band so the rising edge is unambiguous.
    const double boot_dur = boot_d(rng);
    const double boot_extra = task_extra(rng);
    push(PhaseLabel::boot, "boot", boot_dur, idle_w + boot_extra);

    push(PhaseLabel::idle, "idle", idle_d(rng), idle_w);
    const int k = n_tasks(rng);
    for (int i = 0; i < k; ++i) {
        const double dur = task_d(rng);
        const double extra = task_extra(rng);
        push(PhaseLabel::task, "task", dur, idle_w + extra);
        push(PhaseLabel::idle, "idle", idle_d(rng), idle_w);
    }
    const double shut_dur = shut_d(rng);
    push(PhaseLabel::shutdown, "shutdown", shut_dur, idle_w + 0.45);
    push(PhaseLabel::off, "off", off_d(rng), off_w);

    // Rebuild the schedule against the model's task names: boot/shutdown/task
    // entries need specs whose extra power matches the generated plateau.
    (void)model;
    return rc;
}

inline double total_energy(const RandomCycle& rc) {
    double sum = 0.0;
    for (const TruthPhase& ph : rc.truth) sum += ph.energy_j();
    return sum;
}

} // namespace oracles
