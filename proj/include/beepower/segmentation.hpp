#pragma once

#include <map>
#include <string>
#include <vector>

#include "beepower/trace.hpp"

namespace beepower {

enum class PhaseLabel { off, boot, idle, task, shutdown, unknown };

std::string to_string(PhaseLabel label);
PhaseLabel phase_label_from_string(const std::string& s);

/// A contiguous labeled slice of a trace. energy_j is the trace energy over
/// the interval; mean_power_w = energy_j / duration.
struct Segment {
    Interval interval;
    PhaseLabel label = PhaseLabel::unknown;
    double energy_j = 0.0;
    double mean_power_w = 0.0;
};

/// Level rules for phase classification. The idle band has no universal
/// default; it depends on the device's peripheral set and must be supplied.
struct SegmentationConfig {
    double off_threshold_w = 0.1;
    double idle_low_w = 0.0;
    double idle_high_w = 0.0;
    double min_segment_s = 1.0;
    double smoothing_window_s = 0.5;
    // A trailing active run no longer than this, falling to off, is the
    // shutdown spike. The fifth phase has no paper-side numeric criterion.
    double shutdown_max_s = 5.0;
    // Split same-class task runs where the level shifts by more than this;
    // 0 selects the idle band width. Separates back-to-back task plateaus.
    double plateau_split_w = 0.0;

    void validate() const;
    double split_delta() const {
        return plateau_split_w > 0.0 ? plateau_split_w : idle_high_w - idle_low_w;
    }
};

/// Split a trace into contiguous labeled segments that tile its extent.
/// Classification runs on a centered moving average (window
/// smoothing_window_s); energies are computed on the raw trace. Segments
/// shorter than min_segment_s merge into the neighbor with the closer mean
/// power. Throws ModelError for an empty trace or one shorter than
/// min_segment_s.
std::vector<Segment> segment(const PowerTrace& trace, const SegmentationConfig& cfg);

struct PhaseTotals {
    std::size_t count = 0;
    double energy_j = 0.0;
    double duration_s = 0.0;
};

/// Per-label counts, energies and durations. Sums are exact over the input.
std::map<PhaseLabel, PhaseTotals> phase_report(const std::vector<Segment>& segments);

} // namespace beepower
