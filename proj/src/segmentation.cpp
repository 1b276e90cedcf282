#include "beepower/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace beepower {

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::off: return "off";
        case PhaseLabel::boot: return "boot";
        case PhaseLabel::idle: return "idle";
        case PhaseLabel::task: return "task";
        case PhaseLabel::shutdown: return "shutdown";
        case PhaseLabel::unknown: return "unknown";
    }
    return "unknown";
}

PhaseLabel phase_label_from_string(const std::string& s) {
    if (s == "off") return PhaseLabel::off;
    if (s == "boot") return PhaseLabel::boot;
    if (s == "idle") return PhaseLabel::idle;
    if (s == "task") return PhaseLabel::task;
    if (s == "shutdown") return PhaseLabel::shutdown;
    if (s == "unknown") return PhaseLabel::unknown;
    throw ModelError("unknown phase label: " + s);
}

void SegmentationConfig::validate() const {
    if (!(off_threshold_w > 0.0)) throw ModelError("off_threshold_w must be positive");
    if (!(idle_low_w < idle_high_w)) throw ModelError("idle band must have low < high");
    if (!(off_threshold_w < idle_low_w))
        throw ModelError("off_threshold_w must lie below the idle band");
    if (!(min_segment_s > 0.0)) throw ModelError("min_segment_s must be positive");
    if (smoothing_window_s < 0.0) throw ModelError("smoothing_window_s must be non-negative");
    if (!(shutdown_max_s > 0.0)) throw ModelError("shutdown_max_s must be positive");
    if (plateau_split_w < 0.0) throw ModelError("plateau_split_w must be non-negative");
}

namespace {

enum class LevelClass { off, idle, task, mid };

// Centered moving average over a time window; two-pointer pass.
std::vector<double> smooth(const std::vector<Sample>& s, double window_s) {
    std::vector<double> out(s.size());
    if (window_s <= 0.0) {
        for (size_t i = 0; i < s.size(); ++i) out[i] = s[i].p;
        return out;
    }
    const double half = 0.5 * window_s;
    size_t lo = 0, hi = 0;
    double sum = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        while (hi < s.size() && s[hi].t <= s[i].t + half) sum += s[hi++].p;
        while (s[lo].t < s[i].t - half) sum -= s[lo++].p;
        out[i] = sum / static_cast<double>(hi - lo);
    }
    return out;
}

struct Run {
    size_t first = 0;      // sample index
    size_t last = 0;       // inclusive
    LevelClass cls = LevelClass::off;
    PhaseLabel label = PhaseLabel::unknown;
};

LevelClass classify(double p, const SegmentationConfig& cfg) {
    if (p < cfg.off_threshold_w) return LevelClass::off;
    if (p < cfg.idle_low_w) return LevelClass::mid;
    if (p <= cfg.idle_high_w) return LevelClass::idle;
    return LevelClass::task;
}

PhaseLabel default_label(LevelClass cls) {
    switch (cls) {
        case LevelClass::off: return PhaseLabel::off;
        case LevelClass::idle: return PhaseLabel::idle;
        case LevelClass::task: return PhaseLabel::task;
        case LevelClass::mid: return PhaseLabel::unknown;
    }
    return PhaseLabel::unknown;
}

struct Piece {
    Interval interval;
    PhaseLabel label;
    double energy_j = 0.0;
};

} // namespace

std::vector<Segment> segment(const PowerTrace& trace, const SegmentationConfig& cfg) {
    cfg.validate();
    if (trace.empty()) throw ModelError("cannot segment an empty trace");
    const auto& samples = trace.samples();
    const double extent_s = trace.extent().duration();
    if (extent_s < cfg.min_segment_s)
        throw ModelError("trace extent is shorter than min_segment_s");

    const std::vector<double> level = smooth(samples, cfg.smoothing_window_s);

    // Maximal runs of one level class; task runs additionally split where the
    // level departs from the running plateau mean by more than split_delta.
    std::vector<Run> runs;
    const double split = cfg.split_delta();
    double plateau_mean = level[0];
    size_t plateau_n = 1;
    runs.push_back({0, 0, classify(level[0], cfg), PhaseLabel::unknown});
    for (size_t i = 1; i < samples.size(); ++i) {
        const LevelClass cls = classify(level[i], cfg);
        Run& cur = runs.back();
        const bool level_break = cur.cls == LevelClass::task && cls == LevelClass::task &&
                                 std::abs(level[i] - plateau_mean) > split;
        if (cls != cur.cls || level_break) {
            runs.push_back({i, i, cls, PhaseLabel::unknown});
            plateau_mean = level[i];
            plateau_n = 1;
        } else {
            cur.last = i;
            plateau_mean += (level[i] - plateau_mean) / static_cast<double>(++plateau_n);
        }
    }
    for (Run& r : runs) r.label = default_label(r.cls);

    auto run_start = [&](size_t k) { return samples[runs[k].first].t; };
    auto run_end = [&](size_t k) {
        return k + 1 < runs.size() ? samples[runs[k + 1].first].t : samples.back().t;
    };

    // Boot: from an off -> active rising edge until power first re-enters the
    // idle band (or drops off again).
    for (size_t k = 0; k + 1 < runs.size(); ++k) {
        if (runs[k].cls != LevelClass::off) continue;
        for (size_t j = k + 1; j < runs.size(); ++j) {
            if (runs[j].cls == LevelClass::idle || runs[j].cls == LevelClass::off) break;
            runs[j].label = PhaseLabel::boot;
        }
    }

    // Shutdown: a short active spike that falls to off, with activity before it.
    for (size_t k = 1; k + 1 < runs.size(); ++k) {
        Run& r = runs[k];
        if (r.cls == LevelClass::off || r.label == PhaseLabel::boot) continue;
        if (runs[k + 1].cls != LevelClass::off) continue;
        if (runs[k - 1].cls == LevelClass::off) continue;
        if (run_end(k) - run_start(k) <= cfg.shutdown_max_s) r.label = PhaseLabel::shutdown;
    }

    // Materialize tiling pieces, then merge sub-minimum ones into the
    // neighbor with the closer mean power.
    std::vector<Piece> pieces;
    pieces.reserve(runs.size());
    for (size_t k = 0; k < runs.size(); ++k) {
        Piece pc;
        pc.interval = {run_start(k), run_end(k)};
        pc.label = runs[k].label;
        pc.energy_j = energy(trace, pc.interval);
        pieces.push_back(pc);
    }

    auto mean_power = [&](const Piece& pc) {
        const double d = pc.interval.duration();
        return d > 0.0 ? pc.energy_j / d : trace.power_at(pc.interval.t0);
    };

    while (pieces.size() > 1) {
        size_t shortest = pieces.size();
        double shortest_d = cfg.min_segment_s;
        for (size_t k = 0; k < pieces.size(); ++k) {
            const double d = pieces[k].interval.duration();
            if (d < shortest_d) {
                shortest_d = d;
                shortest = k;
            }
        }
        if (shortest == pieces.size()) break;

        const Piece& victim = pieces[shortest];
        size_t target;
        if (shortest == 0) {
            target = 1;
        } else if (shortest + 1 == pieces.size()) {
            target = shortest - 1;
        } else {
            const double pm = mean_power(victim);
            const double dl = std::abs(mean_power(pieces[shortest - 1]) - pm);
            const double dr = std::abs(mean_power(pieces[shortest + 1]) - pm);
            target = dl <= dr ? shortest - 1 : shortest + 1;
        }
        Piece& keep = pieces[target];
        keep.interval.t0 = std::min(keep.interval.t0, victim.interval.t0);
        keep.interval.t1 = std::max(keep.interval.t1, victim.interval.t1);
        keep.energy_j += victim.energy_j;
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(shortest));
    }

    // Adjacent pieces can end up with the same label after merging.
    std::vector<Piece> coalesced;
    for (const Piece& pc : pieces) {
        if (!coalesced.empty() && coalesced.back().label == pc.label) {
            coalesced.back().interval.t1 = pc.interval.t1;
            coalesced.back().energy_j += pc.energy_j;
        } else {
            coalesced.push_back(pc);
        }
    }

    std::vector<Segment> out;
    out.reserve(coalesced.size());
    for (const Piece& pc : coalesced) {
        Segment seg;
        seg.interval = pc.interval;
        seg.label = pc.label;
        seg.energy_j = pc.energy_j;
        const double d = pc.interval.duration();
        if (!(d > 0.0)) throw InternalError("degenerate segment survived merging");
        seg.mean_power_w = pc.energy_j / d;
        out.push_back(seg);
    }
    return out;
}

std::map<PhaseLabel, PhaseTotals> phase_report(const std::vector<Segment>& segments) {
    std::map<PhaseLabel, PhaseTotals> totals;
    for (const Segment& s : segments) {
        PhaseTotals& t = totals[s.label];
        t.count += 1;
        t.energy_j += s.energy_j;
        t.duration_s += s.interval.duration();
    }
    return totals;
}

} // namespace beepower
