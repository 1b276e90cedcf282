#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "beepower/errors.hpp"

namespace beepower {

/// One timestamped power reading. Times are seconds since trace start, powers in watts.
struct Sample {
    double t = 0.0;
    double p = 0.0;
};

/// Half-open-ish time window [t0, t1]; degenerate (t0 == t1) is legal.
struct Interval {
    double t0 = 0.0;
    double t1 = 0.0;

    double duration() const { return t1 - t0; }
};

/// An immutable, time-ordered power signal. Empty traces are legal.
class PowerTrace {
public:
    PowerTrace() = default;
    /// Throws ModelError if times are not strictly increasing or any sample is invalid.
    explicit PowerTrace(std::vector<Sample> samples, double nominal_voltage = 5.0);

    const std::vector<Sample>& samples() const { return samples_; }
    double nominal_voltage() const { return nominal_voltage_; }

    bool empty() const { return samples_.empty(); }
    std::size_t size() const { return samples_.size(); }

    /// Full time extent; {0, 0} for an empty trace.
    Interval extent() const;

    /// Linear interpolation between samples; clamps to the end powers outside the extent.
    double power_at(double t) const;

private:
    std::vector<Sample> samples_;
    double nominal_voltage_ = 5.0;
};

/// Parse the trace CSV format. Header `t_s,power_w` or `t_s,current_a`; comment
/// lines start with `#`; a `# voltage=<V>` directive overrides the nominal voltage.
/// Current rows convert to watts via p = I * V. Throws ParseError with the
/// offending line number on malformed rows, non-increasing timestamps, or
/// negative current/power.
PowerTrace ingest_trace(std::istream& in, const std::string& source_name = "<stream>");
PowerTrace ingest_trace_file(const std::string& path);

/// Trapezoidal integral of power over `over` clipped to the trace extent, in joules.
/// Zero for an empty trace or a degenerate clipped interval.
double energy(const PowerTrace& trace, Interval over);
double energy(const PowerTrace& trace); // full extent

/// energy / duration of the clipped interval. Throws ModelError when the
/// clipped interval has zero duration.
double average_power(const PowerTrace& trace, Interval over);

} // namespace beepower
