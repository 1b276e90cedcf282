#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "beepower/device_model.hpp"

namespace beepower {

struct Resolution {
    int width_px = 0;
    int height_px = 0;

    std::int64_t pixels() const { return std::int64_t(width_px) * height_px; }
    auto operator<=>(const Resolution&) const = default;
};

std::string to_string(const Resolution& r);
Resolution resolution_from_string(const std::string& s); // "800x600"

/// Seconds-per-image by resolution. Lookups interpolate linearly in total
/// pixel count between the two nearest entries and clamp at the extremes.
/// Ships with the single measured anchor (800x600 -> 0.515 s); further
/// entries are user-supplied.
class CaptureTimeTable {
public:
    CaptureTimeTable(); // the 800x600 anchor only
    explicit CaptureTimeTable(std::map<Resolution, double> entries);

    const std::map<Resolution, double>& entries() const { return entries_; }
    double seconds_per_image(const Resolution& r) const;

private:
    std::map<Resolution, double> entries_;
};

/// Multiplicative per-image jitter bound; off by default. The camera does not
/// hold its optimal frame rate reliably, so a bounded uniform slowdown can be
/// enabled for robustness studies.
struct CaptureJitter {
    double bound = 0.0;
    std::uint64_t seed = 0;
};

/// Batch duration: n_images x per-image time, where the per-image time is the
/// table entry floored by min_interval_s (the deployed script paces one photo
/// per second; pass 0 for free-running benchmark timing).
double capture_duration(const CaptureTimeTable& table, int n_images, const Resolution& res,
                        double min_interval_s = 1.0,
                        const std::optional<CaptureJitter>& jitter = std::nullopt);

/// Batch energy above idle: duration x capture extra power. The extra power
/// comes from the device model's capture task (energy over nominal duration)
/// and scales with ambient temperature like any task energy.
double capture_energy(const CaptureTimeTable& table, const DeviceModel& model, int n_images,
                      const Resolution& res, double ambient_c, double min_interval_s = 1.0,
                      const std::string& capture_task = "capture");

} // namespace beepower
