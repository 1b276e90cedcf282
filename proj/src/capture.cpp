#include "beepower/capture.hpp"

#include <algorithm>
#include <random>

namespace beepower {

std::string to_string(const Resolution& r) {
    return std::to_string(r.width_px) + "x" + std::to_string(r.height_px);
}

Resolution resolution_from_string(const std::string& s) {
    auto x = s.find('x');
    if (x == std::string::npos) x = s.find('X');
    if (x == std::string::npos || x == 0 || x + 1 >= s.size())
        throw ModelError("expected <width>x<height>, got '" + s + "'");
    Resolution r;
    try {
        r.width_px = std::stoi(s.substr(0, x));
        r.height_px = std::stoi(s.substr(x + 1));
    } catch (const std::exception&) {
        throw ModelError("expected <width>x<height>, got '" + s + "'");
    }
    if (r.width_px <= 0 || r.height_px <= 0)
        throw ModelError("resolution dimensions must be positive: '" + s + "'");
    return r;
}

CaptureTimeTable::CaptureTimeTable() : CaptureTimeTable({{{800, 600}, 0.515}}) {}

CaptureTimeTable::CaptureTimeTable(std::map<Resolution, double> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty()) throw ModelError("capture time table must not be empty");
    for (const auto& [res, secs] : entries_) {
        if (res.width_px <= 0 || res.height_px <= 0)
            throw ModelError("capture table resolution must be positive");
        if (!(secs > 0.0)) throw ModelError("capture table times must be positive");
    }
}

double CaptureTimeTable::seconds_per_image(const Resolution& r) const {
    auto exact = entries_.find(r);
    if (exact != entries_.end()) return exact->second;

    // Interpolate linearly in pixel count; clamp beyond the table extremes.
    const double px = static_cast<double>(r.pixels());
    const auto* below = static_cast<const std::pair<const Resolution, double>*>(nullptr);
    const auto* above = static_cast<const std::pair<const Resolution, double>*>(nullptr);
    for (const auto& e : entries_) {
        const double epx = static_cast<double>(e.first.pixels());
        if (epx <= px && (!below || epx > static_cast<double>(below->first.pixels()))) below = &e;
        if (epx >= px && (!above || epx < static_cast<double>(above->first.pixels()))) above = &e;
    }
    if (!below) return above->second;
    if (!above) return below->second;
    const double p0 = static_cast<double>(below->first.pixels());
    const double p1 = static_cast<double>(above->first.pixels());
    if (p1 == p0) return below->second;
    const double w = (px - p0) / (p1 - p0);
    return below->second + w * (above->second - below->second);
}

double capture_duration(const CaptureTimeTable& table, int n_images, const Resolution& res,
                        double min_interval_s, const std::optional<CaptureJitter>& jitter) {
    if (n_images < 1) throw ModelError("n_images must be at least 1");
    if (min_interval_s < 0.0) throw ModelError("min_interval_s must be non-negative");
    const double per_image = std::max(table.seconds_per_image(res), min_interval_s);
    if (!jitter || jitter->bound <= 0.0) return n_images * per_image;

    std::mt19937_64 rng(jitter->seed);
    std::uniform_real_distribution<double> slow(1.0, 1.0 + jitter->bound);
    double total = 0.0;
    for (int i = 0; i < n_images; ++i) total += per_image * slow(rng);
    return total;
}

double capture_energy(const CaptureTimeTable& table, const DeviceModel& model, int n_images,
                      const Resolution& res, double ambient_c, double min_interval_s,
                      const std::string& capture_task) {
    const TaskSpec& spec = model.task(capture_task);
    const double extra_w = spec.extra_power_w() * model.temperature().factor_at(ambient_c);
    return capture_duration(table, n_images, res, min_interval_s) * extra_w;
}

} // namespace beepower
