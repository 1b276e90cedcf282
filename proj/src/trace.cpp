#include "beepower/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace beepower {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool parse_double(const std::string& field, double& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

} // namespace

PowerTrace::PowerTrace(std::vector<Sample> samples, double nominal_voltage)
    : samples_(std::move(samples)), nominal_voltage_(nominal_voltage) {
    if (nominal_voltage_ <= 0.0) throw ModelError("nominal voltage must be positive");
    for (size_t i = 0; i < samples_.size(); ++i) {
        const Sample& s = samples_[i];
        if (!std::isfinite(s.t)) throw ModelError("sample time must be finite");
        if (s.t < 0.0) throw ModelError("sample time must be non-negative");
        if (!(s.p >= 0.0) || !std::isfinite(s.p)) throw ModelError("sample power must be a non-negative number");
        if (i > 0 && !(s.t > samples_[i - 1].t))
            throw ModelError("sample times must be strictly increasing (at index " + std::to_string(i) + ")");
    }
}

Interval PowerTrace::extent() const {
    if (samples_.empty()) return {0.0, 0.0};
    return {samples_.front().t, samples_.back().t};
}

double PowerTrace::power_at(double t) const {
    if (samples_.empty()) return 0.0;
    if (t <= samples_.front().t) return samples_.front().p;
    if (t >= samples_.back().t) return samples_.back().p;
    auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                               [](const Sample& s, double v) { return s.t < v; });
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    return lo.p + w * (hi.p - lo.p);
}

PowerTrace ingest_trace(std::istream& in, const std::string& source_name) {
    std::vector<Sample> samples;
    double voltage = 5.0;
    bool header_seen = false;
    bool current_mode = false;

    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            // `# voltage=<V>` overrides the nominal rail voltage for the whole trace.
            std::string body = trim(s.substr(1));
            if (body.rfind("voltage=", 0) == 0) {
                double v = 0.0;
                if (!parse_double(trim(body.substr(8)), v) || v <= 0.0)
                    throw ParseError(source_name, line_no, "invalid voltage directive: " + body);
                voltage = v;
            }
            continue;
        }
        if (!header_seen) {
            std::string h = s;
            h.erase(std::remove_if(h.begin(), h.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    h.end());
            if (h == "t_s,power_w") {
                current_mode = false;
            } else if (h == "t_s,current_a") {
                current_mode = true;
            } else {
                throw ParseError(source_name, line_no,
                                 "expected header 't_s,power_w' or 't_s,current_a', got '" + s + "'");
            }
            header_seen = true;
            continue;
        }

        auto comma = s.find(',');
        if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
            throw ParseError(source_name, line_no, "expected two comma-separated fields: '" + s + "'");
        double t = 0.0, v = 0.0;
        if (!parse_double(trim(s.substr(0, comma)), t))
            throw ParseError(source_name, line_no, "malformed timestamp: '" + s + "'");
        if (!parse_double(trim(s.substr(comma + 1)), v))
            throw ParseError(source_name, line_no, "malformed value: '" + s + "'");
        if (t < 0.0)
            throw ParseError(source_name, line_no, "negative timestamp");
        if (v < 0.0)
            throw ParseError(source_name, line_no,
                             current_mode ? "negative current" : "negative power");
        if (!samples.empty() && !(t > samples.back().t))
            throw ParseError(source_name, line_no, "timestamp not increasing (" + std::to_string(t) +
                                                       " after " + std::to_string(samples.back().t) + ")");
        samples.push_back({t, current_mode ? v * voltage : v});
    }
    if (!header_seen)
        throw ParseError(source_name, line_no, "missing header line");
    return PowerTrace(std::move(samples), voltage);
}

PowerTrace ingest_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file: " + path);
    return ingest_trace(in, path);
}

double energy(const PowerTrace& trace, Interval over) {
    if (over.t1 < over.t0) throw ModelError("interval must have t0 <= t1");
    const auto& s = trace.samples();
    if (s.size() < 2) return 0.0;
    const double a = std::max(over.t0, s.front().t);
    const double b = std::min(over.t1, s.back().t);
    if (!(b > a)) return 0.0;

    // Trapezoid over the piecewise-linear interpolant, clipped at a and b.
    auto first_after = std::upper_bound(s.begin(), s.end(), a,
                                        [](double v, const Sample& smp) { return v < smp.t; });
    double total = 0.0;
    double prev_t = a;
    double prev_p = trace.power_at(a);
    for (auto it = first_after; it != s.end() && it->t < b; ++it) {
        total += 0.5 * (prev_p + it->p) * (it->t - prev_t);
        prev_t = it->t;
        prev_p = it->p;
    }
    total += 0.5 * (prev_p + trace.power_at(b)) * (b - prev_t);
    return total;
}

double energy(const PowerTrace& trace) {
    return energy(trace, trace.extent());
}

double average_power(const PowerTrace& trace, Interval over) {
    if (over.t1 < over.t0) throw ModelError("interval must have t0 <= t1");
    const auto& s = trace.samples();
    if (s.empty()) throw ModelError("average power of an empty trace");
    const double a = std::max(over.t0, s.front().t);
    const double b = std::min(over.t1, s.back().t);
    if (!(b > a)) throw ModelError("average power over a zero-duration interval");
    return energy(trace, {a, b}) / (b - a);
}

} // namespace beepower
