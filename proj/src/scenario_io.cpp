#include "beepower/scenario_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace beepower {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Cursor {
    const std::string& file;
    size_t line = 0;
    std::string section;
    std::string key;

    [[noreturn]] void fail(const std::string& msg) const {
        std::string where = section.empty() ? key : section + "." + key;
        throw ParseError(file, line, "key '" + where + "': " + msg);
    }
};

double num(const Cursor& c, const std::string& v) {
    const char* first = v.data();
    const char* last = v.data() + v.size();
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out))
        c.fail("expected a number, got '" + v + "'");
    return out;
}

std::uint64_t unsigned_num(const Cursor& c, const std::string& v) {
    const double d = num(c, v);
    if (d < 0.0 || d != std::floor(d)) c.fail("expected a non-negative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(d);
}

std::pair<double, double> num_pair(const Cursor& c, const std::string& v) {
    auto parts = split(v, ':');
    if (parts.size() != 2) c.fail("expected low:high, got '" + v + "'");
    return {num(c, parts[0]), num(c, parts[1])};
}

// Raw device fields accumulated before the model can be validated as a whole.
struct DeviceDraft {
    double idle_baseline_w = kMakersBeehiveIdleW - 0.5;
    double off_standby_w = 0.5;
    double stress_safe_w = 2.65;
    double stress_burn_w = 4.5;
    TemperatureModifier temp;
    std::vector<PeripheralCost> peripherals;
    std::vector<TaskSpec> tasks;
    bool any_field = false;
};

} // namespace

ScenarioFile load_scenario(std::istream& in, const std::string& source_name) {
    ScenarioFile sf;
    DeviceDraft device;
    std::map<Resolution, double> capture_entries;
    std::vector<HarvestProfile::Point> harvest_points;
    SegmentationConfig seg;
    bool has_seg = false;
    bool default_device = true;

    Cursor cur{source_name};
    std::string line;
    while (std::getline(in, line)) {
        ++cur.line;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(source_name, cur.line, "unterminated section header");
            cur.section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(source_name, cur.line, "expected key = value, got '" + s + "'");
        cur.key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (cur.key.empty()) throw ParseError(source_name, cur.line, "empty key");

        if (cur.section == "device") {
            default_device = false;
            device.any_field = true;
            if (cur.key == "idle_baseline_w") {
                device.idle_baseline_w = num(cur, value);
            } else if (cur.key == "off_standby_w") {
                device.off_standby_w = num(cur, value);
            } else if (cur.key == "stress_safe_w") {
                device.stress_safe_w = num(cur, value);
            } else if (cur.key == "stress_burn_w") {
                device.stress_burn_w = num(cur, value);
            } else if (cur.key == "temp.reference_range_c") {
                std::tie(device.temp.reference_low_c, device.temp.reference_high_c) =
                    num_pair(cur, value);
            } else if (cur.key == "temp.cold_range_c") {
                std::tie(device.temp.cold_low_c, device.temp.cold_high_c) = num_pair(cur, value);
            } else if (cur.key == "temp.cold_energy_factor") {
                device.temp.cold_energy_factor = num(cur, value);
            } else if (cur.key == "peripheral") {
                auto parts = split(value, ':');
                if (parts.size() != 3) cur.fail("expected name:active_idle_w:off_w");
                device.peripherals.push_back(
                    {parts[0], num(cur, parts[1]), num(cur, parts[2])});
            } else if (cur.key == "task") {
                auto parts = split(value, ':');
                if (parts.size() != 3) cur.fail("expected name:duration_s:energy_j");
                device.tasks.push_back({parts[0], num(cur, parts[1]), num(cur, parts[2])});
            } else {
                cur.fail("unknown device key");
            }
        } else if (cur.section == "capture") {
            if (cur.key == "table") {
                std::string list = value;
                if (!list.empty() && list.front() == '[' && list.back() == ']')
                    list = trim(list.substr(1, list.size() - 2));
                for (const std::string& entry : split(list, ',')) {
                    if (entry.empty()) continue;
                    auto colon = entry.rfind(':');
                    if (colon == std::string::npos) cur.fail("expected <w>x<h>:<s_per_img>");
                    Resolution res;
                    try {
                        res = resolution_from_string(trim(entry.substr(0, colon)));
                    } catch (const ModelError& e) {
                        cur.fail(e.what());
                    }
                    capture_entries[res] = num(cur, trim(entry.substr(colon + 1)));
                }
            } else if (cur.key == "min_interval_s") {
                sf.scenario.capture_min_interval_s = num(cur, value);
            } else if (cur.key == "jitter_bound") {
                const double b = num(cur, value);
                if (b > 0.0) {
                    if (!sf.scenario.capture_jitter) sf.scenario.capture_jitter = CaptureJitter{};
                    sf.scenario.capture_jitter->bound = b;
                }
            } else if (cur.key == "jitter_seed") {
                if (!sf.scenario.capture_jitter) sf.scenario.capture_jitter = CaptureJitter{};
                sf.scenario.capture_jitter->seed = unsigned_num(cur, value);
            } else {
                cur.fail("unknown capture key");
            }
        } else if (cur.section == "link") {
            if (cur.key == "selected") {
                try {
                    sf.scenario.link = link_type_from_string(value);
                } catch (const ModelError& e) {
                    cur.fail(e.what());
                }
            } else {
                auto parts = split(cur.key, '.');
                auto set_field = [&](LinkModel& m, const std::string& field) {
                    if (field == "rate_mbps") {
                        m.data_rate_bps = num(cur, value) * 1e6;
                    } else if (field == "energy_per_50mb_j") {
                        m.energy_per_50mb_j = num(cur, value);
                    } else {
                        cur.fail("unknown link field");
                    }
                };
                if (parts.size() == 2 && parts[1] == "idle_overhead_w") {
                    LinkType lt;
                    try {
                        lt = link_type_from_string(parts[0]);
                    } catch (const ModelError& e) {
                        cur.fail(e.what());
                    }
                    sf.scenario.links.get(lt, Direction::download).idle_overhead_w =
                        num(cur, value);
                    sf.scenario.links.get(lt, Direction::upload).idle_overhead_w =
                        num(cur, value);
                } else if (parts.size() == 3) {
                    LinkType lt;
                    Direction dir;
                    try {
                        lt = link_type_from_string(parts[0]);
                        dir = direction_from_string(parts[1]);
                    } catch (const ModelError& e) {
                        cur.fail(e.what());
                    }
                    set_field(sf.scenario.links.get(lt, dir), parts[2]);
                } else {
                    cur.fail("unknown link key");
                }
            }
        } else if (cur.section == "scenario") {
            if (cur.key == "wake_period_s") {
                sf.scenario.wake_period_s = num(cur, value);
            } else if (cur.key == "watchdog_limit_s") {
                sf.scenario.watchdog_limit_s = num(cur, value);
            } else if (cur.key == "ambient_c") {
                sf.scenario.ambient_c = num(cur, value);
            } else if (cur.key == "attach") {
                sf.scenario.attached.insert(value);
            } else if (cur.key == "boot_task") {
                sf.scenario.boot_task = value;
            } else if (cur.key == "shutdown_task") {
                sf.scenario.shutdown_task = value;
            } else if (cur.key == "step") {
                auto parts = split(value, ':');
                if (parts.empty() || parts[0].empty()) cur.fail("empty step descriptor");
                const std::string& kind = parts[0];
                try {
                    if (kind == "task" && parts.size() == 2) {
                        sf.scenario.steps.push_back(TaskStep{parts[1]});
                    } else if (kind == "capture" && parts.size() == 3) {
                        CaptureStep cs;
                        cs.n_images = static_cast<int>(unsigned_num(cur, parts[1]));
                        cs.resolution = resolution_from_string(parts[2]);
                        sf.scenario.steps.push_back(cs);
                    } else if (kind == "transfer" && (parts.size() == 3 || parts.size() == 4)) {
                        TransferStep ts;
                        ts.payload_bytes = unsigned_num(cur, parts[1]);
                        ts.direction = direction_from_string(parts[2]);
                        if (parts.size() == 4) ts.link = link_type_from_string(parts[3]);
                        sf.scenario.steps.push_back(ts);
                    } else if (kind == "wait" && parts.size() == 2) {
                        sf.scenario.steps.push_back(WaitStep{num(cur, parts[1])});
                    } else {
                        cur.fail("expected task:<name>, capture:<n>:<WxH>, "
                                 "transfer:<bytes>:<direction>[:<link>], or wait:<seconds>");
                    }
                } catch (const ModelError& e) {
                    cur.fail(e.what());
                }
            } else {
                cur.fail("unknown scenario key");
            }
        } else if (cur.section == "battery") {
            if (cur.key == "capacity_mah") {
                sf.battery.capacity_mah = num(cur, value);
            } else if (cur.key == "nominal_voltage_v") {
                sf.battery.nominal_voltage_v = num(cur, value);
            } else if (cur.key == "initial_charge_fraction") {
                sf.battery.initial_charge_fraction = num(cur, value);
            } else {
                cur.fail("unknown battery key");
            }
        } else if (cur.section == "harvest") {
            if (cur.key == "point") {
                auto [hour, watts] = num_pair(cur, value);
                harvest_points.push_back({hour, watts});
            } else {
                cur.fail("unknown harvest key");
            }
        } else if (cur.section == "segmentation") {
            has_seg = true;
            if (cur.key == "off_threshold_w") {
                seg.off_threshold_w = num(cur, value);
            } else if (cur.key == "idle_band_w") {
                std::tie(seg.idle_low_w, seg.idle_high_w) = num_pair(cur, value);
            } else if (cur.key == "min_segment_s") {
                seg.min_segment_s = num(cur, value);
            } else if (cur.key == "smoothing_window_s") {
                seg.smoothing_window_s = num(cur, value);
            } else if (cur.key == "shutdown_max_s") {
                seg.shutdown_max_s = num(cur, value);
            } else if (cur.key == "plateau_split_w") {
                seg.plateau_split_w = num(cur, value);
            } else {
                cur.fail("unknown segmentation key");
            }
        } else if (cur.section.empty()) {
            throw ParseError(source_name, cur.line, "key '" + cur.key + "' outside any section");
        } else {
            throw ParseError(source_name, cur.line, "unknown section [" + cur.section + "]");
        }
    }

    if (!default_device) {
        try {
            sf.scenario.device =
                DeviceModel(device.idle_baseline_w, std::move(device.peripherals),
                            std::move(device.tasks), device.stress_safe_w,
                            device.stress_burn_w, device.off_standby_w, device.temp);
        } catch (const ModelError& e) {
            throw ParseError(source_name + ": [device]: " + e.what());
        }
    }
    if (!capture_entries.empty()) sf.scenario.capture_table = CaptureTimeTable(capture_entries);
    if (!harvest_points.empty()) sf.harvest = HarvestProfile(std::move(harvest_points));
    if (has_seg) sf.segmentation = seg;
    return sf;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    return load_scenario(in, path);
}

ScenarioFile makers_beehive_scenario() {
    ScenarioFile sf;
    sf.scenario.device = makers_beehive_model();
    sf.scenario.attached = {"arduino", "camera"};
    sf.scenario.link = LinkType::wifi;
    sf.scenario.wake_period_s = 3600.0;
    sf.scenario.watchdog_limit_s = 300.0;
    sf.scenario.ambient_c = 20.5;
    sf.scenario.steps = {
        TaskStep{"sensors"},
        CaptureStep{20, {800, 600}},
        TaskStep{"convert_upload"},
        TaskStep{"telemetry"},
        WaitStep{151.5}, // settle/retry margin observed before shutdown
    };
    sf.battery = Battery{33000.0, 5.0, 1.0};

    // Segmentation defaults matched to the calibrated idle level (+-10 %).
    SegmentationConfig seg;
    const double idle_w = sf.scenario.device.idle_power(sf.scenario.attached, true);
    seg.idle_low_w = 0.9 * idle_w;
    seg.idle_high_w = 1.1 * idle_w;
    sf.segmentation = seg;
    return sf;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string scenario_to_text(const ScenarioFile& sf) {
    std::ostringstream os;
    const Scenario& sc = sf.scenario;
    const DeviceModel& dm = sc.device;

    os << "[device]\n";
    os << "idle_baseline_w = " << fmt(dm.idle_baseline_w()) << "\n";
    os << "off_standby_w = " << fmt(dm.off_standby_w()) << "\n";
    os << "stress_safe_w = " << fmt(dm.stress_safe_w()) << "\n";
    os << "stress_burn_w = " << fmt(dm.stress_burn_w()) << "\n";
    const TemperatureModifier& t = dm.temperature();
    os << "temp.reference_range_c = " << fmt(t.reference_low_c) << ":" << fmt(t.reference_high_c)
       << "\n";
    os << "temp.cold_range_c = " << fmt(t.cold_low_c) << ":" << fmt(t.cold_high_c) << "\n";
    os << "temp.cold_energy_factor = " << fmt(t.cold_energy_factor) << "\n";
    for (const auto& [name, p] : dm.peripherals())
        os << "peripheral = " << name << ":" << fmt(p.active_idle_w) << ":" << fmt(p.off_w)
           << "\n";
    for (const auto& [name, task] : dm.tasks())
        os << "task = " << name << ":" << fmt(task.duration_s) << ":" << fmt(task.energy_j)
           << "\n";

    os << "\n[capture]\n";
    os << "table = [";
    bool first = true;
    for (const auto& [res, secs] : sc.capture_table.entries()) {
        if (!first) os << ", ";
        os << to_string(res) << ":" << fmt(secs);
        first = false;
    }
    os << "]\n";
    os << "min_interval_s = " << fmt(sc.capture_min_interval_s) << "\n";

    os << "\n[link]\n";
    os << "selected = " << to_string(sc.link) << "\n";
    for (LinkType lt : {LinkType::wifi, LinkType::ethernet}) {
        for (Direction dir : {Direction::download, Direction::upload}) {
            const LinkModel& m = sc.links.get(lt, dir);
            os << to_string(lt) << "." << to_string(dir)
               << ".rate_mbps = " << fmt(m.data_rate_bps / 1e6) << "\n";
            os << to_string(lt) << "." << to_string(dir)
               << ".energy_per_50mb_j = " << fmt(m.energy_per_50mb_j) << "\n";
        }
        os << to_string(lt)
           << ".idle_overhead_w = " << fmt(sc.links.idle_overhead_w(lt)) << "\n";
    }

    os << "\n[scenario]\n";
    os << "wake_period_s = " << fmt(sc.wake_period_s) << "\n";
    os << "watchdog_limit_s = " << fmt(sc.watchdog_limit_s) << "\n";
    os << "ambient_c = " << fmt(sc.ambient_c) << "\n";
    for (const auto& name : sc.attached) os << "attach = " << name << "\n";
    for (const Step& step : sc.steps) {
        if (const auto* task = std::get_if<TaskStep>(&step)) {
            os << "step = task:" << task->task << "\n";
        } else if (const auto* cap = std::get_if<CaptureStep>(&step)) {
            os << "step = capture:" << cap->n_images << ":" << to_string(cap->resolution) << "\n";
        } else if (const auto* tr = std::get_if<TransferStep>(&step)) {
            os << "step = transfer:" << tr->payload_bytes << ":" << to_string(tr->direction);
            if (tr->link) os << ":" << to_string(*tr->link);
            os << "\n";
        } else if (const auto* w = std::get_if<WaitStep>(&step)) {
            os << "step = wait:" << fmt(w->duration_s) << "\n";
        }
    }

    os << "\n[battery]\n";
    os << "capacity_mah = " << fmt(sf.battery.capacity_mah) << "\n";
    os << "nominal_voltage_v = " << fmt(sf.battery.nominal_voltage_v) << "\n";
    os << "initial_charge_fraction = " << fmt(sf.battery.initial_charge_fraction) << "\n";

    if (sf.harvest && !sf.harvest->empty()) {
        os << "\n[harvest]\n";
        for (const auto& p : sf.harvest->points())
            os << "point = " << fmt(p.start_hour) << ":" << fmt(p.watts) << "\n";
    }

    if (sf.segmentation) {
        const SegmentationConfig& seg = *sf.segmentation;
        os << "\n[segmentation]\n";
        os << "off_threshold_w = " << fmt(seg.off_threshold_w) << "\n";
        os << "idle_band_w = " << fmt(seg.idle_low_w) << ":" << fmt(seg.idle_high_w) << "\n";
        os << "min_segment_s = " << fmt(seg.min_segment_s) << "\n";
        os << "smoothing_window_s = " << fmt(seg.smoothing_window_s) << "\n";
        os << "shutdown_max_s = " << fmt(seg.shutdown_max_s) << "\n";
        os << "plateau_split_w = " << fmt(seg.plateau_split_w) << "\n";
    }
    return os.str();
}

} // namespace beepower
