#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "beepower/sim.hpp"

namespace beepower {

/// Everything a scenario file can carry. Battery and harvest have defaults;
/// the segmentation block is only needed by trace profiling.
struct ScenarioFile {
    Scenario scenario;
    Battery battery;
    std::optional<HarvestProfile> harvest;
    std::optional<SegmentationConfig> segmentation;
};

/// Parse the sectioned key-value scenario format ([device], [capture], [link],
/// [scenario], [battery], [harvest], [segmentation]; `#` comments; repeated
/// `task = name:duration:energy`, `step = ...`, `peripheral = ...` entries keep
/// file order). Throws ParseError naming the file, line and offending key.
ScenarioFile load_scenario(std::istream& in, const std::string& source_name = "<stream>");
ScenarioFile load_scenario_file(const std::string& path);

/// The deployed configuration as a built-in: calibrated device model, hourly
/// wake period, 5-minute watchdog, the measured step list, 33 Ah battery.
ScenarioFile makers_beehive_scenario();

/// Render a ScenarioFile in the config format (used to ship the bundled file).
std::string scenario_to_text(const ScenarioFile& sf);

} // namespace beepower
