#pragma once

#include <json.hpp>

#include "beepower/segmentation.hpp"
#include "beepower/sim.hpp"

namespace beepower {

// ordered_json keeps key order stable so repeated runs emit identical bytes.
using Json = nlohmann::ordered_json;

Json segments_to_json(const std::vector<Segment>& segments);
Json phase_report_to_json(const std::map<PhaseLabel, PhaseTotals>& report);
Json cycle_report_to_json(const CycleReport& report);
Json lifetime_report_to_json(const LifetimeReport& report);
Json sweep_to_json(const std::string& parameter, const std::vector<SweepPoint>& points);

} // namespace beepower
