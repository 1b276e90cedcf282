#include "beepower/network.hpp"

#include <algorithm>

namespace beepower {

std::string to_string(LinkType t) {
    return t == LinkType::wifi ? "wifi" : "ethernet";
}

std::string to_string(Direction d) {
    return d == Direction::download ? "download" : "upload";
}

LinkType link_type_from_string(const std::string& s) {
    if (s == "wifi") return LinkType::wifi;
    if (s == "ethernet") return LinkType::ethernet;
    throw ModelError("unknown link type: " + s);
}

Direction direction_from_string(const std::string& s) {
    if (s == "download") return Direction::download;
    if (s == "upload") return Direction::upload;
    throw ModelError("unknown direction: " + s);
}

void LinkModel::validate() const {
    if (!(data_rate_bps > 0.0)) throw ModelError("data_rate_bps must be positive");
    if (energy_per_50mb_j < 0.0) throw ModelError("transfer energy must be non-negative");
    if (idle_overhead_w < 0.0) throw ModelError("idle overhead must be non-negative");
}

LinkModel default_link(LinkType link, Direction direction) {
    LinkModel m;
    m.link = link;
    m.direction = direction;
    if (link == LinkType::wifi) {
        m.idle_overhead_w = 0.0;
        if (direction == Direction::download) {
            m.data_rate_bps = 25.7e6;
            m.energy_per_50mb_j = 34.0;
        } else {
            m.data_rate_bps = 9.5e6;
            m.energy_per_50mb_j = 93.9;
        }
    } else {
        m.idle_overhead_w = 0.085;
        if (direction == Direction::download) {
            m.data_rate_bps = 86.4e6;
            m.energy_per_50mb_j = 10.8;
        } else {
            m.data_rate_bps = 19.2e6;
            m.energy_per_50mb_j = 42.5;
        }
    }
    return m;
}

double transfer_time(const LinkModel& link, std::uint64_t payload_bytes) {
    link.validate();
    if (payload_bytes == 0) return 0.0;
    return static_cast<double>(payload_bytes) * 8.0 / link.data_rate_bps;
}

double transfer_energy(const LinkModel& link, std::uint64_t payload_bytes) {
    link.validate();
    if (payload_bytes == 0) return 0.0;
    return link.energy_per_50mb_j * static_cast<double>(payload_bytes) / kReferencePayloadBytes;
}

double break_even_idle_time(const LinkModel& wifi, const LinkModel& eth,
                            std::uint64_t payload_bytes, BreakEvenAccounting accounting) {
    if (wifi.direction != eth.direction)
        throw ModelError("break-even requires both links to share a direction");
    if (!(eth.idle_overhead_w > 0.0))
        throw ModelError("no break-even exists: ethernet idle overhead is zero");

    const double wifi_j = transfer_energy(wifi, payload_bytes);
    const double eth_j = transfer_energy(eth, payload_bytes);
    double t = (wifi_j - eth_j) / eth.idle_overhead_w;
    if (accounting == BreakEvenAccounting::include_transfer_difference)
        t -= transfer_time(eth, payload_bytes) - transfer_time(wifi, payload_bytes);
    return std::max(t, 0.0);
}

} // namespace beepower
