#pragma once

#include <cstdint>
#include <string>

#include "beepower/errors.hpp"

namespace beepower {

enum class LinkType { wifi, ethernet };
enum class Direction { download, upload };

std::string to_string(LinkType t);
std::string to_string(Direction d);
LinkType link_type_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);

/// One measured link/direction configuration: sustained data rate, energy per
/// 50 MB transfer (above idle), and the idle overhead of keeping the port up.
/// Rates and energies are site-specific; the defaults are the testbed values.
struct LinkModel {
    LinkType link = LinkType::wifi;
    Direction direction = Direction::download;
    double data_rate_bps = 0.0;
    double energy_per_50mb_j = 0.0;
    double idle_overhead_w = 0.0;

    void validate() const;
};

inline constexpr double kReferencePayloadBytes = 50e6;

/// Measured defaults: wifi 25.7/9.5 Mbit/s and 34.0/93.9 J, ethernet
/// 86.4/19.2 Mbit/s and 10.8/42.5 J (download/upload, 50 MB), ethernet idle
/// overhead 0.085 W.
LinkModel default_link(LinkType link, Direction direction);

/// payload_bytes * 8 / data_rate_bps; zero for an empty payload.
double transfer_time(const LinkModel& link, std::uint64_t payload_bytes);

/// Energy above idle, linear in payload: energy_per_50mb_j * payload / 50 MB.
double transfer_energy(const LinkModel& link, std::uint64_t payload_bytes);

/// How Ethernet's idle overhead is charged when solving for the break-even.
enum class BreakEvenAccounting {
    idle_time_only,            // overhead on idle time only (default)
    include_transfer_difference // overhead also on (eth transfer - wifi transfer) time
};

/// Session idle time T at which Wi-Fi's and Ethernet's total session energies
/// match; sessions idling longer than T favor Wi-Fi. Returns 0 when Wi-Fi is
/// already no worse at zero idle. Throws ModelError when the links' directions
/// differ or the Ethernet overhead is zero (no break-even exists).
double break_even_idle_time(const LinkModel& wifi, const LinkModel& eth,
                            std::uint64_t payload_bytes,
                            BreakEvenAccounting accounting = BreakEvenAccounting::idle_time_only);

} // namespace beepower
