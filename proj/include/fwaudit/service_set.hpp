#ifndef FWAUDIT_SERVICE_SET_HPP
#define FWAUDIT_SERVICE_SET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fwaudit/interval_set.hpp"

namespace fwaudit {

inline constexpr std::uint8_t kProtoIcmp = 1;
inline constexpr std::uint8_t kProtoTcp = 6;
inline constexpr std::uint8_t kProtoUdp = 17;
inline constexpr std::uint32_t kProtoMax = 255;

// One rectangle of the (protocol, destination-port) grid. Ports are only
// meaningful for TCP and UDP; canonical cells carry the full port range on
// every other protocol row.
struct ServiceCell {
    std::uint32_t proto_lo = 0;
    std::uint32_t proto_hi = 0;
    std::uint32_t port_lo = 0;
    std::uint32_t port_hi = 0;

    bool operator==(const ServiceCell&) const = default;
};

// A set of (protocol, port) pairs in canonical form: rows sorted by
// protocol, consecutive rows with identical port sets merged, per-row port
// intervals disjoint and merged. The distinguished ANY value is the full
// grid, so "Any service" strictly contains "all TCP" and "all UDP".
class ServiceSet {
public:
    ServiceSet() = default;

    static ServiceSet any() { return protocol_range(0, kProtoMax); }
    static ServiceSet all_tcp() { return tcp_ports(0, kPortMax); }
    static ServiceSet all_udp() { return udp_ports(0, kPortMax); }
    static ServiceSet icmp() { return protocol(kProtoIcmp); }
    static ServiceSet protocol(std::uint8_t proto);
    static ServiceSet protocol_range(std::uint8_t lo, std::uint8_t hi);
    static ServiceSet tcp_ports(std::uint16_t lo, std::uint16_t hi);
    static ServiceSet udp_ports(std::uint16_t lo, std::uint16_t hi);

    bool empty() const { return cells_.empty(); }
    bool contains(std::uint8_t proto, std::uint16_t port) const;
    const std::vector<ServiceCell>& cells() const { return cells_; }

    ServiceSet unite(const ServiceSet& other) const;
    ServiceSet intersect(const ServiceSet& other) const;
    ServiceSet subtract(const ServiceSet& other) const;
    bool covers(const ServiceSet& other) const { return other.subtract(*this).empty(); }

    // Ports reachable on the given protocol (the tcp_ports/udp_ports axes).
    PortSet ports_on(std::uint8_t proto) const;

    bool operator==(const ServiceSet&) const = default;

private:
    static ServiceSet from_rows(const std::vector<std::pair<std::uint32_t, PortSet>>& rows);

    std::vector<ServiceCell> cells_;
};

} // namespace fwaudit

#endif
