#ifndef FWAUDIT_PACKET_REGION_HPP
#define FWAUDIT_PACKET_REGION_HPP

#include <cstdint>
#include <vector>

#include "fwaudit/interval_set.hpp"
#include "fwaudit/service_set.hpp"

namespace fwaudit {

// A packet for classification purposes: source, destination, protocol and
// destination port. The port is ignored off TCP/UDP.
struct Packet {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::uint8_t proto = 0;
    std::uint16_t port = 0;
};

// One 4-dimensional box: src-interval x dst-interval x service cell.
struct RegionCell {
    Interval src;
    Interval dst;
    ServiceCell svc;

    bool contains(const Packet& p) const;
    bool operator==(const RegionCell&) const = default;
};

enum class ProjectionAxis { Src, Dst, TcpPorts, UdpPorts };

// A union of packet boxes. Cells may overlap; equality is by membership,
// not representation. Subtraction splits cells along each axis, trading
// compactness for exactness -- fine at rule-set scale.
class PacketRegion {
public:
    PacketRegion() = default;

    static PacketRegion everything();
    static PacketRegion cross(const AddressSet& src, const AddressSet& dst,
                              const ServiceSet& svc);

    bool empty() const { return cells_.empty(); }
    bool contains(const Packet& p) const;
    const std::vector<RegionCell>& cells() const { return cells_; }

    PacketRegion unite(const PacketRegion& other) const;
    PacketRegion intersect(const PacketRegion& other) const;
    PacketRegion subtract(const PacketRegion& other) const;
    bool equals(const PacketRegion& other) const;

    AddressSet project_src() const;
    AddressSet project_dst() const;
    PortSet project_ports(std::uint8_t proto) const;

private:
    std::vector<RegionCell> cells_;
};

AddressSet project_addresses(const PacketRegion& r, ProjectionAxis axis);

} // namespace fwaudit

#endif
