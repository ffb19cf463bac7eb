#include "fwaudit/packet_region.hpp"

#include <stdexcept>

namespace fwaudit {

namespace {

bool ports_matter(std::uint32_t proto_lo, std::uint32_t proto_hi)
{
    return (proto_lo <= kProtoTcp && kProtoTcp <= proto_hi) ||
           (proto_lo <= kProtoUdp && kProtoUdp <= proto_hi);
}

bool overlap(std::uint32_t alo, std::uint32_t ahi, std::uint32_t blo, std::uint32_t bhi)
{
    return alo <= bhi && blo <= ahi;
}

// Subtract box b from box a: peel the parts of a outside b one axis at a
// time, shrinking the remainder to the overlap. Emits at most two slabs
// per axis; the fully-overlapped core is dropped.
void subtract_cell(const RegionCell& a, const RegionCell& b, std::vector<RegionCell>& out)
{
    if (!overlap(a.src.lo, a.src.hi, b.src.lo, b.src.hi) ||
        !overlap(a.dst.lo, a.dst.hi, b.dst.lo, b.dst.hi) ||
        !overlap(a.svc.proto_lo, a.svc.proto_hi, b.svc.proto_lo, b.svc.proto_hi)) {
        out.push_back(a);
        return;
    }
    // Port overlap only constrains TCP/UDP rows. If the shared protocol
    // rows are all port-insensitive, ports cannot separate the boxes.
    std::uint32_t shared_proto_lo = std::max(a.svc.proto_lo, b.svc.proto_lo);
    std::uint32_t shared_proto_hi = std::min(a.svc.proto_hi, b.svc.proto_hi);
    bool port_sensitive = ports_matter(shared_proto_lo, shared_proto_hi);
    if (port_sensitive && !overlap(a.svc.port_lo, a.svc.port_hi, b.svc.port_lo, b.svc.port_hi)) {
        out.push_back(a);
        return;
    }

    RegionCell rest = a;

    auto peel = [&out, &rest](std::uint32_t blo, std::uint32_t bhi, auto get_lo, auto get_hi,
                              auto set_lo, auto set_hi) {
        if (get_lo(rest) < blo) {
            RegionCell slab = rest;
            set_hi(slab, blo - 1);
            out.push_back(slab);
            set_lo(rest, blo);
        }
        if (get_hi(rest) > bhi) {
            RegionCell slab = rest;
            set_lo(slab, bhi + 1);
            out.push_back(slab);
            set_hi(rest, bhi);
        }
    };

    peel(b.src.lo, b.src.hi, [](const RegionCell& c) { return c.src.lo; },
         [](const RegionCell& c) { return c.src.hi; },
         [](RegionCell& c, std::uint32_t v) { c.src.lo = v; },
         [](RegionCell& c, std::uint32_t v) { c.src.hi = v; });
    peel(b.dst.lo, b.dst.hi, [](const RegionCell& c) { return c.dst.lo; },
         [](const RegionCell& c) { return c.dst.hi; },
         [](RegionCell& c, std::uint32_t v) { c.dst.lo = v; },
         [](RegionCell& c, std::uint32_t v) { c.dst.hi = v; });
    peel(b.svc.proto_lo, b.svc.proto_hi, [](const RegionCell& c) { return c.svc.proto_lo; },
         [](const RegionCell& c) { return c.svc.proto_hi; },
         [](RegionCell& c, std::uint32_t v) { c.svc.proto_lo = v; },
         [](RegionCell& c, std::uint32_t v) { c.svc.proto_hi = v; });

    // rest's protocol rows now all lie inside b's; only a port split remains.
    // Cells mixing TCP/UDP rows with port-insensitive rows always carry the
    // full port range (canonical service form), so the port peel either
    // does nothing or acts on a single-protocol TCP/UDP cell.
    if (ports_matter(rest.svc.proto_lo, rest.svc.proto_hi)) {
        peel(b.svc.port_lo, b.svc.port_hi, [](const RegionCell& c) { return c.svc.port_lo; },
             [](const RegionCell& c) { return c.svc.port_hi; },
             [](RegionCell& c, std::uint32_t v) { c.svc.port_lo = v; },
             [](RegionCell& c, std::uint32_t v) { c.svc.port_hi = v; });
    }
    // the remaining core lies entirely inside b: dropped
}

} // namespace

bool RegionCell::contains(const Packet& p) const
{
    if (!src.contains(p.src) || !dst.contains(p.dst))
        return false;
    if (p.proto < svc.proto_lo || p.proto > svc.proto_hi)
        return false;
    if (p.proto == kProtoTcp || p.proto == kProtoUdp)
        return p.port >= svc.port_lo && p.port <= svc.port_hi;
    return true;
}

PacketRegion PacketRegion::everything()
{
    return cross(AddressSet::full(kAddressMax), AddressSet::full(kAddressMax), ServiceSet::any());
}

PacketRegion PacketRegion::cross(const AddressSet& src, const AddressSet& dst,
                                 const ServiceSet& svc)
{
    PacketRegion r;
    for (const auto& s : src.intervals())
        for (const auto& d : dst.intervals())
            for (const auto& c : svc.cells())
                r.cells_.push_back({s, d, c});
    return r;
}

bool PacketRegion::contains(const Packet& p) const
{
    for (const auto& c : cells_)
        if (c.contains(p))
            return true;
    return false;
}

PacketRegion PacketRegion::unite(const PacketRegion& other) const
{
    PacketRegion r = *this;
    r.cells_.insert(r.cells_.end(), other.cells_.begin(), other.cells_.end());
    return r;
}

PacketRegion PacketRegion::intersect(const PacketRegion& other) const
{
    PacketRegion r;
    for (const auto& a : cells_) {
        for (const auto& b : other.cells_) {
            RegionCell c;
            c.src = {std::max(a.src.lo, b.src.lo), std::min(a.src.hi, b.src.hi)};
            c.dst = {std::max(a.dst.lo, b.dst.lo), std::min(a.dst.hi, b.dst.hi)};
            c.svc.proto_lo = std::max(a.svc.proto_lo, b.svc.proto_lo);
            c.svc.proto_hi = std::min(a.svc.proto_hi, b.svc.proto_hi);
            if (c.src.lo > c.src.hi || c.dst.lo > c.dst.hi || c.svc.proto_lo > c.svc.proto_hi)
                continue;
            if (ports_matter(c.svc.proto_lo, c.svc.proto_hi)) {
                c.svc.port_lo = std::max(a.svc.port_lo, b.svc.port_lo);
                c.svc.port_hi = std::min(a.svc.port_hi, b.svc.port_hi);
                if (c.svc.port_lo > c.svc.port_hi)
                    continue;
            } else {
                c.svc.port_lo = 0;
                c.svc.port_hi = kPortMax;
            }
            r.cells_.push_back(c);
        }
    }
    return r;
}

PacketRegion PacketRegion::subtract(const PacketRegion& other) const
{
    std::vector<RegionCell> pieces = cells_;
    for (const auto& b : other.cells_) {
        std::vector<RegionCell> next;
        next.reserve(pieces.size());
        for (const auto& a : pieces)
            subtract_cell(a, b, next);
        pieces = std::move(next);
        if (pieces.empty())
            break;
    }
    PacketRegion r;
    r.cells_ = std::move(pieces);
    return r;
}

bool PacketRegion::equals(const PacketRegion& other) const
{
    return subtract(other).empty() && other.subtract(*this).empty();
}

AddressSet PacketRegion::project_src() const
{
    AddressSet out;
    for (const auto& c : cells_)
        out.add(c.src.lo, c.src.hi);
    return out;
}

AddressSet PacketRegion::project_dst() const
{
    AddressSet out;
    for (const auto& c : cells_)
        out.add(c.dst.lo, c.dst.hi);
    return out;
}

PortSet PacketRegion::project_ports(std::uint8_t proto) const
{
    PortSet out;
    for (const auto& c : cells_)
        if (proto >= c.svc.proto_lo && proto <= c.svc.proto_hi)
            out.add(c.svc.port_lo, c.svc.port_hi);
    return out;
}

AddressSet project_addresses(const PacketRegion& r, ProjectionAxis axis)
{
    switch (axis) {
    case ProjectionAxis::Src:
        return r.project_src();
    case ProjectionAxis::Dst:
        return r.project_dst();
    case ProjectionAxis::TcpPorts:
        return r.project_ports(kProtoTcp);
    case ProjectionAxis::UdpPorts:
        return r.project_ports(kProtoUdp);
    }
    throw std::logic_error("bad projection axis");
}

} // namespace fwaudit
