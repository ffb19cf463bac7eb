#include "fwaudit/service_set.hpp"

#include <map>
#include <stdexcept>

namespace fwaudit {

namespace {

bool ports_matter(std::uint32_t proto)
{
    return proto == kProtoTcp || proto == kProtoUdp;
}

// Expand cells into per-protocol port sets. The protocol axis has only 256
// values, so exact row-wise computation is cheap at rule-set scale.
std::map<std::uint32_t, PortSet> to_rows(const std::vector<ServiceCell>& cells)
{
    std::map<std::uint32_t, PortSet> rows;
    for (const auto& c : cells) {
        for (std::uint32_t p = c.proto_lo; p <= c.proto_hi; ++p) {
            auto& set = rows[p];
            if (ports_matter(p))
                set.add(c.port_lo, c.port_hi);
            else
                set.add(0, kPortMax); // ports ignored off TCP/UDP
        }
    }
    return rows;
}

} // namespace

ServiceSet ServiceSet::from_rows(const std::vector<std::pair<std::uint32_t, PortSet>>& rows)
{
    // Merge consecutive protocol rows carrying identical port sets.
    ServiceSet out;
    std::size_t i = 0;
    while (i < rows.size()) {
        const auto& [proto, ports] = rows[i];
        if (ports.empty()) {
            ++i;
            continue;
        }
        std::uint32_t run_hi = proto;
        std::size_t j = i + 1;
        while (j < rows.size() && rows[j].first == run_hi + 1 && rows[j].second == ports) {
            run_hi = rows[j].first;
            ++j;
        }
        for (const auto& iv : ports.intervals())
            out.cells_.push_back({proto, run_hi, iv.lo, iv.hi});
        i = j;
    }
    return out;
}

ServiceSet ServiceSet::protocol(std::uint8_t proto)
{
    ServiceSet s;
    s.cells_.push_back({proto, proto, 0, kPortMax});
    return s;
}

ServiceSet ServiceSet::protocol_range(std::uint8_t lo, std::uint8_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("protocol range lo > hi");
    ServiceSet s;
    s.cells_.push_back({lo, hi, 0, kPortMax});
    return s;
}

ServiceSet ServiceSet::tcp_ports(std::uint16_t lo, std::uint16_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("port range lo > hi");
    ServiceSet s;
    s.cells_.push_back({kProtoTcp, kProtoTcp, lo, hi});
    return s;
}

ServiceSet ServiceSet::udp_ports(std::uint16_t lo, std::uint16_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("port range lo > hi");
    ServiceSet s;
    s.cells_.push_back({kProtoUdp, kProtoUdp, lo, hi});
    return s;
}

bool ServiceSet::contains(std::uint8_t proto, std::uint16_t port) const
{
    for (const auto& c : cells_) {
        if (proto < c.proto_lo || proto > c.proto_hi)
            continue;
        if (!ports_matter(proto) || (port >= c.port_lo && port <= c.port_hi))
            return true;
    }
    return false;
}

ServiceSet ServiceSet::unite(const ServiceSet& other) const
{
    auto rows = to_rows(cells_);
    for (auto& [proto, ports] : to_rows(other.cells_))
        rows[proto] = rows[proto].unite(ports);
    return from_rows({rows.begin(), rows.end()});
}

ServiceSet ServiceSet::intersect(const ServiceSet& other) const
{
    auto a = to_rows(cells_);
    auto b = to_rows(other.cells_);
    std::vector<std::pair<std::uint32_t, PortSet>> rows;
    for (const auto& [proto, ports] : a) {
        auto it = b.find(proto);
        if (it != b.end())
            rows.emplace_back(proto, ports.intersect(it->second));
    }
    return from_rows(rows);
}

ServiceSet ServiceSet::subtract(const ServiceSet& other) const
{
    auto a = to_rows(cells_);
    auto b = to_rows(other.cells_);
    std::vector<std::pair<std::uint32_t, PortSet>> rows;
    for (const auto& [proto, ports] : a) {
        auto it = b.find(proto);
        rows.emplace_back(proto, it == b.end() ? ports : ports.subtract(it->second));
    }
    return from_rows(rows);
}

PortSet ServiceSet::ports_on(std::uint8_t proto) const
{
    PortSet out;
    for (const auto& c : cells_)
        if (proto >= c.proto_lo && proto <= c.proto_hi)
            out.add(c.port_lo, c.port_hi);
    return out;
}

} // namespace fwaudit
