#include "fwaudit/registry.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fwaudit/diagnostics.hpp"

namespace fwaudit {

namespace {

std::uint32_t parse_number(std::string_view text, std::uint32_t max, const char* what)
{
    std::uint32_t value = 0;
    auto [next, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || next != text.data() + text.size() || value > max)
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
    return value;
}

std::pair<std::uint16_t, std::uint16_t> parse_port_range(std::string_view text)
{
    auto dash = text.find('-');
    if (dash == std::string_view::npos) {
        auto p = std::uint16_t(parse_number(text, kPortMax, "port"));
        return {p, p};
    }
    auto lo = std::uint16_t(parse_number(text.substr(0, dash), kPortMax, "port"));
    auto hi = std::uint16_t(parse_number(text.substr(dash + 1), kPortMax, "port"));
    if (lo > hi)
        throw std::invalid_argument("port range lo > hi in '" + std::string(text) + "'");
    return {lo, hi};
}

std::vector<std::string_view> split_commas(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

ServiceSet parse_service_item(std::string_view item, const ServiceRegistry& registry)
{
    if (item.empty())
        throw std::invalid_argument("empty service spec item");
    if (item == "any")
        return ServiceSet::any();
    if (item == "tcp")
        return ServiceSet::all_tcp();
    if (item == "udp")
        return ServiceSet::all_udp();
    if (item == "icmp")
        return ServiceSet::icmp();

    auto slash = item.find('/');
    if (slash != std::string_view::npos) {
        auto head = item.substr(0, slash);
        auto tail = item.substr(slash + 1);
        if (head == "tcp") {
            auto [lo, hi] = parse_port_range(tail);
            return ServiceSet::tcp_ports(lo, hi);
        }
        if (head == "udp") {
            auto [lo, hi] = parse_port_range(tail);
            return ServiceSet::udp_ports(lo, hi);
        }
        if (head == "proto")
            return ServiceSet::protocol(std::uint8_t(parse_number(tail, kProtoMax, "protocol")));
        throw std::invalid_argument("bad service spec '" + std::string(item) + "'");
    }

    if (const ServiceSet* named = registry.find(item))
        return *named;
    throw std::invalid_argument("unknown service '" + std::string(item) + "'");
}

ServiceSet parse_service_spec(std::string_view spec, const ServiceRegistry& registry)
{
    ServiceSet out;
    for (auto item : split_commas(spec))
        out = out.unite(parse_service_item(item, registry));
    return out;
}

const ServiceSet* ServiceRegistry::find(std::string_view name) const
{
    auto it = services_.find(name);
    return it == services_.end() ? nullptr : &it->second;
}

void ServiceRegistry::set(std::string name, ServiceSet svc)
{
    services_[std::move(name)] = std::move(svc);
}

ServiceRegistry ServiceRegistry::defaults()
{
    ServiceRegistry r;
    auto tcp = [](std::uint16_t lo, std::uint16_t hi = 0) {
        return ServiceSet::tcp_ports(lo, hi ? hi : lo);
    };
    auto udp = [](std::uint16_t lo, std::uint16_t hi = 0) {
        return ServiceSet::udp_ports(lo, hi ? hi : lo);
    };

    r.set("telnet", tcp(23));
    r.set("rpc", tcp(111).unite(udp(111)));
    r.set("snmp", udp(161, 162));
    r.set("microsoft", tcp(135).unite(tcp(137, 139)).unite(tcp(445)).unite(udp(135)).unite(
                           udp(137, 139)).unite(udp(445)));
    r.set("http", tcp(80));
    r.set("smtp", tcp(25));
    r.set("dns-udp", udp(53));
    r.set("dns-tcp", tcp(53));
    r.set("ftp", tcp(21));
    r.set("x11", tcp(6000, 6010));
    r.set("tftp", udp(69));
    r.set("mssql", tcp(1433, 1434).unite(udp(1434)));
    r.set("p2p", tcp(1214).unite(tcp(4661, 4662)).unite(tcp(6346, 6347)).unite(tcp(8888)).unite(
                     udp(4665)).unite(udp(6346, 6347)));
    r.set("im", tcp(1863).unite(tcp(5050)).unite(tcp(5190)));
    r.set("databases", tcp(1521).unite(tcp(3306)).unite(tcp(5432)));
    r.set("version-control", tcp(2401).unite(tcp(3690)));
    r.set("pop3", tcp(110));
    r.set("irc", tcp(6660, 6669).unite(tcp(6697)).unite(tcp(7000)));
    r.set("icmp", ServiceSet::icmp());
    return r;
}

void ServiceRegistry::apply_overrides(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword) || keyword[0] == '#')
            continue;
        if (keyword != "service")
            throw ParseError({lineno, 1}, "expected 'service' directive, got '" + keyword + "'");
        std::string name, spec;
        if (!(ls >> name >> spec))
            throw ParseError({lineno, 1}, "expected 'service <name> <spec>'");
        std::string extra;
        if (ls >> extra)
            throw ParseError({lineno, 1}, "trailing text after service spec");
        try {
            set(name, parse_service_spec(spec, *this));
        } catch (const std::invalid_argument& e) {
            throw ParseError({lineno, 1}, e.what());
        }
    }
}

} // namespace fwaudit
