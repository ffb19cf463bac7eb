#include <doctest.h>

#include <random>

#include "fwaudit/registry.hpp"
#include "fwaudit/service_set.hpp"

using namespace fwaudit;

TEST_SUITE_BEGIN("netmodel");

TEST_CASE("ANY spans every protocol and strictly contains the classes")
{
    auto any = ServiceSet::any();
    CHECK(any.contains(kProtoTcp, 80));
    CHECK(any.contains(kProtoUdp, 53));
    CHECK(any.contains(kProtoIcmp, 0));
    CHECK(any.contains(47, 0));
    CHECK(any.covers(ServiceSet::all_tcp()));
    CHECK(any.covers(ServiceSet::all_udp()));
    CHECK_FALSE(ServiceSet::all_tcp().covers(any));
    CHECK_FALSE(ServiceSet::all_tcp().covers(ServiceSet::all_udp()));
}

TEST_CASE("ports are ignored off TCP and UDP")
{
    auto icmp = ServiceSet::icmp();
    CHECK(icmp.contains(kProtoIcmp, 0));
    CHECK(icmp.contains(kProtoIcmp, 40000));
    CHECK_FALSE(icmp.contains(kProtoTcp, 0));

    auto gre = ServiceSet::protocol(47);
    CHECK(gre.contains(47, 1234));
    CHECK(gre.ports_on(47) == PortSet::full(kPortMax));
}

TEST_CASE("union of every protocol equals ANY (canonical equality)")
{
    ServiceSet all;
    for (int p = 0; p <= 255; ++p)
        all = all.unite(ServiceSet::protocol(std::uint8_t(p)));
    CHECK(all == ServiceSet::any());
}

TEST_CASE("subtracting a port splits only the port-carrying row")
{
    auto rest = ServiceSet::any().subtract(ServiceSet::tcp_ports(23, 23));
    CHECK_FALSE(rest.contains(kProtoTcp, 23));
    CHECK(rest.contains(kProtoTcp, 22));
    CHECK(rest.contains(kProtoTcp, 24));
    CHECK(rest.contains(kProtoUdp, 23));
    CHECK(rest.contains(kProtoIcmp, 0));
    CHECK(rest.unite(ServiceSet::tcp_ports(23, 23)) == ServiceSet::any());
}

TEST_CASE("service algebra matches membership oracle on a small grid")
{
    std::mt19937_64 rng(13);
    auto random_svc = [&rng]() {
        switch (rng() % 6) {
        case 0:
            return ServiceSet::any();
        case 1:
            return ServiceSet::all_tcp();
        case 2:
            return ServiceSet::icmp();
        case 3: {
            auto lo = std::uint16_t(rng() % 100);
            return ServiceSet::tcp_ports(lo, std::uint16_t(lo + rng() % 100));
        }
        case 4: {
            auto lo = std::uint16_t(rng() % 100);
            return ServiceSet::udp_ports(lo, std::uint16_t(lo + rng() % 100));
        }
        default:
            return ServiceSet::protocol(std::uint8_t(rng() % 256));
        }
    };
    const std::uint8_t protos[] = {kProtoIcmp, kProtoTcp, kProtoUdp, 0, 47, 255};
    const std::uint16_t ports[] = {0, 1, 22, 23, 99, 100, 150, 199, 65535};

    for (int trial = 0; trial < 300; ++trial) {
        ServiceSet a = random_svc();
        ServiceSet b = random_svc();
        ServiceSet u = a.unite(b);
        ServiceSet i = a.intersect(b);
        ServiceSet s = a.subtract(b);
        for (auto p : protos) {
            for (auto port : ports) {
                bool in_a = a.contains(p, port), in_b = b.contains(p, port);
                CHECK(u.contains(p, port) == (in_a || in_b));
                CHECK(i.contains(p, port) == (in_a && in_b));
                CHECK(s.contains(p, port) == (in_a && !in_b));
            }
        }
        CHECK(a.unite(a) == a); // canonicalization idempotent
    }
}

TEST_CASE("service spec parsing")
{
    auto reg = ServiceRegistry::defaults();
    CHECK(parse_service_spec("any", reg) == ServiceSet::any());
    CHECK(parse_service_spec("tcp", reg) == ServiceSet::all_tcp());
    CHECK(parse_service_spec("tcp/23", reg) == ServiceSet::tcp_ports(23, 23));
    CHECK(parse_service_spec("udp/53", reg) == ServiceSet::udp_ports(53, 53));
    CHECK(parse_service_spec("tcp/6000-6010", reg) == ServiceSet::tcp_ports(6000, 6010));
    CHECK(parse_service_spec("proto/47", reg) == ServiceSet::protocol(47));
    CHECK(parse_service_spec("telnet", reg) == ServiceSet::tcp_ports(23, 23));
    CHECK(parse_service_spec("tcp/80,tcp/443", reg) ==
          ServiceSet::tcp_ports(80, 80).unite(ServiceSet::tcp_ports(443, 443)));
    CHECK_THROWS(parse_service_spec("nosuch", reg));
    CHECK_THROWS(parse_service_spec("tcp/70000", reg));
    CHECK_THROWS(parse_service_spec("tcp/90-80", reg));
}

TEST_CASE("registry defaults cover every named detector service")
{
    auto reg = ServiceRegistry::defaults();
    for (const char* name :
         {"telnet", "rpc", "snmp", "microsoft", "http", "smtp", "dns-udp", "dns-tcp", "ftp",
          "x11", "tftp", "mssql", "p2p", "im", "databases", "version-control", "pop3", "irc",
          "icmp"}) {
        const ServiceSet* svc = reg.find(name);
        REQUIRE_MESSAGE(svc != nullptr, name);
        CHECK_FALSE(svc->empty());
    }
    CHECK(reg.find("microsoft")->contains(kProtoTcp, 445));
    CHECK(reg.find("microsoft")->contains(kProtoUdp, 137));
    CHECK(reg.find("rpc")->contains(kProtoUdp, 111));
    CHECK(reg.find("x11")->contains(kProtoTcp, 6010));
    CHECK_FALSE(reg.find("http")->contains(kProtoTcp, 443)); // https excluded by default
}

TEST_CASE("registry overrides replace entries")
{
    auto reg = ServiceRegistry::defaults();
    reg.apply_overrides("service http tcp/80,tcp/443\nservice custom udp/9999\n");
    CHECK(reg.find("http")->contains(kProtoTcp, 443));
    CHECK(reg.find("custom")->contains(kProtoUdp, 9999));
    CHECK_THROWS(reg.apply_overrides("service broken tcp/x\n"));
    CHECK_THROWS(reg.apply_overrides("nonsense line\n"));
}

TEST_SUITE_END();
