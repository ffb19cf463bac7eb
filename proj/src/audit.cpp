#include "fwaudit/audit.hpp"

#include <algorithm>
#include <stdexcept>

namespace fwaudit {

namespace {

constexpr ErrorCategory IN = ErrorCategory::Inbound;
constexpr ErrorCategory OUT = ErrorCategory::Outbound;
constexpr ErrorCategory INT = ErrorCategory::Internal;
constexpr ErrorCategory RISK = ErrorCategory::Risky;

constexpr ErrorKind CLASS = ErrorKind::ServiceClass;
constexpr ErrorKind NAMED = ErrorKind::NamedService;
constexpr ErrorKind THRESH = ErrorKind::Threshold;
constexpr ErrorKind SYN = ErrorKind::Syntactic;

const std::array<ErrorCodeInfo, kErrorCodeCount> kCatalogue = {{
    {"i01", IN, CLASS, "Any service allowed inbound", "", ServiceClass::Any},
    {"i02", IN, CLASS, "all TCP ports allowed inbound", "", ServiceClass::AllTcp},
    {"i03", IN, CLASS, "all UDP ports allowed inbound", "", ServiceClass::AllUdp},
    {"i04", IN, NAMED, "Telnet allowed inbound", "telnet"},
    {"i05", IN, NAMED, "RPC portmapper allowed inbound", "rpc"},
    {"i06", IN, NAMED, "SNMP allowed inbound", "snmp"},
    {"i07", IN, NAMED, "Microsoft/NetBIOS services allowed inbound", "microsoft"},
    {"i08", IN, THRESH, "HTTP reaches over threshold inbound addresses", "http",
     ServiceClass::Any, ThresholdAxis::DstAddresses},
    {"i09", IN, THRESH, "SMTP reaches over threshold inbound addresses", "smtp",
     ServiceClass::Any, ThresholdAxis::DstAddresses},
    {"i10", IN, THRESH, "DNS over UDP reaches over threshold inbound addresses", "dns-udp",
     ServiceClass::Any, ThresholdAxis::DstAddresses},
    {"i11", IN, THRESH, "FTP reaches over threshold inbound addresses", "ftp",
     ServiceClass::Any, ThresholdAxis::DstAddresses},
    {"i12", IN, THRESH, "ICMP reaches over threshold inbound addresses", "icmp",
     ServiceClass::Any, ThresholdAxis::DstAddresses},
    {"i13", IN, NAMED, "X11 allowed inbound", "x11"},
    {"i14", IN, THRESH, "over threshold TCP ports reachable inbound", "",
     ServiceClass::AllTcp, ThresholdAxis::TcpPorts},
    {"i15", IN, NAMED, "TFTP allowed inbound", "tftp"},
    {"i16", IN, THRESH, "DNS over TCP reaches over threshold inbound addresses", "dns-tcp",
     ServiceClass::Any, ThresholdAxis::DstAddresses},
    {"i17", IN, NAMED, "MSSQL allowed inbound", "mssql"},
    {"i18", IN, NAMED, "peer-to-peer services allowed inbound", "p2p"},
    {"i19", IN, NAMED, "instant messaging allowed inbound", "im"},
    {"i20", IN, NAMED, "database protocols allowed inbound", "databases"},
    {"i21", IN, NAMED, "version control services allowed inbound", "version-control"},
    {"o01", OUT, NAMED, "POP3 allowed outbound", "pop3"},
    {"o02", OUT, THRESH, "SMTP allowed outbound from over threshold addresses", "smtp",
     ServiceClass::Any, ThresholdAxis::SrcAddresses},
    {"o03", OUT, NAMED, "IRC allowed outbound", "irc"},
    {"o04", OUT, CLASS, "Any service allowed outbound", "", ServiceClass::Any},
    {"o05", OUT, CLASS, "all TCP ports allowed outbound", "", ServiceClass::AllTcp},
    {"o06", OUT, CLASS, "all UDP ports allowed outbound", "", ServiceClass::AllUdp},
    {"o07", OUT, THRESH, "over threshold TCP ports reachable outbound", "",
     ServiceClass::AllTcp, ThresholdAxis::TcpPorts},
    {"o08", OUT, NAMED, "peer-to-peer services allowed outbound", "p2p"},
    {"o09", OUT, NAMED, "instant messaging allowed outbound", "im"},
    {"d01", INT, CLASS, "Any service allowed between internal zones", "", ServiceClass::Any},
    {"d02", INT, CLASS, "all TCP ports allowed between internal zones", "",
     ServiceClass::AllTcp},
    {"d03", INT, CLASS, "all UDP ports allowed between internal zones", "",
     ServiceClass::AllUdp},
    {"d04", INT, NAMED, "Microsoft/NetBIOS services allowed between internal zones",
     "microsoft"},
    {"d05", INT, NAMED, "X11 allowed between internal zones", "x11"},
    {"r01", RISK, SYN, "to-any allow-any rule present", ""},
}};

const ServiceSet& class_service(ServiceClass c)
{
    static const ServiceSet any = ServiceSet::any();
    static const ServiceSet tcp = ServiceSet::all_tcp();
    static const ServiceSet udp = ServiceSet::all_udp();
    switch (c) {
    case ServiceClass::Any:
        return any;
    case ServiceClass::AllTcp:
        return tcp;
    case ServiceClass::AllUdp:
        return udp;
    }
    throw std::logic_error("bad service class");
}

const ServiceSet& registry_service(const ServiceRegistry& registry, std::string_view name)
{
    const ServiceSet* svc = registry.find(name);
    if (!svc)
        throw AnalysisError("service registry is missing entry '" + std::string(name) + "'");
    return *svc;
}

const PacketRegion& direction_of(const DirectionRegions& dirs, ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::Inbound:
        return dirs.inbound;
    case ErrorCategory::Outbound:
        return dirs.outbound;
    case ErrorCategory::Internal:
        return dirs.internal;
    case ErrorCategory::Risky:
        break;
    }
    throw std::logic_error("risky codes have no direction region");
}

} // namespace

const std::array<ErrorCodeInfo, kErrorCodeCount>& error_catalogue()
{
    return kCatalogue;
}

int error_code_index(std::string_view code)
{
    for (int i = 0; i < kErrorCodeCount; ++i)
        if (kCatalogue[i].code == code)
            return i;
    return -1;
}

std::string_view error_category_name(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::Inbound:
        return "inbound";
    case ErrorCategory::Outbound:
        return "outbound";
    case ErrorCategory::Internal:
        return "internal";
    case ErrorCategory::Risky:
        return "risky";
    }
    return "";
}

ContainmentDag::ContainmentDag(const ServiceRegistry& registry)
{
    // direct parents first
    std::array<CodeSet, kErrorCodeCount> parents;

    auto svc_has_proto = [&](int code, std::uint8_t proto) {
        const auto& info = kCatalogue[code];
        if (info.kind == ErrorKind::Threshold && info.service.empty())
            return proto == kProtoTcp; // the TCP-port-count codes (i14/o07)
        return !registry_service(registry, info.service).ports_on(proto).empty();
    };

    for (int c = 0; c < kErrorCodeCount; ++c) {
        const auto& info = kCatalogue[c];
        if (info.kind == ErrorKind::Syntactic)
            continue; // r01 is parentless
        for (int p = 0; p < kErrorCodeCount; ++p) {
            if (p == c || kCatalogue[p].category != info.category)
                continue;
            const auto& parent = kCatalogue[p];
            if (parent.kind == ErrorKind::ServiceClass) {
                if (parent.service_class == ServiceClass::Any) {
                    parents[c].set(p); // Any contains every code of its category
                } else if (info.kind != ErrorKind::ServiceClass) {
                    std::uint8_t proto = parent.service_class == ServiceClass::AllTcp
                                             ? kProtoTcp
                                             : kProtoUdp;
                    if (svc_has_proto(c, proto))
                        parents[c].set(p);
                }
            } else if (parent.kind == ErrorKind::Threshold && parent.service.empty()) {
                // TCP port-count codes contain the named TCP services
                if (info.kind == ErrorKind::NamedService && svc_has_proto(c, kProtoTcp))
                    parents[c].set(p);
            }
        }
    }

    // transitive closure (the dag is two levels deep, but closing it keeps
    // the invariant obvious)
    for (int c = 0; c < kErrorCodeCount; ++c) {
        CodeSet closed = parents[c];
        bool grew = true;
        while (grew) {
            grew = false;
            for (int p = 0; p < kErrorCodeCount; ++p) {
                if (!closed.test(p))
                    continue;
                CodeSet next = closed | parents[p];
                if (next != closed) {
                    closed = next;
                    grew = true;
                }
            }
        }
        ancestors_[c] = closed;
    }
}

DirectionRegions direction_regions(const FirewallConfig& config)
{
    bool have_external = false;
    std::map<std::string, AddressSet> zones;
    for (const auto& ifc : config.interfaces) {
        if (ifc.zone == ZoneKind::External)
            have_external = true;
        else if (ifc.zone == ZoneKind::Internal)
            zones[ifc.zone_id] = zones[ifc.zone_id].unite(ifc.attached);
        else
            throw AnalysisError("interface '" + ifc.name + "' has no zone assignment");
    }
    if (!have_external || zones.empty())
        throw AnalysisError("direction analysis needs at least one external and one internal "
                            "interface");

    AddressSet internal_all;
    for (const auto& [id, addrs] : zones)
        internal_all = internal_all.unite(addrs);
    AddressSet external = internal_all.complement(kAddressMax);

    DirectionRegions dirs;
    dirs.inbound = PacketRegion::cross(external, internal_all, ServiceSet::any());
    dirs.outbound = PacketRegion::cross(internal_all, external, ServiceSet::any());
    for (const auto& [aid, a] : zones)
        for (const auto& [bid, b] : zones)
            if (aid != bid)
                dirs.internal =
                    dirs.internal.unite(PacketRegion::cross(a, b, ServiceSet::any()));
    return dirs;
}

std::vector<CodeSet> rule_triggers(const FirewallConfig& config,
                                   const std::vector<PacketRegion>& effective,
                                   const DirectionRegions& dirs,
                                   const ServiceRegistry& registry)
{
    const AddressSet full_space = AddressSet::full(kAddressMax);
    std::vector<CodeSet> triggers(config.rules.size());

    std::array<PacketRegion, kErrorCodeCount> named_regions;
    for (int c = 0; c < kErrorCodeCount; ++c)
        if (kCatalogue[c].kind == ErrorKind::NamedService)
            named_regions[c] = PacketRegion::cross(
                full_space, full_space, registry_service(registry, kCatalogue[c].service));

    for (std::size_t i = 0; i < config.rules.size(); ++i) {
        const Rule& rule = config.rules[i];
        if (rule.kind != RuleKind::Filter || !rule.enabled ||
            rule.action != RuleAction::Permit)
            continue;

        // effective remainder per direction, shared across the codes
        PacketRegion in_part = effective[i].intersect(dirs.inbound);
        PacketRegion out_part = effective[i].intersect(dirs.outbound);
        PacketRegion int_part = effective[i].intersect(dirs.internal);
        auto direction_part = [&](ErrorCategory cat) -> const PacketRegion& {
            if (cat == ErrorCategory::Inbound)
                return in_part;
            if (cat == ErrorCategory::Outbound)
                return out_part;
            return int_part;
        };

        for (int c = 0; c < kErrorCodeCount; ++c) {
            const auto& info = kCatalogue[c];
            switch (info.kind) {
            case ErrorKind::ServiceClass:
                // keyed on the rule's service spec, not per-packet reach
                if (rule.svc.covers(class_service(info.service_class)) &&
                    !direction_part(info.category).empty())
                    triggers[i].set(c);
                break;
            case ErrorKind::NamedService:
                if (!direction_part(info.category).intersect(named_regions[c]).empty())
                    triggers[i].set(c);
                break;
            case ErrorKind::Threshold:
                break; // aggregate, handled by threshold_eval
            case ErrorKind::Syntactic:
                // "to Any allow Any" is counted even when fully shadowed
                if (rule.dst == full_space && rule.svc == ServiceSet::any())
                    triggers[i].set(c);
                break;
            }
        }
    }
    return triggers;
}

namespace {

struct ThresholdResult {
    std::uint64_t count = 0;
    std::vector<EvidenceRule> contributors;
};

ThresholdResult threshold_eval_one(const FirewallConfig& config,
                                   const std::vector<PacketRegion>& effective,
                                   const std::vector<CodeSet>& triggers,
                                   const DirectionRegions& dirs,
                                   const ServiceRegistry& registry, const ContainmentDag& dag,
                                   int code)
{
    const auto& info = kCatalogue[code];
    const AddressSet full_space = AddressSet::full(kAddressMax);
    const ServiceSet& svc = info.service.empty() ? class_service(info.service_class)
                                                 : registry_service(registry, info.service);
    PacketRegion svc_region = PacketRegion::cross(full_space, full_space, svc);
    const PacketRegion& dir = direction_of(dirs, info.category);

    // Aggregate over permit rules that do not trigger an ancestor of this
    // code; a rule already counted as a broader mistake must not also feed
    // the reach count.
    ThresholdResult result;
    PacketRegion aggregate;
    for (std::size_t i = 0; i < config.rules.size(); ++i) {
        const Rule& rule = config.rules[i];
        if (rule.kind != RuleKind::Filter || !rule.enabled ||
            rule.action != RuleAction::Permit)
            continue;
        if ((triggers[i] & dag.ancestors(code)).any())
            continue;
        PacketRegion part = effective[i].intersect(dir).intersect(svc_region);
        if (part.empty())
            continue;
        aggregate = aggregate.unite(part);
        result.contributors.push_back({rule.index, rule.loc.line});
    }

    switch (info.axis) {
    case ThresholdAxis::DstAddresses:
        result.count = aggregate.project_dst().cardinality();
        break;
    case ThresholdAxis::SrcAddresses:
        result.count = aggregate.project_src().cardinality();
        break;
    case ThresholdAxis::TcpPorts:
        result.count = aggregate.project_ports(kProtoTcp).cardinality();
        break;
    }
    return result;
}

} // namespace

int AuditReport::error_count() const
{
    return int(std::count(indicators.begin(), indicators.end(), true));
}

std::array<std::uint64_t, kErrorCodeCount> threshold_counts(const FirewallConfig& config,
                                                            const ServiceRegistry& registry)
{
    EffectiveRegions regions = effective_regions(config);
    DirectionRegions dirs = direction_regions(config);
    ContainmentDag dag(registry);
    std::vector<CodeSet> triggers = rule_triggers(config, regions.per_rule, dirs, registry);

    std::array<std::uint64_t, kErrorCodeCount> counts{};
    for (int c = 0; c < kErrorCodeCount; ++c)
        if (kCatalogue[c].kind == ErrorKind::Threshold)
            counts[c] = threshold_eval_one(config, regions.per_rule, triggers, dirs, registry,
                                           dag, c)
                            .count;
    return counts;
}

AuditReport audit_config(const FirewallConfig& config, const ServiceRegistry& registry,
                         const AuditOptions& options)
{
    AuditReport report;
    report.config_id = config.id;
    report.vendor = config.vendor;
    report.version_category = config.version_category;
    report.rules = config.rule_count();
    report.objects = config.object_count();
    report.interfaces = config.interface_count();
    report.lines = config.raw_line_count;
    report.fc = firewall_complexity(config);

    EffectiveRegions regions = effective_regions(config);
    DirectionRegions dirs = direction_regions(config);
    ContainmentDag dag(registry);
    std::vector<CodeSet> triggers = rule_triggers(config, regions.per_rule, dirs, registry);

    for (int c = 0; c < kErrorCodeCount; ++c) {
        const auto& info = kCatalogue[c];
        if (info.kind == ErrorKind::Threshold) {
            auto res = threshold_eval_one(config, regions.per_rule, triggers, dirs, registry,
                                          dag, c);
            std::uint64_t bound = info.axis == ThresholdAxis::TcpPorts
                                      ? options.port_threshold
                                      : options.address_threshold;
            if (res.count > bound) { // strictly "over"
                report.indicators[c] = true;
                report.evidence[c].count = res.count;
                report.evidence[c].threshold = bound;
                report.evidence[c].rules = std::move(res.contributors);
            }
        } else {
            // counted iff some rule triggers the code and none of its
            // ancestors (the containment rule)
            for (std::size_t i = 0; i < config.rules.size(); ++i) {
                if (!triggers[i].test(c))
                    continue;
                if ((triggers[i] & dag.ancestors(c)).any())
                    continue;
                report.indicators[c] = true;
                report.evidence[c].rules.push_back(
                    {config.rules[i].index, config.rules[i].loc.line});
            }
        }
    }
    return report;
}

} // namespace fwaudit
