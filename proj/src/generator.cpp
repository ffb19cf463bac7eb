#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fwaudit/corpus.hpp"
#include "fwaudit/pix.hpp"

namespace fwaudit {

namespace {

// Each code owns a slot: distinct hosts (and /23 blocks for threshold
// codes) keep the seeded rules pairwise disjoint, so no rule shadows or
// cross-triggers another. Slot k uses external host 198.51.100.k, internal
// host 10.1.1.k, peer-zone host 10.2.1.k, and block 10.1.(2k).0/23.
struct SeedRule {
    RuleAction action = RuleAction::Permit;
    std::string src, dst;         // FWN spec form
    std::string pix_src, pix_dst; // PIX spec form
    std::string svc;              // FWN service spec
    std::string pix_svc;          // PIX protocol + port clause
    ErrorCategory category = ErrorCategory::Inbound;
};

struct ServicePick {
    std::string fwn;
    std::string pix;
};

ServicePick service_for(const ErrorCodeInfo& info)
{
    if (info.kind == ErrorKind::ServiceClass || info.kind == ErrorKind::Syntactic) {
        switch (info.service_class) {
        case ServiceClass::Any:
            return {"any", "ip"};
        case ServiceClass::AllTcp:
            return {"tcp", "tcp"};
        case ServiceClass::AllUdp:
            return {"udp", "udp"};
        }
    }
    if (info.kind == ErrorKind::Threshold) {
        if (info.service.empty()) // TCP port-count codes
            return {"tcp/10000-12500", "tcp|range 10000 12500"};
        if (info.service == "http")
            return {"tcp/80", "tcp|eq 80"};
        if (info.service == "smtp")
            return {"tcp/25", "tcp|eq 25"};
        if (info.service == "dns-udp")
            return {"udp/53", "udp|eq 53"};
        if (info.service == "dns-tcp")
            return {"tcp/53", "tcp|eq 53"};
        if (info.service == "ftp")
            return {"tcp/21", "tcp|eq 21"};
        if (info.service == "icmp")
            return {"icmp", "icmp"};
    }
    // named services: one representative well-known port
    if (info.service == "telnet")
        return {"tcp/23", "tcp|eq 23"};
    if (info.service == "rpc")
        return {"tcp/111", "tcp|eq 111"};
    if (info.service == "snmp")
        return {"udp/161", "udp|eq 161"};
    if (info.service == "microsoft")
        return {"tcp/445", "tcp|eq 445"};
    if (info.service == "x11")
        return {"tcp/6000", "tcp|eq 6000"};
    if (info.service == "tftp")
        return {"udp/69", "udp|eq 69"};
    if (info.service == "mssql")
        return {"tcp/1433", "tcp|eq 1433"};
    if (info.service == "p2p")
        return {"tcp/1214", "tcp|eq 1214"};
    if (info.service == "im")
        return {info.code == "o09" ? "tcp/5190" : "tcp/1863",
                info.code == "o09" ? "tcp|eq 5190" : "tcp|eq 1863"};
    if (info.service == "databases")
        return {"tcp/3306", "tcp|eq 3306"};
    if (info.service == "version-control")
        return {"tcp/2401", "tcp|eq 2401"};
    if (info.service == "pop3")
        return {"tcp/110", "tcp|eq 110"};
    if (info.service == "irc")
        return {"tcp/6667", "tcp|eq 6667"};
    throw AnalysisError("no generator template for service '" + std::string(info.service) + "'");
}

std::vector<SeedRule> rules_for_code(int slot)
{
    const auto& info = error_catalogue()[std::size_t(slot)];
    ServicePick svc = service_for(info);

    std::string ext = "198.51.100." + std::to_string(slot);
    std::string in_host = "10.1.1." + std::to_string(slot);
    std::string dmz_host = "10.2.1." + std::to_string(slot);
    std::string block = "10.1." + std::to_string(2 * slot) + ".0";
    std::string block_fwn = block + "/23";
    std::string block_pix = block + " 255.255.254.0";

    SeedRule r;
    r.svc = svc.fwn;
    r.pix_svc = svc.pix;
    r.category = info.category;

    if (info.kind == ErrorKind::Syntactic) {
        // fully shadowed permit: only the syntactic check can see it
        SeedRule deny;
        deny.action = RuleAction::Deny;
        deny.src = ext;
        deny.pix_src = "host " + ext;
        deny.dst = "any";
        deny.pix_dst = "any";
        deny.svc = "any";
        deny.pix_svc = "ip";
        deny.category = info.category;
        SeedRule permit = deny;
        permit.action = RuleAction::Permit;
        return {deny, permit};
    }

    switch (info.category) {
    case ErrorCategory::Inbound:
        r.src = ext;
        r.pix_src = "host " + ext;
        if (info.kind == ErrorKind::Threshold && info.axis == ThresholdAxis::DstAddresses) {
            r.dst = block_fwn;
            r.pix_dst = block_pix;
        } else {
            r.dst = in_host;
            r.pix_dst = "host " + in_host;
        }
        break;
    case ErrorCategory::Outbound:
        if (info.kind == ErrorKind::Threshold && info.axis == ThresholdAxis::SrcAddresses) {
            r.src = block_fwn;
            r.pix_src = block_pix;
        } else {
            r.src = in_host;
            r.pix_src = "host " + in_host;
        }
        r.dst = ext;
        r.pix_dst = "host " + ext;
        break;
    case ErrorCategory::Internal:
        r.src = in_host;
        r.pix_src = "host " + in_host;
        r.dst = dmz_host;
        r.pix_dst = "host " + dmz_host;
        break;
    case ErrorCategory::Risky:
        break; // handled above
    }
    return {r};
}

std::string fwn_rule_line(const SeedRule& r)
{
    std::string line = "rule ";
    line += r.action == RuleAction::Permit ? "permit" : "deny";
    line += " src " + r.src + " dst " + r.dst + " svc " + r.svc;
    return line;
}

std::string pix_rule_line(const std::string& acl, const SeedRule& r)
{
    // pix_svc is "<proto>" or "<proto>|<port clause>"
    std::string proto = r.pix_svc;
    std::string clause;
    if (auto bar = proto.find('|'); bar != std::string::npos) {
        clause = proto.substr(bar + 1);
        proto = proto.substr(0, bar);
    }
    std::string line = "access-list " + acl + " ";
    line += r.action == RuleAction::Permit ? "permit" : "deny";
    line += " " + proto + " " + r.pix_src + " " + r.pix_dst;
    if (!clause.empty())
        line += " " + clause;
    return line;
}

} // namespace

GeneratedConfig generate_synthetic(const GeneratorParams& params)
{
    if (params.target_fc < 1)
        throw AnalysisError("target_fc must be at least 1");
    if (params.internal_zones < 1 || params.internal_zones > 2)
        throw AnalysisError("internal_zones must be 1 or 2");

    GeneratedConfig out;
    std::set<int> slots;
    for (const auto& code : params.seeded_errors) {
        int idx = error_code_index(code);
        if (idx < 0)
            throw AnalysisError("unknown error code '" + code + "'");
        const auto& info = error_catalogue()[std::size_t(idx)];
        if (info.category == ErrorCategory::Internal && params.internal_zones < 2)
            throw AnalysisError("code '" + code + "' needs at least 2 internal zones");
        slots.insert(idx);
        out.labels[std::size_t(idx)] = true;
    }

    std::mt19937_64 rng(params.seed);
    // plain modulo keeps documents byte-identical across platforms
    auto pick = [&rng](std::size_t n) { return std::size_t(rng() % n); };

    std::vector<SeedRule> rules;
    for (int slot : slots)
        for (auto& r : rules_for_code(slot))
            rules.push_back(std::move(r));

    std::ostringstream doc;
    if (params.vendor == Vendor::Pix) {
        static const char* kVersions[] = {"4.4(4)", "5.2(1)", "6.0(1)", "6.2(2)", "6.3(3)",
                                          "7.0(1)"};
        doc << ": Saved\n";
        doc << "PIX Version " << kVersions[pick(std::size(kVersions))] << "\n";
        doc << "interface ethernet0 auto\n";
        doc << "interface ethernet1 auto\n";
        if (params.internal_zones == 2)
            doc << "interface ethernet2 auto\n";
        doc << "nameif ethernet0 outside security0\n";
        doc << "nameif ethernet1 inside security100\n";
        if (params.internal_zones == 2)
            doc << "nameif ethernet2 dmz security50\n";
        doc << "hostname gen-" << params.seed << "\n";
        doc << "ip address outside 203.0.113.2 255.255.255.252\n";
        doc << "ip address inside 10.1.0.1 255.255.0.0\n";
        if (params.internal_zones == 2)
            doc << "ip address dmz 10.2.0.1 255.255.0.0\n";

        std::vector<std::string> outside_lines, inside_lines;
        for (const auto& r : rules) {
            if (r.category == ErrorCategory::Inbound || r.category == ErrorCategory::Risky)
                outside_lines.push_back(pix_rule_line("outside_in", r));
            else
                inside_lines.push_back(pix_rule_line("inside_in", r));
        }
        for (const auto& line : outside_lines)
            doc << line << "\n";
        for (const auto& line : inside_lines)
            doc << line << "\n";
        if (!outside_lines.empty())
            doc << "access-group outside_in in interface outside\n";
        if (!inside_lines.empty())
            doc << "access-group inside_in in interface inside\n";

        std::string body = doc.str();
        std::size_t base_lines = count_lines(body);
        std::int64_t want_lines = params.target_fc + 50;
        if (std::int64_t(base_lines) > want_lines &&
            double(std::int64_t(base_lines) - 50) > 1.1 * double(params.target_fc))
            throw AnalysisError("target_fc too small for the requested error set");
        std::ostringstream padded;
        padded << body;
        for (std::int64_t i = std::int64_t(base_lines); i < want_lines; ++i)
            padded << "! pad\n";
        out.document = padded.str();
    } else {
        static const char* kVersions[] = {"4.0", "4.1 SP5", "NG FP2", "NG FP3", "NG R55"};
        doc << "# generated rule-set\n";
        doc << "meta vendor checkpoint\n";
        doc << "meta version " << kVersions[pick(std::size(kVersions))] << "\n";
        doc << "interface eth0 zone external net 203.0.113.0/30\n";
        doc << "interface eth1 zone internal:inside net 10.1.0.0/16\n";
        if (params.internal_zones == 2)
            doc << "interface eth2 zone internal:dmz net 10.2.0.0/16\n";
        for (const auto& r : rules)
            doc << fwn_rule_line(r) << "\n";

        std::int64_t interfaces = 1 + params.internal_zones;
        std::int64_t rule_count = std::int64_t(rules.size());
        std::int64_t base = rule_count * interfaces;
        if (base > params.target_fc && double(base) > 1.1 * double(params.target_fc))
            throw AnalysisError("target_fc too small for the requested error set");
        std::int64_t pad_objects = std::max<std::int64_t>(0, params.target_fc - base);
        for (std::int64_t i = 0; i < pad_objects; ++i)
            doc << "object pad" << i << " 192.0.2." << (i % 254) << "\n";
        out.document = doc.str();
    }
    return out;
}

} // namespace fwaudit
