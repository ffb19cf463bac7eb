#include "fwaudit/pix.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace fwaudit {

std::size_t count_lines(std::string_view text)
{
    if (text.empty())
        return 0;
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n')
            ++n;
    if (text.back() != '\n')
        ++n;
    return n;
}

std::string pix_version_category(std::string_view label)
{
    // label looks like "6.3(3)" or "6.3"
    unsigned major = 0, minor = 0;
    auto [p, ec] = std::from_chars(label.data(), label.data() + label.size(), major);
    if (ec != std::errc() || p == label.data() + label.size() || *p != '.')
        return "unknown";
    ++p;
    auto [q, ec2] = std::from_chars(p, label.data() + label.size(), minor);
    if (ec2 != std::errc())
        return "unknown";
    unsigned v = major * 10 + minor;
    if (v == 44)
        return "4.4";
    if (v >= 50 && v <= 52)
        return "5.0-5.2";
    if (v >= 60 && v <= 62)
        return "6.0-6.2";
    if (v >= 63)
        return "6.3-7.0";
    return "unknown";
}

namespace {

const std::map<std::string_view, std::uint16_t> kPortNames = {
    {"ftp-data", 20}, {"ftp", 21},          {"ssh", 22},         {"telnet", 23},
    {"smtp", 25},     {"domain", 53},       {"tftp", 69},        {"finger", 79},
    {"www", 80},      {"http", 80},         {"pop2", 109},       {"pop3", 110},
    {"sunrpc", 111},  {"ident", 113},       {"nntp", 119},       {"ntp", 123},
    {"netbios-ns", 137}, {"netbios-dgm", 138}, {"netbios-ssn", 139}, {"imap4", 143},
    {"snmp", 161},    {"snmptrap", 162},    {"ldap", 389},       {"https", 443},
    {"isakmp", 500},  {"exec", 512},        {"login", 513},      {"shell", 514},
    {"syslog", 514},  {"lpd", 515},         {"talk", 517},       {"rip", 520},
    {"uucp", 540},    {"klogin", 543},      {"kshell", 544},     {"sqlnet", 1521},
    {"h323", 1720},   {"pptp", 1723},       {"citrix-ica", 1494}, {"aol", 5190},
    {"pcanywhere-data", 5631}, {"pcanywhere-status", 5632},
};

const std::map<std::string_view, std::uint8_t> kProtoNames = {
    {"icmp", 1}, {"igmp", 2}, {"tcp", 6},   {"udp", 17}, {"gre", 47},
    {"esp", 50}, {"ah", 51},  {"eigrp", 88}, {"ospf", 89}, {"pim", 103},
};

// First tokens that carry no filtering semantics; recognized and skipped.
const std::set<std::string_view> kBenignDirectives = {
    "hostname",   "domain-name", "enable",     "passwd",      "password",
    "fixup",      "names",       "pager",      "logging",     "mtu",
    "arp",        "timeout",     "sysopt",     "terminal",    "Cryptochecksum",
    "clock",      "ntp",         "snmp-server", "telnet",     "ssh",
    "http",       "icmp",        "floodguard", "service",     "dhcpd",
    "banner",     "failover",    "rip",        "aaa",         "aaa-server",
    "url-server", "url-cache",   "filter",     "virtual",     "tftp-server",
    "crypto",     "isakmp",      "ca",         "vpdn",        "management-access",
    "console",    "fragment",    "multicast",  "no",          "established",
    "prompt",     "username",    "privilege",  "dns-guard",   "mgcp",
};

const std::set<std::string_view> kNatOpaqueDirectives = {"nat", "global", "static", "conduit"};

struct Token {
    std::string_view text;
    std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

struct AclEntry {
    Rule rule; // index assigned at flatten time
};

struct Binding {
    std::string acl;
    std::string ifname;
    bool inbound = true;
    SourceLocation loc;
};

class PixParser {
public:
    explicit PixParser(PixMode mode) : mode_(mode) {}

    PixParseResult run(const std::string& text)
    {
        config_.vendor = Vendor::Pix;
        config_.version_category = "unknown";
        config_.raw_line_count = count_lines(text);

        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            parse_line(line, lineno);
        }

        if (!unsupported_.empty() && mode_ == PixMode::Strict) {
            std::string msg = "unsupported directives:";
            for (const auto& d : unsupported_)
                msg += " line " + std::to_string(d.loc.line) + " '" + d.message + "'";
            throw ParseError(unsupported_.front().loc, msg);
        }
        for (const auto& d : unsupported_)
            diagnostics_.push_back({d.loc, "skipped unsupported directive '" + d.message + "'"});

        apply_routes();
        flatten_rules();

        PixParseResult result;
        result.config = std::move(config_);
        result.diagnostics = std::move(diagnostics_);
        return result;
    }

private:
    PixMode mode_;
    FirewallConfig config_;
    std::vector<Diagnostic> diagnostics_;
    std::vector<Diagnostic> unsupported_;

    std::map<std::string, std::uint32_t, std::less<>> aliases_;
    std::map<std::string, AddressSet, std::less<>> net_groups_;
    std::map<std::string, ServiceSet, std::less<>> svc_groups_;
    std::map<std::string, std::vector<AclEntry>, std::less<>> acls_;
    std::vector<std::string> acl_order_;
    std::vector<Binding> bindings_;
    std::vector<std::pair<SourceLocation, std::string>> routes_; // (loc, "if net mask")
    std::vector<Rule> nat_rules_;

    enum class GroupKind { None, Network, Service, SkippedUnsupported };
    GroupKind open_group_ = GroupKind::None;
    std::string open_group_name_;
    ServiceSet open_group_protos_; // tcp / udp / tcp-udp template for port-objects

    void unsupported(SourceLocation loc, std::string_view what)
    {
        unsupported_.push_back({loc, std::string(what)});
    }

    Interface* find_interface(std::string_view name)
    {
        for (auto& ifc : config_.interfaces)
            if (ifc.name == name)
                return &ifc;
        return nullptr;
    }

    std::uint32_t parse_address_token(const Token& tok, std::size_t lineno)
    {
        std::uint32_t addr = 0;
        if (parse_ipv4(tok.text, addr))
            return addr;
        if (auto it = aliases_.find(tok.text); it != aliases_.end())
            return it->second;
        throw ParseError({lineno, tok.column},
                         "expected address or name alias, got '" + std::string(tok.text) + "'");
    }

    std::uint32_t parse_mask_token(const Token& tok, std::size_t lineno)
    {
        std::uint32_t mask = 0;
        if (!parse_ipv4(tok.text, mask))
            throw ParseError({lineno, tok.column}, "bad netmask '" + std::string(tok.text) + "'");
        // contiguous-from-MSB subnet masks only; IOS wildcard masks rejected
        std::uint32_t inv = ~mask;
        if ((inv & (inv + 1)) != 0)
            throw ParseError({lineno, tok.column},
                             "not a subnet mask (wildcard masks unsupported): '" +
                                 std::string(tok.text) + "'");
        return mask;
    }

    std::uint16_t parse_port_token(const Token& tok, std::size_t lineno)
    {
        std::uint32_t port = 0;
        auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), port);
        if (ec == std::errc() && p == tok.text.data() + tok.text.size()) {
            if (port > kPortMax)
                throw ParseError({lineno, tok.column}, "port out of range");
            return std::uint16_t(port);
        }
        if (auto it = kPortNames.find(tok.text); it != kPortNames.end())
            return it->second;
        throw ParseError({lineno, tok.column}, "unknown port '" + std::string(tok.text) + "'");
    }

    void parse_line(const std::string& line, std::size_t lineno)
    {
        auto tokens = tokenize(line);
        if (tokens.empty())
            return;
        char first = tokens[0].text[0];
        if (first == '!' || first == ':')
            return; // comment / save banner
        auto directive = tokens[0].text;
        SourceLocation loc{lineno, tokens[0].column};

        // object-group member lines attach to the open group
        if (directive == "network-object" || directive == "port-object" ||
            directive == "group-object" || directive == "description" ||
            directive == "icmp-object" || directive == "protocol-object") {
            parse_group_member(tokens, lineno);
            return;
        }
        open_group_ = GroupKind::None;

        if (directive == "PIX" && tokens.size() >= 3 && tokens[1].text == "Version") {
            config_.version_label = std::string(line.substr(tokens[2].column - 1));
            while (!config_.version_label.empty() &&
                   (config_.version_label.back() == '\r' || config_.version_label.back() == ' '))
                config_.version_label.pop_back();
            config_.version_category = pix_version_category(config_.version_label);
        } else if (directive == "interface") {
            // hardware settings only; names and addresses come from nameif
        } else if (directive == "nameif") {
            parse_nameif(tokens, lineno);
        } else if (directive == "ip") {
            parse_ip_address(tokens, lineno);
        } else if (directive == "name") {
            parse_name_alias(tokens, lineno);
        } else if (directive == "object-group") {
            parse_object_group(tokens, lineno);
        } else if (directive == "access-list") {
            parse_access_list(tokens, lineno, line);
        } else if (directive == "access-group") {
            parse_access_group(tokens, lineno);
        } else if (directive == "route") {
            parse_route(tokens, lineno);
        } else if (directive.starts_with("Cryptochecksum")) {
            // trailer line, written without a space after the colon
        } else if (kNatOpaqueDirectives.count(directive)) {
            Rule rule;
            rule.kind = RuleKind::NatOpaque;
            rule.loc = loc;
            rule.src_spec = line;
            nat_rules_.push_back(std::move(rule));
        } else if (kBenignDirectives.count(directive)) {
            // no filtering semantics
        } else {
            unsupported(loc, std::string(directive));
        }
    }

    void parse_nameif(const std::vector<Token>& tokens, std::size_t lineno)
    {
        if (tokens.size() != 4)
            throw ParseError({lineno, tokens[0].column},
                             "expected 'nameif <hw> <name> security<level>'");
        auto sec = tokens[3].text;
        if (!sec.starts_with("security"))
            throw ParseError({lineno, tokens[3].column}, "expected security<level>");
        unsigned level = 0;
        auto digits = sec.substr(8);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), level);
        if (ec != std::errc() || p != digits.data() + digits.size() || level > 100)
            throw ParseError({lineno, tokens[3].column}, "bad security level");
        Interface ifc;
        ifc.name = std::string(tokens[2].text);
        ifc.security_level = int(level);
        ifc.loc = {lineno, tokens[0].column};
        if (find_interface(ifc.name))
            throw ParseError(ifc.loc, "duplicate interface '" + ifc.name + "'");
        config_.interfaces.push_back(std::move(ifc));
    }

    void parse_ip_address(const std::vector<Token>& tokens, std::size_t lineno)
    {
        // ip address <ifname> <ip> <mask>; other "ip ..." forms are benign
        if (tokens.size() < 2 || tokens[1].text != "address")
            return;
        if (tokens.size() != 5)
            throw ParseError({lineno, tokens[0].column},
                             "expected 'ip address <ifname> <ip> <mask>'");
        Interface* ifc = find_interface(tokens[2].text);
        if (!ifc)
            throw ParseError({lineno, tokens[2].column},
                             "unknown interface '" + std::string(tokens[2].text) + "'");
        std::uint32_t addr = parse_address_token(tokens[3], lineno);
        std::uint32_t mask = parse_mask_token(tokens[4], lineno);
        std::uint32_t net = addr & mask;
        ifc->attached = ifc->attached.unite(AddressSet::range(net, net | ~mask));
    }

    void parse_name_alias(const std::vector<Token>& tokens, std::size_t lineno)
    {
        if (tokens.size() != 3)
            throw ParseError({lineno, tokens[0].column}, "expected 'name <ip> <alias>'");
        std::uint32_t addr = 0;
        if (!parse_ipv4(tokens[1].text, addr))
            throw ParseError({lineno, tokens[1].column}, "bad address in name alias");
        aliases_[std::string(tokens[2].text)] = addr;
    }

    void parse_object_group(const std::vector<Token>& tokens, std::size_t lineno)
    {
        if (tokens.size() < 3)
            throw ParseError({lineno, tokens[0].column}, "expected 'object-group <type> <name>'");
        auto type = tokens[1].text;
        std::string name(tokens[2].text);
        if (type == "network") {
            if (net_groups_.count(name) || svc_groups_.count(name))
                throw ParseError({lineno, tokens[2].column}, "duplicate object-group '" + name + "'");
            net_groups_.emplace(name, AddressSet{});
            open_group_ = GroupKind::Network;
            open_group_name_ = std::move(name);
        } else if (type == "service") {
            if (tokens.size() != 4)
                throw ParseError({lineno, tokens[0].column},
                                 "expected 'object-group service <name> tcp|udp|tcp-udp'");
            auto proto = tokens[3].text;
            if (proto == "tcp")
                open_group_protos_ = ServiceSet::all_tcp();
            else if (proto == "udp")
                open_group_protos_ = ServiceSet::all_udp();
            else if (proto == "tcp-udp")
                open_group_protos_ = ServiceSet::all_tcp().unite(ServiceSet::all_udp());
            else
                throw ParseError({lineno, tokens[3].column}, "service group protocol must be "
                                                             "tcp, udp, or tcp-udp");
            if (net_groups_.count(name) || svc_groups_.count(name))
                throw ParseError({lineno, tokens[2].column}, "duplicate object-group '" + name + "'");
            svc_groups_.emplace(name, ServiceSet{});
            open_group_ = GroupKind::Service;
            open_group_name_ = std::move(name);
        } else {
            unsupported({lineno, tokens[0].column},
                        "object-group " + std::string(type));
            open_group_ = GroupKind::SkippedUnsupported;
        }
    }

    void parse_group_member(const std::vector<Token>& tokens, std::size_t lineno)
    {
        auto directive = tokens[0].text;
        SourceLocation loc{lineno, tokens[0].column};
        if (open_group_ == GroupKind::SkippedUnsupported)
            return;
        if (directive == "description")
            return;
        if (open_group_ == GroupKind::None)
            throw ParseError(loc, "'" + std::string(directive) + "' outside object-group");

        if (open_group_ == GroupKind::Network) {
            auto& group = net_groups_.at(open_group_name_);
            if (directive == "network-object") {
                if (tokens.size() == 3 && tokens[1].text == "host") {
                    std::uint32_t addr = parse_address_token(tokens[2], lineno);
                    group = group.unite(AddressSet::single(addr));
                } else if (tokens.size() == 3) {
                    std::uint32_t addr = parse_address_token(tokens[1], lineno);
                    std::uint32_t mask = parse_mask_token(tokens[2], lineno);
                    if ((addr & mask) != addr)
                        throw ParseError({lineno, tokens[1].column},
                                         "host bits set in network-object");
                    group = group.unite(AddressSet::range(addr, addr | ~mask));
                } else {
                    throw ParseError(loc, "expected 'network-object host <x>' or "
                                          "'network-object <net> <mask>'");
                }
            } else if (directive == "group-object") {
                if (tokens.size() != 2)
                    throw ParseError(loc, "expected 'group-object <name>'");
                auto it = net_groups_.find(tokens[1].text);
                if (it == net_groups_.end())
                    throw ParseError({lineno, tokens[1].column},
                                     "undefined object-group '" + std::string(tokens[1].text) +
                                         "'");
                group = group.unite(it->second);
            } else {
                throw ParseError(loc, "'" + std::string(directive) + "' not valid in a network "
                                                                     "object-group");
            }
        } else {
            auto& group = svc_groups_.at(open_group_name_);
            if (directive == "port-object") {
                std::uint16_t lo = 0, hi = 0;
                if (tokens.size() == 3 && tokens[1].text == "eq") {
                    lo = hi = parse_port_token(tokens[2], lineno);
                } else if (tokens.size() == 4 && tokens[1].text == "range") {
                    lo = parse_port_token(tokens[2], lineno);
                    hi = parse_port_token(tokens[3], lineno);
                    if (lo > hi)
                        throw ParseError({lineno, tokens[2].column}, "port range lo > hi");
                } else {
                    throw ParseError(loc,
                                     "expected 'port-object eq <p>' or 'port-object range <lo> "
                                     "<hi>'");
                }
                ServiceSet ports;
                if (open_group_protos_.covers(ServiceSet::all_tcp()))
                    ports = ports.unite(ServiceSet::tcp_ports(lo, hi));
                if (open_group_protos_.covers(ServiceSet::all_udp()))
                    ports = ports.unite(ServiceSet::udp_ports(lo, hi));
                group = group.unite(ports);
            } else if (directive == "group-object") {
                if (tokens.size() != 2)
                    throw ParseError(loc, "expected 'group-object <name>'");
                auto it = svc_groups_.find(tokens[1].text);
                if (it == svc_groups_.end())
                    throw ParseError({lineno, tokens[1].column},
                                     "undefined object-group '" + std::string(tokens[1].text) +
                                         "'");
                group = group.unite(it->second);
            } else {
                throw ParseError(loc, "'" + std::string(directive) + "' not valid in a service "
                                                                     "object-group");
            }
        }
    }

    // address spec inside an access-list entry; returns (set, spec text)
    std::pair<AddressSet, std::string> parse_acl_address(const std::vector<Token>& tokens,
                                                         std::size_t& i, std::size_t lineno)
    {
        if (i >= tokens.size())
            throw ParseError({lineno, 1}, "truncated access-list entry");
        auto tok = tokens[i];
        if (tok.text == "any") {
            ++i;
            return {AddressSet::full(kAddressMax), "any"};
        }
        if (tok.text == "host") {
            if (i + 1 >= tokens.size())
                throw ParseError({lineno, tok.column}, "expected address after 'host'");
            std::uint32_t addr = parse_address_token(tokens[i + 1], lineno);
            std::string spec = "host " + std::string(tokens[i + 1].text);
            i += 2;
            return {AddressSet::single(addr), spec};
        }
        if (tok.text == "object-group") {
            if (i + 1 >= tokens.size())
                throw ParseError({lineno, tok.column}, "expected name after 'object-group'");
            auto it = net_groups_.find(tokens[i + 1].text);
            if (it == net_groups_.end())
                throw ParseError({lineno, tokens[i + 1].column},
                                 "undefined network object-group '" +
                                     std::string(tokens[i + 1].text) + "'");
            std::string spec = "object-group " + std::string(tokens[i + 1].text);
            i += 2;
            return {it->second, spec};
        }
        if (i + 1 >= tokens.size())
            throw ParseError({lineno, tok.column}, "expected '<addr> <mask>'");
        std::uint32_t addr = parse_address_token(tok, lineno);
        std::uint32_t mask = parse_mask_token(tokens[i + 1], lineno);
        if ((addr & mask) != addr)
            throw ParseError({lineno, tok.column}, "host bits set in access-list address");
        std::string spec = std::string(tok.text) + " " + std::string(tokens[i + 1].text);
        i += 2;
        return {AddressSet::range(addr, addr | ~mask), spec};
    }

    void parse_access_list(const std::vector<Token>& tokens, std::size_t lineno,
                           const std::string& line)
    {
        if (tokens.size() == 2 && tokens[1].text == "compiled")
            return; // turbo-ACL toggle
        if (tokens.size() < 3)
            throw ParseError({lineno, tokens[0].column}, "truncated access-list");
        std::string name(tokens[1].text);
        std::size_t i = 2;
        if (tokens[i].text == "remark")
            return;
        if (tokens[i].text == "extended")
            ++i;

        if (acls_.find(name) == acls_.end())
            acl_order_.push_back(name);
        auto& entries = acls_[name];

        Rule rule;
        rule.loc = {lineno, tokens[0].column};
        rule.kind = RuleKind::Filter;
        if (tokens[i].text == "permit")
            rule.action = RuleAction::Permit;
        else if (tokens[i].text == "deny")
            rule.action = RuleAction::Deny;
        else
            throw ParseError({lineno, tokens[i].column},
                             "expected permit or deny, got '" + std::string(tokens[i].text) + "'");
        ++i;

        if (i >= tokens.size())
            throw ParseError({lineno, tokens[0].column}, "truncated access-list entry");
        auto proto_tok = tokens[i];
        std::uint8_t proto_num = 0;
        bool proto_any = false;
        bool proto_ports = false;
        if (proto_tok.text == "ip") {
            proto_any = true;
        } else if (auto it = kProtoNames.find(proto_tok.text); it != kProtoNames.end()) {
            proto_num = it->second;
            proto_ports = proto_num == kProtoTcp || proto_num == kProtoUdp;
        } else {
            std::uint32_t n = 0;
            auto [p, ec] =
                std::from_chars(proto_tok.text.data(),
                                proto_tok.text.data() + proto_tok.text.size(), n);
            if (ec != std::errc() || p != proto_tok.text.data() + proto_tok.text.size() || n > 255)
                throw ParseError({lineno, proto_tok.column},
                                 "unknown protocol '" + std::string(proto_tok.text) + "'");
            proto_num = std::uint8_t(n);
            proto_ports = proto_num == kProtoTcp || proto_num == kProtoUdp;
        }
        ++i;

        auto [src, src_spec] = parse_acl_address(tokens, i, lineno);
        if (i < tokens.size() && proto_ports &&
            (tokens[i].text == "eq" || tokens[i].text == "range" || tokens[i].text == "gt" ||
             tokens[i].text == "lt" || tokens[i].text == "neq")) {
            // source-port matching is outside the supported subset
            unsupported({lineno, tokens[i].column}, "access-list source port");
            if (mode_ == PixMode::Lenient)
                return;
            throw ParseError({lineno, tokens[i].column}, "source ports unsupported");
        }
        auto [dst, dst_spec] = parse_acl_address(tokens, i, lineno);

        PortSet ports;
        std::string svc_spec;
        bool have_ports = false;
        if (proto_ports && i < tokens.size()) {
            auto op = tokens[i].text;
            if (op == "eq") {
                if (i + 1 >= tokens.size())
                    throw ParseError({lineno, tokens[i].column}, "expected port after 'eq'");
                auto p = parse_port_token(tokens[i + 1], lineno);
                ports.add(p, p);
                svc_spec = "eq " + std::string(tokens[i + 1].text);
                have_ports = true;
                i += 2;
            } else if (op == "range") {
                if (i + 2 >= tokens.size())
                    throw ParseError({lineno, tokens[i].column}, "expected 'range <lo> <hi>'");
                auto lo = parse_port_token(tokens[i + 1], lineno);
                auto hi = parse_port_token(tokens[i + 2], lineno);
                if (lo > hi)
                    throw ParseError({lineno, tokens[i + 1].column}, "port range lo > hi");
                ports.add(lo, hi);
                svc_spec = "range " + std::string(tokens[i + 1].text) + " " +
                           std::string(tokens[i + 2].text);
                have_ports = true;
                i += 3;
            } else if (op == "gt") {
                if (i + 1 >= tokens.size())
                    throw ParseError({lineno, tokens[i].column}, "expected port after 'gt'");
                auto p = parse_port_token(tokens[i + 1], lineno);
                if (p < kPortMax)
                    ports.add(p + 1, kPortMax);
                svc_spec = "gt " + std::string(tokens[i + 1].text);
                have_ports = true;
                i += 2;
            } else if (op == "lt") {
                if (i + 1 >= tokens.size())
                    throw ParseError({lineno, tokens[i].column}, "expected port after 'lt'");
                auto p = parse_port_token(tokens[i + 1], lineno);
                if (p > 0)
                    ports.add(0, p - 1);
                svc_spec = "lt " + std::string(tokens[i + 1].text);
                have_ports = true;
                i += 2;
            } else if (op == "neq") {
                if (i + 1 >= tokens.size())
                    throw ParseError({lineno, tokens[i].column}, "expected port after 'neq'");
                auto p = parse_port_token(tokens[i + 1], lineno);
                if (p > 0)
                    ports.add(0, p - 1);
                if (p < kPortMax)
                    ports.add(p + 1, kPortMax);
                svc_spec = "neq " + std::string(tokens[i + 1].text);
                have_ports = true;
                i += 2;
            } else if (op == "object-group") {
                if (i + 1 >= tokens.size())
                    throw ParseError({lineno, tokens[i].column},
                                     "expected name after 'object-group'");
                auto it = svc_groups_.find(tokens[i + 1].text);
                if (it == svc_groups_.end())
                    throw ParseError({lineno, tokens[i + 1].column},
                                     "undefined service object-group '" +
                                         std::string(tokens[i + 1].text) + "'");
                ports = it->second.ports_on(proto_num);
                if (ports.empty())
                    throw ParseError({lineno, tokens[i + 1].column},
                                     "service object-group has no " +
                                         std::string(proto_tok.text) + " ports");
                svc_spec = "object-group " + std::string(tokens[i + 1].text);
                have_ports = true;
                i += 2;
            }
        }

        // trailing options
        while (i < tokens.size()) {
            auto opt = tokens[i].text;
            if (opt == "log") {
                ++i;
            } else if (opt == "inactive") {
                rule.enabled = false;
                ++i;
            } else if (proto_num == kProtoIcmp && !proto_any) {
                // icmp message types are not modeled; protocol-level reach only
                ++i;
            } else {
                throw ParseError({lineno, tokens[i].column},
                                 "unexpected token '" + std::string(opt) + "'");
            }
        }

        rule.src = std::move(src);
        rule.dst = std::move(dst);
        if (proto_any) {
            rule.svc = ServiceSet::any();
            rule.svc_spec = "ip";
        } else if (proto_num == kProtoTcp || proto_num == kProtoUdp) {
            bool tcp = proto_num == kProtoTcp;
            if (!have_ports) {
                // no port given: all ports
                rule.svc = tcp ? ServiceSet::all_tcp() : ServiceSet::all_udp();
            } else {
                for (const auto& iv : ports.intervals()) {
                    auto piece = tcp ? ServiceSet::tcp_ports(std::uint16_t(iv.lo), std::uint16_t(iv.hi))
                                     : ServiceSet::udp_ports(std::uint16_t(iv.lo), std::uint16_t(iv.hi));
                    rule.svc = rule.svc.unite(piece);
                }
            }
            rule.svc_spec = std::string(proto_tok.text) + (svc_spec.empty() ? "" : " " + svc_spec);
        } else {
            rule.svc = ServiceSet::protocol(proto_num);
            rule.svc_spec = std::string(proto_tok.text);
        }
        rule.src_spec = src_spec;
        rule.dst_spec = dst_spec;
        (void)line;
        entries.push_back({std::move(rule)});
    }

    void parse_access_group(const std::vector<Token>& tokens, std::size_t lineno)
    {
        if (tokens.size() != 5 || tokens[3].text != "interface" ||
            (tokens[2].text != "in" && tokens[2].text != "out"))
            throw ParseError({lineno, tokens[0].column},
                             "expected 'access-group <acl> in|out interface <if>'");
        Binding b;
        b.acl = std::string(tokens[1].text);
        b.inbound = tokens[2].text == "in";
        b.ifname = std::string(tokens[4].text);
        b.loc = {lineno, tokens[0].column};
        if (acls_.find(b.acl) == acls_.end())
            throw ParseError({lineno, tokens[1].column},
                             "access-group references undefined access-list '" + b.acl + "'");
        if (!find_interface(b.ifname))
            throw ParseError({lineno, tokens[4].column},
                             "access-group references unknown interface '" + b.ifname + "'");
        bindings_.push_back(std::move(b));
    }

    void parse_route(const std::vector<Token>& tokens, std::size_t lineno)
    {
        // route <ifname> <net> <mask> <gateway> [metric]
        if (tokens.size() < 5)
            throw ParseError({lineno, tokens[0].column},
                             "expected 'route <if> <net> <mask> <gw>'");
        routes_.emplace_back(SourceLocation{lineno, tokens[0].column},
                             std::string(tokens[1].text) + " " + std::string(tokens[2].text) +
                                 " " + std::string(tokens[3].text));
    }

    void apply_routes()
    {
        for (const auto& [loc, spec] : routes_) {
            std::istringstream ss(spec);
            std::string ifname, net_s, mask_s;
            ss >> ifname >> net_s >> mask_s;
            Interface* ifc = find_interface(ifname);
            if (!ifc)
                throw ParseError(loc, "route references unknown interface '" + ifname + "'");
            std::uint32_t net = 0, mask = 0;
            if (!parse_ipv4(net_s, net)) {
                if (auto it = aliases_.find(net_s); it != aliases_.end())
                    net = it->second;
                else
                    throw ParseError(loc, "bad route network '" + net_s + "'");
            }
            if (!parse_ipv4(mask_s, mask))
                throw ParseError(loc, "bad route mask '" + mask_s + "'");
            std::uint32_t inv = ~mask;
            if ((inv & (inv + 1)) != 0)
                throw ParseError(loc, "route mask is not a subnet mask");
            net &= mask;
            // default routes point at the outside world, not a connected net
            if (mask == 0)
                continue;
            ifc->attached = ifc->attached.unite(AddressSet::range(net, net | inv));
        }
    }

    void flatten_rules()
    {
        std::set<std::string> bound;
        for (const auto& b : bindings_) {
            bound.insert(b.acl);
            for (const auto& entry : acls_.at(b.acl)) {
                Rule rule = entry.rule;
                rule.index = config_.rules.size();
                config_.rules.push_back(std::move(rule));
            }
        }
        for (const auto& name : acl_order_)
            if (!bound.count(name))
                diagnostics_.push_back(
                    {{}, "access-list '" + name + "' is never bound to an interface"});
        for (auto& rule : nat_rules_) {
            rule.index = config_.rules.size();
            config_.rules.push_back(std::move(rule));
        }
    }
};

} // namespace

PixParseResult parse_pix(const std::string& text, PixMode mode, const ServiceRegistry& registry)
{
    // PIX service syntax carries its own port-name vocabulary; the registry
    // parameter keeps the two parser entry points interchangeable for callers.
    (void)registry;
    PixParser parser(mode);
    return parser.run(text);
}

FirewallConfig infer_zones(FirewallConfig config, const std::string* sidecar)
{
    if (sidecar) {
        FirewallConfig overrides = parse_fwn(*sidecar, ServiceRegistry::defaults());
        for (const auto& ov : overrides.interfaces) {
            bool found = false;
            for (auto& ifc : config.interfaces) {
                if (ifc.name != ov.name)
                    continue;
                ifc.zone = ov.zone;
                ifc.zone_id = ov.zone_id;
                ifc.attached = ifc.attached.unite(ov.attached);
                found = true;
                break;
            }
            if (!found)
                throw AnalysisError("zone sidecar references unknown interface '" + ov.name + "'");
        }
    }

    bool have_external = std::any_of(config.interfaces.begin(), config.interfaces.end(),
                                     [](const Interface& i) { return i.zone == ZoneKind::External; });
    if (!have_external) {
        // unique lowest security level becomes the external interface
        Interface* lowest = nullptr;
        bool tie = false;
        for (auto& ifc : config.interfaces) {
            if (ifc.zone != ZoneKind::Unassigned)
                continue;
            if (!lowest || ifc.security_level < lowest->security_level) {
                lowest = &ifc;
                tie = false;
            } else if (ifc.security_level == lowest->security_level) {
                tie = true;
            }
        }
        if (!lowest)
            throw AnalysisError("no interface available for the external zone");
        if (tie)
            throw AnalysisError(
                "tie for lowest security level; declare zones explicitly in a sidecar");
        lowest->zone = ZoneKind::External;
        lowest->zone_id.clear();
    }

    for (auto& ifc : config.interfaces) {
        if (ifc.zone == ZoneKind::Unassigned) {
            ifc.zone = ZoneKind::Internal;
            ifc.zone_id = ifc.name;
        }
    }
    return config;
}

} // namespace fwaudit
