#include "fwaudit/ir.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fwaudit {

std::string_view vendor_name(Vendor v)
{
    return v == Vendor::CheckpointLike ? "checkpoint" : "pix";
}

std::string checkpoint_version_category(std::string_view label)
{
    if (label.starts_with("4.0"))
        return "4.0";
    if (label.starts_with("4.1"))
        return "4.1";
    if (label.find("NG") != std::string_view::npos) {
        // NG releases after field-pack 3 (R54/R55/AI) form their own bucket.
        if (label.find("R54") != std::string_view::npos ||
            label.find("R55") != std::string_view::npos ||
            label.find("AI") != std::string_view::npos)
            return "NG R55";
        return "NG/NG-FP3";
    }
    return "unknown";
}

namespace {

struct Token {
    std::string_view text;
    std::size_t column = 0; // 1-based
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
        if (line[i] == '#')
            break; // comment to end of line
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
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

bool looks_like_cidr(std::string_view item)
{
    return !item.empty() && item[0] >= '0' && item[0] <= '9';
}

struct GroupDecl {
    std::vector<std::string> members;
    SourceLocation loc;
    std::size_t object_slot; // index into config.objects
};

} // namespace

AddressSet resolve_address_spec(std::string_view spec, const ObjectTable& objects)
{
    if (spec == "any")
        return AddressSet::full(kAddressMax);
    AddressSet out;
    for (auto item : split_commas(spec)) {
        if (item.empty())
            throw std::invalid_argument("empty item in address spec '" + std::string(spec) + "'");
        if (looks_like_cidr(item)) {
            out = out.unite(parse_cidr(item));
        } else {
            auto it = objects.find(item);
            if (it == objects.end())
                throw std::invalid_argument("undefined object '" + std::string(item) + "'");
            out = out.unite(it->second);
        }
    }
    return out;
}

ObjectTable object_table(const FirewallConfig& config)
{
    ObjectTable table;
    for (const auto& obj : config.objects)
        table.emplace(obj.name, obj.addresses);
    return table;
}

ResolvedRule resolve_rule(const Rule& rule, const ObjectTable& objects,
                          const ServiceRegistry& registry)
{
    ResolvedRule r;
    r.src = resolve_address_spec(rule.src_spec, objects);
    r.dst = resolve_address_spec(rule.dst_spec, objects);
    r.svc = parse_service_spec(rule.svc_spec, registry);
    return r;
}

FirewallConfig parse_fwn(const std::string& text, const ServiceRegistry& registry)
{
    FirewallConfig config;
    config.vendor = Vendor::CheckpointLike;

    std::map<std::string, GroupDecl, std::less<>> groups;
    std::set<std::string, std::less<>> interface_names;
    ObjectTable resolved; // plain objects resolved eagerly, groups later

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        SourceLocation loc{lineno, tokens[0].column};
        auto directive = tokens[0].text;

        auto want = [&](std::size_t n, const char* usage) {
            if (tokens.size() != n)
                throw ParseError(loc, std::string("expected '") + usage + "'");
        };
        auto keyword = [&](std::size_t idx, std::string_view kw) {
            if (tokens[idx].text != kw)
                throw ParseError({lineno, tokens[idx].column},
                                 "expected '" + std::string(kw) + "', got '" +
                                     std::string(tokens[idx].text) + "'");
        };

        if (directive == "meta") {
            if (tokens.size() >= 3 && tokens[1].text == "vendor") {
                if (tokens[2].text != "checkpoint")
                    throw ParseError({lineno, tokens[2].column},
                                     "unsupported vendor '" + std::string(tokens[2].text) + "'");
            } else if (tokens.size() >= 3 && tokens[1].text == "version") {
                // label = rest of the line, verbatim
                std::size_t start = tokens[2].column - 1;
                std::string label = line.substr(start);
                while (!label.empty() && (label.back() == '\r' || label.back() == ' '))
                    label.pop_back();
                config.version_label = label;
                config.version_category = checkpoint_version_category(label);
            } else {
                throw ParseError(loc, "expected 'meta vendor <v>' or 'meta version <label>'");
            }
        } else if (directive == "interface") {
            want(6, "interface <name> zone external|internal:<id> net <cidr>[,...]");
            keyword(2, "zone");
            keyword(4, "net");
            Interface ifc;
            ifc.name = std::string(tokens[1].text);
            ifc.loc = loc;
            if (!interface_names.insert(ifc.name).second)
                throw ParseError(loc, "duplicate interface '" + ifc.name + "'");
            auto zspec = tokens[3].text;
            if (zspec == "external") {
                ifc.zone = ZoneKind::External;
            } else if (zspec.starts_with("internal:") && zspec.size() > 9) {
                ifc.zone = ZoneKind::Internal;
                ifc.zone_id = std::string(zspec.substr(9));
            } else {
                throw ParseError({lineno, tokens[3].column},
                                 "zone must be 'external' or 'internal:<id>'");
            }
            try {
                for (auto item : split_commas(tokens[5].text))
                    ifc.attached = ifc.attached.unite(parse_cidr(item));
            } catch (const std::invalid_argument& e) {
                throw ParseError({lineno, tokens[5].column}, e.what());
            }
            config.interfaces.push_back(std::move(ifc));
        } else if (directive == "object") {
            want(3, "object <name> <cidr>[,...]");
            NamedObject obj;
            obj.name = std::string(tokens[1].text);
            obj.loc = loc;
            if (resolved.count(obj.name) || groups.count(obj.name))
                throw ParseError(loc, "duplicate name '" + obj.name + "'");
            try {
                for (auto item : split_commas(tokens[2].text))
                    obj.addresses = obj.addresses.unite(parse_cidr(item));
            } catch (const std::invalid_argument& e) {
                throw ParseError({lineno, tokens[2].column}, e.what());
            }
            resolved.emplace(obj.name, obj.addresses);
            config.objects.push_back(std::move(obj));
        } else if (directive == "group") {
            want(3, "group <name> <member>[,...]");
            std::string name(tokens[1].text);
            if (resolved.count(name) || groups.count(name))
                throw ParseError(loc, "duplicate name '" + name + "'");
            GroupDecl decl;
            decl.loc = loc;
            for (auto item : split_commas(tokens[2].text)) {
                if (item.empty())
                    throw ParseError({lineno, tokens[2].column}, "empty group member");
                decl.members.emplace_back(item);
            }
            decl.object_slot = config.objects.size();
            NamedObject obj;
            obj.name = name;
            obj.is_group = true;
            obj.loc = loc;
            config.objects.push_back(std::move(obj));
            groups.emplace(std::move(name), std::move(decl));
        } else if (directive == "rule") {
            if (tokens.size() < 8)
                throw ParseError(loc, "expected 'rule permit|deny src <spec> dst <spec> svc "
                                      "<spec> [disabled]'");
            Rule rule;
            rule.loc = loc;
            rule.kind = RuleKind::Filter;
            if (tokens[1].text == "permit")
                rule.action = RuleAction::Permit;
            else if (tokens[1].text == "deny")
                rule.action = RuleAction::Deny;
            else
                throw ParseError({lineno, tokens[1].column}, "action must be permit or deny");
            keyword(2, "src");
            keyword(4, "dst");
            keyword(6, "svc");
            rule.src_spec = std::string(tokens[3].text);
            rule.dst_spec = std::string(tokens[5].text);
            rule.svc_spec = std::string(tokens[7].text);
            if (tokens.size() == 9) {
                keyword(8, "disabled");
                rule.enabled = false;
            } else if (tokens.size() > 9) {
                throw ParseError({lineno, tokens[9].column}, "trailing text after rule");
            }
            rule.index = config.rules.size();
            config.rules.push_back(std::move(rule));
        } else if (directive == "natrule") {
            Rule rule;
            rule.loc = loc;
            rule.kind = RuleKind::NatOpaque;
            rule.index = config.rules.size();
            rule.src_spec = line.substr(tokens[0].column - 1 + directive.size());
            config.rules.push_back(std::move(rule));
        } else {
            throw ParseError(loc, "unknown directive '" + std::string(directive) + "'");
        }
    }

    // Flatten groups depth-first; grey/black marking detects cycles.
    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark, std::less<>> marks;
    auto flatten = [&](auto&& self, std::string_view name, const SourceLocation& from) -> AddressSet {
        if (auto it = resolved.find(name); it != resolved.end())
            return it->second;
        auto git = groups.find(name);
        if (git == groups.end()) {
            if (looks_like_cidr(name)) {
                try {
                    return parse_cidr(name);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(from, e.what());
                }
            }
            throw ParseError(from, "undefined object '" + std::string(name) + "'");
        }
        auto& mark = marks[std::string(name)];
        if (mark == Mark::Grey)
            throw ParseError(git->second.loc, "cyclic group '" + std::string(name) + "'");
        mark = Mark::Grey;
        AddressSet flat;
        for (const auto& member : git->second.members)
            flat = flat.unite(self(self, member, git->second.loc));
        mark = Mark::Black;
        resolved.emplace(std::string(name), flat);
        config.objects[git->second.object_slot].addresses = flat;
        return flat;
    };
    for (const auto& [name, decl] : groups)
        (void)flatten(flatten, name, decl.loc);

    // Resolve rule specs against the completed object table.
    for (auto& rule : config.rules) {
        if (rule.kind != RuleKind::Filter)
            continue;
        try {
            auto r = resolve_rule(rule, resolved, registry);
            rule.src = std::move(r.src);
            rule.dst = std::move(r.dst);
            rule.svc = std::move(r.svc);
        } catch (const std::invalid_argument& e) {
            throw ParseError(rule.loc, e.what());
        }
    }

    if (config.version_category.empty())
        config.version_category = "unknown";
    return config;
}

EffectiveRegions effective_regions(const FirewallConfig& config)
{
    EffectiveRegions out;
    out.per_rule.reserve(config.rules.size());
    PacketRegion covered;
    for (const auto& rule : config.rules) {
        if (rule.kind != RuleKind::Filter || !rule.enabled) {
            out.per_rule.emplace_back();
            continue;
        }
        PacketRegion match = rule.match();
        PacketRegion effective = match.subtract(covered);
        covered = covered.unite(match);
        if (rule.action == RuleAction::Permit)
            out.allowed = out.allowed.unite(effective);
        out.per_rule.push_back(std::move(effective));
    }
    return out;
}

} // namespace fwaudit
