#ifndef FWAUDIT_IR_HPP
#define FWAUDIT_IR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fwaudit/diagnostics.hpp"
#include "fwaudit/interval_set.hpp"
#include "fwaudit/packet_region.hpp"
#include "fwaudit/registry.hpp"
#include "fwaudit/service_set.hpp"

namespace fwaudit {

enum class Vendor { CheckpointLike, Pix };

std::string_view vendor_name(Vendor v);

enum class ZoneKind { Unassigned, External, Internal };

struct Interface {
    std::string name;
    ZoneKind zone = ZoneKind::Unassigned;
    std::string zone_id;    // internal zones only; distinct ids are distinct segments
    AddressSet attached;    // directly reachable networks (+ declared routes)
    int security_level = -1; // PIX only
    SourceLocation loc;

    bool operator==(const Interface&) const = default;
};

// Hosts, subnets, and groups of these. Groups are flattened at parse time,
// so `addresses` is always the fully resolved set.
struct NamedObject {
    std::string name;
    AddressSet addresses;
    bool is_group = false;
    SourceLocation loc;

    bool operator==(const NamedObject&) const = default;
};

enum class RuleAction { Permit, Deny };
enum class RuleKind { Filter, NatOpaque };

struct Rule {
    std::size_t index = 0; // position in the ordered rule list
    RuleAction action = RuleAction::Permit;
    RuleKind kind = RuleKind::Filter;
    bool enabled = true;
    std::string src_spec, dst_spec, svc_spec; // as written
    AddressSet src, dst;
    ServiceSet svc;
    SourceLocation loc;

    PacketRegion match() const { return PacketRegion::cross(src, dst, svc); }
    bool operator==(const Rule&) const = default;
};

struct FirewallConfig {
    std::string id;
    Vendor vendor = Vendor::CheckpointLike;
    std::string version_label;
    std::string version_category;
    std::vector<Interface> interfaces;
    std::vector<NamedObject> objects;
    std::vector<Rule> rules;
    std::size_t raw_line_count = 0; // PIX only

    // Counts are always derived from the containers, never stored.
    std::size_t rule_count() const { return rules.size(); }
    std::size_t object_count() const { return objects.size(); }
    std::size_t interface_count() const { return interfaces.size(); }

    bool operator==(const FirewallConfig&) const = default;
};

// Version-label bucketing into the four reporting categories.
std::string checkpoint_version_category(std::string_view label);

// Resolved name table built during parsing; maps object/group names to
// their flattened address sets.
using ObjectTable = std::map<std::string, AddressSet, std::less<>>;

ObjectTable object_table(const FirewallConfig& config);

// Flattens one address spec ("any", CIDR list, object/group names).
AddressSet resolve_address_spec(std::string_view spec, const ObjectTable& objects);

struct ResolvedRule {
    AddressSet src, dst;
    ServiceSet svc;
};

ResolvedRule resolve_rule(const Rule& rule, const ObjectTable& objects,
                          const ServiceRegistry& registry);

// Parses the normalized FWN text format. Throws ParseError on syntax
// errors, undefined references, duplicate names, and group cycles.
FirewallConfig parse_fwn(const std::string& text, const ServiceRegistry& registry);

// First-match semantics. effective[i] is rule i's match space minus the
// union of all earlier enabled filter matches (any action); disabled and
// NAT-opaque rules get the empty region. `allowed` is the union over
// permit rules and equals the first-match permit set.
struct EffectiveRegions {
    std::vector<PacketRegion> per_rule;
    PacketRegion allowed;
};

EffectiveRegions effective_regions(const FirewallConfig& config);

} // namespace fwaudit

#endif
