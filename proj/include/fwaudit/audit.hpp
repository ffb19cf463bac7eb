#ifndef FWAUDIT_AUDIT_HPP
#define FWAUDIT_AUDIT_HPP

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fwaudit/complexity.hpp"
#include "fwaudit/ir.hpp"
#include "fwaudit/registry.hpp"

namespace fwaudit {

inline constexpr int kErrorCodeCount = 36;

enum class ErrorCategory { Inbound, Outbound, Internal, Risky };
enum class ErrorKind { ServiceClass, NamedService, Threshold, Syntactic };
enum class ServiceClass { Any, AllTcp, AllUdp };
enum class ThresholdAxis { DstAddresses, SrcAddresses, TcpPorts };

struct ErrorCodeInfo {
    std::string_view code; // "i01" .. "r01"
    ErrorCategory category;
    ErrorKind kind;
    std::string_view summary;
    std::string_view service;                   // registry key (named + threshold codes)
    ServiceClass service_class = ServiceClass::Any; // class codes + i14/o07 port space
    ThresholdAxis axis = ThresholdAxis::DstAddresses;
};

// The full 36-code catalogue: 21 inbound, 9 outbound, 5 internal, 1 risky.
const std::array<ErrorCodeInfo, kErrorCodeCount>& error_catalogue();
int error_code_index(std::string_view code); // -1 if unknown
std::string_view error_category_name(ErrorCategory c);

using CodeSet = std::bitset<kErrorCodeCount>;

// Ancestor relation for containment suppression: allowing a named service
// is a special case of allowing all ports on its protocol, which is a
// special case of allowing Any. Protocol-borne edges are derived from the
// active registry so overrides stay consistent.
class ContainmentDag {
public:
    explicit ContainmentDag(const ServiceRegistry& registry);

    const CodeSet& ancestors(int code) const { return ancestors_[code]; }

private:
    std::array<CodeSet, kErrorCodeCount> ancestors_;
};

// Traffic direction carriers. Inbound crosses from external to internal
// addresses, outbound the reverse, internal between two distinct internal
// zones. The three are pairwise disjoint.
struct DirectionRegions {
    PacketRegion inbound;
    PacketRegion outbound;
    PacketRegion internal;
};

DirectionRegions direction_regions(const FirewallConfig& config);

struct AuditOptions {
    std::uint64_t address_threshold = 256; // strict "over": trigger at count >= threshold+1
    std::uint64_t port_threshold = 2000;
};

struct EvidenceRule {
    std::size_t index = 0;
    std::size_t line = 0; // source line of the attributed rule

    bool operator==(const EvidenceRule&) const = default;
};

struct ErrorEvidence {
    std::vector<EvidenceRule> rules;
    std::optional<std::uint64_t> count;     // threshold codes: aggregate reach
    std::optional<std::uint64_t> threshold; // the bound the count was tested against

    bool operator==(const ErrorEvidence&) const = default;
};

struct AuditReport {
    std::string config_id;
    Vendor vendor = Vendor::CheckpointLike;
    std::string version_category;
    std::size_t rules = 0, objects = 0, interfaces = 0, lines = 0;
    std::int64_t fc = 0;
    std::array<bool, kErrorCodeCount> indicators{};
    std::array<ErrorEvidence, kErrorCodeCount> evidence{};

    int error_count() const;
    bool operator==(const AuditReport&) const = default;
};

// Per-rule raw triggers, before containment. Exposed for testing.
std::vector<CodeSet> rule_triggers(const FirewallConfig& config,
                                   const std::vector<PacketRegion>& effective,
                                   const DirectionRegions& dirs,
                                   const ServiceRegistry& registry);

// Aggregate reach counts for the nine threshold codes (other entries are
// zero), independent of the trigger bound. Exposed for testing.
std::array<std::uint64_t, kErrorCodeCount> threshold_counts(const FirewallConfig& config,
                                                            const ServiceRegistry& registry);

// The whole pipeline: effective regions, directions, triggers, thresholds,
// containment, report assembly. Pure; reports are deterministic.
AuditReport audit_config(const FirewallConfig& config, const ServiceRegistry& registry,
                         const AuditOptions& options = {});

} // namespace fwaudit

#endif
