#ifndef FWAUDIT_PIX_HPP
#define FWAUDIT_PIX_HPP

#include <string>
#include <vector>

#include "fwaudit/ir.hpp"

namespace fwaudit {

enum class PixMode {
    Strict,  // unknown directives are collected and reported as one error
    Lenient, // unknown lines are counted, skipped, and noted as diagnostics
};

struct PixParseResult {
    FirewallConfig config;
    std::vector<Diagnostic> diagnostics;
};

// Parses the supported PIX 6.x-style configuration subset: version header,
// nameif/ip address, name aliases, object-groups (network and service),
// access-list entries, access-group bindings, and route statements.
// conduit/static/nat/global lines are counted and surfaced as NAT-opaque
// rules. Zone roles are not assigned here; see infer_zones.
PixParseResult parse_pix(const std::string& text, PixMode mode,
                         const ServiceRegistry& registry);

// Assigns zone roles: the unique lowest-security-level interface becomes
// EXTERNAL and every other interface becomes its own internal zone. An
// optional sidecar document (FWN interface directives) overrides roles and
// adds routed networks; without it, a tie for the lowest level is an error.
FirewallConfig infer_zones(FirewallConfig config, const std::string* sidecar = nullptr);

// PIX version-label bucketing into the four reporting categories.
std::string pix_version_category(std::string_view label);

// Lines in a document exactly as stored: newline-separated segments, with
// no phantom line after a trailing newline.
std::size_t count_lines(std::string_view text);

} // namespace fwaudit

#endif
