#ifndef FWAUDIT_REGISTRY_HPP
#define FWAUDIT_REGISTRY_HPP

#include <map>
#include <string>
#include <string_view>

#include "fwaudit/service_set.hpp"

namespace fwaudit {

// Named services the detectors and the FWN/PIX service syntax refer to.
// The defaults are conventional well-known ports; a registry document can
// override or extend any entry.
class ServiceRegistry {
public:
    static ServiceRegistry defaults();

    const ServiceSet* find(std::string_view name) const;
    void set(std::string name, ServiceSet svc);

    // Applies `service <name> <spec>[,<spec>...]` lines. Specs use the
    // FWN service syntax and may reference entries already present.
    void apply_overrides(const std::string& text);

    const std::map<std::string, ServiceSet, std::less<>>& entries() const { return services_; }

private:
    std::map<std::string, ServiceSet, std::less<>> services_;
};

// Parses one service spec item: any | tcp | udp | icmp | tcp/<p|lo-hi> |
// udp/<p|lo-hi> | proto/<n> | <registry name>. Throws std::invalid_argument.
ServiceSet parse_service_item(std::string_view item, const ServiceRegistry& registry);

// Comma-separated list of service spec items, united.
ServiceSet parse_service_spec(std::string_view spec, const ServiceRegistry& registry);

} // namespace fwaudit

#endif
