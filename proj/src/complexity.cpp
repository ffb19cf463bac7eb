#include "fwaudit/complexity.hpp"

#include <cmath>
#include <stdexcept>

namespace fwaudit {

std::int64_t firewall_complexity(const FirewallConfig& config)
{
    if (config.vendor == Vendor::Pix) {
        std::int64_t fc = std::int64_t(config.raw_line_count) - 50;
        return fc < 1 ? 1 : fc;
    }
    return std::int64_t(config.rule_count()) * std::int64_t(config.interface_count()) +
           std::int64_t(config.object_count());
}

std::int64_t legacy_rc(const FirewallConfig& config)
{
    if (config.vendor == Vendor::Pix)
        throw AnalysisError("RC is not defined for PIX configurations");
    std::int64_t interfaces = std::int64_t(config.interface_count());
    return std::int64_t(config.rule_count()) + std::int64_t(config.object_count()) +
           interfaces * (interfaces - 1) / 2;
}

ErrorPrediction predicted_errors(double fc)
{
    if (!(fc >= 1))
        throw std::invalid_argument("predicted_errors requires fc >= 1");
    ErrorPrediction p;
    p.raw = 8.0 * std::log10(fc) - 10.0;
    p.display = p.raw < 0 ? 0 : p.raw;
    return p;
}

} // namespace fwaudit
