#ifndef FWAUDIT_COMPLEXITY_HPP
#define FWAUDIT_COMPLEXITY_HPP

#include <cstdint>

#include "fwaudit/ir.hpp"

namespace fwaudit {

// Vendor-comparable firewall complexity:
//   Check Point style:  FC = #Rules * #Interfaces + #Objects
//   PIX:                FC = #Lines - 50, floored at 1 so log10 stays defined
std::int64_t firewall_complexity(const FirewallConfig& config);

// The older measure RC = #Rules + #Objects + C(#Interfaces, 2). Not defined
// for PIX configurations; throws AnalysisError there.
std::int64_t legacy_rc(const FirewallConfig& config);

struct ErrorPrediction {
    double raw = 0;     // 8 * log10(fc) - 10
    double display = 0; // clamped at zero for presentation
};

// Requires fc >= 1; throws std::invalid_argument otherwise.
ErrorPrediction predicted_errors(double fc);

} // namespace fwaudit

#endif
