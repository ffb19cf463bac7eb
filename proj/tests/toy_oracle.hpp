#ifndef FWAUDIT_TESTS_TOY_ORACLE_HPP
#define FWAUDIT_TESTS_TOY_ORACLE_HPP

// Exhaustive per-packet first-match enumerator over a toy space, kept
// independent of the region algebra it is used to check. Addresses and
// ports use 6 bits. The protocol axis carries TCP, UDP, ICMP, one "other"
// protocol rules may name (99) and one they may not (47); port slot 64
// stands for the entire high range [64, 65535]. Both representatives are
// sound because every service the toy configs can express either covers
// the represented range completely or misses it completely.

#include <array>
#include <cstdint>
#include <vector>

#include "fwaudit/audit.hpp"
#include "fwaudit/ir.hpp"

namespace fwaudit::testsupport {

inline constexpr int kToyAddrCount = 64;
inline constexpr int kToyPortSlots = 65; // 0..63 plus the high-range slot
inline constexpr int kToyPpCount = 2 * kToyPortSlots + 3;
inline constexpr std::uint8_t kToyOtherSeeded = 99;
inline constexpr std::uint8_t kToyOtherHidden = 47;

// (protocol, port-slot) plane index.
int toy_pp_tcp(int slot);
int toy_pp_udp(int slot);
int toy_pp_icmp();
int toy_pp_other_seeded();
int toy_pp_other_hidden();

// Packet membership bitmap: bits[pp * 64 + src] is a destination mask.
struct ToyRaster {
    std::vector<std::uint64_t> bits = std::vector<std::uint64_t>(kToyPpCount * kToyAddrCount);

    std::uint64_t& row(int pp, int src) { return bits[std::size_t(pp) * kToyAddrCount + src]; }
    std::uint64_t row(int pp, int src) const
    {
        return bits[std::size_t(pp) * kToyAddrCount + src];
    }
    bool any() const;
    bool operator==(const ToyRaster&) const = default;
};

ToyRaster rasterize(const PacketRegion& region);

// Toy registry: the same service vocabulary as the defaults, scaled into
// 6-bit port space with the same protocol profile per service.
ServiceRegistry toy_registry();

inline constexpr std::uint64_t kToyAddressThreshold = 8;
inline constexpr std::uint64_t kToyPortThreshold = 16;

// Zones: internal zone "a" = [0,15], "b" = [16,31]; external is everything
// else. Rules are appended verbatim (indices are fixed up).
FirewallConfig toy_config(std::vector<Rule> rules);

struct OracleResult {
    std::vector<ToyRaster> decided; // per rule: packets this rule decides
    ToyRaster permitted;
    std::array<bool, kErrorCodeCount> indicators{}; // class/named/syntactic codes
    std::array<std::uint64_t, kErrorCodeCount> threshold_counts{};
};

// First-match scan of every toy packet plus an independent re-derivation
// of the trigger, containment, and threshold rules.
OracleResult run_oracle(const FirewallConfig& config,
                        std::uint64_t address_threshold = kToyAddressThreshold,
                        std::uint64_t port_threshold = kToyPortThreshold);

// Random rule-sets (up to max_rules) drawn from the toy vocabulary:
// interval sources/destinations inside [0,63], services from {any, all
// TCP, all UDP, icmp, proto 99, port ranges, toy registry names}.
FirewallConfig random_toy_config(std::uint64_t seed, int max_rules = 10);

} // namespace fwaudit::testsupport

#endif
