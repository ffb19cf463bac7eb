#ifndef FWAUDIT_INTERVAL_SET_HPP
#define FWAUDIT_INTERVAL_SET_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fwaudit {

// Inclusive [lo, hi] interval over an unsigned 32-bit axis.
struct Interval {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;

    bool contains(std::uint32_t v) const { return lo <= v && v <= hi; }
    std::uint64_t width() const { return std::uint64_t(hi) - lo + 1; }
    bool operator==(const Interval&) const = default;
};

// Canonical set of disjoint, non-adjacent, ascending inclusive intervals.
// Canonical form makes representation equality coincide with set equality.
// All operations are pure; instances are safe to share across threads.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet single(std::uint32_t v) { return range(v, v); }
    static IntervalSet range(std::uint32_t lo, std::uint32_t hi);
    static IntervalSet full(std::uint32_t domain_hi);

    bool empty() const { return intervals_.empty(); }
    bool contains(std::uint32_t v) const;
    // Exact element count; fits in 64 bits even for the full 32-bit axis.
    std::uint64_t cardinality() const;
    const std::vector<Interval>& intervals() const { return intervals_; }

    // Inserts [lo, hi], merging with existing/adjacent intervals.
    void add(std::uint32_t lo, std::uint32_t hi);

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet subtract(const IntervalSet& other) const;
    IntervalSet complement(std::uint32_t domain_hi) const;
    bool covers(const IntervalSet& other) const { return other.subtract(*this).empty(); }

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<Interval> intervals_;
};

// IPv4 address sets and TCP/UDP port sets share the interval machinery;
// only the domain bound differs.
using AddressSet = IntervalSet;
using PortSet = IntervalSet;

inline constexpr std::uint32_t kAddressMax = 0xFFFFFFFFu;
inline constexpr std::uint32_t kPortMax = 65535u;

// "a.b.c.d" or "a.b.c.d/len". A bare address is a /32. Host bits set
// below the prefix are rejected (almost always a typo in a rule-set).
AddressSet parse_cidr(std::string_view text);

// Dotted-quad parse/format for single addresses.
bool parse_ipv4(std::string_view text, std::uint32_t& out);
std::string format_ipv4(std::uint32_t addr);

} // namespace fwaudit

#endif
