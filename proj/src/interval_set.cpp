#include "fwaudit/interval_set.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fwaudit {

IntervalSet IntervalSet::range(std::uint32_t lo, std::uint32_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("interval lo > hi");
    IntervalSet s;
    s.intervals_.push_back({lo, hi});
    return s;
}

IntervalSet IntervalSet::full(std::uint32_t domain_hi)
{
    return range(0, domain_hi);
}

bool IntervalSet::contains(std::uint32_t v) const
{
    // intervals are sorted by lo; find the first interval ending at or after v
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), v,
                               [](const Interval& iv, std::uint32_t x) { return iv.hi < x; });
    return it != intervals_.end() && it->contains(v);
}

std::uint64_t IntervalSet::cardinality() const
{
    std::uint64_t n = 0;
    for (const auto& iv : intervals_)
        n += iv.width();
    return n;
}

void IntervalSet::add(std::uint32_t lo, std::uint32_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("interval lo > hi");

    std::vector<Interval> out;
    out.reserve(intervals_.size() + 1);
    Interval cur{lo, hi};
    bool placed = false;
    for (const auto& iv : intervals_) {
        // disjoint with a gap of at least one value: no merge
        if (iv.hi != kAddressMax && iv.hi + 1 < cur.lo) {
            out.push_back(iv);
        } else if (cur.hi != kAddressMax && cur.hi + 1 < iv.lo) {
            if (!placed) {
                out.push_back(cur);
                placed = true;
            }
            out.push_back(iv);
        } else {
            cur.lo = std::min(cur.lo, iv.lo);
            cur.hi = std::max(cur.hi, iv.hi);
        }
    }
    if (!placed)
        out.push_back(cur);
    intervals_ = std::move(out);
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const
{
    IntervalSet out = *this;
    for (const auto& iv : other.intervals_)
        out.add(iv.lo, iv.hi);
    return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const
{
    IntervalSet out;
    auto a = intervals_.begin();
    auto b = other.intervals_.begin();
    while (a != intervals_.end() && b != other.intervals_.end()) {
        std::uint32_t lo = std::max(a->lo, b->lo);
        std::uint32_t hi = std::min(a->hi, b->hi);
        if (lo <= hi)
            out.intervals_.push_back({lo, hi});
        // advance the interval that ends first
        if (a->hi < b->hi)
            ++a;
        else
            ++b;
    }
    return out;
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const
{
    IntervalSet out;
    auto b = other.intervals_.begin();
    for (const auto& iv : intervals_) {
        std::uint64_t lo = iv.lo; // 64-bit cursor avoids overflow at hi+1
        while (b != other.intervals_.end() && b->hi < lo)
            ++b;
        auto bb = b;
        while (lo <= iv.hi) {
            if (bb == other.intervals_.end() || bb->lo > iv.hi) {
                out.intervals_.push_back({std::uint32_t(lo), iv.hi});
                break;
            }
            if (bb->lo > lo)
                out.intervals_.push_back({std::uint32_t(lo), bb->lo - 1});
            lo = std::uint64_t(bb->hi) + 1;
            ++bb;
        }
    }
    return out;
}

IntervalSet IntervalSet::complement(std::uint32_t domain_hi) const
{
    return full(domain_hi).subtract(*this);
}

bool parse_ipv4(std::string_view text, std::uint32_t& out)
{
    std::uint32_t value = 0;
    int octets = 0;
    const char* p = text.data();
    const char* end = p + text.size();
    while (octets < 4) {
        unsigned octet = 0;
        auto [next, ec] = std::from_chars(p, end, octet);
        if (ec != std::errc() || next == p || octet > 255)
            return false;
        value = (value << 8) | octet;
        p = next;
        ++octets;
        if (octets < 4) {
            if (p == end || *p != '.')
                return false;
            ++p;
        }
    }
    if (p != end)
        return false;
    out = value;
    return true;
}

std::string format_ipv4(std::uint32_t addr)
{
    return std::to_string((addr >> 24) & 0xFF) + "." + std::to_string((addr >> 16) & 0xFF) + "." +
           std::to_string((addr >> 8) & 0xFF) + "." + std::to_string(addr & 0xFF);
}

AddressSet parse_cidr(std::string_view text)
{
    std::string_view addr_part = text;
    unsigned prefix = 32;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        addr_part = text.substr(0, slash);
        std::string_view len_part = text.substr(slash + 1);
        auto [next, ec] =
            std::from_chars(len_part.data(), len_part.data() + len_part.size(), prefix);
        if (ec != std::errc() || next != len_part.data() + len_part.size() || prefix > 32)
            throw std::invalid_argument("bad prefix length in '" + std::string(text) + "'");
    }
    std::uint32_t base = 0;
    if (!parse_ipv4(addr_part, base))
        throw std::invalid_argument("bad IPv4 address in '" + std::string(text) + "'");
    std::uint32_t host_mask = prefix == 0 ? kAddressMax : (prefix == 32 ? 0 : (1u << (32 - prefix)) - 1);
    if ((base & host_mask) != 0)
        throw std::invalid_argument("host bits set in '" + std::string(text) + "'");
    return AddressSet::range(base, base | host_mask);
}

} // namespace fwaudit
