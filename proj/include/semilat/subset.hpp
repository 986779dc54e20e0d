#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace semilat {

/// Subsets of a dense ground set {0, ..., n-1}.
using Subset = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

inline Subset make_subset(std::size_t n, std::initializer_list<std::size_t> members) {
    Subset s(n);
    for (auto m : members) s.set(m);
    return s;
}

inline Subset make_subset(std::size_t n, const std::vector<std::size_t>& members) {
    Subset s(n);
    for (auto m : members) s.set(m);
    return s;
}

inline Subset full_subset(std::size_t n) {
    Subset s(n);
    s.set();
    return s;
}

/// Members of `s` in ascending order.
inline std::vector<std::size_t> members(const Subset& s) {
    std::vector<std::size_t> out;
    out.reserve(s.count());
    for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) out.push_back(i);
    return out;
}

template <class F>
void for_each_member(const Subset& s, F&& f) {
    for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) f(i);
}

/// "{0,2,5}" rendering used in reports and messages.
inline std::string to_string(const Subset& s) {
    std::string out = "{";
    bool first = true;
    for_each_member(s, [&](std::size_t i) {
        if (!first) out += ',';
        out += std::to_string(i);
        first = false;
    });
    return out + "}";
}

}  // namespace semilat
