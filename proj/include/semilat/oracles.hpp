#pragma once

// Deliberately naive re-derivations used to cross-check the lattice tables.
// Nothing here reuses the meet/join/cover machinery of FiniteLattice; only
// the underlying order relation is read.

#include "semilat/errors.hpp"
#include "semilat/lattice.hpp"

#include <cstddef>
#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace semilat::oracle {

inline constexpr std::size_t default_cap = 512;

inline void check_cap(const FiniteLattice& l, std::size_t cap) {
    if (l.size() > cap)
        throw CapExceededError("lattice has " + std::to_string(l.size()) + " elements, oracle cap is " +
                               std::to_string(cap));
}

struct Tables {
    std::vector<std::vector<std::size_t>> meet;
    std::vector<std::vector<std::size_t>> join;
};

/// glb and lub of every pair by scanning all bounds.
inline Tables meet_join(const FiniteLattice& l, std::size_t cap = default_cap) {
    check_cap(l, cap);
    const Poset& p = l.order();
    const std::size_t n = p.size();
    Tables t{std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n, npos)),
             std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n, npos))};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<std::size_t> lower, upper;
            for (std::size_t z = 0; z < n; ++z) {
                if (p.leq(z, x) && p.leq(z, y)) lower.push_back(z);
                if (p.leq(x, z) && p.leq(y, z)) upper.push_back(z);
            }
            for (auto g : lower) {
                bool greatest = true;
                for (auto z : lower) greatest = greatest && p.leq(z, g);
                if (greatest) t.meet[x][y] = g;
            }
            for (auto g : upper) {
                bool least = true;
                for (auto z : upper) least = least && p.leq(g, z);
                if (least) t.join[x][y] = g;
            }
        }
    return t;
}

/// Cover pairs by a triple loop.
inline std::vector<std::pair<std::size_t, std::size_t>> covers(const FiniteLattice& l, std::size_t cap = default_cap) {
    check_cap(l, cap);
    const Poset& p = l.order();
    const std::size_t n = p.size();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y || !p.leq(x, y)) continue;
            bool between = false;
            for (std::size_t z = 0; z < n && !between; ++z)
                between = z != x && z != y && p.leq(x, z) && p.leq(z, y);
            if (!between) out.emplace_back(x, y);
        }
    return out;
}

/// Lengths of all maximal chains of [a, b], by depth-first enumeration.
inline std::set<std::size_t> maximal_chain_lengths(const FiniteLattice& l, std::size_t a, std::size_t b,
                                                   std::size_t cap = default_cap) {
    check_cap(l, cap);
    const auto cov = covers(l, cap);
    std::vector<std::vector<std::size_t>> up(l.size());
    for (const auto& [x, y] : cov) up[x].push_back(y);
    std::set<std::size_t> lengths;
    if (!l.order().leq(a, b)) return lengths;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t x, std::size_t len) {
        if (x == b) {
            lengths.insert(len);
            return;
        }
        for (auto y : up[x])
            if (l.order().leq(y, b)) dfs(y, len + 1);
    };
    dfs(a, 0);
    return lengths;
}

/// JHCC by enumerating maximal chains of every interval.
inline bool jhcc(const FiniteLattice& l, std::size_t cap = default_cap) {
    for (std::size_t a = 0; a < l.size(); ++a)
        for (std::size_t b = 0; b < l.size(); ++b)
            if (l.order().leq(a, b) && maximal_chain_lengths(l, a, b, cap).size() > 1) return false;
    return true;
}

}  // namespace semilat::oracle
