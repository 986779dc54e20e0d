#pragma once

// Brute-force helpers shared by the test binaries. None of them call into
// the code paths they are used to check.

#include "semilat/semilat.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace testsupport {

using semilat::Poset;
using semilat::Subset;

inline std::string fixture(const std::string& name) { return std::string(SEMILAT_FIXTURES) + "/" + name; }

/// Largest antichain by trying every subset (n ≤ 16).
inline std::size_t brute_width(const Poset& p) {
    const std::size_t n = p.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool anti = true;
        for (std::size_t i = 0; i < n && anti; ++i)
            for (std::size_t j = i + 1; j < n && anti; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) && (p.leq(i, j) || p.leq(j, i))) anti = false;
        if (anti) best = std::max<std::size_t>(best, __builtin_popcount(mask));
    }
    return best;
}

/// Every labeled partial order on n ≤ 4 points, by filtering all strict relations.
inline std::vector<Poset> all_posets(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) pairs.emplace_back(i, j);
    std::vector<Poset> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask >> k & 1) lt[pairs[k].first][pairs[k].second] = true;
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b) {
                if (lt[a][b] && lt[b][a]) ok = false;
                for (std::size_t c = 0; c < n && ok; ++c)
                    if (lt[a][b] && lt[b][c] && !lt[a][c]) ok = false;
            }
        if (!ok) continue;
        std::vector<semilat::CoverPair> rel;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (lt[a][b]) rel.emplace_back(a, b);
        out.push_back(semilat::poset_from_covers(n, rel));
    }
    return out;
}

/// All set partitions of `items`, blocks in order of first element.
inline void for_each_set_partition(const std::vector<std::size_t>& items,
                                   const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f) {
    std::vector<std::vector<std::size_t>> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == items.size()) {
            f(blocks);
            return;
        }
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            blocks[k].push_back(items[i]);
            rec(i + 1);
            blocks[k].pop_back();
        }
        blocks.push_back({items[i]});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

/// All down-sets of p as bitmasks.
inline std::vector<std::uint32_t> down_set_masks(const Poset& p) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << p.size()); ++m) {
        bool down = true;
        for (std::size_t u = 0; u < p.size() && down; ++u)
            if (m >> u & 1)
                for (std::size_t x = 0; x < p.size(); ++x)
                    if (p.leq(x, u) && !(m >> x & 1)) down = false;
        if (down) out.push_back(m);
    }
    return out;
}

/// The five axioms straight from their statements, on bitmask families.
inline bool naive_is_geometry(const Poset& p, const std::vector<std::uint32_t>& fam) {
    const std::size_t n = p.size();
    const std::uint32_t full = (1u << n) - 1;
    auto has = [&](std::uint32_t x) { return std::find(fam.begin(), fam.end(), x) != fam.end(); };
    auto down = [&](std::size_t u, bool strict) {
        std::uint32_t m = 0;
        for (std::size_t x = 0; x < n; ++x)
            if (p.leq(x, u) && (!strict || x != u)) m |= 1u << x;
        return m;
    };
    if (!has(0) || !has(full)) return false;
    for (std::size_t u = 0; u < n; ++u)
        if (!has(down(u, false)) || !has(down(u, true))) return false;
    for (auto x : fam) {
        for (std::size_t u = 0; u < n; ++u)
            if ((x >> u & 1) && (x & down(u, false)) != down(u, false)) return false;
        for (auto y : fam)
            if (!has(x & y)) return false;
    }
    auto covers = [&](std::uint32_t x, std::uint32_t y) {
        if ((x & y) != x || x == y) return false;
        for (auto z : fam)
            if (z != x && z != y && (x & z) == x && (z & y) == z) return false;
        return true;
    };
    for (auto x : fam)
        for (std::size_t u = 0; u < n; ++u) {
            if ((x >> u & 1) || (down(u, true) & x) != down(u, true)) continue;
            bool found = false;
            for (auto y : fam)
                if ((y >> u & 1) && (y & x) == x && covers(x, y)) found = true;
            if (!found) return false;
        }
    return true;
}

/// Number of geometries on p by trying every family of down-sets.
inline std::size_t naive_geometry_count(const Poset& p) {
    const auto ds = down_set_masks(p);
    std::size_t count = 0;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ds.size()); ++pick) {
        std::vector<std::uint32_t> fam;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (pick >> i & 1) fam.push_back(ds[i]);
        if (naive_is_geometry(p, fam)) ++count;
    }
    return count;
}

}  // namespace testsupport
