#pragma once

#include "semilat/lattice.hpp"
#include "semilat/poset.hpp"

#include <cstddef>
#include <vector>

namespace semilat {

/// C_n: the chain 0 < 1 < ... < n of length n.
inline FiniteLattice chain_lattice(std::size_t n) { return lattice_from_poset(chain_poset(n + 1)); }

/// B_n on bitmasks: element i is the subset with bit pattern i.
inline FiniteLattice boolean_lattice(std::size_t n) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<CoverPair> covers;
    for (std::size_t s = 0; s < size; ++s)
        for (std::size_t b = 0; b < n; ++b)
            if (!(s >> b & 1)) covers.emplace_back(s, s | (std::size_t{1} << b));
    return lattice_from_covers(size, covers);
}

/// Direct product; element (x, y) has index x * |L2| + y.
inline FiniteLattice product_lattice(const FiniteLattice& l1, const FiniteLattice& l2) {
    const std::size_t n2 = l2.size();
    std::vector<CoverPair> covers;
    for (std::size_t x = 0; x < l1.size(); ++x)
        for (const auto& [lo, hi] : l2.order().covers()) covers.emplace_back(x * n2 + lo, x * n2 + hi);
    for (const auto& [lo, hi] : l1.order().covers())
        for (std::size_t y = 0; y < n2; ++y) covers.emplace_back(lo * n2 + y, hi * n2 + y);
    return lattice_from_covers(l1.size() * n2, covers);
}

/// The m×n grid: product of an m-element chain and an n-element chain.
inline FiniteLattice grid_lattice(std::size_t m, std::size_t n) {
    return product_lattice(chain_lattice(m - 1), chain_lattice(n - 1));
}

/// M_k: bottom 0, atoms 1..k, top k+1.
inline FiniteLattice m_k_lattice(std::size_t k) {
    std::vector<CoverPair> covers;
    for (std::size_t a = 1; a <= k; ++a) {
        covers.emplace_back(0, a);
        covers.emplace_back(a, k + 1);
    }
    return lattice_from_covers(k + 2, covers);
}

/// N5: 0 < 1 < 2 < 4 and 0 < 3 < 4.
inline FiniteLattice n5_lattice() { return lattice_from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}); }

/// S7, the feasible sets of a three-element antimatroid under inclusion:
/// 0=∅, 1={1}, 2={2}, 3={1,2}, 4={1,3}, 5={2,3}, 6={1,2,3}.
inline FiniteLattice s7_lattice() {
    return lattice_from_covers(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 6}, {4, 6}, {5, 6}});
}

/// Glued sum: the top of `lower` is identified with the bottom of `upper`.
/// Elements of `lower` keep their indices; the rest of `upper` follows.
inline FiniteLattice glued_sum(const FiniteLattice& lower, const FiniteLattice& upper) {
    const std::size_t n1 = lower.size();
    std::vector<std::size_t> index(upper.size());
    std::size_t next = n1;
    for (std::size_t y = 0; y < upper.size(); ++y) index[y] = (y == upper.bottom()) ? lower.top() : next++;
    std::vector<CoverPair> covers = lower.order().covers();
    for (const auto& [lo, hi] : upper.order().covers()) covers.emplace_back(index[lo], index[hi]);
    return lattice_from_covers(next, covers);
}

}  // namespace semilat
