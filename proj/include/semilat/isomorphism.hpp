#pragma once

#include "semilat/lattice.hpp"
#include "semilat/predicates.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

namespace semilat {

namespace detail {

// Isomorphism-invariant fingerprint of a join-irreducible element.
inline auto jir_signature(const FiniteLattice& l, const JirPoset& j, std::size_t pos) {
    const std::size_t x = j.elements[pos];
    return std::tuple{l.height(x), j.order.down(pos).count(), j.order.up(pos).count(),
                      l.order().down(x).count(), l.order().up(x).count()};
}

}  // namespace detail

/// A lattice isomorphism L1 -> L2 as an index map, if one exists.
///
/// Every element is the join of the join-irreducibles below it, so an
/// isomorphism is determined by an order isomorphism of the Jir posets.
/// The search backtracks over those, pruned by per-element fingerprints,
/// extends each candidate by joins and keeps the first that is a bijection
/// carrying covers onto covers.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteLattice& l1, const FiniteLattice& l2) {
    if (l1.size() != l2.size() || l1.length() != l2.length() ||
        l1.order().covers().size() != l2.order().covers().size())
        return std::nullopt;
    const JirPoset j1 = join_irreducibles(l1);
    const JirPoset j2 = join_irreducibles(l2);
    const std::size_t k = j1.size();
    if (k != j2.size()) return std::nullopt;

    using Sig = decltype(detail::jir_signature(l1, j1, 0));
    std::vector<Sig> s1(k), s2(k);
    for (std::size_t i = 0; i < k; ++i) {
        s1[i] = detail::jir_signature(l1, j1, i);
        s2[i] = detail::jir_signature(l2, j2, i);
    }
    {
        auto a = s1, b = s2;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    const auto& order1 = j1.order.linear_extension();
    std::vector<std::size_t> assign(k, npos);
    std::vector<char> used(k, 0);
    std::optional<std::vector<std::size_t>> result;

    auto extend_and_verify = [&]() -> bool {
        std::vector<std::size_t> f(l1.size());
        Subset image(l2.size());
        for (std::size_t z = 0; z < l1.size(); ++z) {
            std::size_t acc = l2.bottom();
            for_each_member(l1.order().down(z) & j1.members,
                            [&](std::size_t x) { acc = l2.join(acc, j2.elements[assign[j1.position(x)]]); });
            if (image.test(acc)) return false;
            image.set(acc);
            f[z] = acc;
        }
        for (const auto& [x, y] : l1.order().covers())
            if (!l2.covered_by(f[x], f[y])) return false;
        result = std::move(f);
        return true;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (depth == k) return extend_and_verify();
        const std::size_t p = order1[depth];
        for (std::size_t q = 0; q < k; ++q) {
            if (used[q] || s1[p] != s2[q]) continue;
            bool consistent = true;
            for (std::size_t d = 0; d < depth && consistent; ++d) {
                const std::size_t p2 = order1[d];
                const std::size_t q2 = assign[p2];
                consistent = j1.order.leq(p2, p) == j2.order.leq(q2, q) && j1.order.leq(p, p2) == j2.order.leq(q, q2);
            }
            if (!consistent) continue;
            assign[p] = q;
            used[q] = 1;
            if (search(depth + 1)) return true;
            used[q] = 0;
            assign[p] = npos;
        }
        return false;
    };
    search(0);
    return result;
}

inline bool are_isomorphic(const FiniteLattice& l1, const FiniteLattice& l2) {
    return find_isomorphism(l1, l2).has_value();
}

/// A length-preserving {0,1}-embedding L -> K, if one exists.
///
/// Elements of L are assigned in a linear extension; each candidate image
/// must cover the images of the element's lower covers, keep injectivity,
/// and agree with the order and meets of everything assigned so far. A
/// complete assignment is accepted only if it passes the full embedding check.
inline std::optional<std::vector<std::size_t>> find_length_preserving_embedding(const FiniteLattice& l,
                                                                                const FiniteLattice& k) {
    if (l.length() != k.length() || l.size() > k.size()) return std::nullopt;
    const auto& order = l.order().linear_extension();
    std::vector<std::size_t> f(l.size(), npos);
    std::vector<char> used(k.size(), 0);
    std::optional<std::vector<std::size_t>> result;
    // Cover-preserving maps between graded lattices preserve heights.
    const bool graded = check_jhcc(l) && check_jhcc(k);

    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (depth == order.size()) {
            if (!verify_length_preserving_embedding(l, k, f)) return false;
            result = f;
            return true;
        }
        const std::size_t x = order[depth];
        auto admissible = [&](std::size_t y) {
            if (used[y]) return false;
            if (x == l.bottom() && y != k.bottom()) return false;
            if (x == l.top() && y != k.top()) return false;
            if (graded && k.height(y) != l.height(x)) return false;
            for (auto lo : l.order().lower_covers(x))
                if (!k.covered_by(f[lo], y)) return false;
            for (std::size_t d = 0; d < depth; ++d) {
                const std::size_t z = order[d];
                if (l.leq(z, x) != k.leq(f[z], y) || l.leq(x, z) != k.leq(y, f[z])) return false;
                if (f[l.meet(x, z)] != k.meet(y, f[z])) return false;
            }
            return true;
        };
        for (std::size_t y = 0; y < k.size(); ++y) {
            if (!admissible(y)) continue;
            f[x] = y;
            used[y] = 1;
            if (search(depth + 1)) return true;
            used[y] = 0;
            f[x] = npos;
        }
        return false;
    };
    search(0);
    return result;
}

}  // namespace semilat
