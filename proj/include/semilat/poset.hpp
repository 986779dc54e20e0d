#pragma once

#include "semilat/errors.hpp"
#include "semilat/subset.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace semilat {

using CoverPair = std::pair<std::size_t, std::size_t>;

/// Finite poset on the indices 0..n-1.
///
/// The order is stored as principal down-sets (`down(u)` holds every x <= u)
/// and principal up-sets, so comparisons are single bit tests. The cover list
/// is canonical: sorted, and exactly the pairs x < y with nothing in between.
/// Values are immutable once built.
class Poset {
  public:
    Poset() = default;

    /// Builds a poset from its principal down-sets, validating that the
    /// relation is reflexive, antisymmetric and transitive.
    static Poset from_down_sets(std::vector<Subset> down) {
        const std::size_t n = down.size();
        for (std::size_t u = 0; u < n; ++u) {
            if (down[u].size() != n) throw IndexError("down-set of " + std::to_string(u) + " has wrong width");
            if (!down[u].test(u)) throw LatticeError("relation is not reflexive at " + std::to_string(u));
        }
        for (std::size_t y = 0; y < n; ++y) {
            for_each_member(down[y], [&](std::size_t x) {
                if (x != y && down[x].test(y))
                    throw CycleError("relation is not antisymmetric: " + std::to_string(x) + " and " +
                                     std::to_string(y));
                if (!down[x].is_subset_of(down[y]))
                    throw LatticeError("relation is not transitive below " + std::to_string(y));
            });
        }
        Poset p;
        p.down_ = std::move(down);
        p.finish();
        return p;
    }

    std::size_t size() const noexcept { return down_.size(); }

    bool leq(std::size_t x, std::size_t y) const { return down_[y].test(x); }
    bool less(std::size_t x, std::size_t y) const { return x != y && down_[y].test(x); }
    bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }

    /// {x : x <= u}
    const Subset& down(std::size_t u) const { return down_[u]; }
    /// {x : x >= u}
    const Subset& up(std::size_t u) const { return up_[u]; }

    const std::vector<CoverPair>& covers() const noexcept { return covers_; }
    const std::vector<std::size_t>& lower_covers(std::size_t u) const { return lower_[u]; }
    const std::vector<std::size_t>& upper_covers(std::size_t u) const { return upper_[u]; }

    bool is_cover(std::size_t x, std::size_t y) const {
        const auto& lc = lower_[y];
        return std::find(lc.begin(), lc.end(), x) != lc.end();
    }

    /// A linear extension: x < y implies x appears before y.
    const std::vector<std::size_t>& linear_extension() const noexcept { return linear_; }

    /// Subposet induced on `elements`; element i of the result is elements[i].
    Poset induced(const std::vector<std::size_t>& elements) const {
        const std::size_t k = elements.size();
        std::vector<Subset> d(k, Subset(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (leq(elements[j], elements[i])) d[i].set(j);
        return from_down_sets(std::move(d));
    }

    friend bool operator==(const Poset& a, const Poset& b) { return a.down_ == b.down_; }

  private:
    void finish() {
        const std::size_t n = down_.size();
        up_.assign(n, Subset(n));
        for (std::size_t y = 0; y < n; ++y) for_each_member(down_[y], [&](std::size_t x) { up_[x].set(y); });

        linear_.resize(n);
        std::iota(linear_.begin(), linear_.end(), std::size_t{0});
        std::stable_sort(linear_.begin(), linear_.end(),
                         [&](std::size_t a, std::size_t b) { return down_[a].count() < down_[b].count(); });

        lower_.assign(n, {});
        upper_.assign(n, {});
        covers_.clear();
        for (std::size_t y = 0; y < n; ++y) {
            Subset below = down_[y];
            below.reset(y);
            for_each_member(below, [&](std::size_t x) {
                // x is maximal in `below` iff nothing in `below` lies strictly above it.
                if ((up_[x] & below).count() == 1) {
                    lower_[y].push_back(x);
                    upper_[x].push_back(y);
                    covers_.emplace_back(x, y);
                }
            });
        }
        std::sort(covers_.begin(), covers_.end());
        for (auto& u : upper_) std::sort(u.begin(), u.end());
    }

    std::vector<Subset> down_;
    std::vector<Subset> up_;
    std::vector<CoverPair> covers_;
    std::vector<std::vector<std::size_t>> lower_;
    std::vector<std::vector<std::size_t>> upper_;
    std::vector<std::size_t> linear_;
};

inline void check_index(const Poset& p, std::size_t u) {
    if (u >= p.size())
        throw IndexError("index " + std::to_string(u) + " out of range for " + std::to_string(p.size()) +
                         " elements");
}

/// Poset whose order is the reflexive-transitive closure of `pairs`.
/// Throws CycleError when the closure is not antisymmetric.
inline Poset poset_from_covers(std::size_t n, const std::vector<CoverPair>& pairs) {
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> succs(n);
    for (const auto& [lo, hi] : pairs) {
        if (lo >= n || hi >= n)
            throw IndexError("pair (" + std::to_string(lo) + "," + std::to_string(hi) + ") out of range for " +
                             std::to_string(n) + " elements");
        if (lo == hi) continue;
        preds[hi].push_back(lo);
        succs[lo].push_back(hi);
        ++indegree[hi];
    }
    // Kahn's algorithm; leftover vertices sit on a cycle.
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) queue.push_back(v);
    std::vector<Subset> down(n, Subset(n));
    std::size_t processed = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const std::size_t v = queue[qi];
        ++processed;
        down[v].set(v);
        for (auto p : preds[v]) down[v] |= down[p];
        for (auto s : succs[v])
            if (--indegree[s] == 0) queue.push_back(s);
    }
    if (processed != n) {
        for (std::size_t v = 0; v < n; ++v)
            if (indegree[v] != 0) throw CycleError("cover list has a cycle through element " + std::to_string(v));
    }
    return Poset::from_down_sets(std::move(down));
}

inline Poset chain_poset(std::size_t n) {
    std::vector<CoverPair> pairs;
    for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return poset_from_covers(n, pairs);
}

inline Poset antichain_poset(std::size_t n) { return poset_from_covers(n, {}); }

inline Subset down_set(const Poset& p, std::size_t u) {
    check_index(p, u);
    return p.down(u);
}

inline Subset strict_down_set(const Poset& p, std::size_t u) {
    check_index(p, u);
    Subset s = p.down(u);
    s.reset(u);
    return s;
}

inline Subset up_set(const Poset& p, std::size_t u) {
    check_index(p, u);
    return p.up(u);
}

inline bool is_down_set(const Poset& p, const Subset& x) {
    bool ok = true;
    for_each_member(x, [&](std::size_t u) { ok = ok && p.down(u).is_subset_of(x); });
    return ok;
}

inline bool is_chain(const Poset& p, const std::vector<std::size_t>& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (!p.comparable(c[i], c[j])) return false;
    return true;
}

inline bool is_chain(const Poset& p, const Subset& c) { return is_chain(p, members(c)); }

inline bool is_antichain(const Poset& p, const std::vector<std::size_t>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (p.comparable(a[i], a[j])) return false;
    return true;
}

/// Heights: the length of the longest chain ending at each element.
inline std::vector<std::size_t> heights(const Poset& p) {
    std::vector<std::size_t> h(p.size(), 0);
    for (auto v : p.linear_extension())
        for (auto lo : p.lower_covers(v)) h[v] = std::max(h[v], h[lo] + 1);
    return h;
}

/// Longest chain cardinality minus one; 0 for the empty poset.
inline std::size_t poset_length(const Poset& p) {
    const auto h = heights(p);
    return h.empty() ? 0 : *std::max_element(h.begin(), h.end());
}

/// Chains in increasing order, pairwise disjoint, covering the ground set.
struct ChainPartition {
    std::vector<std::vector<std::size_t>> chains;

    std::size_t size() const noexcept { return chains.size(); }
};

/// True iff `part` is a partition of {0..n-1} into chains of `p`.
inline bool is_chain_partition(const Poset& p, const ChainPartition& part) {
    Subset seen(p.size());
    for (const auto& c : part.chains) {
        if (c.empty()) return false;
        for (auto x : c) {
            if (x >= p.size() || seen.test(x)) return false;
            seen.set(x);
        }
        if (!is_chain(p, c)) return false;
    }
    return seen.count() == p.size();
}

namespace detail {

/// Maximum matching in the strict-order bipartite graph (left x -- right y
/// iff x < y). Kuhn's augmenting paths, vertices and candidates scanned in
/// ascending index order so the result is reproducible.
struct OrderMatching {
    std::vector<std::size_t> succ;  // matched right partner of left x
    std::vector<std::size_t> pred;  // matched left partner of right y
    std::size_t size = 0;
};

inline bool kuhn_augment(const Poset& p, std::size_t x, std::vector<char>& visited, OrderMatching& m) {
    const Subset& above = p.up(x);
    for (auto y = above.find_first(); y != Subset::npos; y = above.find_next(y)) {
        if (y == x || visited[y]) continue;
        visited[y] = 1;
        if (m.pred[y] == npos || kuhn_augment(p, m.pred[y], visited, m)) {
            m.succ[x] = y;
            m.pred[y] = x;
            return true;
        }
    }
    return false;
}

inline OrderMatching order_matching(const Poset& p) {
    const std::size_t n = p.size();
    OrderMatching m{std::vector<std::size_t>(n, npos), std::vector<std::size_t>(n, npos), 0};
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<char> visited(n, 0);
        if (kuhn_augment(p, x, visited, m)) ++m.size;
    }
    return m;
}

}  // namespace detail

/// A maximum antichain, read off a minimum vertex cover of the matching
/// graph (König). Its size equals the minimum number of chains.
inline std::vector<std::size_t> maximum_antichain(const Poset& p) {
    const std::size_t n = p.size();
    const auto m = detail::order_matching(p);
    // Alternating reachability from unmatched left vertices.
    std::vector<char> left_reached(n, 0), right_reached(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t x = 0; x < n; ++x)
        if (m.succ[x] == npos) {
            left_reached[x] = 1;
            stack.push_back(x);
        }
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for_each_member(p.up(x), [&](std::size_t y) {
            if (y == x || right_reached[y]) return;
            right_reached[y] = 1;
            const std::size_t z = m.pred[y];
            if (z != npos && !left_reached[z]) {
                left_reached[z] = 1;
                stack.push_back(z);
            }
        });
    }
    // Cover = (left not reached) + (right reached); the antichain avoids both copies.
    std::vector<std::size_t> antichain;
    for (std::size_t v = 0; v < n; ++v)
        if (left_reached[v] && !right_reached[v]) antichain.push_back(v);
    return antichain;
}

/// Minimum chain partition (Dilworth number of chains) via the Fulkerson
/// reduction to bipartite matching. Verifies against a maximum antichain.
inline ChainPartition width_chain_partition(const Poset& p) {
    const std::size_t n = p.size();
    const auto m = detail::order_matching(p);
    ChainPartition part;
    for (std::size_t v = 0; v < n; ++v) {
        if (m.pred[v] != npos) continue;
        std::vector<std::size_t> chain;
        for (std::size_t x = v; x != npos; x = m.succ[x]) chain.push_back(x);
        part.chains.push_back(std::move(chain));
    }
    const auto antichain = maximum_antichain(p);
    if (part.size() != n - m.size || antichain.size() != part.size() || !is_antichain(p, antichain))
        throw VerificationError("chain partition size disagrees with maximum antichain");
    return part;
}

inline std::size_t poset_width(const Poset& p) { return width_chain_partition(p).size(); }

/// True iff every element of c1 is incomparable to every element of c2.
inline bool are_parallel(const Poset& p, const std::vector<std::size_t>& c1, const std::vector<std::size_t>& c2) {
    for (auto x : c1) check_index(p, x);
    for (auto x : c2) check_index(p, x);
    if (!is_chain(p, c1) || !is_chain(p, c2)) throw NotAChainError("are_parallel: argument is not a chain");
    for (auto x : c1)
        for (auto y : c2)
            if (p.comparable(x, y)) return false;
    return true;
}

inline bool are_parallel(const Poset& p, const Subset& c1, const Subset& c2) {
    return are_parallel(p, members(c1), members(c2));
}

}  // namespace semilat
