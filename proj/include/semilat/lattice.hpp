#pragma once

#include "semilat/errors.hpp"
#include "semilat/poset.hpp"
#include "semilat/subset.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semilat {

struct LatticeOptions {
    /// Above this many elements meet/join are answered on demand from the
    /// order instead of from stored n*n tables.
    std::size_t table_threshold = 4096;
};

/// A finite lattice: a poset in which every pair has a glb and a lub.
///
/// Construction validates the lattice property for every pair. Below the
/// table threshold the full meet and join tables are stored.
class FiniteLattice {
  public:
    FiniteLattice() = default;

    /// Throws NotALatticeError naming the first pair without a glb or lub.
    static FiniteLattice from_poset(Poset order, const LatticeOptions& opts = {}) {
        FiniteLattice l;
        l.order_ = std::move(order);
        l.heights_ = heights(l.order_);
        const std::size_t n = l.order_.size();
        if (n == 0) throw NotALatticeError(0, 0, "(empty poset has no bounds)");

        std::vector<std::size_t> minimal, maximal;
        for (std::size_t v = 0; v < n; ++v) {
            if (l.order_.lower_covers(v).empty()) minimal.push_back(v);
            if (l.order_.upper_covers(v).empty()) maximal.push_back(v);
        }
        if (minimal.size() > 1) throw NotALatticeError(minimal[0], minimal[1], "have no common lower bound");
        if (maximal.size() > 1) throw NotALatticeError(maximal[0], maximal[1], "have no common upper bound");
        l.bottom_ = minimal.front();
        l.top_ = maximal.front();

        l.tabled_ = n <= opts.table_threshold;
        if (l.tabled_) {
            l.meet_.assign(n * n, npos);
            l.join_.assign(n * n, npos);
        }
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x; y < n; ++y) {
                const std::size_t m = l.compute_meet(x, y);
                if (m == npos) throw NotALatticeError(x, y, "have no greatest lower bound");
                const std::size_t j = l.compute_join(x, y);
                if (j == npos) throw NotALatticeError(x, y, "have no least upper bound");
                if (l.tabled_) {
                    l.meet_[x * n + y] = l.meet_[y * n + x] = m;
                    l.join_[x * n + y] = l.join_[y * n + x] = j;
                }
            }
        }
        return l;
    }

    std::size_t size() const noexcept { return order_.size(); }
    const Poset& order() const noexcept { return order_; }
    std::size_t bottom() const noexcept { return bottom_; }
    std::size_t top() const noexcept { return top_; }
    bool has_tables() const noexcept { return tabled_; }

    bool leq(std::size_t x, std::size_t y) const { return order_.leq(x, y); }
    bool less(std::size_t x, std::size_t y) const { return order_.less(x, y); }
    /// x is covered by y.
    bool covered_by(std::size_t x, std::size_t y) const { return order_.is_cover(x, y); }

    std::size_t meet(std::size_t x, std::size_t y) const {
        return tabled_ ? meet_[x * size() + y] : compute_meet(x, y);
    }
    std::size_t join(std::size_t x, std::size_t y) const {
        return tabled_ ? join_[x * size() + y] : compute_join(x, y);
    }

    std::size_t join_of(const Subset& s) const {
        std::size_t acc = bottom_;
        for_each_member(s, [&](std::size_t x) { acc = join(acc, x); });
        return acc;
    }

    /// Length of the longest chain in [0, x].
    std::size_t height(std::size_t x) const { return heights_[x]; }
    std::size_t length() const { return heights_[top_]; }

  private:
    std::size_t compute_meet(std::size_t x, std::size_t y) const {
        if (order_.leq(x, y)) return x;
        if (order_.leq(y, x)) return y;
        const Subset common = order_.down(x) & order_.down(y);
        std::size_t best = npos;
        for_each_member(common, [&](std::size_t c) {
            if (best == npos || heights_[c] > heights_[best]) best = c;
        });
        // The highest common lower bound is maximal; it is the glb iff it is above all others.
        if (best == npos || order_.down(best) != common) return npos;
        return best;
    }

    std::size_t compute_join(std::size_t x, std::size_t y) const {
        if (order_.leq(x, y)) return y;
        if (order_.leq(y, x)) return x;
        const Subset common = order_.up(x) & order_.up(y);
        std::size_t best = npos;
        for_each_member(common, [&](std::size_t c) {
            if (best == npos || heights_[c] < heights_[best]) best = c;
        });
        if (best == npos || order_.up(best) != common) return npos;
        return best;
    }

    Poset order_;
    std::vector<std::size_t> heights_;
    std::vector<std::size_t> meet_;
    std::vector<std::size_t> join_;
    std::size_t bottom_ = 0;
    std::size_t top_ = 0;
    bool tabled_ = true;
};

inline FiniteLattice lattice_from_poset(Poset p, const LatticeOptions& opts = {}) {
    return FiniteLattice::from_poset(std::move(p), opts);
}

inline FiniteLattice lattice_from_covers(std::size_t n, const std::vector<CoverPair>& covers,
                                         const LatticeOptions& opts = {}) {
    return lattice_from_poset(poset_from_covers(n, covers), opts);
}

/// Unique lower cover of x, or npos when x is the bottom or join-reducible.
inline std::size_t lower_cover_if_unique(const FiniteLattice& l, std::size_t x) {
    const auto& lc = l.order().lower_covers(x);
    return lc.size() == 1 ? lc.front() : npos;
}

inline bool is_join_irreducible(const FiniteLattice& l, std::size_t x) {
    return l.order().lower_covers(x).size() == 1;
}

inline std::vector<std::size_t> atoms(const FiniteLattice& l) { return l.order().upper_covers(l.bottom()); }

/// The join-irreducible elements with their induced order and unique lower covers.
struct JirPoset {
    std::vector<std::size_t> elements;  // lattice indices, ascending
    Subset members;                     // the same set, over the lattice
    Poset order;                        // position i <-> elements[i]
    std::vector<std::size_t> lcov;      // lcov[i] is the lower cover of elements[i]

    std::size_t size() const noexcept { return elements.size(); }

    std::size_t position(std::size_t lattice_index) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == lattice_index) return i;
        return npos;
    }

    std::size_t lcov_of(std::size_t lattice_index) const {
        const auto i = position(lattice_index);
        return i == npos ? npos : lcov[i];
    }
};

inline JirPoset join_irreducibles(const FiniteLattice& l) {
    JirPoset j;
    j.members = Subset(l.size());
    for (std::size_t x = 0; x < l.size(); ++x) {
        if (is_join_irreducible(l, x)) {
            j.elements.push_back(x);
            j.members.set(x);
            j.lcov.push_back(l.order().lower_covers(x).front());
        }
    }
    j.order = l.order().induced(j.elements);
    return j;
}

/// Jir(L) ∩ ↓x as a subset of lattice indices.
inline Subset jir_below(const FiniteLattice& l, const JirPoset& j, std::size_t x) {
    return l.order().down(x) & j.members;
}

/// Length of the longest chain in the interval [a, b]; npos when a ≰ b.
inline std::size_t interval_length(const FiniteLattice& l, std::size_t a, std::size_t b) {
    if (!l.leq(a, b)) return npos;
    const Subset interval = l.order().up(a) & l.order().down(b);
    std::vector<std::size_t> dist(l.size(), 0);
    std::vector<char> reached(l.size(), 0);
    reached[a] = 1;
    for (auto v : l.order().linear_extension()) {
        if (!reached[v]) continue;
        for (auto w : l.order().upper_covers(v)) {
            if (!interval.test(w)) continue;
            if (!reached[w] || dist[w] < dist[v] + 1) dist[w] = dist[v] + 1;
            reached[w] = 1;
        }
    }
    return dist[b];
}

}  // namespace semilat
