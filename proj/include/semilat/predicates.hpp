#pragma once

#include "semilat/errors.hpp"
#include "semilat/lattice.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semilat {

/// First pair (x, y) with x∧y ≺ x but not y ≺ x∨y, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> semimodularity_violation(const FiniteLattice& l) {
    const std::size_t n = l.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (l.covered_by(l.meet(x, y), x) && !l.covered_by(y, l.join(x, y))) return std::pair{x, y};
    return std::nullopt;
}

inline bool is_semimodular(const FiniteLattice& l) { return !semimodularity_violation(l).has_value(); }

/// Jordan-Hölder chain condition. Every cover raising the longest-chain
/// height by exactly one is equivalent to all maximal chains of every
/// interval [a, b] having length height(b) - height(a).
inline bool check_jhcc(const FiniteLattice& l) {
    for (const auto& [x, y] : l.order().covers())
        if (l.height(y) != l.height(x) + 1) return false;
    return true;
}

inline bool is_geometric(const FiniteLattice& l) {
    if (!is_semimodular(l)) return false;
    for (std::size_t x = 0; x < l.size(); ++x)
        if (is_join_irreducible(l, x) && !l.covered_by(l.bottom(), x)) return false;
    return true;
}

inline bool is_distributive(const FiniteLattice& l) {
    const std::size_t n = l.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = y + 1; z < n; ++z)
                if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
    return true;
}

inline bool is_modular(const FiniteLattice& l) {
    const std::size_t n = l.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            if (!l.leq(x, z)) continue;
            for (std::size_t y = 0; y < n; ++y)
                if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) return false;
        }
    return true;
}

/// {bottom, a, b, c, top} of a sublattice isomorphic to M3.
using M3Witness = std::array<std::size_t, 5>;
/// {bottom, a, c, b, top} of a sublattice isomorphic to N5 with a < c and b parallel to both.
using N5Witness = std::array<std::size_t, 5>;

inline std::optional<M3Witness> find_m3_sublattice(const FiniteLattice& l, bool cover_preserving = false) {
    const std::size_t n = l.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (l.order().comparable(a, b)) continue;
            const std::size_t lo = l.meet(a, b);
            const std::size_t hi = l.join(a, b);
            if (cover_preserving && !(l.covered_by(lo, a) && l.covered_by(a, hi) && l.covered_by(lo, b) &&
                                      l.covered_by(b, hi)))
                continue;
            for (std::size_t c = b + 1; c < n; ++c) {
                if (l.meet(a, c) != lo || l.meet(b, c) != lo || l.join(a, c) != hi || l.join(b, c) != hi) continue;
                if (c == lo || c == hi) continue;
                if (cover_preserving && !(l.covered_by(lo, c) && l.covered_by(c, hi))) continue;
                return M3Witness{lo, a, b, c, hi};
            }
        }
    return std::nullopt;
}

inline std::optional<N5Witness> find_n5_sublattice(const FiniteLattice& l) {
    const std::size_t n = l.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            if (!l.less(a, c)) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (l.order().comparable(a, b) || l.order().comparable(c, b)) continue;
                if (l.meet(a, b) == l.meet(c, b) && l.join(a, b) == l.join(c, b))
                    return N5Witness{l.meet(a, b), a, c, b, l.join(a, b)};
            }
        }
    return std::nullopt;
}

/// Semimodular and without an M3 sublattice.
inline bool is_join_distributive(const FiniteLattice& l) {
    return is_semimodular(l) && !find_m3_sublattice(l).has_value();
}

struct PredicateProfile {
    bool semimodular = false;
    bool distributive = false;
    bool modular = false;
    bool join_distributive = false;
    bool geometric = false;

    friend bool operator==(const PredicateProfile&, const PredicateProfile&) = default;
};

inline PredicateProfile predicate_profile(const FiniteLattice& l) {
    PredicateProfile p;
    p.semimodular = is_semimodular(l);
    p.distributive = is_distributive(l);
    p.modular = is_modular(l);
    p.join_distributive = p.semimodular && !find_m3_sublattice(l).has_value();
    p.geometric = is_geometric(l);
    return p;
}

enum class Predicate { distributive, modular, join_distributive, semimodular };

inline std::string to_string(Predicate p) {
    switch (p) {
        case Predicate::distributive: return "distributive";
        case Predicate::modular: return "modular";
        case Predicate::join_distributive: return "join_distributive";
        case Predicate::semimodular: return "semimodular";
    }
    return "?";
}

inline std::optional<Predicate> predicate_from_string(const std::string& s) {
    for (auto p : {Predicate::distributive, Predicate::modular, Predicate::join_distributive, Predicate::semimodular})
        if (to_string(p) == s) return p;
    if (s == "join-distributive") return Predicate::join_distributive;
    return std::nullopt;
}

inline bool evaluate(Predicate p, const FiniteLattice& l) {
    switch (p) {
        case Predicate::distributive: return is_distributive(l);
        case Predicate::modular: return is_modular(l);
        case Predicate::join_distributive: return is_join_distributive(l);
        case Predicate::semimodular: return is_semimodular(l);
    }
    return false;
}

/// f is injective and preserves meets.
inline bool is_meet_embedding(const FiniteLattice& l, const FiniteLattice& k, const std::vector<std::size_t>& f) {
    if (f.size() != l.size()) return false;
    Subset image(k.size());
    for (auto y : f) {
        if (y >= k.size() || image.test(y)) return false;
        image.set(y);
    }
    for (std::size_t x = 0; x < l.size(); ++x)
        for (std::size_t y = x + 1; y < l.size(); ++y)
            if (f[l.meet(x, y)] != k.meet(f[x], f[y])) return false;
    return true;
}

/// Injective, meet- and join-preserving, {0,1}-preserving, cover-preserving,
/// and length(K) = length(L).
inline bool verify_length_preserving_embedding(const FiniteLattice& l, const FiniteLattice& k,
                                               const std::vector<std::size_t>& f) {
    if (!is_meet_embedding(l, k, f)) return false;
    for (std::size_t x = 0; x < l.size(); ++x)
        for (std::size_t y = x + 1; y < l.size(); ++y)
            if (f[l.join(x, y)] != k.join(f[x], f[y])) return false;
    if (f[l.bottom()] != k.bottom() || f[l.top()] != k.top()) return false;
    for (const auto& [x, y] : l.order().covers())
        if (!k.covered_by(f[x], f[y])) return false;
    return k.length() == l.length();
}

/// Every cross meet of c1 and c2 is the bottom. Both must be chains of Jir(L).
inline bool chains_lattice_disjoint(const FiniteLattice& l, const std::vector<std::size_t>& c1,
                                    const std::vector<std::size_t>& c2) {
    for (const auto* c : {&c1, &c2}) {
        for (auto x : *c) {
            check_index(l.order(), x);
            if (!is_join_irreducible(l, x))
                throw NotAChainError("element " + std::to_string(x) + " is not join-irreducible");
        }
        if (!is_chain(l.order(), *c)) throw NotAChainError("argument is not a chain");
    }
    for (auto x : c1)
        for (auto y : c2)
            if (l.meet(x, y) != l.bottom()) return false;
    return true;
}

}  // namespace semilat
