#pragma once

#include "semilat/errors.hpp"
#include "semilat/lattice.hpp"
#include "semilat/poset.hpp"
#include "semilat/predicates.hpp"
#include "semilat/subset.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace semilat {

/// A geometry (P, F): a ground poset and a family of flats over it.
///
/// Flats are kept sorted and deduplicated; lookups are binary searches.
/// Construction does not validate the axioms, see check_axioms.
struct Geometry {
    Poset ground;
    std::vector<Subset> flats;

    static Geometry make(Poset ground, std::vector<Subset> flats) {
        std::sort(flats.begin(), flats.end());
        flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
        for (const auto& f : flats)
            if (f.size() != ground.size()) throw IndexError("flat width does not match ground set");
        return Geometry{std::move(ground), std::move(flats)};
    }

    std::size_t index_of(const Subset& x) const {
        auto it = std::lower_bound(flats.begin(), flats.end(), x);
        return (it != flats.end() && *it == x) ? static_cast<std::size_t>(it - flats.begin()) : npos;
    }

    bool contains(const Subset& x) const { return index_of(x) != npos; }
};

struct AxiomResult {
    bool ok = true;
    std::string witness;
};

/// Per-axiom outcome with a concrete witness for each failure.
struct AxiomReport {
    AxiomResult finite_length;     // (FL)
    AxiomResult intersection;      // (F∩)
    AxiomResult down_sets;         // (F↓)
    AxiomResult principal;         // (Pr)
    AxiomResult covering;          // (CP)
    std::size_t flat_length = 0;   // longest ⊆-chain of flats, minus one

    bool ok() const {
        return finite_length.ok && intersection.ok && down_sets.ok && principal.ok && covering.ok;
    }

    std::string summary() const {
        std::string out;
        auto line = [&](const char* name, const AxiomResult& r) {
            out += name;
            out += r.ok ? " ok" : " FAIL " + r.witness;
            out += '\n';
        };
        line("(FL)", finite_length);
        line("(F-cap)", intersection);
        line("(F-down)", down_sets);
        line("(Pr)", principal);
        line("(CP)", covering);
        return out;
    }
};

/// Smallest flat containing x: the intersection of all flats above it.
inline Subset closure(const Geometry& g, const Subset& x) {
    Subset acc = full_subset(g.ground.size());
    bool any = false;
    for (const auto& f : g.flats)
        if (x.is_subset_of(f)) {
            acc &= f;
            any = true;
        }
    // Without the ground set among the flats there may be no superset at all.
    if (!any) return full_subset(g.ground.size());
    return acc;
}

/// z covers x in the family (F, ⊆).
inline bool covers_in_family(const Geometry& g, const Subset& x, const Subset& z) {
    if (!x.is_proper_subset_of(z)) return false;
    for (const auto& f : g.flats)
        if (x.is_proper_subset_of(f) && f.is_proper_subset_of(z)) return false;
    return true;
}

namespace detail {

inline std::size_t flat_chain_length(const Geometry& g) {
    // Flats sorted by cardinality form a linear extension of ⊆.
    std::vector<std::size_t> idx(g.flats.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return g.flats[a].count() < g.flats[b].count(); });
    std::vector<std::size_t> h(g.flats.size(), 0);
    std::size_t best = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b)
            if (g.flats[idx[b]].is_proper_subset_of(g.flats[idx[a]])) h[idx[a]] = std::max(h[idx[a]], h[idx[b]] + 1);
        best = std::max(best, h[idx[a]]);
    }
    return best;
}

}  // namespace detail

inline AxiomReport check_axioms(const Geometry& g) {
    AxiomReport r;
    const std::size_t n = g.ground.size();
    const Subset empty(n);
    const Subset all = full_subset(n);

    r.flat_length = detail::flat_chain_length(g);
    if (g.flats.empty()) r.finite_length = {false, "empty family"};

    if (!g.contains(all)) {
        r.intersection = {false, "ground set " + to_string(all) + " is not a flat"};
    } else {
        for (std::size_t i = 0; i < g.flats.size() && r.intersection.ok; ++i)
            for (std::size_t j = i + 1; j < g.flats.size(); ++j) {
                const Subset m = g.flats[i] & g.flats[j];
                if (!g.contains(m)) {
                    r.intersection = {false, to_string(g.flats[i]) + " ∩ " + to_string(g.flats[j]) + " = " +
                                                 to_string(m) + " is not a flat"};
                    break;
                }
            }
    }

    for (const auto& f : g.flats)
        if (!is_down_set(g.ground, f)) {
            r.down_sets = {false, to_string(f) + " is not a down-set"};
            break;
        }

    if (!g.contains(empty)) {
        r.principal = {false, "∅ is not a flat"};
    } else {
        for (std::size_t u = 0; u < n; ++u) {
            if (!g.contains(g.ground.down(u))) {
                r.principal = {false, "↓" + std::to_string(u) + " = " + to_string(g.ground.down(u)) + " is not a flat"};
                break;
            }
            const Subset strict = strict_down_set(g.ground, u);
            if (!g.contains(strict)) {
                r.principal = {false, "strict ↓" + std::to_string(u) + " = " + to_string(strict) + " is not a flat"};
                break;
            }
        }
    }

    // A cover of X containing q, if any, is the closure of X ∪ {q}.
    for (const auto& x : g.flats) {
        for (std::size_t q = 0; q < n && r.covering.ok; ++q) {
            if (x.test(q) || !strict_down_set(g.ground, q).is_subset_of(x)) continue;
            Subset xq = x;
            xq.set(q);
            const Subset y = closure(g, xq);
            if (!g.contains(y) || !covers_in_family(g, x, y))
                r.covering = {false, "q=" + std::to_string(q) + ", X=" + to_string(x) + " has no covering flat containing q"};
        }
        if (!r.covering.ok) break;
    }
    return r;
}

/// The witness u of (DC) when z covers x, else npos.
inline std::size_t cover_witness(const Geometry& g, const Subset& x, const Subset& z) {
    for (std::size_t u = 0; u < g.ground.size(); ++u) {
        if (x.test(u) || !strict_down_set(g.ground, u).is_subset_of(x)) continue;
        Subset xu = x;
        xu.set(u);
        if (closure(g, xu) == z) return u;
    }
    return npos;
}

/// True iff some u ∉ x with strict ↓u ⊆ x has z = cl({u} ∪ x).
inline bool geometry_covers(const Geometry& g, const Subset& x, const Subset& z) {
    return cover_witness(g, x, z) != npos;
}

/// Flat Jir(L) ∩ ↓x over ground positions of the Jir poset.
inline Subset lattice_flat(const FiniteLattice& l, const JirPoset& j, std::size_t x) {
    Subset s(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        if (l.leq(j.elements[i], x)) s.set(i);
    return s;
}

/// Geom(L): the Jir poset with flats {Jir ∩ ↓x : x ∈ L}. L must be semimodular.
inline Geometry geom_of_lattice(const FiniteLattice& l) {
    if (auto bad = semimodularity_violation(l))
        throw NotSemimodularError("lattice is not semimodular at (" + std::to_string(bad->first) + "," +
                                  std::to_string(bad->second) + ")");
    JirPoset j = join_irreducibles(l);
    std::vector<Subset> flats;
    flats.reserve(l.size());
    for (std::size_t x = 0; x < l.size(); ++x) flats.push_back(lattice_flat(l, j, x));
    Geometry g = Geometry::make(j.order, std::move(flats));
    if (g.flats.size() != l.size()) throw VerificationError("x ↦ Jir ∩ ↓x is not injective");
    return g;
}

/// Lattice of the given flats ordered by inclusion; element i is flats[i].
/// The flats must already form a lattice under ⊆ (intersection-closed with a top).
inline FiniteLattice lattice_of_flats(const std::vector<Subset>& flats, const LatticeOptions& opts = {}) {
    const std::size_t m = flats.size();
    std::vector<Subset> down(m, Subset(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (flats[j].is_subset_of(flats[i])) down[i].set(j);
    return lattice_from_poset(Poset::from_down_sets(std::move(down)), opts);
}

/// Lat(G) = (F, ⊆). Element i of the result is g.flats[i].
inline FiniteLattice lat_of_geometry(const Geometry& g, const LatticeOptions& opts = {}) {
    const AxiomReport report = check_axioms(g);
    if (!report.ok()) throw AxiomError("geometry fails its axioms:\n" + report.summary());
    FiniteLattice l = lattice_of_flats(g.flats, opts);
    const std::size_t m = g.flats.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (g.flats[l.meet(i, j)] != (g.flats[i] & g.flats[j]))
                throw VerificationError("meet of flats is not their intersection");
            if (m <= 256 && g.flats[l.join(i, j)] != closure(g, g.flats[i] | g.flats[j]))
                throw VerificationError("join of flats is not the closure of their union");
        }
    if (!is_semimodular(l)) throw VerificationError("lattice of an axiom-valid geometry is not semimodular");
    return l;
}

/// The join-irreducible flats: those with exactly one lower cover in (F, ⊆).
inline std::vector<Subset> jir_of_geometry(const Geometry& g) {
    const FiniteLattice l = lattice_of_flats(g.flats);
    std::vector<Subset> out;
    for (std::size_t i = 0; i < l.size(); ++i)
        if (is_join_irreducible(l, i)) out.push_back(g.flats[i]);
    std::vector<Subset> principal;
    for (std::size_t u = 0; u < g.ground.size(); ++u) principal.push_back(g.ground.down(u));
    std::sort(principal.begin(), principal.end());
    if (principal != out) throw VerificationError("join-irreducible flats differ from the principal down-sets");
    return out;
}

struct LatticeRoundTrip {
    FiniteLattice image;                  // Lat(Geom L)
    std::vector<std::size_t> map;         // x ↦ index of Jir ∩ ↓x in image
};

/// Verifies Lat(Geom L) ≅ L through the canonical map x ↦ Jir L ∩ ↓x.
inline LatticeRoundTrip roundtrip_lattice(const FiniteLattice& l) {
    const Geometry g = geom_of_lattice(l);
    LatticeRoundTrip rt{lat_of_geometry(g), {}};
    const JirPoset j = join_irreducibles(l);
    rt.map.resize(l.size());
    Subset image(rt.image.size());
    for (std::size_t x = 0; x < l.size(); ++x) {
        rt.map[x] = g.index_of(lattice_flat(l, j, x));
        if (rt.map[x] == npos || image.test(rt.map[x]))
            throw VerificationError("canonical map is not a bijection at element " + std::to_string(x));
        image.set(rt.map[x]);
    }
    for (std::size_t x = 0; x < l.size(); ++x)
        for (std::size_t y = 0; y < l.size(); ++y)
            if (l.leq(x, y) != rt.image.leq(rt.map[x], rt.map[y]))
                throw VerificationError("canonical map fails order at (" + std::to_string(x) + "," +
                                        std::to_string(y) + ")");
    return rt;
}

struct GeometryRoundTrip {
    Geometry image;                       // Geom(Lat G)
    std::vector<std::size_t> ground_map;  // u ↦ ground position of ↓u in image
};

/// Verifies Geom(Lat G) ≅ G through the canonical map u ↦ ↓u.
inline GeometryRoundTrip roundtrip_geometry(const Geometry& g) {
    const FiniteLattice l = lat_of_geometry(g);
    const JirPoset j = join_irreducibles(l);
    GeometryRoundTrip rt{geom_of_lattice(l), {}};
    const std::size_t n = g.ground.size();
    if (j.size() != n) throw VerificationError("Jir(Lat G) and the ground set differ in size");
    rt.ground_map.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t flat = g.index_of(g.ground.down(u));
        rt.ground_map[u] = flat == npos ? npos : j.position(flat);
        if (rt.ground_map[u] == npos)
            throw VerificationError("↓" + std::to_string(u) + " is not a join-irreducible flat");
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (g.ground.leq(u, v) != rt.image.ground.leq(rt.ground_map[u], rt.ground_map[v]))
                throw VerificationError("u ↦ ↓u is not an order isomorphism at (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
    std::vector<Subset> mapped;
    for (const auto& x : g.flats) {
        Subset y(n);
        for_each_member(x, [&](std::size_t u) { y.set(rt.ground_map[u]); });
        if (!rt.image.contains(y)) throw VerificationError("image of flat " + to_string(x) + " is not a flat");
        mapped.push_back(std::move(y));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped != rt.image.flats) throw VerificationError("flat map is not a bijection");
    return rt;
}

struct EnumerationOptions {
    /// Only geometries whose flat lattice has exactly this length.
    std::optional<std::size_t> exact_length;
    /// Abort with BoundExceededError when a family would exceed this many flats.
    std::optional<std::size_t> max_flats;
};

/// Enumerates every axiom-valid geometry on `ground` in a fixed canonical
/// order, calling `visit` for each; `visit` returns false to stop early.
///
/// Candidate down-sets are decided in order of increasing size. Under that
/// order an intersection of two members is always decided before either, and
/// the first member containing X ∪ {q} is the closure of X ∪ {q}, whose
/// covering of X cannot be disturbed later. Both (F∩) and (CP) are therefore
/// checked at the moment a set is included.
inline std::size_t enumerate_geometries(const Poset& ground, const EnumerationOptions& opts,
                                        const std::function<bool(const Geometry&)>& visit) {
    const std::size_t n = ground.size();
    if (n > 20) throw BoundExceededError("ground poset too large for exhaustive enumeration");
    using Mask = std::uint64_t;
    auto mask_of = [&](const Subset& s) {
        Mask m = 0;
        for_each_member(s, [&](std::size_t i) { m |= Mask{1} << i; });
        return m;
    };
    std::vector<Mask> strict(n), principal(n);
    for (std::size_t u = 0; u < n; ++u) {
        principal[u] = mask_of(ground.down(u));
        strict[u] = principal[u] & ~(Mask{1} << u);
    }

    std::vector<Mask> cand;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        bool down = true;
        for (std::size_t u = 0; u < n && down; ++u)
            if ((s >> u & 1) && (principal[u] & ~s)) down = false;
        if (down) cand.push_back(s);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](Mask a, Mask b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
    std::unordered_map<Mask, std::size_t> pos;
    for (std::size_t i = 0; i < cand.size(); ++i) pos[cand[i]] = i;

    std::vector<char> required(cand.size(), 0);
    required[pos[0]] = 1;
    required[pos[cand.back()]] = 1;
    for (std::size_t u = 0; u < n; ++u) {
        required[pos[principal[u]]] = 1;
        required[pos[strict[u]]] = 1;
    }

    std::vector<char> in(cand.size(), 0);
    std::vector<std::size_t> height(cand.size(), 0);
    std::vector<std::size_t> included;
    std::size_t count = 0;
    bool stop = false;

    auto can_include = [&](std::size_t ci) -> bool {
        const Mask s = cand[ci];
        std::size_t h = 0;
        for (auto ti : included) {
            const Mask t = cand[ti];
            if (!in[pos[s & t]]) return false;
            if ((t & s) == t && t != s) h = std::max(h, height[ti] + 1);
        }
        if (opts.exact_length && h > *opts.exact_length) return false;
        height[ci] = h;
        for (auto xi : included) {
            const Mask x = cand[xi];
            if ((x & s) != x || x == s) continue;
            for (std::size_t q = 0; q < n; ++q) {
                const Mask qb = Mask{1} << q;
                if (!(s & qb) || (x & qb) || (strict[q] & ~x)) continue;
                const Mask xq = x | qb;
                bool earlier = false;
                for (auto yi : included)
                    if ((cand[yi] & xq) == xq) {
                        earlier = true;
                        break;
                    }
                if (earlier) continue;
                // s is the closure of X ∪ {q}; it must cover X.
                for (auto zi : included) {
                    const Mask z = cand[zi];
                    if ((x & z) == x && z != x && (z & s) == z) return false;
                }
            }
        }
        return true;
    };

    std::function<void(std::size_t)> search = [&](std::size_t ci) {
        if (stop) return;
        if (ci == cand.size()) {
            if (opts.exact_length && height[cand.size() - 1] != *opts.exact_length) return;
            std::vector<Subset> flats;
            for (auto i : included) {
                Subset f(n);
                for (std::size_t b = 0; b < n; ++b)
                    if (cand[i] >> b & 1) f.set(b);
                flats.push_back(std::move(f));
            }
            ++count;
            if (!visit(Geometry::make(ground, std::move(flats)))) stop = true;
            return;
        }
        if (can_include(ci)) {
            if (opts.max_flats && included.size() + 1 > *opts.max_flats)
                throw BoundExceededError("a geometry on this ground set exceeds " + std::to_string(*opts.max_flats) +
                                         " flats");
            in[ci] = 1;
            included.push_back(ci);
            search(ci + 1);
            included.pop_back();
            in[ci] = 0;
        }
        if (!required[ci]) search(ci + 1);
    };
    search(0);
    return count;
}

inline std::size_t count_geometries(const Poset& ground, const EnumerationOptions& opts = {}) {
    return enumerate_geometries(ground, opts, [](const Geometry&) { return true; });
}

}  // namespace semilat
