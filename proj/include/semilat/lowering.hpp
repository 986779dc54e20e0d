#pragma once

#include "semilat/errors.hpp"
#include "semilat/geometry.hpp"
#include "semilat/isomorphism.hpp"
#include "semilat/lattice.hpp"
#include "semilat/predicates.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace semilat {

/// Result of lowering a join-irreducible e of L to a cover of h.
///
/// K keeps L's elements at their original indices (embed is the identity)
/// and appends the lifted copies of D in ascending order of their L index.
struct LoweringResult {
    std::shared_ptr<const FiniteLattice> L;
    std::shared_ptr<const FiniteLattice> K;
    std::vector<std::size_t> embed;  // L index -> K index
    std::size_t e = npos;            // lowered element, L index
    std::size_t h = npos;            // new lower cover of e', L index
    std::size_t e_prime = npos;      // K index
    Subset D;                        // over L
    Subset N;                        // over K
    std::vector<std::size_t> lift;   // L index -> K index of its lifted copy, npos outside D
    std::vector<std::size_t> alit;   // K index -> L index it was lifted from, npos outside N

    bool in_N(std::size_t k) const { return alit[k] != npos; }
};

/// Outcome of each postcondition of a lowering.
struct LoweringChecks {
    bool semimodular = false;
    bool length_preserved = false;
    bool embedding = false;      // length-preserving {0,1}-embedding
    bool jir_exchange = false;   // Jir K \ Jir L = {e'}, Jir L \ Jir K = {e}
    bool lcov_e_prime = false;   // lcov_K(e') = h
    bool e_prime_is_lift_h = false;
    bool convex = false;         // D convex in L; N, D∪N convex in K; h least in D∪N
    bool size = false;           // |K| = |L| + |D|

    bool ok() const {
        return semimodular && length_preserved && embedding && jir_exchange && lcov_e_prime && e_prime_is_lift_h &&
               convex && size;
    }

    std::string failures() const {
        std::string out;
        auto add = [&](bool v, const char* name) {
            if (!v) out += std::string(out.empty() ? "" : ", ") + name;
        };
        add(semimodular, "semimodular");
        add(length_preserved, "length_preserved");
        add(embedding, "embedding");
        add(jir_exchange, "jir_exchange");
        add(lcov_e_prime, "lcov_e_prime");
        add(e_prime_is_lift_h, "e_prime_is_lift_h");
        add(convex, "convex");
        add(size, "size");
        return out;
    }
};

/// Validates (e, h): e join-irreducible and h strictly below lcov(e).
inline void check_lowering_parameters(const FiniteLattice& l, std::size_t e, std::size_t h) {
    if (e >= l.size() || h >= l.size())
        throw PreconditionError("lowering parameters out of range (e=" + std::to_string(e) + ", h=" + std::to_string(h) +
                                ", |L|=" + std::to_string(l.size()) + ")");
    const std::size_t lc = lower_cover_if_unique(l, e);
    if (lc == npos) throw PreconditionError("e=" + std::to_string(e) + " is not join-irreducible");
    if (lc == l.bottom())
        throw PreconditionError("e=" + std::to_string(e) + " is an atom and cannot be lowered");
    if (!l.less(h, lc))
        throw PreconditionError("h=" + std::to_string(h) + " is not strictly below lcov(e)=" + std::to_string(lc));
}

/// D = {x ≥ h : e ≰ y whenever x = y or x ≺ y}.
inline Subset compute_D(const FiniteLattice& l, std::size_t e, std::size_t h) {
    check_lowering_parameters(l, e, h);
    Subset d(l.size());
    for_each_member(l.order().up(h), [&](std::size_t x) {
        if (l.leq(e, x)) return;
        for (auto y : l.order().upper_covers(x))
            if (l.leq(e, y)) return;
        d.set(x);
    });
    return d;
}

inline bool is_convex(const Poset& p, const Subset& s) {
    bool ok = true;
    for_each_member(s, [&](std::size_t x) {
        // Everything between x and any z in s must lie in s.
        for_each_member(s, [&](std::size_t z) {
            if (!ok || !p.leq(x, z)) return;
            if (!(p.up(x) & p.down(z)).is_subset_of(s)) ok = false;
        });
    });
    return ok;
}

inline LoweringChecks verify_lowering(const LoweringResult& r) {
    const FiniteLattice& l = *r.L;
    const FiniteLattice& k = *r.K;
    LoweringChecks c;
    c.semimodular = is_semimodular(k);
    c.length_preserved = k.length() == l.length();
    c.embedding = verify_length_preserving_embedding(l, k, r.embed);
    c.size = k.size() == l.size() + r.D.count() && r.N.count() == r.D.count();

    const JirPoset jl = join_irreducibles(l);
    const JirPoset jk = join_irreducibles(k);
    Subset embedded(k.size());
    for (auto x : jl.elements) embedded.set(r.embed[x]);
    const Subset added = jk.members - embedded;
    const Subset removed = embedded - jk.members;
    c.jir_exchange = added.count() == 1 && added.test(r.e_prime) && removed.count() == 1 && removed.test(r.embed[r.e]);

    c.lcov_e_prime = lower_cover_if_unique(k, r.e_prime) == r.embed[r.h];
    c.e_prime_is_lift_h = r.D.test(r.h) && r.lift[r.h] == r.e_prime;

    Subset d_in_k(k.size());
    for_each_member(r.D, [&](std::size_t x) { d_in_k.set(r.embed[x]); });
    bool h_least = true;
    for_each_member(d_in_k | r.N, [&](std::size_t x) { h_least = h_least && k.leq(r.embed[r.h], x); });
    c.convex = is_convex(l.order(), r.D) && is_convex(k.order(), r.N) && is_convex(k.order(), d_in_k | r.N) && h_least;
    return c;
}

struct LoweringOptions {
    bool verify = true;
    LatticeOptions lattice;
};

namespace detail {

inline void require_semimodular(const FiniteLattice& l) {
    if (auto bad = semimodularity_violation(l))
        throw PreconditionError("lattice is not semimodular at (" + std::to_string(bad->first) + "," +
                                std::to_string(bad->second) + ")");
}

inline void finish_result(LoweringResult& r, const LoweringOptions& opts) {
    if (!opts.verify) return;
    const LoweringChecks c = verify_lowering(r);
    if (!c.ok())
        throw VerificationError("lowering e=" + std::to_string(r.e) + " to h=" + std::to_string(r.h) +
                                " failed: " + c.failures());
}

inline LoweringResult skeleton(std::shared_ptr<const FiniteLattice> l, std::size_t e, std::size_t h, Subset d) {
    LoweringResult r;
    const std::size_t n = l->size();
    r.e = e;
    r.h = h;
    r.D = std::move(d);
    const std::size_t total = n + r.D.count();
    r.embed.resize(n);
    for (std::size_t x = 0; x < n; ++x) r.embed[x] = x;
    r.lift.assign(n, npos);
    r.alit.assign(total, npos);
    r.N = Subset(total);
    std::size_t next = n;
    for_each_member(r.D, [&](std::size_t x) {
        r.lift[x] = next;
        r.alit[next] = x;
        r.N.set(next);
        ++next;
    });
    r.e_prime = r.lift[h];
    r.L = std::move(l);
    return r;
}

}  // namespace detail

/// Builds K = L ∪ N with the four-case order:
///   x ≤ y in L;  lift(x) ≤ lift(y) iff x ≤ y;  x ≤ lift(y) iff x ≤ y;
///   lift(x) ≤ y iff x ∨ e ≤ y.
inline LoweringResult lower_direct(std::shared_ptr<const FiniteLattice> lp, std::size_t e, std::size_t h,
                                   const LoweringOptions& opts = {}) {
    const FiniteLattice& l = *lp;
    detail::require_semimodular(l);
    LoweringResult r = detail::skeleton(lp, e, h, compute_D(l, e, h));
    const std::size_t n = l.size();
    const std::size_t total = r.alit.size();
    const auto d_list = members(r.D);

    std::vector<Subset> down(total, Subset(total));
    for (std::size_t y = 0; y < n; ++y) {
        for_each_member(l.order().down(y), [&](std::size_t x) { down[y].set(x); });
        for (auto x : d_list)
            if (l.leq(l.join(x, e), y)) down[y].set(r.lift[x]);
    }
    for (auto yd : d_list) {
        const std::size_t y = r.lift[yd];
        for_each_member(l.order().down(yd), [&](std::size_t x) {
            down[y].set(x);
            if (r.D.test(x)) down[y].set(r.lift[x]);
        });
    }
    try {
        r.K = std::make_shared<const FiniteLattice>(lattice_from_poset(Poset::from_down_sets(std::move(down)), opts.lattice));
    } catch (const NotALatticeError& err) {
        throw VerificationError(std::string("lowered order is not a lattice: ") + err.what());
    }
    detail::finish_result(r, opts);
    return r;
}

inline LoweringResult lower_direct(const FiniteLattice& l, std::size_t e, std::size_t h,
                                   const LoweringOptions& opts = {}) {
    return lower_direct(std::make_shared<const FiniteLattice>(l), e, h, opts);
}

/// The geometry-side objects of a lowering, over ground positions of Jir L.
struct LoweringGeometry {
    Geometry F;                      // Geom L
    Geometry G;                      // (R, F ∪ N)
    std::vector<Subset> flat_of;     // L index -> Jir ∩ ↓x
    Subset H;                        // Jir ∩ ↓h
    std::size_t e_position = npos;   // ground position of e
    std::vector<Subset> d_flats;     // 𝒟, ascending by L index
    std::vector<Subset> n_flats;     // 𝒩, aligned with d_flats
    std::vector<std::size_t> d_elements;  // L indices of 𝒟
};

inline LoweringGeometry lowering_geometry(const FiniteLattice& l, std::size_t e, std::size_t h) {
    detail::require_semimodular(l);
    check_lowering_parameters(l, e, h);
    LoweringGeometry lg;
    const JirPoset j = join_irreducibles(l);
    const std::size_t n = l.size();
    const std::size_t p = j.size();
    lg.e_position = j.position(e);
    for (std::size_t x = 0; x < n; ++x) lg.flat_of.push_back(lattice_flat(l, j, x));
    lg.F = Geometry::make(j.order, lg.flat_of);
    lg.H = lg.flat_of[h];

    // Covers inside the flat family, computed from ⊆ alone.
    const FiniteLattice flat_lattice = lattice_of_flats(lg.flat_of);
    for (std::size_t x = 0; x < n; ++x) {
        const Subset& fx = lg.flat_of[x];
        if (!lg.H.is_subset_of(fx) || fx.test(lg.e_position)) continue;
        bool ok = true;
        for (auto y : flat_lattice.order().upper_covers(x))
            if (lg.flat_of[y].test(lg.e_position)) ok = false;
        if (!ok) continue;
        lg.d_elements.push_back(x);
        lg.d_flats.push_back(fx);
        Subset nx = fx;
        nx.set(lg.e_position);
        lg.n_flats.push_back(std::move(nx));
    }
    for (const auto& x : lg.n_flats)
        if (lg.F.contains(x)) throw VerificationError("F and N intersect at " + to_string(x));

    // R: strict ↓e becomes H; every other principal down-set is unchanged.
    std::vector<Subset> down(p);
    for (std::size_t u = 0; u < p; ++u) down[u] = j.order.down(u);
    down[lg.e_position] = lg.H;
    down[lg.e_position].set(lg.e_position);
    Poset r = Poset::from_down_sets(std::move(down));

    std::vector<Subset> g_flats = lg.flat_of;
    g_flats.insert(g_flats.end(), lg.n_flats.begin(), lg.n_flats.end());
    lg.G = Geometry::make(std::move(r), std::move(g_flats));
    return lg;
}

/// Builds K as the lattice of the geometry (R, F ∪ N), indexed like lower_direct.
inline LoweringResult lower_via_geometry(std::shared_ptr<const FiniteLattice> lp, std::size_t e, std::size_t h,
                                         const LoweringOptions& opts = {}) {
    const FiniteLattice& l = *lp;
    const LoweringGeometry lg = lowering_geometry(l, e, h);
    const AxiomReport report = check_axioms(lg.G);
    if (!report.ok()) throw VerificationError("lowered geometry fails its axioms:\n" + report.summary());

    Subset d(l.size());
    for (auto x : lg.d_elements) d.set(x);
    LoweringResult r = detail::skeleton(lp, e, h, std::move(d));
    std::vector<Subset> ordered = lg.flat_of;
    ordered.insert(ordered.end(), lg.n_flats.begin(), lg.n_flats.end());
    r.K = std::make_shared<const FiniteLattice>(lattice_of_flats(ordered, opts.lattice));
    detail::finish_result(r, opts);
    return r;
}

inline LoweringResult lower_via_geometry(const FiniteLattice& l, std::size_t e, std::size_t h,
                                         const LoweringOptions& opts = {}) {
    return lower_via_geometry(std::make_shared<const FiniteLattice>(l), e, h, opts);
}

/// Closed-form meet in K.
inline std::size_t meet_formula(const LoweringResult& r, std::size_t x, std::size_t y) {
    const FiniteLattice& l = *r.L;
    const bool xn = r.in_N(x), yn = r.in_N(y);
    if (!xn && !yn) return r.embed[l.meet(x, y)];
    if (xn && yn) return r.lift[l.meet(r.alit[x], r.alit[y])];
    if (xn) return l.leq(r.e, y) ? r.lift[l.meet(r.alit[x], y)] : r.embed[l.meet(r.alit[x], y)];
    return l.leq(r.e, x) ? r.lift[l.meet(x, r.alit[y])] : r.embed[l.meet(x, r.alit[y])];
}

/// Closed-form join in K.
inline std::size_t join_formula(const LoweringResult& r, std::size_t x, std::size_t y) {
    const FiniteLattice& l = *r.L;
    const bool xn = r.in_N(x), yn = r.in_N(y);
    if (!xn && !yn) return r.embed[l.join(x, y)];
    const std::size_t a = xn ? r.alit[x] : x;
    const std::size_t b = yn ? r.alit[y] : y;
    const std::size_t z = l.join(a, b);
    return r.D.test(z) ? r.lift[z] : r.embed[l.join(z, r.e)];
}

/// Closed-form cover relation x ≺ y in K.
inline bool covers_formula(const LoweringResult& r, std::size_t x, std::size_t y) {
    const FiniteLattice& l = *r.L;
    const bool xn = r.in_N(x), yn = r.in_N(y);
    if (!xn && !yn) return l.covered_by(x, y);
    if (xn && yn) return l.covered_by(r.alit[x], r.alit[y]);
    if (!xn) return x == r.alit[y];
    const std::size_t a = r.alit[x];
    const std::size_t top = l.join(a, r.e);
    return y == r.embed[top] && interval_length(l, a, top) == 2;
}

struct PreservationRecord {
    Predicate predicate;
    bool before = false;
    bool after = false;
};

inline PreservationRecord check_preservation(const FiniteLattice& l, std::size_t e, std::size_t h, Predicate pred) {
    const LoweringResult r = lower_direct(l, e, h);
    return {pred, evaluate(pred, l), evaluate(pred, *r.K)};
}

/// Every (e, h) accepted by the lowering preconditions, in index order.
inline std::vector<std::pair<std::size_t, std::size_t>> valid_lowering_parameters(const FiniteLattice& l) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t e = 0; e < l.size(); ++e) {
        const std::size_t lc = lower_cover_if_unique(l, e);
        if (lc == npos || lc == l.bottom()) continue;
        for (std::size_t h = 0; h < l.size(); ++h)
            if (l.less(h, lc)) out.emplace_back(e, h);
    }
    return out;
}

}  // namespace semilat
