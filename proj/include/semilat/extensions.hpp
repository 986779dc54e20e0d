#pragma once

#include "semilat/errors.hpp"
#include "semilat/geometry.hpp"
#include "semilat/isomorphism.hpp"
#include "semilat/lattice.hpp"
#include "semilat/lowering.hpp"
#include "semilat/poset.hpp"
#include "semilat/predicates.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semilat {

struct StepStats {
    std::size_t size_before = 0;
    std::size_t size_after = 0;
    std::size_t d_size = 0;
    double millis = 0.0;
};

/// A sequence of lowerings, each consuming the previous step's K.
struct ExtensionTrace {
    std::shared_ptr<const FiniteLattice> initial;
    std::shared_ptr<const FiniteLattice> final;
    std::vector<LoweringResult> steps;
    std::vector<std::size_t> embed_total;  // initial index -> final index
    std::vector<StepStats> stats;
    /// Chain pipelines only: the chains of Jir(final), slot i replacing input chain i.
    std::vector<std::vector<std::size_t>> chains;
};

class SizeLimitError : public LatticeError {
  public:
    SizeLimitError(const std::string& what, ExtensionTrace partial)
        : LatticeError(what), partial_(std::move(partial)) {}

    const ExtensionTrace& partial() const noexcept { return partial_; }

  private:
    ExtensionTrace partial_;
};

inline constexpr std::size_t default_size_limit = 50000;

namespace detail {

inline ExtensionTrace start_trace(const FiniteLattice& l) {
    ExtensionTrace t;
    t.initial = std::make_shared<const FiniteLattice>(l);
    t.final = t.initial;
    t.embed_total.resize(l.size());
    for (std::size_t x = 0; x < l.size(); ++x) t.embed_total[x] = x;
    return t;
}

/// Lowers (e, h) in the trace's current lattice and appends the step.
inline void append_lowering(ExtensionTrace& t, std::size_t e, std::size_t h, std::size_t limit) {
    const auto start = std::chrono::steady_clock::now();
    LoweringResult r = lower_direct(t.final, e, h);
    const auto stop = std::chrono::steady_clock::now();
    if (r.K->size() > limit)
        throw SizeLimitError("extension would reach " + std::to_string(r.K->size()) + " elements (limit " +
                             std::to_string(limit) + ")",
                             t);
    for (auto& x : t.embed_total) x = r.embed[x];
    t.stats.push_back({r.L->size(), r.K->size(), r.D.count(),
                       std::chrono::duration<double, std::milli>(stop - start).count()});
    t.final = r.K;
    t.steps.push_back(std::move(r));
}

inline void require_semimodular_input(const FiniteLattice& l) {
    if (!is_semimodular(l)) throw PreconditionError("input lattice is not semimodular");
}

}  // namespace detail

/// Checks every trace invariant; returns a description of the first failure, empty when sound.
inline std::string trace_problems(const ExtensionTrace& t) {
    std::shared_ptr<const FiniteLattice> current = t.initial;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        if (s.L != current && !(s.L->order() == current->order()))
            return "step " + std::to_string(i) + " does not start from the previous lattice";
        const LoweringChecks c = verify_lowering(s);
        if (!c.ok()) return "step " + std::to_string(i) + " fails: " + c.failures();
        current = s.K;
    }
    if (!(current->order() == t.final->order())) return "final lattice is not the last step's result";
    if (!verify_length_preserving_embedding(*t.initial, *t.final, t.embed_total))
        return "composed embedding is not a length-preserving {0,1}-embedding";
    if (t.initial->length() != t.final->length()) return "length changed";
    if (join_irreducibles(*t.initial).size() != join_irreducibles(*t.final).size())
        return "number of join-irreducibles changed";
    return {};
}

/// Σ height(p) over p ∈ Jir L; strictly decreases along extend_to_geometric.
inline std::size_t jir_height_sum(const FiniteLattice& l) {
    std::size_t sum = 0;
    for (auto p : join_irreducibles(l).elements) sum += l.height(p);
    return sum;
}

/// Lowers non-atom join-irreducibles one cover at a time until every
/// join-irreducible is an atom. Picks e of least height, then least index,
/// and h = the least-index lower cover of lcov(e).
inline ExtensionTrace extend_to_geometric(const FiniteLattice& l, std::size_t limit = default_size_limit) {
    detail::require_semimodular_input(l);
    ExtensionTrace t = detail::start_trace(l);
    for (;;) {
        const FiniteLattice& cur = *t.final;
        std::size_t e = npos;
        for (std::size_t x = 0; x < cur.size(); ++x) {
            const std::size_t lc = lower_cover_if_unique(cur, x);
            if (lc == npos || lc == cur.bottom()) continue;
            if (e == npos || cur.height(x) < cur.height(e)) e = x;
        }
        if (e == npos) break;
        const std::size_t lc = lower_cover_if_unique(cur, e);
        const std::size_t h = cur.order().lower_covers(lc).front();
        detail::append_lowering(t, e, h, limit);
    }
    return t;
}

/// Removes from each chain the elements of the chains before it, dropping empties.
inline ChainPartition disjointify_chains(const std::vector<std::vector<std::size_t>>& cover) {
    ChainPartition out;
    std::vector<std::size_t> seen;
    for (const auto& c : cover) {
        std::vector<std::size_t> rest;
        for (auto x : c)
            if (std::find(seen.begin(), seen.end(), x) == seen.end()) rest.push_back(x);
        seen.insert(seen.end(), c.begin(), c.end());
        if (!rest.empty()) out.chains.push_back(std::move(rest));
    }
    return out;
}

/// True iff every pair of distinct chains is parallel and lattice-theoretically disjoint.
inline bool chains_pairwise_parallel(const FiniteLattice& l, const std::vector<std::vector<std::size_t>>& chains) {
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t j = i + 1; j < chains.size(); ++j)
            if (!are_parallel(l.order(), chains[i], chains[j])) return false;
    return true;
}

inline bool chains_pairwise_lattice_disjoint(const FiniteLattice& l,
                                             const std::vector<std::vector<std::size_t>>& chains) {
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t j = i + 1; j < chains.size(); ++j)
            if (!chains_lattice_disjoint(l, chains[i], chains[j])) return false;
    return true;
}

/// Lowers join-irreducibles until the given chains of Jir L become pairwise
/// parallel. At each step the first pair of chain slots (i, j), in index
/// order, with some b ∈ C_j below an element of C_i is chosen; e is the least
/// element of C_i above such a b and h is e's predecessor in C_i ∪ {0}.
inline ExtensionTrace extend_parallel_chains(const FiniteLattice& l, const ChainPartition& part,
                                             std::size_t limit = default_size_limit) {
    detail::require_semimodular_input(l);
    const JirPoset j = join_irreducibles(l);
    Subset seen(l.size());
    std::vector<std::vector<std::size_t>> chains;
    for (const auto& c : part.chains) {
        if (c.empty()) throw NotAPartitionError("empty chain in partition");
        for (auto x : c) {
            if (x >= l.size() || !j.members.test(x))
                throw NotAPartitionError("element " + std::to_string(x) + " is not join-irreducible");
            if (seen.test(x)) throw NotAPartitionError("element " + std::to_string(x) + " appears twice");
            seen.set(x);
        }
        if (!is_chain(l.order(), c)) throw NotAPartitionError("a block of the partition is not a chain");
        auto sorted = c;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return l.less(a, b); });
        chains.push_back(std::move(sorted));
    }
    if (seen != j.members) throw NotAPartitionError("partition does not cover Jir L");

    ExtensionTrace t = detail::start_trace(l);
    for (;;) {
        const FiniteLattice& cur = *t.final;
        std::size_t slot = npos, pos = npos;
        for (std::size_t ci = 0; ci < chains.size() && slot == npos; ++ci)
            for (std::size_t cj = 0; cj < chains.size(); ++cj) {
                if (ci == cj) continue;
                std::size_t best = npos;
                for (auto b : chains[cj])
                    for (std::size_t k = 0; k < chains[ci].size(); ++k)
                        if (cur.less(b, chains[ci][k])) {
                            best = std::min(best, k);
                            break;
                        }
                if (best != npos) {
                    slot = ci;
                    pos = best;
                    break;
                }
            }
        if (slot == npos) break;
        const std::size_t e = chains[slot][pos];
        const std::size_t h = pos == 0 ? cur.bottom() : chains[slot][pos - 1];
        detail::append_lowering(t, e, h, limit);
        chains[slot][pos] = t.steps.back().e_prime;
    }

    const FiniteLattice& fin = *t.final;
    if (!chains_pairwise_parallel(fin, chains) || !chains_pairwise_lattice_disjoint(fin, chains))
        throw VerificationError("final chains are not pairwise parallel and lattice-disjoint");
    t.chains = std::move(chains);
    return t;
}

/// Chains of Jir L in lattice indices from a partition of the Jir poset.
inline ChainPartition to_lattice_indices(const JirPoset& j, const ChainPartition& positions) {
    ChainPartition out;
    for (const auto& c : positions.chains) {
        std::vector<std::size_t> mapped;
        for (auto p : c) mapped.push_back(j.elements[p]);
        out.chains.push_back(std::move(mapped));
    }
    return out;
}

/// Semimodular, and Jir L splits into width(Jir L) pairwise lattice-disjoint chains.
/// Such a split exists iff every connected component of the comparability
/// graph of Jir L is a chain; the components then are the chains.
inline bool is_k_dimensional_rectangular(const FiniteLattice& l, std::size_t k) {
    if (!is_semimodular(l)) return false;
    const JirPoset j = join_irreducibles(l);
    const std::size_t n = j.size();
    std::vector<std::size_t> comp(n, npos);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != npos) continue;
        std::vector<std::size_t> stack{s}, members_of;
        comp[s] = comps.size();
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            members_of.push_back(j.elements[u]);
            for (std::size_t v = 0; v < n; ++v)
                if (comp[v] == npos && j.order.comparable(u, v)) {
                    comp[v] = comps.size();
                    stack.push_back(v);
                }
        }
        comps.push_back(std::move(members_of));
    }
    for (const auto& c : comps)
        if (!is_chain(l.order(), c)) return false;
    return comps.size() == k && poset_width(j.order) == k && chains_pairwise_lattice_disjoint(l, comps);
}

struct RectangularExtension {
    std::size_t k = 0;
    ExtensionTrace trace;
};

/// Extends L into a k-dimensional rectangular lattice, k = width(Jir L),
/// using a minimum chain partition of Jir L.
inline RectangularExtension rectangular_extension(const FiniteLattice& l, std::size_t limit = default_size_limit) {
    detail::require_semimodular_input(l);
    const JirPoset j = join_irreducibles(l);
    const ChainPartition part = to_lattice_indices(j, width_chain_partition(j.order));
    RectangularExtension out{part.size(), extend_parallel_chains(l, part, limit)};
    if (!is_k_dimensional_rectangular(*out.trace.final, out.k))
        throw VerificationError("result is not " + std::to_string(out.k) + "-dimensional rectangular");
    return out;
}

/// Same, from a user-supplied chain cover of Jir L; overlapping chains are peeled apart first.
inline RectangularExtension rectangular_extension(const FiniteLattice& l,
                                                  const std::vector<std::vector<std::size_t>>& cover,
                                                  std::size_t limit = default_size_limit) {
    const ChainPartition part = disjointify_chains(cover);
    RectangularExtension out{part.size(), extend_parallel_chains(l, part, limit)};
    return out;
}

/// length(L) = |Jir L| for distributive L, checked directly and along the
/// geometric pipeline (every step distributive, final Boolean).
inline bool distributive_length_check(const FiniteLattice& l) {
    if (!is_distributive(l)) throw NotDistributiveError("input lattice is not distributive");
    const std::size_t jir = join_irreducibles(l).size();
    const ExtensionTrace t = extend_to_geometric(l);
    for (const auto& s : t.steps)
        if (!is_distributive(*s.K)) return false;
    const FiniteLattice& fin = *t.final;
    const std::size_t at = atoms(fin).size();
    const bool boolean = is_geometric(fin) && is_distributive(fin) && at < 64 && fin.size() == (std::size_t{1} << at);
    return boolean && fin.length() == at && at == jir && l.length() == jir;
}

struct ExtensionSearchResult {
    std::optional<FiniteLattice> witness;
    std::vector<std::size_t> embedding;   // L -> witness, when found
    std::size_t geometries_examined = 0;
};

/// Searches all geometries on `target_jir` whose lattice has L's length for
/// one into which L has a length-preserving {0,1}-embedding. The first
/// witness in enumeration order is returned.
inline ExtensionSearchResult exhaustive_extension_search(const FiniteLattice& l, const Poset& target_jir,
                                                         std::optional<std::size_t> size_bound = std::nullopt) {
    if (target_jir.size() > 20) throw BoundExceededError("target poset too large");
    EnumerationOptions opts;
    opts.exact_length = l.length();
    opts.max_flats = size_bound.value_or(std::size_t{1} << target_jir.size());
    ExtensionSearchResult out;
    enumerate_geometries(target_jir, opts, [&](const Geometry& g) {
        ++out.geometries_examined;
        FiniteLattice k = lat_of_geometry(g);
        if (auto f = find_length_preserving_embedding(l, k)) {
            out.embedding = std::move(*f);
            out.witness = std::move(k);
            return false;
        }
        return true;
    });
    return out;
}

}  // namespace semilat
