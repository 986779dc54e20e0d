#pragma once

#include "semilat/constructions.hpp"
#include "semilat/lattice.hpp"
#include "semilat/lowering.hpp"
#include "semilat/predicates.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace semilat {

struct CorpusSpec {
    std::uint64_t seed = 7;
    std::size_t max_chain = 5;    // C_1..C_max_chain
    std::size_t max_boolean = 4;  // B_1..B_max_boolean
    std::vector<std::size_t> m_k{3, 4};
    std::size_t max_grid = 4;     // m×n grids, 2 ≤ m ≤ n ≤ max_grid
    bool n5 = true;
    std::size_t max_m3_product = 2;  // M3 × C_1..C_max_m3_product
    bool glued = true;
    bool slim = true;  // S7 and S7 × C_1
    std::size_t lowering_depth = 2;  // random lowerings from each base, 0 disables
    std::size_t max_size = 64;

    /// A spec that generates nothing.
    static CorpusSpec none() {
        CorpusSpec s;
        s.max_chain = s.max_boolean = s.max_grid = s.max_m3_product = s.lowering_depth = 0;
        s.m_k.clear();
        s.n5 = s.glued = s.slim = false;
        return s;
    }
};

struct CorpusEntry {
    std::string name;
    std::shared_ptr<const FiniteLattice> lattice;
    PredicateProfile profile;
};

namespace detail {

/// Applies up to `depth` lowerings with parameters drawn from `rng`, recording each result.
inline void random_lowerings(std::vector<CorpusEntry>& out, const std::string& base_name, const FiniteLattice& base,
                             std::size_t depth, std::size_t max_size, std::mt19937_64& rng) {
    auto cur = std::make_shared<const FiniteLattice>(base);
    std::string name = base_name;
    for (std::size_t d = 0; d < depth; ++d) {
        const auto params = valid_lowering_parameters(*cur);
        if (params.empty()) return;
        const auto [e, h] = params[rng() % params.size()];
        LoweringResult r = lower_direct(cur, e, h);
        if (r.K->size() > max_size) return;
        name += "/lower(" + std::to_string(e) + "," + std::to_string(h) + ")";
        cur = r.K;
        out.push_back({name, cur, predicate_profile(*cur)});
    }
}

}  // namespace detail

/// Deterministic list of small lattices, each tagged with its predicate profile.
inline std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec = {}) {
    std::vector<CorpusEntry> out;
    auto add = [&](std::string name, FiniteLattice l) {
        if (l.size() > spec.max_size) return;
        auto p = std::make_shared<const FiniteLattice>(std::move(l));
        out.push_back({std::move(name), p, predicate_profile(*p)});
    };
    for (std::size_t n = 1; n <= spec.max_chain; ++n) add("C" + std::to_string(n), chain_lattice(n));
    for (std::size_t n = 1; n <= spec.max_boolean; ++n) add("B" + std::to_string(n), boolean_lattice(n));
    for (auto k : spec.m_k) add("M" + std::to_string(k), m_k_lattice(k));
    for (std::size_t m = 2; m <= spec.max_grid; ++m)
        for (std::size_t n = m; n <= spec.max_grid; ++n)
            add("grid" + std::to_string(m) + "x" + std::to_string(n), grid_lattice(m, n));
    if (spec.n5) add("N5", n5_lattice());
    for (std::size_t n = 1; n <= spec.max_m3_product; ++n)
        add("M3xC" + std::to_string(n), product_lattice(m_k_lattice(3), chain_lattice(n)));
    if (spec.glued) {
        add("M3+M3", glued_sum(m_k_lattice(3), m_k_lattice(3)));
        add("C2+M3", glued_sum(chain_lattice(2), m_k_lattice(3)));
        add("grid2x2+M3", glued_sum(grid_lattice(2, 2), m_k_lattice(3)));
    }
    if (spec.slim) {
        add("S7", s7_lattice());
        add("S7xC1", product_lattice(s7_lattice(), chain_lattice(1)));
    }
    if (spec.lowering_depth > 0) {
        std::mt19937_64 rng(spec.seed);
        const std::vector<std::pair<std::string, FiniteLattice>> bases{
            {"C4", chain_lattice(4)},
            {"grid2x3", grid_lattice(2, 3)},
            {"grid3x3", grid_lattice(3, 3)},
            {"M3xC2", product_lattice(m_k_lattice(3), chain_lattice(2))},
            {"M3+M3", glued_sum(m_k_lattice(3), m_k_lattice(3))},
            {"S7", s7_lattice()},
        };
        for (const auto& [name, base] : bases)
            detail::random_lowerings(out, name, base, spec.lowering_depth, spec.max_size, rng);
    }
    return out;
}

struct Counterexample {
    std::string name;
    std::shared_ptr<const FiniteLattice> L;
    std::size_t e = npos;
    std::size_t h = npos;
    std::shared_ptr<const FiniteLattice> K;
    /// Sublattice of K witnessing the failure: N5 for modularity, M3 for join-distributivity.
    std::optional<std::array<std::size_t, 5>> sublattice;
};

/// First (member, e, h) in corpus order where L satisfies `pred` and the
/// lowered lattice does not. Non-semimodular members are skipped.
inline std::optional<Counterexample> search_counterexample(const std::vector<CorpusEntry>& corpus, Predicate pred) {
    for (const auto& entry : corpus) {
        const FiniteLattice& l = *entry.lattice;
        if (!entry.profile.semimodular || !evaluate(pred, l)) continue;
        for (const auto& [e, h] : valid_lowering_parameters(l)) {
            LoweringResult r = lower_direct(entry.lattice, e, h);
            if (evaluate(pred, *r.K)) continue;
            Counterexample c{entry.name, entry.lattice, e, h, r.K, std::nullopt};
            if (pred == Predicate::modular)
                c.sublattice = find_n5_sublattice(*r.K);
            else if (pred == Predicate::join_distributive || pred == Predicate::distributive)
                c.sublattice = find_m3_sublattice(*r.K);
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace semilat
