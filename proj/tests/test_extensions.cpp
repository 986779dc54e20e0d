#include "support.hpp"

#include <gtest/gtest.h>

using namespace semilat;

TEST(Geometric, ChainBecomesB3) {
    const ExtensionTrace t = extend_to_geometric(chain_lattice(3));
    EXPECT_LE(t.steps.size(), 3u);
    EXPECT_EQ(t.final->size(), 8u);
    EXPECT_TRUE(are_isomorphic(*t.final, boolean_lattice(3)));
    EXPECT_EQ(trace_problems(t), "");
}

TEST(Geometric, M3NeedsNoSteps) {
    const ExtensionTrace t = extend_to_geometric(m_k_lattice(3));
    EXPECT_TRUE(t.steps.empty());
    EXPECT_EQ(t.final->order(), m_k_lattice(3).order());
}

TEST(Geometric, GridBecomesB3) {
    const ExtensionTrace t = extend_to_geometric(grid_lattice(2, 3));
    EXPECT_TRUE(are_isomorphic(*t.final, boolean_lattice(3)));
    EXPECT_EQ(t.final->length(), 3u);
}

TEST(Geometric, RejectsNonSemimodular) { EXPECT_THROW(extend_to_geometric(n5_lattice()), PreconditionError); }

TEST(Geometric, SizeLimitKeepsPartialTrace) {
    try {
        extend_to_geometric(chain_lattice(4), 10);
        FAIL();
    } catch (const SizeLimitError& err) {
        EXPECT_LE(err.partial().final->size(), 10u);
        EXPECT_EQ(trace_problems(err.partial()), "");
    }
}

TEST(Geometric, CorpusPropertiesAndTermination) {
    for (const auto& entry : generate_corpus()) {
        if (!entry.profile.semimodular || join_irreducibles(*entry.lattice).size() > 6) continue;
        const ExtensionTrace t = extend_to_geometric(*entry.lattice);
        EXPECT_TRUE(is_geometric(*t.final)) << entry.name;
        EXPECT_EQ(t.final->length(), entry.lattice->length()) << entry.name;
        EXPECT_EQ(atoms(*t.final).size(), join_irreducibles(*entry.lattice).size()) << entry.name;
        EXPECT_EQ(trace_problems(t), "") << entry.name;
        std::size_t measure = jir_height_sum(*entry.lattice);
        for (const auto& s : t.steps) {
            const std::size_t next = jir_height_sum(*s.K);
            EXPECT_LT(next, measure) << entry.name;
            measure = next;
        }
        EXPECT_TRUE(extend_to_geometric(*t.final).steps.empty()) << entry.name;
    }
}

TEST(Parallel, AlreadyParallelNeedsNoSteps) {
    ChainPartition p;
    p.chains = {{1}, {2}};
    EXPECT_TRUE(extend_parallel_chains(boolean_lattice(2), p).steps.empty());
}

TEST(Parallel, ChainSplitGivesK1) {
    ChainPartition p;
    p.chains = {{1, 2}, {3}};
    const ExtensionTrace t = extend_parallel_chains(chain_lattice(3), p);
    ASSERT_EQ(t.steps.size(), 1u);
    EXPECT_EQ(t.steps[0].e, 3u);
    EXPECT_EQ(t.steps[0].h, 0u);
    EXPECT_EQ(emit_lattice(*t.final), read_file(testsupport::fixture("k1.lat")));
    EXPECT_EQ(t.chains, (std::vector<std::vector<std::size_t>>{{1, 2}, {4}}));
    EXPECT_TRUE(chains_lattice_disjoint(*t.final, t.chains[0], t.chains[1]));
}

TEST(Parallel, RejectsBadPartitions) {
    ChainPartition missing;
    missing.chains = {{1, 2}};
    EXPECT_THROW(extend_parallel_chains(chain_lattice(3), missing), NotAPartitionError);
    ChainPartition twice;
    twice.chains = {{1, 2}, {2, 3}};
    EXPECT_THROW(extend_parallel_chains(chain_lattice(3), twice), NotAPartitionError);
    ChainPartition not_jir;
    not_jir.chains = {{1}, {2}, {3}};
    EXPECT_THROW(extend_parallel_chains(boolean_lattice(2), not_jir), NotAPartitionError);
    ChainPartition not_chain;
    not_chain.chains = {{1, 2}};
    EXPECT_THROW(extend_parallel_chains(boolean_lattice(2), not_chain), NotAPartitionError);
}

TEST(Parallel, SingletonPartitionMatchesGeometricPipeline) {
    for (const auto& entry : generate_corpus()) {
        if (!entry.profile.semimodular || join_irreducibles(*entry.lattice).size() > 5) continue;
        ChainPartition p;
        for (auto x : join_irreducibles(*entry.lattice).elements) p.chains.push_back({x});
        const ExtensionTrace t = extend_parallel_chains(*entry.lattice, p);
        EXPECT_TRUE(is_geometric(*t.final)) << entry.name;
        EXPECT_TRUE(are_isomorphic(*t.final, *extend_to_geometric(*entry.lattice).final)) << entry.name;
    }
}

TEST(Parallel, EveryChainPartitionOnCorpus) {
    std::size_t runs = 0;
    for (const auto& entry : generate_corpus()) {
        if (!entry.profile.semimodular) continue;
        const FiniteLattice& l = *entry.lattice;
        const JirPoset j = join_irreducibles(l);
        if (j.size() > 5) continue;
        testsupport::for_each_set_partition(j.elements, [&](const std::vector<std::vector<std::size_t>>& blocks) {
            for (const auto& b : blocks)
                if (!is_chain(l.order(), b)) return;
            ChainPartition p;
            p.chains = blocks;
            const ExtensionTrace t = extend_parallel_chains(l, p);
            ++runs;
            ASSERT_EQ(t.chains.size(), blocks.size());
            for (std::size_t i = 0; i < blocks.size(); ++i) EXPECT_EQ(t.chains[i].size(), blocks[i].size());
            for (std::size_t i = 0; i < t.chains.size(); ++i)
                for (std::size_t k = i + 1; k < t.chains.size(); ++k) {
                    const bool par = are_parallel(t.final->order(), t.chains[i], t.chains[k]);
                    EXPECT_TRUE(par) << entry.name;
                    EXPECT_EQ(par, chains_lattice_disjoint(*t.final, t.chains[i], t.chains[k])) << entry.name;
                }
            EXPECT_EQ(trace_problems(t), "") << entry.name;
        });
    }
    EXPECT_GT(runs, 50u);
}

TEST(Rectangular, ZeroStepCases) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const RectangularExtension r = rectangular_extension(boolean_lattice(n));
        EXPECT_EQ(r.k, n);
        EXPECT_TRUE(r.trace.steps.empty());
    }
    const RectangularExtension c = rectangular_extension(chain_lattice(4));
    EXPECT_EQ(c.k, 1u);
    EXPECT_TRUE(c.trace.steps.empty());
}

TEST(Rectangular, UserPartition) {
    const RectangularExtension r = rectangular_extension(chain_lattice(3), {{1, 2}, {3}});
    EXPECT_EQ(r.k, 2u);
    EXPECT_EQ(r.trace.steps.size(), 1u);
    EXPECT_TRUE(is_k_dimensional_rectangular(*r.trace.final, 2));
    EXPECT_EQ(emit_lattice(*r.trace.final), read_file(testsupport::fixture("k1.lat")));
}

TEST(Rectangular, DisjointifyPeels) {
    const ChainPartition p = disjointify_chains({{1, 2, 3}, {2, 4}, {3}});
    EXPECT_EQ(p.chains, (std::vector<std::vector<std::size_t>>{{1, 2, 3}, {4}}));
}

TEST(Rectangular, CorpusResultsAreRectangular) {
    for (const auto& entry : generate_corpus()) {
        if (!entry.profile.semimodular || join_irreducibles(*entry.lattice).size() > 6) continue;
        const RectangularExtension r = rectangular_extension(*entry.lattice);
        EXPECT_EQ(r.k, poset_width(join_irreducibles(*entry.lattice).order)) << entry.name;
        EXPECT_TRUE(is_k_dimensional_rectangular(*r.trace.final, r.k)) << entry.name;
        EXPECT_EQ(join_irreducibles(*r.trace.final).size(), join_irreducibles(*entry.lattice).size());
    }
    EXPECT_FALSE(is_k_dimensional_rectangular(chain_lattice(3), 2));
    EXPECT_FALSE(is_k_dimensional_rectangular(n5_lattice(), 2));
}

TEST(Distributive, LengthEqualsJir) {
    EXPECT_TRUE(distributive_length_check(boolean_lattice(3)));
    EXPECT_TRUE(distributive_length_check(chain_lattice(5)));
    EXPECT_TRUE(distributive_length_check(grid_lattice(3, 4)));
    EXPECT_EQ(grid_lattice(3, 4).length(), 5u);
    EXPECT_EQ(join_irreducibles(grid_lattice(3, 4)).size(), 5u);
    EXPECT_THROW(distributive_length_check(m_k_lattice(3)), NotDistributiveError);
}

TEST(Distributive, IntermediatesStayDistributive) {
    for (const auto& entry : generate_corpus()) {
        if (!entry.profile.distributive) continue;
        const ExtensionTrace t = extend_to_geometric(*entry.lattice);
        for (const auto& s : t.steps) EXPECT_TRUE(is_distributive(*s.K)) << entry.name;
        EXPECT_TRUE(distributive_length_check(*entry.lattice)) << entry.name;
    }
}

TEST(Search, Examples) {
    const ExtensionSearchResult a = exhaustive_extension_search(chain_lattice(2), antichain_poset(2));
    ASSERT_TRUE(a.witness.has_value());
    EXPECT_TRUE(are_isomorphic(*a.witness, boolean_lattice(2)));
    EXPECT_TRUE(verify_length_preserving_embedding(chain_lattice(2), *a.witness, a.embedding));
    EXPECT_FALSE(exhaustive_extension_search(boolean_lattice(2), chain_poset(2)).witness.has_value());
    for (const auto& entry : generate_corpus()) {
        if (!entry.profile.semimodular || join_irreducibles(*entry.lattice).size() > 5) continue;
        const ExtensionSearchResult self =
            exhaustive_extension_search(*entry.lattice, join_irreducibles(*entry.lattice).order);
        ASSERT_TRUE(self.witness.has_value()) << entry.name;
        EXPECT_TRUE(are_isomorphic(*self.witness, *entry.lattice)) << entry.name;
    }
}

TEST(Search, BoundExceeded) {
    EXPECT_THROW(exhaustive_extension_search(chain_lattice(3), antichain_poset(3), 4), BoundExceededError);
}

TEST(Search, ReconstructedNonextension) {
    const FiniteLattice l = parse_lattice(read_file(testsupport::fixture("nonext_L.lat")));
    const Poset p = parse_poset(read_file(testsupport::fixture("nonext_P.poset")));
    const Poset pp = parse_poset(read_file(testsupport::fixture("nonext_Pprime.poset")));
    EXPECT_TRUE(is_semimodular(l));
    EXPECT_EQ(l.length(), 4u);
    // Jir L ≅ P: Lat of the geometry Geom L is L, and P carries an isomorphic geometry
    const JirPoset j = join_irreducibles(l);
    EXPECT_EQ(j.size(), p.size());
    EXPECT_EQ(poset_length(j.order), poset_length(p));
    EXPECT_EQ(j.order.covers().size(), p.covers().size());
    EXPECT_TRUE(exhaustive_extension_search(l, p).witness.has_value());
    EXPECT_FALSE(exhaustive_extension_search(l, pp).witness.has_value());
}
