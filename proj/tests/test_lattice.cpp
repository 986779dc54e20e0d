#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <set>

using namespace semilat;

namespace {

// K1: chain 0<a<b<e with e lowered to an atom; see the lowering tests.
FiniteLattice k1() { return parse_lattice(read_file(testsupport::fixture("k1.lat"))); }

}  // namespace

TEST(LatticeFromPoset, Chain) {
    const FiniteLattice l = chain_lattice(2);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) {
            EXPECT_EQ(l.meet(x, y), std::min(x, y));
            EXPECT_EQ(l.join(x, y), std::max(x, y));
        }
    EXPECT_EQ(l.bottom(), 0u);
    EXPECT_EQ(l.top(), 2u);
}

TEST(LatticeFromPoset, AntichainIsNotALattice) {
    try {
        lattice_from_poset(antichain_poset(2));
        FAIL();
    } catch (const NotALatticeError& err) {
        EXPECT_NE(err.x(), err.y());
    }
}

TEST(LatticeFromPoset, MissingJoinNamesPair) {
    // 0 < 1, 2 < 3, 4 and two tops 3, 4 over 1 and 2: bowtie
    try {
        lattice_from_covers(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}});
        FAIL();
    } catch (const NotALatticeError& err) {
        EXPECT_TRUE((err.x() == 1 && err.y() == 2) || (err.x() == 2 && err.y() == 1) ||
                    (err.x() == 3 && err.y() == 4) || (err.x() == 4 && err.y() == 3));
    }
}

TEST(LatticeFromPoset, GridIsBoolean) {
    EXPECT_TRUE(are_isomorphic(grid_lattice(2, 2), boolean_lattice(2)));
    const FiniteLattice b2 = boolean_lattice(2);
    EXPECT_EQ(b2.meet(1, 2), 0u);
    EXPECT_EQ(b2.join(1, 2), 3u);
}

TEST(LatticeFromPoset, TablesMatchOracleOnCorpus) {
    for (const auto& entry : generate_corpus()) {
        const FiniteLattice& l = *entry.lattice;
        const auto t = oracle::meet_join(l);
        for (std::size_t x = 0; x < l.size(); ++x)
            for (std::size_t y = 0; y < l.size(); ++y) {
                ASSERT_EQ(l.meet(x, y), t.meet[x][y]) << entry.name;
                ASSERT_EQ(l.join(x, y), t.join[x][y]) << entry.name;
            }
        auto cov = oracle::covers(l);
        std::sort(cov.begin(), cov.end());
        EXPECT_EQ(l.order().covers(), cov) << entry.name;
    }
}

TEST(LatticeFromPoset, OnDemandMatchesTables) {
    LatticeOptions small;
    small.table_threshold = 0;
    const FiniteLattice g = grid_lattice(3, 4);
    const FiniteLattice lazy = lattice_from_poset(g.order(), small);
    EXPECT_FALSE(lazy.has_tables());
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y) {
            EXPECT_EQ(lazy.meet(x, y), g.meet(x, y));
            EXPECT_EQ(lazy.join(x, y), g.join(x, y));
        }
}

TEST(LatticeLaws, HoldOnCorpus) {
    for (const auto& entry : generate_corpus()) {
        const FiniteLattice& l = *entry.lattice;
        const std::size_t n = l.size();
        for (std::size_t x = 0; x < n; ++x) {
            EXPECT_TRUE(l.leq(l.bottom(), x) && l.leq(x, l.top()));
            EXPECT_EQ(l.meet(x, x), x);
            for (std::size_t y = 0; y < n; ++y) {
                EXPECT_EQ(l.meet(x, y), l.meet(y, x));
                EXPECT_EQ(l.join(x, l.meet(x, y)), x);
                EXPECT_EQ(l.meet(x, l.join(x, y)), x);
                for (std::size_t z = 0; z < n; z += 3) EXPECT_EQ(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
            }
        }
    }
}

TEST(JoinIrreducibles, Boolean) {
    const JirPoset j = join_irreducibles(boolean_lattice(2));
    EXPECT_EQ(j.elements, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(j.lcov, (std::vector<std::size_t>{0, 0}));
    EXPECT_FALSE(j.order.comparable(0, 1));
}

TEST(JoinIrreducibles, Chain) {
    const JirPoset j = join_irreducibles(chain_lattice(2));
    EXPECT_EQ(j.elements, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(j.lcov_of(1), 0u);
    EXPECT_EQ(j.lcov_of(2), 1u);
    EXPECT_TRUE(j.order.less(0, 1));
}

TEST(JoinIrreducibles, M3) {
    const JirPoset j = join_irreducibles(m_k_lattice(3));
    EXPECT_EQ(j.elements, (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(poset_width(j.order), 3u);
}

TEST(JoinIrreducibles, EveryElementIsJoinOfJirBelow) {
    for (const auto& entry : generate_corpus()) {
        const FiniteLattice& l = *entry.lattice;
        const JirPoset j = join_irreducibles(l);
        for (std::size_t z = 0; z < l.size(); ++z) {
            std::size_t acc = l.bottom();
            for (auto p : j.elements)
                if (l.leq(p, z)) acc = l.join(acc, p);
            EXPECT_EQ(acc, z) << entry.name;
        }
    }
}

TEST(Semimodular, Examples) {
    EXPECT_TRUE(is_semimodular(m_k_lattice(3)));
    EXPECT_FALSE(is_semimodular(n5_lattice()));
    EXPECT_TRUE(semimodularity_violation(n5_lattice()).has_value());
    EXPECT_TRUE(is_semimodular(chain_lattice(5)));
}

TEST(Jhcc, Examples) {
    EXPECT_TRUE(check_jhcc(boolean_lattice(3)));
    EXPECT_FALSE(check_jhcc(n5_lattice()));
    EXPECT_TRUE(check_jhcc(chain_lattice(4)));
    EXPECT_EQ(oracle::maximal_chain_lengths(n5_lattice(), 0, 4), (std::set<std::size_t>{2, 3}));
}

TEST(Jhcc, MatchesChainEnumerationOnCorpus) {
    for (const auto& entry : generate_corpus()) {
        const FiniteLattice& l = *entry.lattice;
        if (l.size() > 24) continue;
        EXPECT_EQ(check_jhcc(l), oracle::jhcc(l)) << entry.name;
        if (entry.profile.semimodular) { EXPECT_TRUE(check_jhcc(l)) << entry.name; }
    }
}

TEST(Geometric, Examples) {
    EXPECT_TRUE(is_geometric(m_k_lattice(3)));
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(is_geometric(boolean_lattice(n)));
    EXPECT_FALSE(is_geometric(chain_lattice(2)));
    EXPECT_TRUE(is_geometric(chain_lattice(1)));
}

TEST(Predicates, Examples) {
    const auto b3 = predicate_profile(boolean_lattice(3));
    EXPECT_TRUE(b3.distributive && b3.modular && b3.join_distributive);
    const auto m3 = predicate_profile(m_k_lattice(3));
    EXPECT_FALSE(m3.distributive);
    EXPECT_TRUE(m3.modular);
    EXPECT_FALSE(m3.join_distributive);
    const auto n5 = predicate_profile(n5_lattice());
    EXPECT_FALSE(n5.distributive || n5.modular || n5.join_distributive || n5.semimodular);
    EXPECT_TRUE(find_n5_sublattice(n5_lattice()).has_value());
    EXPECT_FALSE(find_n5_sublattice(m_k_lattice(3)).has_value());
}

TEST(Predicates, ImplicationsOnCorpus) {
    for (const auto& entry : generate_corpus()) {
        const auto& p = entry.profile;
        const FiniteLattice& l = *entry.lattice;
        if (p.geometric) { EXPECT_TRUE(p.semimodular) << entry.name; }
        if (p.distributive) { EXPECT_TRUE(p.modular && p.join_distributive) << entry.name; }
        if (p.modular) { EXPECT_TRUE(p.semimodular) << entry.name; }
        // sublattice and cover-preserving M3 searches agree on semimodular lattices
        if (p.semimodular) {
            EXPECT_EQ(find_m3_sublattice(l).has_value(), find_m3_sublattice(l, true).has_value()) << entry.name;
        }
        EXPECT_EQ(p.modular, !find_n5_sublattice(l).has_value()) << entry.name;
    }
}

TEST(Embedding, Examples) {
    const FiniteLattice c2 = chain_lattice(2), b2 = boolean_lattice(2), b3 = boolean_lattice(3);
    EXPECT_TRUE(verify_length_preserving_embedding(c2, c2, {0, 1, 2}));
    EXPECT_TRUE(verify_length_preserving_embedding(c2, b2, {0, 1, 3}));
    EXPECT_FALSE(verify_length_preserving_embedding(c2, b3, {0, 1, 7}));
    EXPECT_FALSE(verify_length_preserving_embedding(c2, b2, {0, 3, 3}));
}

namespace {

// Every injective {0,1}-map preserving meets, by backtracking over L's indices.
void for_each_meet_embedding(const FiniteLattice& l, const FiniteLattice& k,
                             const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> map(l.size(), npos);
    std::vector<char> used(k.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t x) {
        if (x == l.size()) {
            f(map);
            return;
        }
        for (std::size_t y = 0; y < k.size(); ++y) {
            if (used[y]) continue;
            if ((x == l.bottom()) != (y == k.bottom()) || (x == l.top()) != (y == k.top())) continue;
            map[x] = y;
            bool ok = true;
            for (std::size_t z = 0; z < x && ok; ++z)
                ok = map[l.meet(x, z)] == npos || map[l.meet(x, z)] == k.meet(y, map[z]);
            for (std::size_t z = 0; z <= x && ok; ++z)
                for (std::size_t w = 0; w <= x && ok; ++w)
                    if (l.meet(z, w) == x) ok = k.meet(map[z], map[w]) == y;
            if (ok) {
                used[y] = 1;
                rec(x + 1);
                used[y] = 0;
            }
            map[x] = npos;
        }
    };
    rec(0);
}

}  // namespace

TEST(Embedding, MeetEmbeddingWithEqualLengthPreservesJoins) {
    const auto corpus = generate_corpus();
    std::size_t checked = 0;
    for (const auto& a : corpus)
        for (const auto& b : corpus) {
            if (!a.profile.semimodular || !b.profile.semimodular) continue;
            if (a.lattice->length() != b.lattice->length() || a.lattice->size() > 8 || b.lattice->size() > 10) continue;
            for_each_meet_embedding(*a.lattice, *b.lattice, [&](const std::vector<std::size_t>& f) {
                if (!is_meet_embedding(*a.lattice, *b.lattice, f)) return;
                ++checked;
                for (std::size_t x = 0; x < a.lattice->size(); ++x)
                    for (std::size_t y = 0; y < a.lattice->size(); ++y)
                        ASSERT_EQ(f[a.lattice->join(x, y)], b.lattice->join(f[x], f[y])) << a.name << " -> " << b.name;
            });
        }
    EXPECT_GT(checked, 10u);
}

TEST(Embedding, SearchFindsVerifiedEmbeddings) {
    const FiniteLattice c3 = chain_lattice(3);
    const auto f = find_length_preserving_embedding(c3, boolean_lattice(3));
    ASSERT_TRUE(f.has_value());
    EXPECT_TRUE(verify_length_preserving_embedding(c3, boolean_lattice(3), *f));
    EXPECT_FALSE(find_length_preserving_embedding(boolean_lattice(2), chain_lattice(2)).has_value());
}

TEST(LatticeDisjoint, Examples) {
    const FiniteLattice b2 = boolean_lattice(2);
    EXPECT_TRUE(chains_lattice_disjoint(b2, {1}, {2}));
    const FiniteLattice c3 = chain_lattice(3);
    EXPECT_FALSE(chains_lattice_disjoint(c3, {1}, {2}));
    // K1: a=1, b=2, e'=4
    EXPECT_TRUE(chains_lattice_disjoint(k1(), {1, 2}, {4}));
    EXPECT_THROW(chains_lattice_disjoint(b2, {1, 2}, {3}), NotAChainError);
}

TEST(Isomorphism, Examples) {
    const FiniteLattice g = grid_lattice(3, 3);
    const auto f = find_isomorphism(g, g);
    ASSERT_TRUE(f.has_value());
    EXPECT_FALSE(find_isomorphism(boolean_lattice(2), chain_lattice(3)).has_value());
    EXPECT_TRUE(are_isomorphic(*lower_direct(chain_lattice(2), 2, 0).K, boolean_lattice(2)));
}

TEST(Isomorphism, FindsRelabeling) {
    const FiniteLattice g = grid_lattice(2, 3);
    // reverse every index
    std::vector<CoverPair> covers;
    for (const auto& [lo, hi] : g.order().covers()) covers.emplace_back(5 - lo, 5 - hi);
    const FiniteLattice h = lattice_from_covers(6, covers);
    const auto f = find_isomorphism(g, h);
    ASSERT_TRUE(f.has_value());
    for (std::size_t x = 0; x < 6; ++x)
        for (std::size_t y = 0; y < 6; ++y) EXPECT_EQ(g.leq(x, y), h.leq((*f)[x], (*f)[y]));
    EXPECT_FALSE(are_isomorphic(m_k_lattice(3), n5_lattice()));
    EXPECT_FALSE(are_isomorphic(grid_lattice(2, 3), m_k_lattice(4)));
}

TEST(IntervalLength, Examples) {
    const FiniteLattice n5 = n5_lattice();
    EXPECT_EQ(interval_length(n5, 0, 4), 3u);
    EXPECT_EQ(interval_length(n5, 3, 4), 1u);
    EXPECT_EQ(interval_length(n5, 1, 3), npos);
    EXPECT_EQ(n5.length(), 3u);
}
