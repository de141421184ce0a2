// Copyright 2026 The vbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "vbqc/angle.hpp"
#include "vbqc/graph.hpp"
#include "vbqc/params.hpp"
#include "vbqc/rng.hpp"

namespace vbqc {
namespace {

TEST(Angle8, ReducesModEight) {
    EXPECT_EQ(Angle8(9).value(), 1);
    EXPECT_EQ(Angle8(-1).value(), 7);
    EXPECT_EQ(Angle8(-17).value(), 7);
    EXPECT_EQ((Angle8(5) + Angle8(6)).value(), 3);
    EXPECT_EQ((Angle8(1) - Angle8(3)).value(), 6);
    EXPECT_EQ(Angle8::pi().value(), 4);
    EXPECT_EQ(Angle8::pi_times(1).value(), 4);
    EXPECT_EQ(Angle8::pi_times(0).value(), 0);
    EXPECT_EQ(signed_by(1, Angle8(3)).value(), 5);
    EXPECT_EQ(signed_by(0, Angle8(3)).value(), 3);
}

TEST(Angle8, CheckedRejectsOutOfRange) {
    EXPECT_EQ(Angle8::checked(7).value(), 7);
    EXPECT_THROW(Angle8::checked(8), std::out_of_range);
    EXPECT_THROW(Angle8::checked(-1), std::out_of_range);
}

TEST(Angle8, GroupLawsOnAllPairs) {
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            EXPECT_EQ(Angle8(a) + Angle8(b), Angle8(b) + Angle8(a));
            EXPECT_EQ(Angle8(a) - Angle8(a), Angle8(0));
            EXPECT_EQ(-(-Angle8(a)), Angle8(a));
            EXPECT_NEAR(Angle8(a).radians(), a * std::acos(-1.0) / 4.0, 1e-15);
        }
    }
}

TEST(Params, ThresholdFromOmegaIsCeiling) {
    EXPECT_EQ(threshold_from_omega(0.2, 50), 10u);
    EXPECT_EQ(threshold_from_omega(0.2, 4), 1u);
    EXPECT_EQ(threshold_from_omega(0.05, 50), 3u);
    EXPECT_EQ(threshold_from_omega(0.0, 50), 0u);
    EXPECT_EQ(threshold_from_omega(0.1, 30), 3u);  // 0.1 * 30 is 3.0000000000000004
    EXPECT_THROW(threshold_from_omega(1.5, 4), std::invalid_argument);
}

TEST(Params, MakeAndValidate) {
    const auto p = ProtocolParams::make(8, 4, 1, 2);
    EXPECT_EQ(p.t, 4u);
    EXPECT_NO_THROW(p.validate());
    EXPECT_DOUBLE_EQ(p.omega(), 0.25);
    EXPECT_FALSE(p.secure_regime());  // 2kw = 4 = t
    EXPECT_TRUE(ProtocolParams::make(100, 50, 10, 2).secure_regime());
    EXPECT_THROW(ProtocolParams::make(8, 0, 1, 2).validate(), std::invalid_argument);
    EXPECT_THROW(ProtocolParams::make(8, 8, 0, 2).validate(), std::invalid_argument);
    EXPECT_THROW(ProtocolParams::make(8, 4, 5, 2).validate(), std::invalid_argument);
    const auto r = ProtocolParams::from_ratios(100, 0.5, 0.2, 2);
    EXPECT_EQ(r.d, 50u);
    EXPECT_EQ(r.w, 10u);
}

TEST(Rng, DerivedSeedsAreDistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        seen.insert(trial_seed(1, t));
        seen.insert(run_seed(trial_seed(1, 0), t, 0));
    }
    EXPECT_EQ(seen.size(), 2000u);
    EXPECT_EQ(derive_seed(5, {1, 2}), derive_seed(5, {1, 2}));
    EXPECT_NE(derive_seed(5, {1, 2}), derive_seed(5, {2, 1}));
}

TEST(Graph, IndicesNeighboursAndErrors) {
    Graph g({10, 20, 30}, {{10, 20}, {20, 30}, {20, 10}}, {10}, {30});
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.index_of(30), 2u);
    EXPECT_EQ(g.neighbours(1), (std::vector<std::size_t>{0, 2}));
    EXPECT_TRUE(g.adjacent(0, 1));
    EXPECT_FALSE(g.adjacent(0, 2));
    EXPECT_EQ(g.max_degree(), 2u);
    EXPECT_TRUE(g.is_input(0));
    EXPECT_TRUE(g.is_output(2));
    EXPECT_THROW(g.index_of(99), std::out_of_range);
    EXPECT_TRUE(g.construction_errors().empty());
    EXPECT_FALSE(graph_violations(g).empty());  // duplicate edge

    Graph bad({1, 1, 2}, {{1, 1}, {2, 7}});
    EXPECT_FALSE(bad.construction_errors().empty());
    EXPECT_FALSE(graph_violations(bad).empty());
}

struct RandomGraph {
    int n;
    std::vector<std::pair<int, int>> edges;
    Graph graph() const {
        std::vector<VertexId> ids(static_cast<std::size_t>(n));
        std::iota(ids.begin(), ids.end(), 0);
        std::vector<std::pair<VertexId, VertexId>> e(edges.begin(), edges.end());
        return Graph(ids, e);
    }
};

RandomGraph random_graph(std::mt19937_64 &rng, int max_n, double density) {
    RandomGraph g;
    g.n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n));
    std::bernoulli_distribution keep(density);
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            if (keep(rng)) {
                g.edges.emplace_back(u, v);
            }
        }
    }
    return g;
}

TEST(Colouring, GreedyRespectsDegreeBound) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        const Graph g = random_graph(rng, 30, (rng() % 100) / 100.0).graph();
        const Colouring c = greedy_colouring(g);
        EXPECT_TRUE(validate_colouring(g, c));
        EXPECT_LE(static_cast<std::size_t>(c.k), g.max_degree() + 1);
    }
}

TEST(Colouring, BipartiteMatchesBruteForce) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const RandomGraph rg = random_graph(rng, 10, 0.05 + (rng() % 40) / 100.0);
        const Graph g = rg.graph();
        const auto c = bipartite_colouring(g);
        EXPECT_EQ(c.has_value(), !oracle::has_odd_cycle_bruteforce(rg.n, rg.edges));
        if (c) {
            EXPECT_TRUE(validate_colouring(g, *c));
            EXPECT_LE(c->k, 2);
        }
    }
}

TEST(Colouring, ValidateRejectsConflictsAndSizeMismatch) {
    Graph g({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    EXPECT_FALSE(bipartite_colouring(g).has_value());
    Colouring c{2, {0, 1, 0}};
    EXPECT_FALSE(validate_colouring(g, c));
    Colouring short_c{2, {0, 1}};
    EXPECT_THROW(validate_colouring(g, short_c), std::invalid_argument);
    EXPECT_EQ((Colouring{3, {0, 1, 2}}.members(1)), (std::vector<std::size_t>{1}));
}

}  // namespace
}  // namespace vbqc
