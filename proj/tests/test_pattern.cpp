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

#include <cstdio>
#include <fstream>
#include <map>

#include "oracle.hpp"
#include "vbqc/pattern.hpp"
#include "vbqc/pattern_io.hpp"
#include "vbqc/ubqc.hpp"

namespace vbqc {
namespace {

using nlohmann::json;

// Output distribution of the unblinded pattern on input x, by exhaustive
// enumeration of measurement branches on a dense register. Dependencies are
// recomputed here from the flow.
std::map<std::vector<int>, double> oracle_outputs(const MeasurementPattern &p, const std::vector<Bit> &x) {
    const Graph &g = p.graph;
    const int n = static_cast<int>(g.size());
    std::vector<std::vector<int>> xd(n), zd(n);
    for (int u = 0; u < n; ++u) {
        if (!p.flow.f[u]) {
            continue;
        }
        const int fu = static_cast<int>(*p.flow.f[u]);
        xd[fu].push_back(u);
        for (std::size_t v : g.neighbours(fu)) {
            if (static_cast<int>(v) != u) {
                zd[v].push_back(u);
            }
        }
    }
    std::map<std::vector<int>, double> dist;
    const auto &order = p.flow.order;
    for (std::uint32_t branch = 0; branch < (1u << n); ++branch) {
        oracle::Dense st(n);
        for (int v = 0; v < n; ++v) {
            int theta = 0;
            for (std::size_t i = 0; i < g.inputs().size(); ++i) {
                if (static_cast<int>(g.inputs()[i]) == v) {
                    theta = 4 * x[i];
                }
            }
            st.prepare_plus(v, theta);
        }
        for (auto [a, b] : g.edges()) {
            st.cz(static_cast<int>(a), static_cast<int>(b));
        }
        std::vector<int> s(n, 0);
        double prob = 1.0;
        for (std::size_t step = 0; step < order.size(); ++step) {
            const int v = static_cast<int>(order[step]);
            int sx = 0, sz = 0;
            for (int u : xd[v]) sx ^= s[u];
            for (int u : zd[v]) sz ^= s[u];
            const int phi = p.angles[v].value();
            const int delta = ((sx ? -phi : phi) + 4 * sz + 16) % 8;
            s[v] = (branch >> v) & 1;
            prob *= st.measure(v, delta, s[v]);
        }
        if (prob < 1e-12) {
            continue;
        }
        std::vector<int> y;
        for (std::size_t o : g.outputs()) {
            y.push_back(s[o]);
        }
        dist[y] += prob;
    }
    return dist;
}

TEST(Pattern, BuiltinsAreValid) {
    for (const auto &name : patterns::builtin_names()) {
        const auto p = patterns::builtin(name);
        EXPECT_TRUE(validate_pattern(p).empty()) << name;
        const auto [xd, zd] = derive_dependencies(p.graph, p.flow.f);
        EXPECT_EQ(xd, p.flow.xdeps) << name;
        EXPECT_EQ(zd, p.flow.zdeps) << name;
    }
    EXPECT_THROW(patterns::builtin("nope"), std::invalid_argument);
}

TEST(Pattern, FiveNodeSwapDependencies) {
    const auto p = patterns::five_node_swap();
    const Graph &g = p.graph;
    auto ids = [&](const std::vector<std::size_t> &v) {
        std::vector<VertexId> r;
        for (auto i : v) r.push_back(g.id(i));
        return r;
    };
    EXPECT_EQ(ids(p.flow.xdeps[g.index_of(5)]), (std::vector<VertexId>{3}));
    EXPECT_EQ(ids(p.flow.zdeps[g.index_of(3)]), (std::vector<VertexId>{2}));
    EXPECT_EQ(ids(p.flow.zdeps[g.index_of(4)]), (std::vector<VertexId>{1}));
    EXPECT_EQ(ids(p.flow.zdeps[g.index_of(2)]), (std::vector<VertexId>{1}));
    EXPECT_EQ(greedy_colouring(p).k, 3);
}

TEST(Pattern, OracleTruthTables) {
    struct Case {
        std::string name;
        std::function<std::vector<int>(const std::vector<Bit> &)> f;
    };
    const std::vector<Case> cases = {
        {"linear-identity", [](const std::vector<Bit> &x) { return std::vector<int>{x[0]}; }},
        {"linear-not", [](const std::vector<Bit> &x) { return std::vector<int>{1 - x[0]}; }},
        {"five-node-swap", [](const std::vector<Bit> &x) { return std::vector<int>{x[1], x[0]}; }},
        {"brickwork-2x5", [](const std::vector<Bit> &x) { return std::vector<int>{x[0], x[1]}; }},
    };
    for (const auto &c : cases) {
        const auto p = patterns::builtin(c.name);
        for (const auto &x : all_inputs(p)) {
            const auto dist = oracle_outputs(p, x);
            ASSERT_EQ(dist.size(), 1u) << c.name;
            EXPECT_NEAR(dist.begin()->second, 1.0, 1e-9);
            EXPECT_EQ(dist.begin()->first, c.f(x)) << c.name;
            const auto ref = reference_output(p, x);
            EXPECT_EQ(std::vector<int>(ref.begin(), ref.end()), c.f(x)) << c.name;
        }
    }
}

TEST(Pattern, ValidationMessages) {
    auto p = patterns::linear_identity();
    p.flow.f[0] = 2;  // 1 -> 3 is not an edge
    auto msgs = validate_pattern(p);
    ASSERT_FALSE(msgs.empty());
    EXPECT_NE(msgs.front().find("flow successor not neighbour"), std::string::npos);

    auto q = patterns::linear_identity();
    q.flow.order = {0, 0, 2};
    EXPECT_FALSE(validate_pattern(q).empty());

    auto r = patterns::linear_identity();
    r.flow.order = {1, 0, 2};  // 2 depends on 1 via f(1) = 2
    EXPECT_FALSE(validate_pattern(r).empty());
}

TEST(Pattern, CorrectionExponents) {
    const auto p = patterns::five_node_swap();
    const Graph &g = p.graph;
    std::vector<Bit> s(5, 0);
    s[g.index_of(1)] = 1;
    s[g.index_of(3)] = 1;
    const auto c5 = correction_exponents(p.flow, s, g.index_of(5));
    EXPECT_EQ(c5, (CorrectionBits{1, 1}));
    const auto c4 = correction_exponents(p.flow, s, g.index_of(4));
    EXPECT_EQ(c4, (CorrectionBits{0, 1}));
    std::vector<bool> known(5, false);
    EXPECT_THROW(correction_exponents(p.flow, s, known, g.index_of(5)), std::logic_error);
}

TEST(PatternIo, RoundTripAndShippedFiles) {
    for (const auto &name : patterns::builtin_names()) {
        const auto p = patterns::builtin(name);
        const auto q = pattern_from_json(pattern_to_json(p));
        EXPECT_EQ(pattern_to_json(q), pattern_to_json(p));
        const auto shipped = load_pattern_file(std::string(VBQC_PATTERN_DIR) + "/" + name + ".json");
        EXPECT_EQ(pattern_to_json(shipped), pattern_to_json(p)) << name;
        EXPECT_EQ(pattern_to_json(resolve_pattern(name)), pattern_to_json(p));
    }
    const auto lc = load_pattern_file(std::string(VBQC_PATTERN_DIR) + "/linear-cluster.json");
    EXPECT_TRUE(validate_pattern(lc).empty());
    EXPECT_EQ(reference_output(lc, {1}), (std::vector<Bit>{1}));
}

TEST(PatternIo, RejectsBadDocuments) {
    json doc = pattern_to_json(patterns::linear_identity());
    json extra = doc;
    extra["colour"] = 1;
    EXPECT_THROW(pattern_from_json(extra), std::invalid_argument);
    json schema = doc;
    schema["schema"] = "vbqc.pattern/9";
    EXPECT_THROW(pattern_from_json(schema), std::invalid_argument);
    json angle = doc;
    angle["angles"]["1"] = 8;
    EXPECT_ANY_THROW(pattern_from_json(angle));
    json only_x = doc;
    only_x.erase("zdeps");
    const auto partial = pattern_from_json(only_x);
    for (const auto &z : partial.flow.zdeps) {
        EXPECT_TRUE(z.empty());
    }
    json derived = doc;
    derived.erase("zdeps");
    derived.erase("xdeps");
    EXPECT_EQ(pattern_to_json(pattern_from_json(derived)), doc);
    EXPECT_ANY_THROW(load_pattern_file("/nonexistent/pattern.json"));
}

}  // namespace
}  // namespace vbqc
