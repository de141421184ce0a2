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

#include "vbqc/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace vbqc {

std::vector<std::string> validate_pattern(const MeasurementPattern &p) {
    const Graph &g = p.graph;
    const FlowSpec &fl = p.flow;
    const std::size_t n = g.size();
    std::vector<std::string> out = graph_violations(g);
    auto vid = [&](std::size_t i) { return i < n ? std::to_string(g.id(i)) : "#" + std::to_string(i); };

    if (p.angles.size() != n) {
        out.push_back("angles defined for " + std::to_string(p.angles.size()) + " of " + std::to_string(n) +
                      " vertices");
    }

    std::vector<std::size_t> position(n, n);
    bool order_ok = fl.order.size() == n;
    for (std::size_t i = 0; i < fl.order.size(); ++i) {
        std::size_t v = fl.order[i];
        if (v >= n || position[v] != n) {
            order_ok = false;
            break;
        }
        position[v] = i;
    }
    if (!order_ok) {
        out.push_back("order is not a permutation of the vertices");
        return out;
    }

    if (fl.f.size() != n) {
        out.push_back("flow map has wrong size");
    } else {
        for (std::size_t v = 0; v < n; ++v) {
            if (!fl.f[v]) {
                continue;
            }
            std::size_t s = *fl.f[v];
            if (s >= n) {
                out.push_back("flow successor of " + vid(v) + " is not a vertex");
                continue;
            }
            if (g.is_output(v)) {
                out.push_back("output " + vid(v) + " has a flow successor");
            }
            if (!g.adjacent(v, s)) {
                out.push_back("flow successor not neighbour: f(" + vid(v) + ") = " + vid(s));
            }
            if (position[s] <= position[v]) {
                out.push_back("flow successor precedes vertex: f(" + vid(v) + ") = " + vid(s));
            }
        }
    }

    auto check_deps = [&](const std::vector<std::vector<std::size_t>> &deps, const char *name) {
        if (deps.size() != n) {
            out.push_back(std::string(name) + " has wrong size");
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t u : deps[v]) {
                if (u >= n) {
                    out.push_back(std::string(name) + "(" + vid(v) + ") names an unknown vertex");
                } else if (position[u] >= position[v]) {
                    out.push_back(std::string(name) + "(" + vid(v) + ") contains " + vid(u) +
                                  " which is not measured earlier");
                }
            }
        }
    };
    check_deps(fl.xdeps, "xdeps");
    check_deps(fl.zdeps, "zdeps");
    return out;
}

std::pair<std::vector<std::vector<std::size_t>>, std::vector<std::vector<std::size_t>>>
derive_dependencies(const Graph &g, const std::vector<std::optional<std::size_t>> &f) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> xdeps(n), zdeps(n);
    for (std::size_t u = 0; u < n && u < f.size(); ++u) {
        if (!f[u]) {
            continue;
        }
        std::size_t s = *f[u];
        xdeps.at(s).push_back(u);
        for (std::size_t v : g.neighbours(s)) {
            if (v != u) {
                zdeps[v].push_back(u);
            }
        }
    }
    for (auto *deps : {&xdeps, &zdeps}) {
        for (auto &d : *deps) {
            std::sort(d.begin(), d.end());
        }
    }
    return {std::move(xdeps), std::move(zdeps)};
}

void assign_derived_dependencies(MeasurementPattern &p) {
    auto [x, z] = derive_dependencies(p.graph, p.flow.f);
    p.flow.xdeps = std::move(x);
    p.flow.zdeps = std::move(z);
}

CorrectionBits correction_exponents(const FlowSpec &flow, const std::vector<Bit> &outcomes,
                                    const std::vector<bool> &known, std::size_t v) {
    CorrectionBits c;
    auto fold = [&](const std::vector<std::size_t> &deps) {
        Bit acc = 0;
        for (std::size_t u : deps) {
            if (u >= outcomes.size() || u >= known.size() || !known[u]) {
                throw std::logic_error("missing outcome for dependency " + std::to_string(u) + " of vertex " +
                                       std::to_string(v));
            }
            acc ^= outcomes[u] & 1;
        }
        return acc;
    };
    c.sx = fold(flow.xdeps.at(v));
    c.sz = fold(flow.zdeps.at(v));
    return c;
}

CorrectionBits correction_exponents(const FlowSpec &flow, const std::vector<Bit> &outcomes, std::size_t v) {
    return correction_exponents(flow, outcomes, std::vector<bool>(outcomes.size(), true), v);
}

Colouring greedy_colouring(const MeasurementPattern &p) {
    return greedy_colouring(p.graph, p.flow.order);
}

namespace patterns {
namespace {

struct Builder {
    std::string name;
    std::vector<VertexId> vertices;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<VertexId> inputs, outputs, order;
    std::vector<std::pair<VertexId, int>> angles;
    std::vector<std::pair<VertexId, VertexId>> flow;

    MeasurementPattern build() const {
        MeasurementPattern p;
        p.name = name;
        p.graph = Graph(vertices, edges, inputs, outputs);
        const Graph &g = p.graph;
        p.angles.assign(g.size(), Angle8());
        for (auto [v, a] : angles) {
            p.angles[g.index_of(v)] = Angle8(a);
        }
        for (VertexId v : order) {
            p.flow.order.push_back(g.index_of(v));
        }
        p.flow.f.assign(g.size(), std::nullopt);
        for (auto [u, v] : flow) {
            p.flow.f[g.index_of(u)] = g.index_of(v);
        }
        assign_derived_dependencies(p);
        return p;
    }
};

MeasurementPattern linear(const char *name, int first_angle) {
    Builder b;
    b.name = name;
    b.vertices = {1, 2, 3};
    b.edges = {{1, 2}, {2, 3}};
    b.inputs = {1};
    b.outputs = {3};
    b.order = {1, 2, 3};
    b.angles = {{1, first_angle}, {2, 0}, {3, 0}};
    b.flow = {{1, 2}, {2, 3}};
    return b.build();
}

}  // namespace

MeasurementPattern linear_identity() {
    return linear("linear-identity", 0);
}

MeasurementPattern linear_not() {
    return linear("linear-not", 4);
}

MeasurementPattern five_node_swap() {
    Builder b;
    b.name = "five-node-swap";
    b.vertices = {1, 2, 3, 4, 5};
    b.edges = {{1, 3}, {3, 5}, {2, 4}, {2, 3}, {3, 4}};
    b.inputs = {1, 2};
    b.outputs = {4, 5};
    b.order = {1, 2, 3, 4, 5};
    b.angles = {{1, 0}, {2, 2}, {3, 0}, {4, 2}, {5, 0}};
    b.flow = {{1, 3}, {2, 4}, {3, 5}};
    return b.build();
}

MeasurementPattern brickwork_2x5() {
    Builder b;
    b.name = "brickwork-2x5";
    auto id = [](int row, int col) { return static_cast<VertexId>(10 * row + col); };
    for (int col = 1; col <= 5; ++col) {
        for (int row = 1; row <= 2; ++row) {
            b.vertices.push_back(id(row, col));
            b.order.push_back(id(row, col));
            b.angles.emplace_back(id(row, col), 0);
            if (col < 5) {
                b.edges.emplace_back(id(row, col), id(row, col + 1));
                b.flow.emplace_back(id(row, col), id(row, col + 1));
            }
        }
    }
    b.edges.emplace_back(id(1, 3), id(2, 3));
    b.edges.emplace_back(id(1, 5), id(2, 5));
    b.inputs = {id(1, 1), id(2, 1)};
    b.outputs = {id(1, 5), id(2, 5)};
    return b.build();
}

std::vector<std::string> builtin_names() {
    return {"linear-identity", "linear-not", "five-node-swap", "brickwork-2x5"};
}

MeasurementPattern builtin(const std::string &name) {
    if (name == "linear-identity") {
        return linear_identity();
    }
    if (name == "linear-not") {
        return linear_not();
    }
    if (name == "five-node-swap") {
        return five_node_swap();
    }
    if (name == "brickwork-2x5") {
        return brickwork_2x5();
    }
    throw std::invalid_argument("unknown built-in pattern '" + name + "'");
}

}  // namespace patterns

}  // namespace vbqc
