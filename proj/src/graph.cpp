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

#include "vbqc/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace vbqc {

Graph::Graph(std::vector<VertexId> vertices, std::vector<std::pair<VertexId, VertexId>> edges,
             std::vector<VertexId> inputs, std::vector<VertexId> outputs)
    : ids_(std::move(vertices)) {
    adjacency_.resize(ids_.size());
    is_input_.assign(ids_.size(), false);
    is_output_.assign(ids_.size(), false);

    for (const auto &[a, b] : edges) {
        auto ia = find(a);
        auto ib = find(b);
        if (!ia || !ib) {
            construction_errors_.push_back("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                           ") references an unknown vertex");
            continue;
        }
        edges_.emplace_back(*ia, *ib);
        if (*ia != *ib) {
            adjacency_[*ia].push_back(*ib);
            adjacency_[*ib].push_back(*ia);
        }
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    auto mark = [this](const std::vector<VertexId> &src, std::vector<std::size_t> &dst, std::vector<bool> &flag,
                       const char *what) {
        for (VertexId id : src) {
            auto i = find(id);
            if (!i) {
                construction_errors_.push_back(std::string(what) + " " + std::to_string(id) + " is not a vertex");
                continue;
            }
            if (!flag[*i]) {
                dst.push_back(*i);
                flag[*i] = true;
            }
        }
    };
    mark(inputs, inputs_, is_input_, "input");
    mark(outputs, outputs_, is_output_, "output");
}

std::optional<std::size_t> Graph::find(VertexId id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t Graph::index_of(VertexId id) const {
    auto i = find(id);
    if (!i) {
        throw std::out_of_range("unknown vertex id " + std::to_string(id));
    }
    return *i;
}

bool Graph::adjacent(std::size_t a, std::size_t b) const {
    const auto &adj = adjacency_.at(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::size_t Graph::max_degree() const {
    std::size_t d = 0;
    for (const auto &adj : adjacency_) {
        d = std::max(d, adj.size());
    }
    return d;
}

std::vector<std::string> graph_violations(const Graph &g) {
    std::vector<std::string> out = g.construction_errors();
    std::set<VertexId> seen_ids;
    for (VertexId id : g.ids()) {
        if (!seen_ids.insert(id).second) {
            out.push_back("duplicate vertex id " + std::to_string(id));
        }
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : g.edges()) {
        if (a == b) {
            out.push_back("self-loop at vertex " + std::to_string(g.id(a)));
            continue;
        }
        if (!seen.insert(std::minmax(a, b)).second) {
            out.push_back("duplicate edge (" + std::to_string(g.id(a)) + ", " + std::to_string(g.id(b)) + ")");
        }
    }
    return out;
}

std::vector<std::size_t> Colouring::members(int c) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < colour.size(); ++v) {
        if (colour[v] == c) {
            out.push_back(v);
        }
    }
    return out;
}

Colouring greedy_colouring(const Graph &g, std::span<const std::size_t> order) {
    if (order.size() != g.size()) {
        throw std::invalid_argument("colouring order must list every vertex once");
    }
    Colouring c;
    c.colour.assign(g.size(), -1);
    std::vector<char> used;
    for (std::size_t v : order) {
        if (v >= g.size() || c.colour[v] != -1) {
            throw std::invalid_argument("colouring order must list every vertex once");
        }
        used.assign(g.degree(v) + 1, 0);
        for (std::size_t u : g.neighbours(v)) {
            int cu = c.colour[u];
            if (cu >= 0 && static_cast<std::size_t>(cu) < used.size()) {
                used[cu] = 1;
            }
        }
        int pick = 0;
        while (used[pick]) {
            ++pick;
        }
        c.colour[v] = pick;
        c.k = std::max(c.k, pick + 1);
    }
    return c;
}

Colouring greedy_colouring(const Graph &g) {
    std::vector<std::size_t> order(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    return greedy_colouring(g, order);
}

std::optional<Colouring> bipartite_colouring(const Graph &g) {
    Colouring c;
    c.colour.assign(g.size(), -1);
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (c.colour[start] != -1) {
            continue;
        }
        c.colour[start] = 0;
        std::queue<std::size_t> q;
        q.push(start);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (std::size_t u : g.neighbours(v)) {
                if (c.colour[u] == -1) {
                    c.colour[u] = 1 - c.colour[v];
                    q.push(u);
                } else if (c.colour[u] == c.colour[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    // An edgeless graph still gets k = 2 when some vertex is coloured 1; a
    // graph with no vertices gets k = 0.
    c.k = 0;
    for (int col : c.colour) {
        c.k = std::max(c.k, col + 1);
    }
    return c;
}

bool validate_colouring(const Graph &g, const Colouring &c) {
    if (c.colour.size() != g.size()) {
        throw std::invalid_argument("colouring covers " + std::to_string(c.colour.size()) + " vertices, graph has " +
                                    std::to_string(g.size()));
    }
    for (int col : c.colour) {
        if (col < 0 || col >= c.k) {
            return false;
        }
    }
    for (auto [a, b] : g.edges()) {
        if (c.colour[a] == c.colour[b]) {
            return false;
        }
    }
    return true;
}

}  // namespace vbqc
