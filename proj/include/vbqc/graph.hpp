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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vbqc {

/// External vertex identifier as it appears in pattern files.
using VertexId = long long;

/// Simple undirected graph with designated input and output vertices.
///
/// Vertices are addressed internally by dense index 0..size()-1 in the order
/// they were given. Construction never rejects a malformed edge list; use
/// graph_violations() to obtain a report.
class Graph {
  public:
    Graph() = default;
    Graph(std::vector<VertexId> vertices, std::vector<std::pair<VertexId, VertexId>> edges,
          std::vector<VertexId> inputs = {}, std::vector<VertexId> outputs = {});

    std::size_t size() const {
        return ids_.size();
    }
    const std::vector<VertexId> &ids() const {
        return ids_;
    }
    VertexId id(std::size_t index) const {
        return ids_.at(index);
    }
    /// Throws std::out_of_range for an unknown id.
    std::size_t index_of(VertexId id) const;
    std::optional<std::size_t> find(VertexId id) const;

    /// Edges as given, in dense indices. May contain loops or duplicates.
    const std::vector<std::pair<std::size_t, std::size_t>> &edges() const {
        return edges_;
    }
    /// Sorted, deduplicated neighbour list without self-loops.
    const std::vector<std::size_t> &neighbours(std::size_t v) const {
        return adjacency_.at(v);
    }
    bool adjacent(std::size_t a, std::size_t b) const;
    std::size_t degree(std::size_t v) const {
        return adjacency_.at(v).size();
    }
    std::size_t max_degree() const;

    const std::vector<std::size_t> &inputs() const {
        return inputs_;
    }
    const std::vector<std::size_t> &outputs() const {
        return outputs_;
    }
    bool is_input(std::size_t v) const {
        return is_input_.at(v);
    }
    bool is_output(std::size_t v) const {
        return is_output_.at(v);
    }

    /// Edge endpoints, inputs or outputs that named unknown vertex ids.
    const std::vector<std::string> &construction_errors() const {
        return construction_errors_;
    }

  private:
    std::vector<VertexId> ids_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> inputs_;
    std::vector<std::size_t> outputs_;
    std::vector<bool> is_input_;
    std::vector<bool> is_output_;
    std::vector<std::string> construction_errors_;
};

/// Simplicity report: self-loops, duplicate edges, duplicate vertex ids,
/// dangling references. Empty when the graph is well formed.
std::vector<std::string> graph_violations(const Graph &g);

/// Assignment of a colour in [0, k) to every vertex index.
struct Colouring {
    int k = 0;
    std::vector<int> colour;

    /// Vertex indices carrying colour c, ascending.
    std::vector<std::size_t> members(int c) const;
};

/// Greedy colouring visiting vertices in `order` (all vertices, each once).
/// Each vertex takes the smallest colour unused by already coloured
/// neighbours, so k <= max_degree + 1.
Colouring greedy_colouring(const Graph &g, std::span<const std::size_t> order);
/// Greedy colouring in vertex index order.
Colouring greedy_colouring(const Graph &g);

/// BFS 2-colouring started from each uncoloured vertex in index order.
/// Returns nullopt if an odd cycle exists.
std::optional<Colouring> bipartite_colouring(const Graph &g);

/// True iff every vertex has a colour in [0, k) and no edge is monochromatic.
/// Throws std::invalid_argument if the colouring does not cover exactly the
/// graph's vertices.
bool validate_colouring(const Graph &g, const Colouring &c);

}  // namespace vbqc
