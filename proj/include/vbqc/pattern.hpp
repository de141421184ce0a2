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
#include <string>
#include <utility>
#include <vector>

#include "vbqc/angle.hpp"
#include "vbqc/graph.hpp"

namespace vbqc {

/// Measurement order and byproduct dependencies, all in dense vertex indices.
struct FlowSpec {
    std::vector<std::size_t> order;
    /// Flow successor per vertex; nullopt for outputs and unflowed vertices.
    std::vector<std::optional<std::size_t>> f;
    /// Vertices whose decoded outcomes are XORed into s^X / s^Z of each vertex.
    std::vector<std::vector<std::size_t>> xdeps;
    std::vector<std::vector<std::size_t>> zdeps;
};

struct MeasurementPattern {
    std::string name;
    Graph graph;
    std::vector<Angle8> angles;
    FlowSpec flow;
};

/// Every violated invariant, human readable; empty means valid.
std::vector<std::string> validate_pattern(const MeasurementPattern &p);

/// Standard causal-flow dependencies: u is in xdeps(v) when f(u) = v, and in
/// zdeps(v) when v is a neighbour of f(u) other than u itself.
std::pair<std::vector<std::vector<std::size_t>>, std::vector<std::vector<std::size_t>>>
derive_dependencies(const Graph &g, const std::vector<std::optional<std::size_t>> &f);

/// Fills flow.xdeps / flow.zdeps from flow.f.
void assign_derived_dependencies(MeasurementPattern &p);

/// s^X, s^Z for vertex v given decoded outcomes indexed by vertex.
/// `known[u]` tells whether outcome u is available; a missing dependency
/// throws std::logic_error.
struct CorrectionBits {
    Bit sx = 0;
    Bit sz = 0;
    friend bool operator==(const CorrectionBits &, const CorrectionBits &) = default;
};
CorrectionBits correction_exponents(const FlowSpec &flow, const std::vector<Bit> &outcomes,
                                    const std::vector<bool> &known, std::size_t v);
/// Variant for a complete outcome vector.
CorrectionBits correction_exponents(const FlowSpec &flow, const std::vector<Bit> &outcomes, std::size_t v);

/// Greedy colouring in the pattern's measurement order.
Colouring greedy_colouring(const MeasurementPattern &p);

namespace patterns {

/// Path 1-2-3 computing y = x on one bit.
MeasurementPattern linear_identity();
/// Path 1-2-3 computing y = NOT x.
MeasurementPattern linear_not();
/// Five vertices with a triangle (greedy k = 3); outputs (y4, y5) = (x2, x1).
MeasurementPattern five_node_swap();
/// Two rows by five columns of a brickwork graph; identity on two bits.
MeasurementPattern brickwork_2x5();

std::vector<std::string> builtin_names();
/// Throws std::invalid_argument for an unknown name.
MeasurementPattern builtin(const std::string &name);

}  // namespace patterns

}  // namespace vbqc
