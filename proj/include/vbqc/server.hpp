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
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "vbqc/adversary.hpp"
#include "vbqc/backend.hpp"
#include "vbqc/graph.hpp"
#include "vbqc/ubqc.hpp"

namespace vbqc {

struct ServerConfig {
    ServerBehaviour behaviour = Honest{};
    /// Probability that a run attempt is interrupted by a Server Redo at a
    /// uniformly chosen measurement step.
    double forced_redo_rate = 0.0;
    /// Master seed for physics and Redo decisions. Per-attempt streams are
    /// derived from (seed, session, run, attempt).
    std::uint64_t seed = 0;
    std::size_t cap = 16;
};

/// Server side of one run attempt. Sees the public graph, opaque qubits and
/// the angles it is asked to measure at, nothing else.
class ServerRun {
  public:
    ServerRun(const Graph &g, const ServerConfig &cfg, std::uint64_t session, std::size_t run, std::size_t attempt);

    void receive(std::vector<OpaqueQubit> qubits);
    /// Entangles `vertex` with its unmeasured neighbours, applies noise or
    /// deviations, and measures at `delta`. nullopt signals a Redo.
    std::optional<Bit> measure(std::size_t vertex, Angle8 delta);

    std::size_t max_width() const {
        return backend_.max_width();
    }
    std::optional<std::size_t> planned_redo_step() const {
        return redo_step_;
    }

  private:
    void touch(std::size_t v);

    const Graph &graph_;
    const ServerConfig &cfg_;
    std::size_t run_;
    QuantumBackend backend_;
    const NoiseModel *noise_ = nullptr;
    std::vector<std::pair<std::size_t, Pauli>> deviations_;
    std::optional<std::size_t> redo_step_;
    std::size_t steps_ = 0;
};

class Server {
  public:
    Server(Graph graph, ServerConfig cfg) : graph_(std::move(graph)), cfg_(std::move(cfg)) {
    }

    std::unique_ptr<ServerRun> open_run(std::uint64_t session, std::size_t run, std::size_t attempt) const {
        return std::make_unique<ServerRun>(graph_, cfg_, session, run, attempt);
    }
    const Graph &graph() const {
        return graph_;
    }
    const ServerConfig &config() const {
        return cfg_;
    }

  private:
    Graph graph_;
    ServerConfig cfg_;
};

/// Direct in-process link to a Server for one session.
class InProcessLink : public ServerLink {
  public:
    InProcessLink(const Server &server, std::uint64_t session) : server_(server), session_(session) {
    }
    std::unique_ptr<RunChannel> open_run(std::size_t run, std::size_t attempt) override;
    bool concurrent() const override {
        return true;
    }

  private:
    const Server &server_;
    std::uint64_t session_;
};

}  // namespace vbqc
