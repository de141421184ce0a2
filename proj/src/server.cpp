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

#include "vbqc/server.hpp"

#include <stdexcept>

namespace vbqc {

ServerRun::ServerRun(const Graph &g, const ServerConfig &cfg, std::uint64_t session, std::size_t run,
                     std::size_t attempt)
    : graph_(g), cfg_(cfg), run_(run),
      backend_(derive_seed(cfg.seed, {stream::kPhysics, session, run, attempt}), cfg.cap) {
    if (const auto *noisy = std::get_if<Noisy>(&cfg.behaviour)) {
        noise_ = &noisy->model;
    } else if (const auto *mal = std::get_if<Malicious>(&cfg.behaviour)) {
        deviations_ = mal->attack.on_run(run);
    }
    if (cfg.forced_redo_rate > 0.0 && g.size() > 0) {
        Rng rng(derive_seed(cfg.seed, {stream::kServer, session, run, attempt}));
        if (uniform01(rng) < cfg.forced_redo_rate) {
            redo_step_ = static_cast<std::size_t>(rng() % g.size());
        }
    }
}

void ServerRun::receive(std::vector<OpaqueQubit> qubits) {
    if (qubits.size() != graph_.size()) {
        throw std::invalid_argument("expected one prepared qubit per vertex");
    }
    for (std::size_t v = 0; v < qubits.size(); ++v) {
        backend_.load(static_cast<QubitLabel>(v), qubits[v]);
    }
}

void ServerRun::touch(std::size_t v) {
    const bool fresh = backend_.touch(static_cast<QubitLabel>(v));
    if (fresh && noise_ && noise_->schedule == NoiseSchedule::OnPreparation) {
        backend_.channel(static_cast<QubitLabel>(v), noise_->channel(run_));
    }
}

std::optional<Bit> ServerRun::measure(std::size_t vertex, Angle8 delta) {
    if (vertex >= graph_.size()) {
        throw std::invalid_argument("measurement request for unknown vertex");
    }
    if (redo_step_ && *redo_step_ == steps_) {
        return std::nullopt;
    }
    ++steps_;
    const auto label = static_cast<QubitLabel>(vertex);
    touch(vertex);
    for (std::size_t u : graph_.neighbours(vertex)) {
        if (!backend_.measured(static_cast<QubitLabel>(u))) {
            touch(u);
            backend_.cz(label, static_cast<QubitLabel>(u));
        }
    }
    if (noise_ && noise_->schedule == NoiseSchedule::AfterEntangling) {
        backend_.channel(label, noise_->channel(run_));
    }
    for (const auto &[v, p] : deviations_) {
        if (v == vertex) {
            backend_.frame_pauli(label, delta, p);
        }
    }
    return backend_.measure(label, delta);
}

namespace {

class InProcessChannel : public RunChannel {
  public:
    explicit InProcessChannel(std::unique_ptr<ServerRun> run) : run_(std::move(run)) {
    }
    void send_preparation(std::vector<OpaqueQubit> qubits) override {
        run_->receive(std::move(qubits));
    }
    std::optional<Bit> measure(std::size_t vertex, Angle8 delta) override {
        return run_->measure(vertex, delta);
    }
    void client_redo() override {
        run_.reset();
    }

  private:
    std::unique_ptr<ServerRun> run_;
};

}  // namespace

std::unique_ptr<RunChannel> InProcessLink::open_run(std::size_t run, std::size_t attempt) {
    return std::make_unique<InProcessChannel>(server_.open_run(session_, run, attempt));
}

}  // namespace vbqc
