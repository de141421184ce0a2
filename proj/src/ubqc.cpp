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

#include "vbqc/ubqc.hpp"

#include <algorithm>
#include <cmath>

#include "vbqc/server.hpp"

namespace vbqc {

namespace {

Angle8 random_angle(Rng &rng) {
    return Angle8(static_cast<int>(rng() >> 61));
}

}  // namespace

std::vector<std::size_t> RunSecrets::traps() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < role.size(); ++v) {
        if (role[v] == Role::Trap) {
            out.push_back(v);
        }
    }
    return out;
}

RunSecrets sample_computation_secrets(const MeasurementPattern &p, Rng &rng, const ClientOptions &opt) {
    const std::size_t n = p.graph.size();
    RunSecrets s;
    s.type = RunType::Computation;
    s.role.assign(n, Role::Computation);
    s.theta.assign(n, Angle8());
    s.r.assign(n, 0);
    s.dummy.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        Angle8 th = random_angle(rng);
        s.theta[v] = opt.force_zero_theta ? Angle8() : th;
        s.r[v] = random_bit(rng);
    }
    return s;
}

RunSecrets sample_test_secrets(const MeasurementPattern &p, const Colouring &c, int colour, Rng &rng,
                               const ClientOptions &opt) {
    if (colour < 0 || colour >= c.k) {
        throw std::invalid_argument("test colour " + std::to_string(colour) + " outside [0, " + std::to_string(c.k) +
                                    ")");
    }
    if (!validate_colouring(p.graph, c)) {
        throw std::invalid_argument("colouring is not proper for the pattern graph");
    }
    const std::size_t n = p.graph.size();
    RunSecrets s;
    s.type = RunType::Test;
    s.colour = colour;
    s.role.assign(n, Role::Dummy);
    s.theta.assign(n, Angle8());
    s.r.assign(n, 0);
    s.dummy.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (c.colour[v] == colour) {
            s.role[v] = Role::Trap;
            Angle8 th = random_angle(rng);
            s.theta[v] = opt.force_zero_theta ? Angle8() : th;
            s.r[v] = random_bit(rng);
        } else {
            s.dummy[v] = random_bit(rng);
        }
    }
    return s;
}

Angle8 delta_computation(const MeasurementPattern &p, std::size_t v, const RunSecrets &s,
                         const std::vector<Bit> &decoded, const std::vector<bool> &known, const std::vector<Bit> &x) {
    if (s.type != RunType::Computation) {
        throw std::invalid_argument("delta_computation called on a test run");
    }
    const CorrectionBits c = correction_exponents(p.flow, decoded, known, v);
    Angle8 theta = s.theta.at(v);
    if (p.graph.is_input(v)) {
        const auto &in = p.graph.inputs();
        const auto pos = static_cast<std::size_t>(std::find(in.begin(), in.end(), v) - in.begin());
        theta += Angle8::pi_times(x.at(pos));
    }
    return signed_by(c.sx, p.angles.at(v)) + Angle8::pi_times(c.sz) + theta + Angle8::pi_times(s.r.at(v));
}

Angle8 delta_test(std::size_t v, const RunSecrets &s, Rng &rng) {
    if (s.type != RunType::Test) {
        throw std::invalid_argument("delta_test called on a computation run");
    }
    if (s.is_dummy(v)) {
        return random_angle(rng);
    }
    return s.theta.at(v) + Angle8::pi_times(s.r.at(v));
}

Bit expected_trap_outcome(std::size_t v, const RunSecrets &s, const Graph &g) {
    if (s.type != RunType::Test || !s.is_trap(v)) {
        throw std::invalid_argument("vertex " + std::to_string(g.id(v)) + " is not a trap");
    }
    Bit acc = s.r.at(v);
    for (std::size_t u : g.neighbours(v)) {
        if (!s.is_dummy(u)) {
            throw std::invalid_argument("trap " + std::to_string(g.id(v)) + " has a non-dummy neighbour");
        }
        acc ^= s.dummy[u];
    }
    return acc & 1;
}

RunAttempt execute_run(const MeasurementPattern &p, const RunSecrets &s, const std::vector<Bit> &x,
                       RunChannel &channel, Rng &client_rng) {
    const std::size_t n = p.graph.size();
    if (s.type == RunType::Computation && x.size() != p.graph.inputs().size()) {
        throw std::invalid_argument("input has " + std::to_string(x.size()) + " bits, pattern expects " +
                                    std::to_string(p.graph.inputs().size()));
    }
    RunAttempt out;
    out.transcript.deltas.assign(n, Angle8());
    out.transcript.outcomes.assign(n, 0);
    out.decoded.assign(n, 0);
    std::vector<bool> known(n, false);

    std::vector<OpaqueQubit> qubits;
    qubits.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (s.is_dummy(v)) {
            qubits.push_back(seal(DummyState{s.dummy[v]}));
        } else {
            qubits.push_back(seal(PlusTheta{s.theta[v]}));
        }
    }
    channel.send_preparation(std::move(qubits));

    for (std::size_t step = 0; step < p.flow.order.size(); ++step) {
        const std::size_t v = p.flow.order[step];
        const Angle8 delta = s.type == RunType::Computation ? delta_computation(p, v, s, out.decoded, known, x)
                                                            : delta_test(v, s, client_rng);
        const std::optional<Bit> b = channel.measure(v, delta);
        if (!b) {
            out.server_redo = true;
            out.redo_step = step;
            return out;
        }
        out.transcript.deltas[v] = delta;
        out.transcript.outcomes[v] = *b & 1;
        out.decoded[v] = decode_outcome(*b, s.r[v]);
        known[v] = true;
    }
    out.transcript.completed = true;
    return out;
}

RunTranscript execute_run(const MeasurementPattern &p, const RunSecrets &s, const std::vector<Bit> &x,
                          const ServerBehaviour &behaviour, Rng &rng, std::size_t run_index) {
    ServerConfig cfg;
    cfg.behaviour = behaviour;
    cfg.seed = rng();
    Server server(p.graph, cfg);
    InProcessLink link(server, 0);
    auto channel = link.open_run(run_index, 0);
    return execute_run(p, s, x, *channel, rng).transcript;
}

std::vector<Bit> decode_output(const MeasurementPattern &p, const std::vector<Bit> &decoded) {
    std::vector<Bit> y;
    for (std::size_t o : p.graph.outputs()) {
        y.push_back(decoded.at(o));
    }
    return y;
}

std::vector<std::size_t> failed_traps(const MeasurementPattern &p, const RunSecrets &s, const RunTranscript &tr) {
    std::vector<std::size_t> out;
    if (s.type != RunType::Test) {
        return out;
    }
    for (std::size_t v : s.traps()) {
        if (tr.outcomes.at(v) != expected_trap_outcome(v, s, p.graph)) {
            out.push_back(v);
        }
    }
    return out;
}

namespace {

// Unblinded run with forced non-output outcomes. Returns nullopt if the branch
// has zero probability.
std::optional<std::vector<Bit>> reference_branch(const MeasurementPattern &p, const std::vector<Bit> &x,
                                                 const std::vector<Bit> &branch) {
    const Graph &g = p.graph;
    const std::size_t n = g.size();
    RunSecrets s;
    s.type = RunType::Computation;
    s.role.assign(n, Role::Computation);
    s.theta.assign(n, Angle8());
    s.r.assign(n, 0);
    s.dummy.assign(n, 0);

    StateVector sv(std::max<std::size_t>(16, n));
    std::vector<bool> measured(n, false), known(n, false);
    std::vector<Bit> decoded(n, 0);
    std::size_t next_branch = 0;
    for (std::size_t v : p.flow.order) {
        const auto lv = static_cast<QubitLabel>(v);
        if (!sv.is_active(lv)) {
            sv.attach(lv, PlusTheta{});
        }
        for (std::size_t u : g.neighbours(v)) {
            if (measured[u]) {
                continue;
            }
            const auto lu = static_cast<QubitLabel>(u);
            if (!sv.is_active(lu)) {
                sv.attach(lu, PlusTheta{});
            }
            sv.apply_cz(lv, lu);
        }
        const Angle8 delta = delta_computation(p, v, s, decoded, known, x);
        Bit b;
        if (g.is_output(v)) {
            const double p1 = sv.probability_one(lv, delta);
            if (p1 > kTolerance && p1 < 1.0 - kTolerance) {
                throw NondeterministicPattern("pattern '" + p.name + "' has a non-deterministic output at vertex " +
                                              std::to_string(g.id(v)));
            }
            b = p1 > 0.5 ? 1 : 0;
        } else {
            b = branch.at(next_branch++);
            if (sv.probability_one(lv, delta) < 1e-12 && b == 1) {
                return std::nullopt;
            }
            if (sv.probability_one(lv, delta) > 1.0 - 1e-12 && b == 0) {
                return std::nullopt;
            }
        }
        sv.project_rotated(lv, delta, b);
        measured[v] = true;
        decoded[v] = b;
        known[v] = true;
    }
    return decode_output(p, decoded);
}

}  // namespace

std::vector<Bit> reference_output(const MeasurementPattern &p, const std::vector<Bit> &x) {
    if (x.size() != p.graph.inputs().size()) {
        throw std::invalid_argument("input size does not match the pattern");
    }
    std::size_t free = 0;
    for (std::size_t v = 0; v < p.graph.size(); ++v) {
        free += p.graph.is_output(v) ? 0 : 1;
    }
    std::vector<std::vector<Bit>> branches;
    if (free <= 14) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << free); ++mask) {
            std::vector<Bit> b(free);
            for (std::size_t i = 0; i < free; ++i) {
                b[i] = (mask >> i) & 1;
            }
            branches.push_back(std::move(b));
        }
    } else {
        Rng rng(0x5EED);
        for (int i = 0; i < 256; ++i) {
            std::vector<Bit> b(free);
            for (auto &bit : b) {
                bit = random_bit(rng);
            }
            branches.push_back(std::move(b));
        }
    }
    std::optional<std::vector<Bit>> result;
    for (const auto &b : branches) {
        auto y = reference_branch(p, x, b);
        if (!y) {
            continue;
        }
        if (result && *result != *y) {
            throw NondeterministicPattern("pattern '" + p.name + "' output depends on intermediate outcomes");
        }
        result = std::move(y);
    }
    if (!result) {
        throw NondeterministicPattern("pattern '" + p.name + "' has no consistent branch");
    }
    return *result;
}

std::vector<std::vector<Bit>> all_inputs(const MeasurementPattern &p) {
    const std::size_t m = p.graph.inputs().size();
    std::vector<std::vector<Bit>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<Bit> x(m);
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = (mask >> (m - 1 - i)) & 1;
        }
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace vbqc
