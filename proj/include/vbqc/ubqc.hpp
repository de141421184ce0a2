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
#include <stdexcept>
#include <vector>

#include "vbqc/adversary.hpp"
#include "vbqc/angle.hpp"
#include "vbqc/backend.hpp"
#include "vbqc/pattern.hpp"
#include "vbqc/rng.hpp"

namespace vbqc {

enum class RunType { Computation, Test };
enum class Role : std::uint8_t { Computation, Trap, Dummy };

/// Hidden parameters of one run. theta and r are meaningful on computation
/// and trap vertices, dummy on dummy vertices; other entries are zero.
struct RunSecrets {
    RunType type = RunType::Computation;
    int colour = -1;
    std::vector<Role> role;
    std::vector<Angle8> theta;
    std::vector<Bit> r;
    std::vector<Bit> dummy;

    bool is_trap(std::size_t v) const {
        return role.at(v) == Role::Trap;
    }
    bool is_dummy(std::size_t v) const {
        return role.at(v) == Role::Dummy;
    }
    std::vector<std::size_t> traps() const;
};

/// Client-side switches. force_zero_theta disables the angle pad and exists
/// only as a negative control for blindness tests.
struct ClientOptions {
    bool force_zero_theta = false;
};

RunSecrets sample_computation_secrets(const MeasurementPattern &p, Rng &rng, const ClientOptions &opt = {});
/// Throws std::invalid_argument if `colour` is not in [0, c.k) or the
/// colouring is invalid for the pattern graph.
RunSecrets sample_test_secrets(const MeasurementPattern &p, const Colouring &c, int colour, Rng &rng,
                               const ClientOptions &opt = {});

/// (-1)^{sX} phi_v + sZ pi + theta~_v + r_v pi, where theta~_v adds x_v pi on
/// inputs. `decoded` holds s_u = b_u xor r_u for measured u; `known` marks
/// which entries are set. `x` is indexed by position in the graph's input list.
Angle8 delta_computation(const MeasurementPattern &p, std::size_t v, const RunSecrets &s,
                         const std::vector<Bit> &decoded, const std::vector<bool> &known, const std::vector<Bit> &x);
/// theta_v + r_v pi for traps, a fresh uniform angle for dummies.
Angle8 delta_test(std::size_t v, const RunSecrets &s, Rng &rng);

inline Bit decode_outcome(Bit b, Bit r) {
    return static_cast<Bit>((b ^ r) & 1);
}

/// r_v xor the dummy bits of v's neighbours. Throws std::invalid_argument if
/// v is not a trap or has a non-dummy neighbour.
Bit expected_trap_outcome(std::size_t v, const RunSecrets &s, const Graph &g);

struct RunTranscript {
    std::vector<Angle8> deltas;
    std::vector<Bit> outcomes;
    std::size_t redo_count = 0;
    bool completed = false;
};

/// The Client's view of one attempt of one run on the Server.
class RunChannel {
  public:
    virtual ~RunChannel() = default;
    /// Step 2b: hands over the prepared qubits, one per vertex index.
    virtual void send_preparation(std::vector<OpaqueQubit> qubits) = 0;
    /// Step 2d for one vertex. nullopt means the Server asked for a Redo.
    virtual std::optional<Bit> measure(std::size_t vertex, Angle8 delta) = 0;
    /// The Client abandons this attempt before entanglement.
    virtual void client_redo() = 0;
};

/// Opens run attempts on some Server.
class ServerLink {
  public:
    virtual ~ServerLink() = default;
    virtual std::unique_ptr<RunChannel> open_run(std::size_t run, std::size_t attempt) = 0;
    /// Whether open_run may be called from several threads at once.
    virtual bool concurrent() const {
        return false;
    }
};

struct RunAttempt {
    RunTranscript transcript;
    /// Decoded s_v for computation runs.
    std::vector<Bit> decoded;
    bool server_redo = false;
    /// Position in the measurement order at which the Redo arrived.
    std::size_t redo_step = 0;
};

/// Drives steps 2b-2d of one run over `channel`. Stops early on a Server Redo.
RunAttempt execute_run(const MeasurementPattern &p, const RunSecrets &s, const std::vector<Bit> &x,
                       RunChannel &channel, Rng &client_rng);

/// Convenience: one run against an in-process Server with `behaviour`,
/// physics seeded from `rng`. Redo is never requested.
RunTranscript execute_run(const MeasurementPattern &p, const RunSecrets &s, const std::vector<Bit> &x,
                          const ServerBehaviour &behaviour, Rng &rng, std::size_t run_index = 0);

/// Output bits (in the order of the graph's outputs) from decoded outcomes.
std::vector<Bit> decode_output(const MeasurementPattern &p, const std::vector<Bit> &decoded);

/// Trap vertices whose outcome differs from the expected one.
std::vector<std::size_t> failed_traps(const MeasurementPattern &p, const RunSecrets &s, const RunTranscript &tr);

class NondeterministicPattern : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Output of the unblinded, noiseless pattern on input x. Explores every
/// branch of non-output outcomes (or 256 sampled branches when there are more
/// than 14 non-output vertices) and throws NondeterministicPattern unless all
/// branches give the same deterministic output.
std::vector<Bit> reference_output(const MeasurementPattern &p, const std::vector<Bit> &x);

/// All 2^|I| inputs in lexicographic order (input 0 is the first bit).
std::vector<std::vector<Bit>> all_inputs(const MeasurementPattern &p);

}  // namespace vbqc
