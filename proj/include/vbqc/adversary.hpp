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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vbqc/graph.hpp"
#include "vbqc/params.hpp"
#include "vbqc/statevector.hpp"

namespace vbqc {

struct MeasurementPattern;

/// Pauli applied to `vertex` of run `run`, in the measurement frame, just
/// before that vertex is measured.
struct Deviation {
    std::size_t run = 0;
    std::size_t vertex = 0;
    Pauli pauli = Pauli::X;
};

struct Attack {
    std::vector<Deviation> deviations;

    bool empty() const {
        return deviations.empty();
    }
    /// (vertex, Pauli) pairs targeting run `run`.
    std::vector<std::pair<std::size_t, Pauli>> on_run(std::size_t run) const;
    std::string describe() const;
};

/// X on vertex `target` in runs 0..m-1. Throws std::invalid_argument if m > n.
Attack sigma_m_attack(std::size_t m, std::size_t target, std::size_t n);

enum class NoiseSchedule {
    /// Channel hits a qubit after all its CZ gates, right before measurement.
    AfterEntangling,
    /// Channel hits a qubit as it is prepared, before any CZ gate.
    OnPreparation,
};
const char *schedule_name(NoiseSchedule s);
NoiseSchedule parse_schedule(const std::string &s);

/// Run-dependent single-qubit channel applied to every qubit of a run.
/// No state is carried from one run to the next.
struct NoiseModel {
    KrausChannel default_channel = KrausChannel::identity();
    /// Overrides for specific run indices; later runs use default_channel.
    std::vector<KrausChannel> per_run;
    NoiseSchedule schedule = NoiseSchedule::AfterEntangling;
    std::string description = "identity";

    const KrausChannel &channel(std::size_t run) const {
        return run < per_run.size() ? per_run[run] : default_channel;
    }
};

/// Single-qubit depolarizing channel rho -> (1 - p) rho + p I/2 on every
/// qubit of every run. Throws std::invalid_argument for p outside [0, 1].
NoiseModel depolarizing_noise(double p, NoiseSchedule schedule = NoiseSchedule::AfterEntangling);

struct Honest {};
struct Noisy {
    NoiseModel model;
};
struct Malicious {
    Attack attack;
};
using ServerBehaviour = std::variant<Honest, Noisy, Malicious>;

std::string describe(const ServerBehaviour &b);

/// Result of evaluating an attack on one (partition, colours) configuration
/// without quantum simulation.
struct ClassicalOutcome {
    std::size_t failed_tests = 0;     // Y
    std::size_t affected_runs = 0;    // Z: computation runs with any deviation
    bool accept_side = false;         // Y < w
    bool accept_side_tolerant = false;  // Y <= w
    bool corruption_possible = false;   // Z >= d/2
    bool failure() const {
        return accept_side && corruption_possible;
    }
    bool failure_tolerant() const {
        return accept_side_tolerant && corruption_possible;
    }
};

/// `is_computation[j]` and `test_colour[j]` describe run j; `vertex_colour`
/// is the colouring of the pattern graph. Throws std::invalid_argument if the
/// attack contains a Z or I deviation.
ClassicalOutcome classical_attack_outcome(const Attack &attack, const std::vector<bool> &is_computation,
                                          const std::vector<int> &test_colour, const Colouring &vertex_colour,
                                          const ProtocolParams &params);

struct FailureProbability {
    double strict = 0.0;    // accept iff Y < w
    double tolerant = 0.0;  // accept iff Y <= w
};

/// Exact failure probability by enumerating every partition and every test
/// colour assignment, each equally likely. Throws std::invalid_argument when
/// n > 16 or the enumeration exceeds 5e7 configurations.
FailureProbability exact_failure_probability(const Attack &attack, const Colouring &vertex_colour,
                                             const ProtocolParams &params);

/// Same quantity for sigma_m on a vertex of any colour, summed in closed form:
/// the number of attacked computation runs is hypergeometric and each
/// attacked test run fails with probability 1/k independently.
FailureProbability sigma_m_failure_probability(std::size_t m, const ProtocolParams &params);

struct ColourEstimate {
    int colour = 0;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double rate = 0.0;
    double lower = 0.0;  // Wilson interval
    double upper = 0.0;
};

struct PBounds {
    double p_min = 0.0;  // smallest lower confidence limit
    double p_max = 0.0;  // largest upper confidence limit
    double rate_min = 0.0;  // smallest point estimate
    double rate_max = 0.0;  // largest point estimate
    std::vector<ColourEstimate> per_colour;
};

/// Runs `trials` noisy test runs of each colour through the full quantum path
/// and reports per-colour failure rates with Wilson intervals at confidence
/// `confidence`. Throws std::invalid_argument for trials < 1000.
PBounds estimate_p_bounds(const NoiseModel &noise, const MeasurementPattern &p, const Colouring &c,
                          std::size_t trials, std::uint64_t seed, double confidence = 0.99);

}  // namespace vbqc
