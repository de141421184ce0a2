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
#include <functional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "vbqc/adversary.hpp"
#include "vbqc/params.hpp"
#include "vbqc/pattern.hpp"
#include "vbqc/ubqc.hpp"

namespace vbqc {

struct Verdict {
    enum class Reason { None, TrapFailures, NoMajority };
    bool accepted = false;
    std::vector<Bit> output;
    Reason reason = Reason::None;

    static Verdict accept(std::vector<Bit> y) {
        return {true, std::move(y), Reason::None};
    }
    static Verdict abort(Reason why) {
        return {false, {}, why};
    }
    friend bool operator==(const Verdict &, const Verdict &) = default;
};

struct Partition {
    std::vector<std::size_t> computation;  // C, ascending
    std::vector<std::size_t> test;         // T, ascending
};

/// Uniform size-d subset C of {0..n-1} and its complement T.
/// Throws std::invalid_argument unless 0 < d < n.
Partition sample_partition(std::size_t n, std::size_t d, Rng &rng);

enum class Requester { Client, Server };

enum class RunPhase { Sampled, Prepared, Entangled, Completed };

/// Lifecycle of one run j.
struct RunState {
    std::size_t run = 0;
    std::size_t attempt = 0;
    RunPhase phase = RunPhase::Sampled;
    RunSecrets secrets;
    RunTranscript transcript;
};

class RedoRejected : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Restarts `state` with fresh secrets from `resample(attempt)`. A Client may
/// only ask before entanglement; nobody may restart a completed run.
/// Throws RedoRejected on a rule violation.
void handle_redo(RunState &state, Requester who, const std::function<RunSecrets(std::size_t attempt)> &resample);

/// ceil(n / p_succ). Throws std::invalid_argument unless 0 < p_succ <= 1.
std::size_t presample_count(std::size_t n, double p_succ);

struct RedoEvent {
    std::size_t run = 0;
    std::size_t attempt = 0;
    Requester who = Requester::Server;
    /// Measurement step reached (0 when the Client asked before entanglement).
    std::size_t step = 0;
};

struct RunRecord {
    RunSecrets secrets;
    RunTranscript transcript;
    std::vector<Bit> output;          // computation runs
    std::vector<std::size_t> failed;  // failed traps, test runs
};

struct ProtocolTrace {
    std::uint64_t seed = 0;
    ProtocolParams params;
    Partition partition;
    std::vector<bool> is_computation;
    std::vector<int> colours;  // -1 for computation runs
    std::vector<RunRecord> runs;
    std::size_t c_fail = 0;
    std::vector<std::vector<Bit>> outputs;  // y_j for j in C, in run order
    Verdict verdict;
    std::vector<RedoEvent> redo_log;
    std::size_t presampled = 0;
    std::size_t secrets_drawn = 0;
};

enum class RunMode { Sequential, Parallel };

struct ProtocolOptions {
    RunMode mode = RunMode::Sequential;
    /// Expected fraction of run attempts that complete; sets the presampled
    /// pool size ceil(n / p_succ).
    double p_succ = 1.0;
    /// Probability that the Client abandons an attempt before entanglement.
    double client_redo_rate = 0.0;
    std::size_t max_attempts = 10000;
    ClientOptions client;
};

/// Protocol steps 1-4 against `link`. All Client randomness derives from
/// `seed`. Throws std::runtime_error if a run exceeds max_attempts.
ProtocolTrace run_protocol(const MeasurementPattern &p, const Colouring &c, const ProtocolParams &params,
                           const std::vector<Bit> &x, ServerLink &link, std::uint64_t seed,
                           const ProtocolOptions &opt = {});

/// Same against an in-process Server with `behaviour`; the Server seed is
/// drawn from `rng` after the Client seed.
ProtocolTrace run_protocol(const MeasurementPattern &p, const Colouring &c, const ProtocolParams &params,
                           const std::vector<Bit> &x, const ServerBehaviour &behaviour, Rng &rng,
                           const ProtocolOptions &opt = {});

/// Number of test runs with at least one failed trap, recomputed from the
/// secrets and transcripts in the trace.
std::size_t evaluate_tests(const MeasurementPattern &p, const ProtocolTrace &trace);

/// Accept(y) iff y occurs strictly more than half the time.
Verdict majority_output(const std::vector<std::vector<Bit>> &ys);

/// Steps 3-4: abort iff c_fail >= w, otherwise strict majority.
Verdict decide(std::size_t c_fail, std::size_t w, const std::vector<std::vector<Bit>> &ys);

nlohmann::json trace_to_json(const ProtocolTrace &t);
const char *verdict_name(const Verdict &v);

}  // namespace vbqc
