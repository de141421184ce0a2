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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbqc/adversary.hpp"
#include "vbqc/bounds.hpp"
#include "vbqc/server.hpp"
#include "vbqc/params.hpp"
#include "vbqc/pattern.hpp"
#include "vbqc/protocol.hpp"

namespace vbqc {

inline constexpr const char *kConfigSchema = "vbqc.config/1";
inline constexpr const char *kSummarySchema = "vbqc.summary/1";

/// Deviation model as written in a config file. Vertices are external ids.
struct BehaviourSpec {
    enum class Kind { Honest, Depolarizing, SigmaM, Pauli };
    Kind kind = Kind::Honest;
    double p = 0.0;
    NoiseSchedule schedule = NoiseSchedule::AfterEntangling;
    std::size_t m = 0;
    VertexId target = 0;
    struct Entry {
        std::size_t run;
        VertexId vertex;
        Pauli pauli;
    };
    std::vector<Entry> deviations;
};

struct ExperimentConfig {
    std::string pattern = "linear-identity";
    std::string colouring = "greedy";  // greedy | bipartite | explicit
    std::vector<std::pair<VertexId, int>> colours;  // explicit mode
    std::size_t n = 8, d = 4;
    std::optional<std::size_t> w;
    std::optional<double> omega;  // used when w is absent: w = ceil(omega t)
    std::vector<Bit> input;       // empty: all zeros
    BehaviourSpec behaviour;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    int jobs = 0;  // 0: OpenMP default
    std::string out;
    double p_succ = 1.0;
    double server_redo_rate = 0.0;
    double client_redo_rate = 0.0;
    RunMode mode = RunMode::Sequential;
    /// Classical evaluation for X/Y attacks; no quantum simulation.
    bool fast_path = false;
    bool write_traces = false;
    bool wall_time = false;
};

/// Throws std::invalid_argument on unknown fields or bad values.
ExperimentConfig config_from_json(const nlohmann::json &doc);
nlohmann::json config_to_json(const ExperimentConfig &cfg);

/// A config resolved against its pattern.
struct Experiment {
    ExperimentConfig cfg;
    MeasurementPattern pattern;
    Colouring colouring;
    ProtocolParams params;
    std::vector<Bit> input;
    std::vector<Bit> reference;
    ServerBehaviour behaviour;
    std::optional<Attack> attack;
};
Experiment resolve(const ExperimentConfig &cfg);

struct ColourTally {
    std::size_t runs = 0;
    std::size_t failures = 0;
};

/// Outcome of one protocol execution, as classified by the harness.
struct TrialResult {
    bool accepted = false;
    bool correct = false;
    Verdict::Reason reason = Verdict::Reason::None;
    std::size_t c_fail = 0;
    std::size_t affected = 0;       // computation runs touched by the attack
    bool bound_event = false;       // accept-side and affected >= d/2
    std::size_t redo_events = 0;
    std::vector<ColourTally> per_colour;
    nlohmann::json trace;  // only when traces are requested
};

struct Summary {
    std::size_t trials = 0;
    std::size_t accept = 0;
    std::size_t abort = 0;
    std::size_t abort_traps = 0;
    std::size_t abort_majority = 0;
    std::size_t correct_accept = 0;
    std::size_t incorrect_accept = 0;
    /// Executions in the event the verifiability bound controls.
    std::size_t bound_events = 0;
    double mean_c_fail = 0.0;
    std::size_t redo_events = 0;
    std::vector<ColourTally> per_colour;
    bool fast_path = false;
    nlohmann::json bounds = nlohmann::json::object();
    std::optional<double> wall_seconds;

    nlohmann::json to_json() const;
};

/// One execution with trial index `trial`; deterministic in (seed, trial).
TrialResult run_trial(const Experiment &e, std::size_t trial);
/// Full protocol for one trial against an arbitrary server link. The link's
/// session must be the trial index for results to match run_trial.
TrialResult run_trial_over(const Experiment &e, std::size_t trial, ServerLink &link);
/// Server configuration used by run_trial and by the socket endpoint.
ServerConfig server_config(const Experiment &e);
Summary summarize(const Experiment &e, const std::vector<TrialResult> &results);

/// OpenMP across trials. Identical output to monte_carlo_serial for any
/// thread count.
Summary monte_carlo(const ExperimentConfig &cfg);
/// Single-threaded reference implementation.
Summary monte_carlo_serial(const ExperimentConfig &cfg);
/// Writes trace records (if requested) and the summary to cfg.out.
void write_records(const ExperimentConfig &cfg, const Summary &s, const std::vector<nlohmann::json> &traces);

/// sigma_m fast path: Y, Z for one sampled (partition, colours).
struct SigmaOutcome {
    std::size_t failed_tests = 0;
    std::size_t affected = 0;
};
SigmaOutcome sigma_m_trial(const ProtocolParams &params, std::size_t m, int target_colour, Rng &rng);

struct AttackCell {
    std::size_t n = 0, m = 0;
    std::size_t target = 0;  // vertex index
    int target_colour = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;           // Y < w and Z >= d/2
    std::size_t failures_tolerant = 0;  // Y <= w and Z >= d/2
    double mean_failed_tests = 0.0;
    double mean_affected = 0.0;
    double rate() const {
        return trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0;
    }
};

/// Trials are split into blocks of 4096 with seeds derive(seed, cell, block),
/// so results do not depend on the thread count.
AttackCell attack_cell(const ProtocolParams &params, std::size_t m, std::size_t target, const Colouring &c,
                       std::size_t trials, std::uint64_t seed, bool parallel = true);

struct AttackSweep {
    ProtocolParams params;
    double omega = 0.0;
    std::optional<bounds::OptimizedBound> bound;  // absent when omega is infeasible
    std::vector<AttackCell> cells;

    nlohmann::json to_json(const Graph &g) const;
};

/// Every m in `ms` (all of 0..n when empty) against every vertex in
/// `targets` (all vertices when empty).
AttackSweep attack_sweep(const ProtocolParams &params, double omega, const Colouring &c, std::vector<std::size_t> ms,
                         std::vector<std::size_t> targets, std::size_t trials, std::uint64_t seed,
                         bool parallel = true);

struct DistinguisherResult {
    std::string name;
    double auc = 0.5;
    std::size_t samples = 0;
};

struct BlindnessReport {
    std::size_t samples = 0;
    double alpha = 0.01;
    /// alpha divided by the number of chi-square tests performed.
    double threshold = 0.0;
    /// Per-vertex p-values: mixed runs, computation runs only, test runs only.
    std::vector<double> p_mixed, p_computation, p_test;
    double min_p = 1.0;
    std::vector<DistinguisherResult> distinguishers;

    bool uniform() const {
        return min_p > threshold;
    }
    nlohmann::json to_json() const;
};

/// Samples `samples` run transcripts for each question (run type, input,
/// Redo history) against an honest Server, tests delta uniformity per vertex
/// and trains naive Bayes distinguishers on (delta, b) per vertex.
BlindnessReport blindness_test(const MeasurementPattern &p, const Colouring &c, std::size_t samples,
                               std::uint64_t seed, const ClientOptions &client = {});

struct RobustnessRow {
    double noise = 0.0;
    double omega = 0.0;
    std::size_t w = 0;
    PBounds p_bounds;
    Summary summary;
    std::string regime;  // accept_whp | abort_whp | unbounded | noiseless
    std::optional<double> eps_cor;
    std::optional<double> abort_bound;
    bool consistent = true;  // measured rate respects the applicable bound

    nlohmann::json to_json() const;
};

/// For each noise level p and omega: estimate p_min, p_max, run the protocol
/// with w = ceil(omega t) and compare against the applicable bound.
std::vector<RobustnessRow> robustness_sweep(const ExperimentConfig &base, const std::vector<double> &noise_levels,
                                            const std::vector<double> &omegas, std::size_t estimate_trials);

/// Depolarizing parameter whose largest per-colour point estimate of the trap
/// failure rate is closest to `target`, by bisection on p in [0, 1].
double tune_depolarizing(const MeasurementPattern &p, const Colouring &c, double target, std::size_t trials,
                         std::uint64_t seed, int iterations = 14);

}  // namespace vbqc
