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

#include "vbqc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>

#include "vbqc/server.hpp"

namespace vbqc {

Partition sample_partition(std::size_t n, std::size_t d, Rng &rng) {
    if (d == 0 || d >= n) {
        throw std::invalid_argument("partition needs 0 < d < n");
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < d; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    Partition out;
    out.computation.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(d));
    out.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(d), idx.end());
    std::sort(out.computation.begin(), out.computation.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

void handle_redo(RunState &state, Requester who, const std::function<RunSecrets(std::size_t attempt)> &resample) {
    if (state.phase == RunPhase::Completed) {
        throw RedoRejected("run " + std::to_string(state.run) + " is already complete");
    }
    if (who == Requester::Client && state.phase == RunPhase::Entangled) {
        throw RedoRejected("the Client may only ask for a Redo before entanglement");
    }
    const std::size_t redos = state.transcript.redo_count + 1;
    ++state.attempt;
    state.secrets = resample(state.attempt);
    state.transcript = RunTranscript{};
    state.transcript.redo_count = redos;
    state.phase = RunPhase::Sampled;
}

std::size_t presample_count(std::size_t n, double p_succ) {
    if (!(p_succ > 0.0 && p_succ <= 1.0)) {
        throw std::invalid_argument("p_succ must lie in (0, 1]");
    }
    const double q = static_cast<double>(n) / p_succ;
    // Absorb representation error so that e.g. 10 / 0.5 is exactly 20.
    const double r = std::round(q);
    if (std::abs(q - r) < 1e-9 * std::max(1.0, q)) {
        return static_cast<std::size_t>(r);
    }
    return static_cast<std::size_t>(std::ceil(q));
}

Verdict majority_output(const std::vector<std::vector<Bit>> &ys) {
    std::map<std::vector<Bit>, std::size_t> counts;
    for (const auto &y : ys) {
        ++counts[y];
    }
    for (const auto &[y, c] : counts) {
        if (2 * c > ys.size()) {
            return Verdict::accept(y);
        }
    }
    return Verdict::abort(Verdict::Reason::NoMajority);
}

Verdict decide(std::size_t c_fail, std::size_t w, const std::vector<std::vector<Bit>> &ys) {
    if (c_fail >= w) {
        return Verdict::abort(Verdict::Reason::TrapFailures);
    }
    return majority_output(ys);
}

const char *verdict_name(const Verdict &v) {
    if (v.accepted) {
        return "accept";
    }
    return v.reason == Verdict::Reason::TrapFailures ? "abort_traps" : "abort_majority";
}

namespace {

struct RunResult {
    RunRecord record;
    int colour = -1;
    std::vector<RedoEvent> redos;
    std::size_t drawn = 0;
};

RunResult run_one(const MeasurementPattern &p, const Colouring &c, const std::vector<Bit> &x, ServerLink &link,
                  std::uint64_t seed, std::size_t j, bool computation, const ProtocolOptions &opt) {
    RunResult res;
    Rng crng;
    auto draw = [&](std::size_t attempt) {
        crng.seed(derive_seed(run_seed(seed, j, attempt), {stream::kClient}));
        ++res.drawn;
        if (computation) {
            res.colour = -1;
            return sample_computation_secrets(p, crng, opt.client);
        }
        res.colour = static_cast<int>(std::uniform_int_distribution<int>(0, c.k - 1)(crng));
        return sample_test_secrets(p, c, res.colour, crng, opt.client);
    };

    RunState st;
    st.run = j;
    st.secrets = draw(0);
    while (true) {
        if (st.attempt >= opt.max_attempts) {
            throw std::runtime_error("run " + std::to_string(j) + " exceeded " + std::to_string(opt.max_attempts) +
                                     " attempts");
        }
        auto channel = link.open_run(j, st.attempt);
        const bool client_gives_up = uniform01(crng) < opt.client_redo_rate;
        if (client_gives_up) {
            channel->client_redo();
            res.redos.push_back({j, st.attempt, Requester::Client, 0});
            handle_redo(st, Requester::Client, draw);
            continue;
        }
        st.phase = RunPhase::Entangled;
        RunAttempt a = execute_run(p, st.secrets, x, *channel, crng);
        if (a.server_redo) {
            res.redos.push_back({j, st.attempt, Requester::Server, a.redo_step});
            handle_redo(st, Requester::Server, draw);
            continue;
        }
        a.transcript.redo_count = st.transcript.redo_count;
        st.transcript = a.transcript;
        st.phase = RunPhase::Completed;
        res.record.secrets = st.secrets;
        res.record.transcript = st.transcript;
        if (computation) {
            res.record.output = decode_output(p, a.decoded);
        } else {
            res.record.failed = failed_traps(p, st.secrets, st.transcript);
        }
        return res;
    }
}

}  // namespace

ProtocolTrace run_protocol(const MeasurementPattern &p, const Colouring &c, const ProtocolParams &params,
                           const std::vector<Bit> &x, ServerLink &link, std::uint64_t seed,
                           const ProtocolOptions &opt) {
    params.validate();
    if (c.k != params.k) {
        throw std::invalid_argument("colouring has k=" + std::to_string(c.k) + " but params say k=" +
                                    std::to_string(params.k));
    }
    if (!validate_colouring(p.graph, c)) {
        throw std::invalid_argument("colouring is not proper for the pattern graph");
    }
    ProtocolTrace tr;
    tr.seed = seed;
    tr.params = params;
    tr.presampled = presample_count(params.n, opt.p_succ);
    Rng prng(derive_seed(seed, {stream::kProtocol}));
    tr.partition = sample_partition(params.n, params.d, prng);
    tr.is_computation.assign(params.n, false);
    for (std::size_t j : tr.partition.computation) {
        tr.is_computation[j] = true;
    }

    std::vector<RunResult> results(params.n);
    if (opt.mode == RunMode::Parallel && link.concurrent()) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t j = 0; j < params.n; ++j) {
            try {
                results[j] = run_one(p, c, x, link, seed, j, tr.is_computation[j], opt);
            } catch (...) {
#pragma omp critical(vbqc_protocol_error)
                if (!err) {
                    err = std::current_exception();
                }
            }
        }
        if (err) {
            std::rethrow_exception(err);
        }
    } else {
        for (std::size_t j = 0; j < params.n; ++j) {
            results[j] = run_one(p, c, x, link, seed, j, tr.is_computation[j], opt);
        }
    }

    tr.colours.assign(params.n, -1);
    for (std::size_t j = 0; j < params.n; ++j) {
        RunResult &r = results[j];
        tr.colours[j] = r.colour;
        tr.secrets_drawn += r.drawn;
        tr.redo_log.insert(tr.redo_log.end(), r.redos.begin(), r.redos.end());
        if (tr.is_computation[j]) {
            tr.outputs.push_back(r.record.output);
        } else if (!r.record.failed.empty()) {
            ++tr.c_fail;
        }
        tr.runs.push_back(std::move(r.record));
    }
    tr.verdict = decide(tr.c_fail, params.w, tr.outputs);
    return tr;
}

ProtocolTrace run_protocol(const MeasurementPattern &p, const Colouring &c, const ProtocolParams &params,
                           const std::vector<Bit> &x, const ServerBehaviour &behaviour, Rng &rng,
                           const ProtocolOptions &opt) {
    const std::uint64_t client_seed = rng();
    ServerConfig cfg;
    cfg.behaviour = behaviour;
    cfg.seed = rng();
    Server server(p.graph, cfg);
    InProcessLink link(server, 0);
    return run_protocol(p, c, params, x, link, client_seed, opt);
}

std::size_t evaluate_tests(const MeasurementPattern &p, const ProtocolTrace &trace) {
    std::size_t failed = 0;
    for (std::size_t j = 0; j < trace.runs.size(); ++j) {
        const RunRecord &r = trace.runs[j];
        if (r.secrets.type == RunType::Test && !failed_traps(p, r.secrets, r.transcript).empty()) {
            ++failed;
        }
    }
    return failed;
}

nlohmann::json trace_to_json(const ProtocolTrace &t) {
    nlohmann::json j;
    j["schema"] = "vbqc.trace/1";
    j["seed"] = t.seed;
    j["params"] = {{"n", t.params.n}, {"d", t.params.d}, {"t", t.params.t}, {"w", t.params.w}, {"k", t.params.k}};
    j["partition"] = {{"C", t.partition.computation}, {"T", t.partition.test}};
    j["colours"] = t.colours;
    j["c_fail"] = t.c_fail;
    j["verdict"] = verdict_name(t.verdict);
    j["output"] = t.verdict.output;
    j["outputs"] = t.outputs;
    std::vector<std::size_t> redo_counts;
    for (const auto &r : t.runs) {
        redo_counts.push_back(r.transcript.redo_count);
    }
    j["redo_counts"] = redo_counts;
    j["presampled"] = t.presampled;
    j["secrets_drawn"] = t.secrets_drawn;
    return j;
}

}  // namespace vbqc
