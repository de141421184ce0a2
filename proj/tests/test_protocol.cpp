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

#include <gtest/gtest.h>

#include <map>

#include "vbqc/protocol.hpp"
#include "vbqc/server.hpp"
#include "vbqc/stats.hpp"

namespace vbqc {
namespace {

TEST(Partition, ShapeAndUniformity) {
    Rng rng(1);
    std::map<std::vector<std::size_t>, std::size_t> counts;
    const std::size_t trials = 20000;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto part = sample_partition(5, 2, rng);
        ASSERT_EQ(part.computation.size(), 2u);
        ASSERT_EQ(part.test.size(), 3u);
        EXPECT_TRUE(std::is_sorted(part.computation.begin(), part.computation.end()));
        EXPECT_TRUE(std::is_sorted(part.test.begin(), part.test.end()));
        std::vector<std::size_t> all = part.computation;
        all.insert(all.end(), part.test.begin(), part.test.end());
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
        ++counts[part.computation];
    }
    ASSERT_EQ(counts.size(), 10u);
    std::vector<std::size_t> c;
    for (auto &[_, v] : counts) c.push_back(v);
    EXPECT_GT(stats::chi_square_uniform(c).p_value, 1e-4);
}

TEST(Presample, MatchesExactCeiling) {
    // p_succ = num / 1000 exactly; ceil(n / p) = ceil(1000 n / num) in integers.
    for (std::size_t n = 1; n <= 200; n += 7) {
        for (std::size_t num = 50; num <= 1000; num += 50) {
            const std::size_t expect = (1000 * n + num - 1) / num;
            EXPECT_EQ(presample_count(n, static_cast<double>(num) / 1000.0), expect) << n << " " << num;
        }
    }
    EXPECT_THROW(presample_count(10, 0.0), std::invalid_argument);
    EXPECT_THROW(presample_count(10, 1.5), std::invalid_argument);
}

TEST(Redo, StateMachine) {
    std::size_t calls = 0;
    auto resample = [&](std::size_t attempt) {
        ++calls;
        RunSecrets s;
        s.colour = static_cast<int>(attempt);
        return s;
    };
    RunState st;
    st.phase = RunPhase::Prepared;
    handle_redo(st, Requester::Client, resample);
    EXPECT_EQ(st.attempt, 1u);
    EXPECT_EQ(st.secrets.colour, 1);
    EXPECT_EQ(st.transcript.redo_count, 1u);
    EXPECT_EQ(st.phase, RunPhase::Sampled);

    st.phase = RunPhase::Entangled;
    EXPECT_THROW(handle_redo(st, Requester::Client, resample), RedoRejected);
    handle_redo(st, Requester::Server, resample);
    EXPECT_EQ(st.attempt, 2u);
    EXPECT_EQ(st.transcript.redo_count, 2u);

    st.phase = RunPhase::Completed;
    EXPECT_THROW(handle_redo(st, Requester::Server, resample), RedoRejected);
    EXPECT_THROW(handle_redo(st, Requester::Client, resample), RedoRejected);
    EXPECT_EQ(calls, 2u);
}

TEST(Decision, ThresholdAndMajority) {
    const std::vector<std::vector<Bit>> ys{{1, 0}, {1, 0}, {0, 0}};
    EXPECT_EQ(decide(0, 1, ys), Verdict::accept({1, 0}));
    EXPECT_EQ(decide(1, 1, ys), Verdict::abort(Verdict::Reason::TrapFailures));
    EXPECT_EQ(decide(0, 0, ys), Verdict::abort(Verdict::Reason::TrapFailures));
    EXPECT_EQ(decide(2, 3, {{1}, {0}}), Verdict::abort(Verdict::Reason::NoMajority));
    EXPECT_EQ(decide(2, 3, {{1}, {0}, {1}, {0}}), Verdict::abort(Verdict::Reason::NoMajority));
    EXPECT_STREQ(verdict_name(Verdict::accept({})), "accept");
    EXPECT_STREQ(verdict_name(Verdict::abort(Verdict::Reason::NoMajority)), "abort_majority");
}

struct Fixture {
    MeasurementPattern p = patterns::five_node_swap();
    Colouring c = greedy_colouring(p);
    ProtocolParams params = ProtocolParams::make(12, 5, 2, c.k);
};

TEST(Protocol, HonestAcceptsWithReferenceOutput) {
    Fixture f;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        const auto tr = run_protocol(f.p, f.c, f.params, {1, 0}, Honest{}, rng);
        EXPECT_TRUE(tr.verdict.accepted);
        EXPECT_EQ(tr.verdict.output, (std::vector<Bit>{0, 1}));
        EXPECT_EQ(tr.c_fail, 0u);
        EXPECT_EQ(tr.outputs.size(), f.params.d);
        EXPECT_EQ(evaluate_tests(f.p, tr), 0u);
        for (std::size_t j = 0; j < f.params.n; ++j) {
            EXPECT_EQ(tr.colours[j] == -1, static_cast<bool>(tr.is_computation[j]));
        }
    }
}

TEST(Protocol, ParallelRunsMatchSequential) {
    Fixture f;
    ServerConfig cfg;
    cfg.behaviour = Noisy{depolarizing_noise(0.1)};
    cfg.forced_redo_rate = 0.2;
    cfg.seed = 99;
    Server server(f.p.graph, cfg);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ProtocolOptions seq, par;
        par.mode = RunMode::Parallel;
        seq.client_redo_rate = par.client_redo_rate = 0.1;
        InProcessLink a(server, seed), b(server, seed);
        const auto t1 = run_protocol(f.p, f.c, f.params, {0, 1}, a, seed, seq);
        const auto t2 = run_protocol(f.p, f.c, f.params, {0, 1}, b, seed, par);
        EXPECT_EQ(trace_to_json(t1), trace_to_json(t2));
    }
}

TEST(Protocol, RedosResampleAndStillAccept) {
    Fixture f;
    ServerConfig cfg;
    cfg.forced_redo_rate = 0.3;
    cfg.seed = 5;
    Server server(f.p.graph, cfg);
    std::size_t redo_total = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        InProcessLink link(server, seed);
        ProtocolOptions opt;
        opt.client_redo_rate = 0.1;
        opt.p_succ = 0.5;
        const auto tr = run_protocol(f.p, f.c, f.params, {1, 1}, link, seed, opt);
        EXPECT_TRUE(tr.verdict.accepted);
        EXPECT_EQ(tr.verdict.output, (std::vector<Bit>{1, 1}));
        EXPECT_EQ(tr.presampled, 24u);
        EXPECT_EQ(tr.secrets_drawn, f.params.n + tr.redo_log.size());
        redo_total += tr.redo_log.size();
        std::size_t counted = 0;
        for (const auto &r : tr.runs) counted += r.transcript.redo_count;
        EXPECT_EQ(counted, tr.redo_log.size());
    }
    EXPECT_GT(redo_total, 0u);
}

TEST(Protocol, SameSeedSameTrace) {
    Fixture f;
    Rng a(123), b(123);
    const auto t1 = run_protocol(f.p, f.c, f.params, {0, 0}, Noisy{depolarizing_noise(0.2)}, a);
    const auto t2 = run_protocol(f.p, f.c, f.params, {0, 0}, Noisy{depolarizing_noise(0.2)}, b);
    const auto j = trace_to_json(t1);
    EXPECT_EQ(j, trace_to_json(t2));
    EXPECT_EQ(j["schema"], "vbqc.trace/1");
}

TEST(Protocol, ExhaustedAttemptsThrow) {
    Fixture f;
    ServerConfig cfg;
    cfg.forced_redo_rate = 1.0;
    Server server(f.p.graph, cfg);
    InProcessLink link(server, 0);
    ProtocolOptions opt;
    opt.max_attempts = 5;
    EXPECT_THROW(run_protocol(f.p, f.c, f.params, {0, 0}, link, 1, opt), std::runtime_error);
}

}  // namespace
}  // namespace vbqc
