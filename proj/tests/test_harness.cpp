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

#include <boost/asio.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "vbqc/harness.hpp"
#include "vbqc/transport.hpp"

namespace vbqc {
namespace {

using nlohmann::json;

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.pattern = "five-node-swap";
    c.n = 10;
    c.d = 5;
    c.omega = 0.2;
    c.trials = 60;
    c.seed = 17;
    c.input = {1, 0};
    return c;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Config, RoundTripAndRejection) {
    ExperimentConfig c = small_config();
    c.behaviour.kind = BehaviourSpec::Kind::Pauli;
    c.behaviour.deviations = {{0, 3, Pauli::Y}, {4, 5, Pauli::X}};
    c.server_redo_rate = 0.1;
    c.mode = RunMode::Parallel;
    const json j = config_to_json(c);
    EXPECT_EQ(config_to_json(config_from_json(j)), j);

    json bad = j;
    bad["colour"] = "greedy";
    EXPECT_THROW(config_from_json(bad), std::invalid_argument);
    json nested = j;
    nested["behaviour"]["strength"] = 1;
    EXPECT_THROW(config_from_json(nested), std::invalid_argument);
    json zero = j;
    zero["trials"] = 0;
    EXPECT_THROW(config_from_json(zero), std::invalid_argument);
    json schema = j;
    schema["schema"] = "vbqc.config/0";
    EXPECT_THROW(config_from_json(schema), std::invalid_argument);
    json kind = j;
    kind["behaviour"] = {{"kind", "sneaky"}};
    EXPECT_THROW(config_from_json(kind), std::invalid_argument);
}

TEST(Config, ResolveErrors) {
    ExperimentConfig c = small_config();
    c.omega.reset();
    EXPECT_THROW(resolve(c), std::invalid_argument);
    c = small_config();
    c.colouring = "bipartite";
    EXPECT_THROW(resolve(c), std::invalid_argument);
    c = small_config();
    c.colouring = "explicit";
    c.colours = {{1, 0}, {2, 0}, {3, 0}, {4, 1}, {5, 1}};
    EXPECT_THROW(resolve(c), std::invalid_argument);
    c = small_config();
    c.fast_path = true;
    EXPECT_THROW(resolve(c), std::invalid_argument);
    c = small_config();
    c.input = {1};
    EXPECT_THROW(resolve(c), std::invalid_argument);
    c = small_config();
    c.behaviour.kind = BehaviourSpec::Kind::SigmaM;
    c.behaviour.m = 11;
    c.behaviour.target = 3;
    EXPECT_THROW(resolve(c), std::invalid_argument);
    c = small_config();
    c.colouring = "explicit";
    c.colours = {{1, 0}, {2, 0}, {3, 1}, {4, 2}, {5, 0}};
    const Experiment e = resolve(c);
    EXPECT_EQ(e.colouring.k, 3);
    EXPECT_EQ(e.params.w, 1u);
    EXPECT_EQ(e.reference, (std::vector<Bit>{0, 1}));
}

TEST(MonteCarlo, HonestAcceptsEverything) {
    const Summary s = monte_carlo(small_config());
    EXPECT_EQ(s.accept, s.trials);
    EXPECT_EQ(s.correct_accept, s.trials);
    EXPECT_EQ(s.incorrect_accept, 0u);
    EXPECT_EQ(s.mean_c_fail, 0.0);
}

TEST(MonteCarlo, ParallelSerialAndRepeatAgree) {
    ExperimentConfig c = small_config();
    c.behaviour.kind = BehaviourSpec::Kind::Depolarizing;
    c.behaviour.p = 0.1;
    c.server_redo_rate = 0.1;
    c.client_redo_rate = 0.05;
    c.trials = 80;
    const json a = monte_carlo(c).to_json();
    const json b = monte_carlo_serial(c).to_json();
    c.jobs = 3;
    const json d = monte_carlo(c).to_json();
    c.mode = RunMode::Parallel;
    const json e = monte_carlo(c).to_json();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, d);
    EXPECT_EQ(a, e);
    const Summary s = monte_carlo_serial(c);
    EXPECT_EQ(s.accept + s.abort, s.trials);
    EXPECT_EQ(s.correct_accept + s.incorrect_accept, s.accept);
    EXPECT_EQ(s.abort_traps + s.abort_majority, s.abort);
    EXPECT_GT(s.redo_events, 0u);
}

TEST(MonteCarlo, RecordsAreByteReproducible) {
    ExperimentConfig c = small_config();
    c.write_traces = true;
    c.out = testing::TempDir() + "vbqc_records_a.jsonl";
    monte_carlo(c);
    const std::string first = slurp(c.out);
    monte_carlo_serial(c);
    EXPECT_EQ(slurp(c.out), first);
    std::size_t lines = 0;
    std::istringstream in(first);
    for (std::string line; std::getline(in, line); ++lines) {
        EXPECT_NO_THROW(json::parse(line));
    }
    EXPECT_EQ(lines, c.trials + 1);
    std::remove(c.out.c_str());
}

TEST(MonteCarlo, FastPathMatchesQuantumAcceptCounts) {
    ExperimentConfig c = small_config();
    c.pattern = "brickwork-2x5";
    c.input = {};
    c.n = 12;
    c.d = 6;
    c.trials = 300;
    c.behaviour.kind = BehaviourSpec::Kind::SigmaM;
    c.behaviour.m = 6;
    c.behaviour.target = 13;
    const Summary q = monte_carlo(c);
    c.fast_path = true;
    const Summary f = monte_carlo(c);
    // The fast path stops at the trap test, so its accepts include runs the
    // quantum path rejects for lack of a majority.
    EXPECT_EQ(q.abort_traps, f.abort_traps);
    EXPECT_EQ(f.abort_majority, 0u);
    EXPECT_EQ(q.accept + q.abort_majority, f.accept);
    EXPECT_EQ(q.bound_events, f.bound_events);
    EXPECT_EQ(f.incorrect_accept, f.bound_events);
    EXPECT_LE(q.incorrect_accept, q.bound_events);
    EXPECT_EQ(q.to_json()["per_colour"], f.to_json()["per_colour"]);
}

TEST(AttackCell, SerialParallelAndExact) {
    const auto params = ProtocolParams::make(8, 4, 1, 2);
    Colouring c{2, {0, 1, 0}};
    const AttackCell a = attack_cell(params, 4, 1, c, 100000, 5, true);
    const AttackCell b = attack_cell(params, 4, 1, c, 100000, 5, false);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.failures_tolerant, b.failures_tolerant);
    const double exact = 9.0 / 35.0;
    EXPECT_NEAR(a.rate(), exact, 4 * std::sqrt(exact * (1 - exact) / 1e5));
    EXPECT_NEAR(a.mean_affected, 2.0, 0.02);
}

TEST(Transport, FramesAndCodec) {
    EXPECT_THROW(parse_frame("not json"), TransportError);
    EXPECT_THROW(parse_frame(R"({"type":"delta"})"), TransportError);
    EXPECT_THROW(parse_frame(R"({"schema":"vbqc.wire/1","type":"teleport"})"), TransportError);
    EXPECT_NO_THROW(parse_frame(R"({"schema":"vbqc.wire/1","type":"delta","run":0,"vertex":1,"delta":3})"));
    const json q = OpaqueCodec::encode(seal(PlusTheta{Angle8(5)}));
    EXPECT_EQ(OpaqueCodec::encode(OpaqueCodec::decode(q)), q);
    const json d = OpaqueCodec::encode(seal(DummyState{1}));
    EXPECT_EQ(OpaqueCodec::encode(OpaqueCodec::decode(d)), d);
    EXPECT_THROW(OpaqueCodec::decode(json{{"plus", 9}}), std::out_of_range);
    EXPECT_THROW(OpaqueCodec::decode(json{{"basis", 2}}), TransportError);
}

std::vector<json> traces_over_socket(const ExperimentConfig &cfg, bool drop) {
    const Experiment e = resolve(cfg);
    SocketServer server(Server(e.pattern.graph, server_config(e)), 0, {drop, 0});
    server.start();
    std::vector<json> out;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        RemoteLink link("127.0.0.1", server.port(), i);
        TrialResult r = run_trial_over(e, i, link);
        link.send_verdict(Verdict{r.accepted, {}, r.reason});
        out.push_back(r.trace);
    }
    server.stop();
    const auto st = server.stats();
    EXPECT_EQ(st.errors, 0u);
    EXPECT_EQ(st.verdicts, cfg.trials);
    if (drop) {
        EXPECT_GT(st.drops, 0u);
    }
    return out;
}

std::vector<json> traces_in_memory(const ExperimentConfig &cfg) {
    const Experiment e = resolve(cfg);
    std::vector<json> out;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        out.push_back(run_trial(e, i).trace);
    }
    return out;
}

TEST(Transport, LoopbackMatchesInMemory) {
    ExperimentConfig c = small_config();
    c.write_traces = true;
    c.trials = 15;
    EXPECT_EQ(traces_over_socket(c, false), traces_in_memory(c));
    c.behaviour.kind = BehaviourSpec::Kind::Depolarizing;
    c.behaviour.p = 0.15;
    c.server_redo_rate = 0.15;
    EXPECT_EQ(traces_over_socket(c, false), traces_in_memory(c));
}

TEST(Transport, DroppedConnectionsActAsServerRedos) {
    ExperimentConfig c = small_config();
    c.write_traces = true;
    c.trials = 15;
    c.server_redo_rate = 0.2;
    c.behaviour.kind = BehaviourSpec::Kind::Depolarizing;
    c.behaviour.p = 0.1;
    EXPECT_EQ(traces_over_socket(c, true), traces_in_memory(c));
}

TEST(Transport, MalformedFrameEndsSession) {
    namespace asio = boost::asio;
    const Experiment e = resolve(small_config());
    SocketServer server(Server(e.pattern.graph, server_config(e)), 0, {});
    server.start();
    auto exchange = [&](const std::vector<std::string> &lines) {
        asio::io_context io;
        asio::ip::tcp::socket s(io);
        s.connect({asio::ip::address_v4::loopback(), server.port()});
        for (const auto &l : lines) {
            asio::write(s, asio::buffer(l + "\n"));
        }
        asio::streambuf buf;
        std::string last;
        boost::system::error_code ec;
        while (asio::read_until(s, buf, '\n', ec) && !ec) {
            std::istream is(&buf);
            std::getline(is, last);
            if (json::parse(last)["type"] == "error") break;
        }
        return json::parse(last);
    };
    EXPECT_EQ(exchange({"{oops"})["type"], "error");
    EXPECT_EQ(exchange({R"({"schema":"vbqc.wire/1","type":"hello","session":0})",
                        R"({"schema":"vbqc.wire/1","type":"delta","run":0,"vertex":0,"delta":0})"})["type"],
              "error");
    server.stop();
    EXPECT_EQ(server.stats().verdicts, 0u);
    EXPECT_EQ(server.stats().errors, 2u);
}

TEST(Transport, UnreachableServer) {
    RemoteLink link("127.0.0.1", 1, 0);
    EXPECT_THROW(link.open_run(0, 0), TransportError);
}

}  // namespace
}  // namespace vbqc
