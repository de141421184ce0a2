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

#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "vbqc/bounds.hpp"
#include "vbqc/harness.hpp"
#include "vbqc/pattern_io.hpp"
#include "vbqc/transport.hpp"

namespace {

using nlohmann::json;
using namespace vbqc;

Colouring pick_colouring(const MeasurementPattern &p, const std::string &mode) {
    if (mode == "greedy") {
        return greedy_colouring(p);
    }
    auto b = bipartite_colouring(p.graph);
    if (!b) {
        throw std::invalid_argument("graph is not bipartite");
    }
    return *b;
}

struct ExperimentFlags {
    std::string config;
    std::string pattern;
    std::string colouring;
    std::size_t n = 0, d = 0;
    std::optional<std::size_t> w;
    std::optional<double> omega;
    std::string behaviour;
    double p = 0.0;
    std::string schedule;
    std::size_t m = 0;
    VertexId target = 0;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string out;
    std::optional<double> server_redo, client_redo, p_succ;
    bool parallel_runs = false, fast_path = false, traces = false, wall_time = false;

    void add(CLI::App *app) {
        app->add_option("--config", config, "JSON experiment config (vbqc.config/1)");
        app->add_option("--pattern", pattern, "built-in pattern name or pattern file");
        app->add_option("--colouring", colouring, "greedy | bipartite | explicit");
        app->add_option("--n", n, "total runs");
        app->add_option("--d", d, "computation runs");
        app->add_option("--w", w, "trap failure threshold");
        app->add_option("--omega", omega, "threshold ratio w/t");
        app->add_option("--behaviour", behaviour, "honest | depolarizing | sigma_m");
        app->add_option("--p", p, "depolarizing parameter");
        app->add_option("--schedule", schedule, "after_entangling | on_preparation");
        app->add_option("--m", m, "sigma_m: number of attacked runs");
        app->add_option("--target", target, "sigma_m: attacked vertex id");
        app->add_option("--trials", trials, "protocol executions");
        app->add_option("--seed", seed, "master seed");
        app->add_option("--jobs", jobs, "worker threads (0 = all)");
        app->add_option("--out", out, "line-delimited JSON output file");
        app->add_option("--server-redo", server_redo, "forced server redo rate per run attempt");
        app->add_option("--client-redo", client_redo, "client redo rate per run attempt");
        app->add_option("--p-succ", p_succ, "per-run success probability used for presampling");
        app->add_flag("--parallel-runs", parallel_runs, "execute the runs of one protocol concurrently");
        app->add_flag("--fast-path", fast_path, "classical evaluation of Pauli attacks");
        app->add_flag("--traces", traces, "write one trace record per trial");
        app->add_flag("--wall-time", wall_time, "report wall time (output no longer reproducible)");
    }

    ExperimentConfig build() const {
        ExperimentConfig c;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) {
                throw std::runtime_error("cannot read " + config);
            }
            c = config_from_json(json::parse(in));
        }
        if (!pattern.empty()) c.pattern = pattern;
        if (!colouring.empty()) c.colouring = colouring;
        if (n) c.n = n;
        if (d) c.d = d;
        if (w) {
            c.w = w;
            c.omega.reset();
        }
        if (omega) {
            c.omega = omega;
            if (!w) c.w.reset();
        }
        if (!behaviour.empty()) {
            if (behaviour == "honest") {
                c.behaviour = BehaviourSpec{};
            } else if (behaviour == "depolarizing") {
                c.behaviour.kind = BehaviourSpec::Kind::Depolarizing;
            } else if (behaviour == "sigma_m") {
                c.behaviour.kind = BehaviourSpec::Kind::SigmaM;
            } else {
                throw std::invalid_argument("unknown behaviour '" + behaviour + "'");
            }
        }
        if (c.behaviour.kind == BehaviourSpec::Kind::Depolarizing && p > 0.0) c.behaviour.p = p;
        if (!schedule.empty()) c.behaviour.schedule = parse_schedule(schedule);
        if (c.behaviour.kind == BehaviourSpec::Kind::SigmaM && !behaviour.empty()) {
            c.behaviour.m = m;
            c.behaviour.target = target;
        }
        if (trials) c.trials = *trials;
        if (seed) c.seed = *seed;
        if (jobs) c.jobs = *jobs;
        if (!out.empty()) c.out = out;
        if (server_redo) c.server_redo_rate = *server_redo;
        if (client_redo) c.client_redo_rate = *client_redo;
        if (p_succ) c.p_succ = *p_succ;
        if (parallel_runs) c.mode = RunMode::Parallel;
        if (fast_path) c.fast_path = true;
        if (traces) c.write_traces = true;
        if (wall_time) c.wall_time = true;
        if (c.trials < 1) {
            throw std::invalid_argument("trials must be at least 1");
        }
        return c;
    }
};

void emit(const json &j, const std::string &out) {
    std::cout << j.dump() << '\n';
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) {
            throw std::runtime_error("cannot write " + out);
        }
        f << j.dump() << '\n';
    }
}

json bound_json(const bounds::OptimizedBound &b) {
    const auto &a = b.argmin;
    return {{"epsilon", b.epsilon},
            {"log_epsilon", b.log_epsilon},
            {"argmin", {{"eps1", a.eps1}, {"eps2", a.eps2}, {"phi", a.phi}}},
            {"evaluations", b.evaluations}};
}

std::vector<std::size_t> parse_list(const std::string &s) {
    std::vector<std::size_t> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) v.push_back(std::stoull(item));
    }
    return v;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Verifiable blind quantum computation simulator"};
    app.require_subcommand(1);

    ExperimentFlags run_flags;
    auto *run = app.add_subcommand("run", "Monte Carlo protocol executions");
    run_flags.add(run);

    std::string bl_pattern = "linear-identity", bl_colouring = "greedy";
    std::size_t bl_samples = 10000;
    std::uint64_t bl_seed = 1;
    bool bl_broken = false;
    std::string bl_out;
    auto *blind = app.add_subcommand("blindness", "Transcript uniformity and distinguisher tests");
    blind->add_option("--pattern", bl_pattern);
    blind->add_option("--colouring", bl_colouring)->check(CLI::IsMember({"greedy", "bipartite"}));
    blind->add_option("--samples,--trials", bl_samples);
    blind->add_option("--seed", bl_seed);
    blind->add_option("--out", bl_out);
    blind->add_flag("--broken-blinding", bl_broken, "negative control: all theta = 0");

    ExperimentFlags rb_flags;
    std::vector<double> rb_noise{0.0, 0.05}, rb_omegas{0.05, 0.2};
    std::size_t rb_estimate = 4000;
    auto *robust = app.add_subcommand("robustness", "Depolarizing noise sweep against the robustness bounds");
    rb_flags.add(robust);
    robust->add_option("--noise", rb_noise, "depolarizing parameters")->delimiter(',');
    robust->add_option("--omegas", rb_omegas, "threshold ratios")->delimiter(',');
    robust->add_option("--estimate-trials", rb_estimate, "test runs per colour for p_min/p_max");

    std::string at_pattern = "linear-identity", at_colouring = "greedy", at_ms, at_targets, at_out;
    std::size_t at_n = 8, at_d = 0, at_trials = 100000;
    double at_omega = 0.2;
    std::uint64_t at_seed = 1;
    int at_jobs = 0;
    auto *attack = app.add_subcommand("attack", "sigma_m sweep over m and target vertex (classical fast path)");
    attack->add_option("--pattern", at_pattern);
    attack->add_option("--colouring", at_colouring)->check(CLI::IsMember({"greedy", "bipartite"}));
    attack->add_option("--n", at_n);
    attack->add_option("--d", at_d, "default n/2");
    attack->add_option("--omega", at_omega);
    attack->add_option("--m", at_ms, "comma-separated m values (default all)");
    attack->add_option("--targets", at_targets, "comma-separated vertex ids (default all)");
    attack->add_option("--trials", at_trials);
    attack->add_option("--seed", at_seed);
    attack->add_option("--jobs", at_jobs);
    attack->add_option("--out", at_out);

    auto *bnd = app.add_subcommand("bounds", "Analytic bounds");
    bnd->require_subcommand(1);
    std::size_t b_n = 100, b_d = 50;
    std::optional<std::size_t> b_t;
    int b_k = 2;
    double b_eps1 = 0.1, b_eps2 = 0.1, b_phi = 0.1, b_omega = 0.2, b_target = 1e-6, b_delta = 0.5;
    std::string b_out;
    auto *b_eval = bnd->add_subcommand("eval", "Evaluate the verifiability bound at a point");
    auto *b_opt = bnd->add_subcommand("optimize", "Minimize the verifiability bound for a threshold ratio");
    auto *b_plan = bnd->add_subcommand("plan", "Smallest n reaching a target bound");
    for (auto *sc : {b_eval, b_opt}) {
        sc->add_option("--n", b_n);
        sc->add_option("--d", b_d);
        sc->add_option("--t", b_t, "default n - d");
    }
    for (auto *sc : {b_eval, b_opt, b_plan}) {
        sc->add_option("--k", b_k);
        sc->add_option("--out", b_out);
    }
    b_eval->add_option("--eps1", b_eps1);
    b_eval->add_option("--eps2", b_eps2);
    b_eval->add_option("--phi", b_phi);
    b_opt->add_option("--omega", b_omega);
    b_plan->add_option("--omega", b_omega);
    b_plan->add_option("--epsilon", b_target);
    b_plan->add_option("--delta-ratio", b_delta);

    std::string co_pattern, co_mode = "greedy", co_out;
    auto *colour = app.add_subcommand("colour", "Colour a pattern graph");
    colour->add_option("pattern", co_pattern)->required();
    colour->add_option("--mode", co_mode)->check(CLI::IsMember({"greedy", "bipartite"}));
    colour->add_option("--out", co_out);

    std::string va_pattern;
    auto *validate = app.add_subcommand("validate", "Validate a pattern file");
    validate->add_option("pattern", va_pattern)->required();

    ExperimentFlags sv_flags;
    unsigned short sv_port = 7878;
    bool sv_drop = false;
    std::size_t sv_max = 0;
    auto *serve = app.add_subcommand("serve", "Server endpoint on 127.0.0.1 (simulation only)");
    sv_flags.add(serve);
    serve->add_option("--port", sv_port);
    serve->add_option("--max-connections", sv_max, "exit after this many sessions, one per trial (0 = no limit)");
    serve->add_flag("--drop-on-redo", sv_drop, "close the connection instead of sending a server redo");

    ExperimentFlags cn_flags;
    std::string cn_host = "127.0.0.1";
    unsigned short cn_port = 7878;
    auto *conn = app.add_subcommand("connect", "Client endpoint driving the protocol over a socket");
    cn_flags.add(conn);
    conn->add_option("--host", cn_host);
    conn->add_option("--port", cn_port);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const ExperimentConfig cfg = run_flags.build();
            const Summary s = monte_carlo(cfg);
            json j = s.to_json();
            j["config"] = config_to_json(cfg);
            std::cout << j.dump() << '\n';
        } else if (*blind) {
            const MeasurementPattern p = resolve_pattern(bl_pattern);
            ClientOptions opt;
            opt.force_zero_theta = bl_broken;
            const BlindnessReport r = blindness_test(p, pick_colouring(p, bl_colouring), bl_samples, bl_seed, opt);
            emit(r.to_json(), bl_out);
        } else if (*robust) {
            ExperimentConfig cfg = rb_flags.build();
            const std::string out = cfg.out;
            cfg.out.clear();
            json rows = json::array();
            for (const auto &row : robustness_sweep(cfg, rb_noise, rb_omegas, rb_estimate)) {
                rows.push_back(row.to_json());
            }
            emit({{"schema", "vbqc.robustness/1"}, {"rows", rows}}, out);
        } else if (*attack) {
            const MeasurementPattern p = resolve_pattern(at_pattern);
            const Colouring c = pick_colouring(p, at_colouring);
            const std::size_t d = at_d ? at_d : at_n / 2;
            const std::size_t t = at_n - d;
            const ProtocolParams params = ProtocolParams::make(at_n, d, threshold_from_omega(at_omega, t), c.k);
            std::vector<std::size_t> targets;
            for (std::size_t id : parse_list(at_targets)) {
                targets.push_back(p.graph.index_of(static_cast<VertexId>(id)));
            }
            if (at_jobs > 0) {
                omp_set_num_threads(at_jobs);
            }
            const AttackSweep s =
                attack_sweep(params, at_omega, c, parse_list(at_ms), targets, at_trials, at_seed, true);
            emit(s.to_json(p.graph), at_out);
        } else if (*bnd) {
            json j;
            if (*b_eval) {
                bounds::BoundParams bp{b_n, b_d, b_t.value_or(b_n - b_d), b_k, b_eps1, b_eps2, b_phi};
                const auto v = bounds::verifiability_bound(bp);
                j = {{"schema", "vbqc.bounds/1"}, {"op", "eval"}, {"n", bp.n}, {"d", bp.d}, {"t", bp.t},
                     {"k", b_k}, {"eps1", b_eps1}, {"eps2", b_eps2}, {"phi", b_phi}, {"omega", bp.omega()},
                     {"value", v.value}, {"log_value", v.log_value},
                     {"log_terms", {v.log_computation_term, v.log_test_term_a, v.log_test_term_b}}};
            } else if (*b_opt) {
                const auto b = bounds::optimize_verifiability_bound(b_n, b_d, b_t.value_or(b_n - b_d), b_k, b_omega);
                j = {{"schema", "vbqc.bounds/1"}, {"op", "optimize"}, {"n", b_n}, {"d", b_d},
                     {"t", b_t.value_or(b_n - b_d)}, {"k", b_k}, {"omega", b_omega}, {"bound", bound_json(b)}};
            } else {
                const auto r = bounds::min_n_for_target(b_target, b_delta, b_omega, b_k);
                j = {{"schema", "vbqc.bounds/1"}, {"op", "plan"}, {"epsilon_target", b_target},
                     {"delta_ratio", b_delta}, {"omega", b_omega}, {"k", b_k}, {"n", r.n}, {"d", r.d},
                     {"t", r.t}, {"bound", bound_json(r.bound)}};
            }
            emit(j, b_out);
        } else if (*colour) {
            const MeasurementPattern p = resolve_pattern(co_pattern);
            Colouring c;
            if (co_mode == "greedy") {
                c = greedy_colouring(p);
            } else {
                auto b = bipartite_colouring(p.graph);
                if (!b) {
                    std::cerr << "error: graph is not bipartite\n";
                    return 2;
                }
                c = *b;
            }
            json col = json::object();
            for (std::size_t v = 0; v < p.graph.size(); ++v) {
                col[std::to_string(p.graph.id(v))] = c.colour[v];
            }
            emit({{"schema", "vbqc.colouring/1"}, {"pattern", p.name}, {"mode", co_mode}, {"k", c.k},
                  {"max_degree", p.graph.max_degree()}, {"valid", validate_colouring(p.graph, c)},
                  {"colours", col}},
                 co_out);
        } else if (*validate) {
            const MeasurementPattern p = load_pattern_file(va_pattern);
            const auto problems = validate_pattern(p);
            if (!problems.empty()) {
                for (const auto &msg : problems) {
                    std::cerr << "invalid: " << msg << '\n';
                }
                return 1;
            }
            std::cout << json{{"pattern", p.name}, {"valid", true}, {"vertices", p.graph.size()}}.dump() << '\n';
        } else if (*serve) {
            ExperimentConfig cfg = sv_flags.build();
            if (!cfg.w && !cfg.omega) {
                cfg.w = 0;  // the Server never applies the threshold
            }
            const Experiment e = resolve(cfg);
            SocketServer server(Server(e.pattern.graph, server_config(e)), sv_port, {sv_drop, sv_max});
            std::cerr << "serving on 127.0.0.1:" << server.port() << " (simulation only)\n";
            server.serve();
            const EndpointStats st = server.stats();
            std::cout << json{{"connections", st.connections}, {"verdicts", st.verdicts}, {"errors", st.errors},
                              {"drops", st.drops}}
                             .dump()
                      << '\n';
        } else if (*conn) {
            const ExperimentConfig cfg = cn_flags.build();
            const Experiment e = resolve(cfg);
            std::vector<TrialResult> results;
            std::size_t reconnects = 0;
            for (std::size_t i = 0; i < cfg.trials; ++i) {
                RemoteLink link(cn_host, cn_port, i);
                results.push_back(run_trial_over(e, i, link));
                Verdict v;
                v.accepted = results.back().accepted;
                v.reason = results.back().reason;
                link.send_verdict(v);
                reconnects += link.reconnects();
            }
            const Summary s = summarize(e, results);
            if (!cfg.out.empty()) {
                std::vector<json> traces;
                for (auto &r : results) {
                    if (cfg.write_traces) traces.push_back(r.trace);
                }
                write_records(cfg, s, traces);
            }
            json j = s.to_json();
            j["reconnects"] = reconnects;
            std::cout << j.dump() << '\n';
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
