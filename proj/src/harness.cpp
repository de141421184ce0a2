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

#include "vbqc/harness.hpp"

#include <chrono>
#include <exception>
#include <fstream>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "vbqc/pattern_io.hpp"
#include "vbqc/server.hpp"
#include "vbqc/stats.hpp"

namespace vbqc {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string &msg) {
    throw std::invalid_argument("config: " + msg);
}

void check_fields(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object()) {
        config_error(where + " must be an object");
    }
    for (const auto &[k, _] : obj.items()) {
        if (!allowed.count(k)) {
            config_error("unknown field '" + k + "' in " + where);
        }
    }
}

const char *kind_name(BehaviourSpec::Kind k) {
    switch (k) {
    case BehaviourSpec::Kind::Honest:
        return "honest";
    case BehaviourSpec::Kind::Depolarizing:
        return "depolarizing";
    case BehaviourSpec::Kind::SigmaM:
        return "sigma_m";
    case BehaviourSpec::Kind::Pauli:
        return "pauli";
    }
    return "honest";
}

BehaviourSpec behaviour_from_json(const json &b) {
    check_fields(b, {"kind", "p", "schedule", "m", "target", "deviations"}, "behaviour");
    BehaviourSpec s;
    const std::string kind = b.value("kind", std::string("honest"));
    if (kind == "honest") {
        s.kind = BehaviourSpec::Kind::Honest;
    } else if (kind == "depolarizing") {
        s.kind = BehaviourSpec::Kind::Depolarizing;
        s.p = b.at("p").get<double>();
        if (b.contains("schedule")) {
            s.schedule = parse_schedule(b["schedule"].get<std::string>());
        }
    } else if (kind == "sigma_m") {
        s.kind = BehaviourSpec::Kind::SigmaM;
        s.m = b.at("m").get<std::size_t>();
        s.target = b.at("target").get<VertexId>();
    } else if (kind == "pauli") {
        s.kind = BehaviourSpec::Kind::Pauli;
        for (const auto &d : b.at("deviations")) {
            check_fields(d, {"run", "vertex", "pauli"}, "deviation");
            s.deviations.push_back(
                {d.at("run").get<std::size_t>(), d.at("vertex").get<VertexId>(), parse_pauli(d.at("pauli"))});
        }
    } else {
        config_error("unknown behaviour kind '" + kind + "'");
    }
    return s;
}

json behaviour_to_json(const BehaviourSpec &s) {
    json b;
    b["kind"] = kind_name(s.kind);
    switch (s.kind) {
    case BehaviourSpec::Kind::Honest:
        break;
    case BehaviourSpec::Kind::Depolarizing:
        b["p"] = s.p;
        b["schedule"] = schedule_name(s.schedule);
        break;
    case BehaviourSpec::Kind::SigmaM:
        b["m"] = s.m;
        b["target"] = s.target;
        break;
    case BehaviourSpec::Kind::Pauli: {
        json list = json::array();
        for (const auto &d : s.deviations) {
            list.push_back({{"run", d.run}, {"vertex", d.vertex}, {"pauli", std::string(1, pauli_char(d.pauli))}});
        }
        b["deviations"] = list;
        break;
    }
    }
    return b;
}

json tallies_to_json(const std::vector<ColourTally> &per_colour) {
    json out = json::array();
    for (std::size_t c = 0; c < per_colour.size(); ++c) {
        const auto &t = per_colour[c];
        out.push_back({{"colour", c},
                       {"runs", t.runs},
                       {"failures", t.failures},
                       {"rate", t.runs ? static_cast<double>(t.failures) / static_cast<double>(t.runs) : 0.0}});
    }
    return out;
}

}  // namespace

ExperimentConfig config_from_json(const json &doc) {
    check_fields(doc,
                 {"schema", "pattern", "colouring", "colours", "n", "d", "w", "omega", "input", "behaviour", "trials",
                  "seed", "jobs", "out", "redo", "mode", "fast_path", "traces", "wall_time"},
                 "config");
    if (doc.contains("schema") && doc["schema"] != kConfigSchema) {
        config_error("unsupported schema " + doc["schema"].dump());
    }
    ExperimentConfig c;
    try {
        c.pattern = doc.value("pattern", c.pattern);
        c.colouring = doc.value("colouring", c.colouring);
        if (c.colouring != "greedy" && c.colouring != "bipartite" && c.colouring != "explicit") {
            config_error("colouring must be greedy, bipartite or explicit");
        }
        if (doc.contains("colours")) {
            for (const auto &[k, v] : doc["colours"].items()) {
                c.colours.emplace_back(std::stoll(k), v.get<int>());
            }
        }
        c.n = doc.value("n", c.n);
        c.d = doc.value("d", c.d);
        if (doc.contains("w")) {
            c.w = doc["w"].get<std::size_t>();
        }
        if (doc.contains("omega")) {
            c.omega = doc["omega"].get<double>();
        }
        if (doc.contains("input")) {
            c.input = doc["input"].get<std::vector<Bit>>();
        }
        if (doc.contains("behaviour")) {
            c.behaviour = behaviour_from_json(doc["behaviour"]);
        }
        c.trials = doc.value("trials", c.trials);
        c.seed = doc.value("seed", c.seed);
        c.jobs = doc.value("jobs", c.jobs);
        c.out = doc.value("out", c.out);
        if (doc.contains("redo")) {
            const json &r = doc["redo"];
            check_fields(r, {"p_succ", "server_rate", "client_rate"}, "redo");
            c.p_succ = r.value("p_succ", c.p_succ);
            c.server_redo_rate = r.value("server_rate", c.server_redo_rate);
            c.client_redo_rate = r.value("client_rate", c.client_redo_rate);
        }
        const std::string mode = doc.value("mode", std::string("sequential"));
        if (mode == "sequential") {
            c.mode = RunMode::Sequential;
        } else if (mode == "parallel") {
            c.mode = RunMode::Parallel;
        } else {
            config_error("mode must be sequential or parallel");
        }
        c.fast_path = doc.value("fast_path", c.fast_path);
        c.write_traces = doc.value("traces", c.write_traces);
        c.wall_time = doc.value("wall_time", c.wall_time);
    } catch (const json::exception &e) {
        config_error(e.what());
    }
    if (c.trials < 1) {
        config_error("trials must be at least 1");
    }
    return c;
}

json config_to_json(const ExperimentConfig &c) {
    json doc;
    doc["schema"] = kConfigSchema;
    doc["pattern"] = c.pattern;
    doc["colouring"] = c.colouring;
    if (!c.colours.empty()) {
        json col = json::object();
        for (auto [v, k] : c.colours) {
            col[std::to_string(v)] = k;
        }
        doc["colours"] = col;
    }
    doc["n"] = c.n;
    doc["d"] = c.d;
    if (c.w) {
        doc["w"] = *c.w;
    }
    if (c.omega) {
        doc["omega"] = *c.omega;
    }
    if (!c.input.empty()) {
        doc["input"] = c.input;
    }
    doc["behaviour"] = behaviour_to_json(c.behaviour);
    doc["trials"] = c.trials;
    doc["seed"] = c.seed;
    doc["jobs"] = c.jobs;
    if (!c.out.empty()) {
        doc["out"] = c.out;
    }
    doc["redo"] = {{"p_succ", c.p_succ}, {"server_rate", c.server_redo_rate}, {"client_rate", c.client_redo_rate}};
    doc["mode"] = c.mode == RunMode::Parallel ? "parallel" : "sequential";
    doc["fast_path"] = c.fast_path;
    doc["traces"] = c.write_traces;
    doc["wall_time"] = c.wall_time;
    return doc;
}

Experiment resolve(const ExperimentConfig &cfg) {
    Experiment e;
    e.cfg = cfg;
    e.pattern = resolve_pattern(cfg.pattern);
    auto problems = validate_pattern(e.pattern);
    if (!problems.empty()) {
        config_error("pattern '" + cfg.pattern + "' is invalid: " + problems.front());
    }
    const Graph &g = e.pattern.graph;
    if (cfg.colouring == "greedy") {
        e.colouring = greedy_colouring(e.pattern);
    } else if (cfg.colouring == "bipartite") {
        auto c = bipartite_colouring(g);
        if (!c) {
            config_error("pattern graph is not bipartite");
        }
        e.colouring = *c;
    } else {
        e.colouring.colour.assign(g.size(), -1);
        for (auto [v, col] : cfg.colours) {
            e.colouring.colour.at(g.index_of(v)) = col;
            e.colouring.k = std::max(e.colouring.k, col + 1);
        }
        if (!validate_colouring(g, e.colouring)) {
            config_error("explicit colouring is not proper");
        }
    }
    if (cfg.d == 0 || cfg.d >= cfg.n) {
        config_error("need 0 < d < n");
    }
    std::size_t w = 0;
    if (cfg.w) {
        w = *cfg.w;
    } else if (cfg.omega) {
        w = threshold_from_omega(*cfg.omega, cfg.n - cfg.d);
    } else {
        config_error("give either w or omega");
    }
    e.params = ProtocolParams::make(cfg.n, cfg.d, w, e.colouring.k);
    e.input = cfg.input.empty() ? std::vector<Bit>(g.inputs().size(), 0) : cfg.input;
    if (e.input.size() != g.inputs().size()) {
        config_error("input length does not match the pattern inputs");
    }
    e.reference = reference_output(e.pattern, e.input);

    const BehaviourSpec &b = cfg.behaviour;
    switch (b.kind) {
    case BehaviourSpec::Kind::Honest:
        e.behaviour = Honest{};
        break;
    case BehaviourSpec::Kind::Depolarizing:
        e.behaviour = Noisy{depolarizing_noise(b.p, b.schedule)};
        break;
    case BehaviourSpec::Kind::SigmaM:
        e.attack = sigma_m_attack(b.m, g.index_of(b.target), cfg.n);
        e.behaviour = Malicious{*e.attack};
        break;
    case BehaviourSpec::Kind::Pauli: {
        Attack a;
        for (const auto &d : b.deviations) {
            if (d.run >= cfg.n) {
                config_error("deviation targets run " + std::to_string(d.run) + " but n = " + std::to_string(cfg.n));
            }
            a.deviations.push_back({d.run, g.index_of(d.vertex), d.pauli});
        }
        e.attack = a;
        e.behaviour = Malicious{a};
        break;
    }
    }
    if (cfg.fast_path) {
        if (!e.attack) {
            config_error("fast_path needs an attack behaviour");
        }
        if (cfg.server_redo_rate > 0.0 || cfg.client_redo_rate > 0.0) {
            config_error("fast_path does not simulate Redo");
        }
    }
    return e;
}

namespace {

std::size_t affected_runs(const Attack &a, const std::vector<bool> &is_computation) {
    std::vector<char> hit(is_computation.size(), 0);
    for (const auto &d : a.deviations) {
        if (d.pauli != Pauli::I && d.run < hit.size() && is_computation[d.run]) {
            hit[d.run] = 1;
        }
    }
    std::size_t z = 0;
    for (char h : hit) {
        z += h;
    }
    return z;
}

}  // namespace

TrialResult run_trial(const Experiment &e, std::size_t trial) {
    const ExperimentConfig &cfg = e.cfg;
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    TrialResult r;
    r.per_colour.assign(static_cast<std::size_t>(e.colouring.k), ColourTally{});

    if (cfg.fast_path) {
        // Same partition and colour draws as run_protocol for this seed.
        Rng prng(derive_seed(seed, {stream::kProtocol}));
        const Partition part = sample_partition(e.params.n, e.params.d, prng);
        std::vector<bool> is_comp(e.params.n, false);
        for (std::size_t j : part.computation) {
            is_comp[j] = true;
        }
        std::vector<int> colours(e.params.n, -1);
        for (std::size_t j : part.test) {
            Rng crng(derive_seed(run_seed(seed, j, 0), {stream::kClient}));
            colours[j] = std::uniform_int_distribution<int>(0, e.colouring.k - 1)(crng);
        }
        const ClassicalOutcome o = classical_attack_outcome(*e.attack, is_comp, colours, e.colouring, e.params);
        std::vector<char> failed(e.params.n, 0);
        for (const auto &d : e.attack->deviations) {
            if (d.run < e.params.n && !is_comp[d.run] && e.colouring.colour[d.vertex] == colours[d.run]) {
                failed[d.run] = 1;
            }
        }
        for (std::size_t j : part.test) {
            auto &t = r.per_colour[static_cast<std::size_t>(colours[j])];
            ++t.runs;
            t.failures += failed[j];
        }
        r.c_fail = o.failed_tests;
        r.affected = o.affected_runs;
        r.bound_event = o.failure();
        r.accepted = o.accept_side;
        r.correct = o.accept_side && !o.corruption_possible;
        r.reason = o.accept_side ? Verdict::Reason::None : Verdict::Reason::TrapFailures;
        if (cfg.write_traces) {
            r.trace = {{"schema", "vbqc.trace/1"}, {"seed", seed}, {"fast_path", true},
                       {"partition", {{"C", part.computation}, {"T", part.test}}},
                       {"colours", colours}, {"c_fail", o.failed_tests}, {"affected", o.affected_runs}};
        }
        return r;
    }

    Server server(e.pattern.graph, server_config(e));
    InProcessLink link(server, trial);
    return run_trial_over(e, trial, link);
}

ServerConfig server_config(const Experiment &e) {
    ServerConfig scfg;
    scfg.behaviour = e.behaviour;
    scfg.forced_redo_rate = e.cfg.server_redo_rate;
    scfg.seed = derive_seed(e.cfg.seed, {stream::kServer});
    scfg.cap = std::max<std::size_t>(16, e.pattern.graph.size());
    return scfg;
}

TrialResult run_trial_over(const Experiment &e, std::size_t trial, ServerLink &link) {
    const ExperimentConfig &cfg = e.cfg;
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    TrialResult r;
    r.per_colour.assign(static_cast<std::size_t>(e.colouring.k), ColourTally{});
    ProtocolOptions opt;
    opt.mode = cfg.mode;
    opt.p_succ = cfg.p_succ;
    opt.client_redo_rate = cfg.client_redo_rate;
    const ProtocolTrace tr = run_protocol(e.pattern, e.colouring, e.params, e.input, link, seed, opt);

    r.accepted = tr.verdict.accepted;
    r.correct = r.accepted && tr.verdict.output == e.reference;
    r.reason = tr.verdict.reason;
    r.c_fail = tr.c_fail;
    r.redo_events = tr.redo_log.size();
    for (std::size_t j = 0; j < tr.runs.size(); ++j) {
        if (tr.is_computation[j]) {
            continue;
        }
        auto &t = r.per_colour[static_cast<std::size_t>(tr.colours[j])];
        ++t.runs;
        t.failures += tr.runs[j].failed.empty() ? 0 : 1;
    }
    if (e.attack) {
        r.affected = affected_runs(*e.attack, tr.is_computation);
        r.bound_event = tr.c_fail < e.params.w && 2 * r.affected >= e.params.d;
    }
    if (cfg.write_traces) {
        r.trace = trace_to_json(tr);
    }
    return r;
}

json Summary::to_json() const {
    json j;
    j["schema"] = kSummarySchema;
    j["trials"] = trials;
    j["accept"] = accept;
    j["abort"] = abort;
    j["abort_traps"] = abort_traps;
    j["abort_majority"] = abort_majority;
    j["correct_accept"] = correct_accept;
    j["incorrect_accept"] = incorrect_accept;
    j["bound_events"] = bound_events;
    j["mean_c_fail"] = mean_c_fail;
    j["redo_events"] = redo_events;
    j["per_colour"] = tallies_to_json(per_colour);
    j["fast_path"] = fast_path;
    j["bounds"] = bounds;
    if (wall_seconds) {
        j["wall_seconds"] = *wall_seconds;
    }
    return j;
}

namespace {

}  // namespace

Summary summarize(const Experiment &e, const std::vector<TrialResult> &results) {
    Summary s;
    s.trials = results.size();
    s.fast_path = e.cfg.fast_path;
    s.per_colour.assign(static_cast<std::size_t>(e.colouring.k), ColourTally{});
    std::size_t c_fail_total = 0;
    for (const auto &r : results) {
        if (r.accepted) {
            ++s.accept;
            (r.correct ? s.correct_accept : s.incorrect_accept) += 1;
        } else {
            ++s.abort;
            (r.reason == Verdict::Reason::TrapFailures ? s.abort_traps : s.abort_majority) += 1;
        }
        s.bound_events += r.bound_event ? 1 : 0;
        c_fail_total += r.c_fail;
        s.redo_events += r.redo_events;
        for (std::size_t c = 0; c < r.per_colour.size(); ++c) {
            s.per_colour[c].runs += r.per_colour[c].runs;
            s.per_colour[c].failures += r.per_colour[c].failures;
        }
    }
    s.mean_c_fail = s.trials ? static_cast<double>(c_fail_total) / static_cast<double>(s.trials) : 0.0;

    const ProtocolParams &pp = e.params;
    const double omega = e.cfg.omega ? *e.cfg.omega : pp.omega();
    json b;
    b["omega"] = omega;
    b["secure_regime"] = pp.secure_regime();
    if (e.attack) {
        try {
            auto opt = bounds::optimize_verifiability_bound(pp.n, pp.d, pp.t, pp.k, omega);
            b["epsilon_ver"] = opt.epsilon;
            b["log_epsilon_ver"] = opt.log_epsilon;
            b["epsilon_composable"] = bounds::composable_epsilon(opt.epsilon);
        } catch (const bounds::Infeasible &err) {
            b["epsilon_ver"] = nullptr;
            b["infeasible"] = err.what();
        }
        if (e.cfg.behaviour.kind == BehaviourSpec::Kind::SigmaM) {
            const auto exact = sigma_m_failure_probability(e.cfg.behaviour.m, pp);
            b["exact_failure"] = exact.strict;
            b["exact_failure_tolerant"] = exact.tolerant;
        }
    }
    s.bounds = b;
    return s;
}

namespace {

template <class Loop>
Summary run_experiment(const ExperimentConfig &cfg, Loop loop) {
    const auto start = std::chrono::steady_clock::now();
    const Experiment e = resolve(cfg);
    std::vector<TrialResult> results(cfg.trials);
    loop(e, results);
    Summary s = summarize(e, results);
    if (cfg.wall_time) {
        s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (!cfg.out.empty()) {
        std::vector<json> traces;
        if (cfg.write_traces) {
            for (auto &r : results) {
                traces.push_back(std::move(r.trace));
            }
        }
        write_records(cfg, s, traces);
    }
    return s;
}

}  // namespace

Summary monte_carlo_serial(const ExperimentConfig &cfg) {
    return run_experiment(cfg, [](const Experiment &e, std::vector<TrialResult> &results) {
        for (std::size_t i = 0; i < results.size(); ++i) {
            results[i] = run_trial(e, i);
        }
    });
}

Summary monte_carlo(const ExperimentConfig &cfg) {
    return run_experiment(cfg, [](const Experiment &e, std::vector<TrialResult> &results) {
        const int threads = e.cfg.jobs > 0 ? e.cfg.jobs : omp_get_max_threads();
        const auto count = static_cast<long long>(results.size());
        std::exception_ptr err;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 8)
        for (long long i = 0; i < count; ++i) {
            try {
                results[static_cast<std::size_t>(i)] = run_trial(e, static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(vbqc_mc_error)
                if (!err) {
                    err = std::current_exception();
                }
            }
        }
        if (err) {
            std::rethrow_exception(err);
        }
    });
}

void write_records(const ExperimentConfig &cfg, const Summary &s, const std::vector<json> &traces) {
    std::ofstream out(cfg.out);
    if (!out) {
        throw std::runtime_error("cannot write " + cfg.out);
    }
    for (const auto &t : traces) {
        out << t.dump() << '\n';
    }
    json summary = s.to_json();
    summary["config"] = config_to_json(cfg);
    out << summary.dump() << '\n';
}

SigmaOutcome sigma_m_trial(const ProtocolParams &params, std::size_t m, int target_colour, Rng &rng) {
    // Runs 0..m-1 are computation runs with the sequential-draw probabilities of
    // a uniform size-d subset.
    SigmaOutcome o;
    std::size_t comp_left = params.d, total_left = params.n;
    const auto k = static_cast<std::uint64_t>(params.k);
    for (std::size_t j = 0; j < m; ++j) {
        const bool comp = static_cast<double>(comp_left) > uniform01(rng) * static_cast<double>(total_left);
        --total_left;
        if (comp) {
            --comp_left;
            ++o.affected;
        } else if (static_cast<int>(rng() % k) == target_colour) {
            ++o.failed_tests;
        }
    }
    return o;
}

AttackCell attack_cell(const ProtocolParams &params, std::size_t m, std::size_t target, const Colouring &c,
                       std::size_t trials, std::uint64_t seed, bool parallel) {
    params.validate();
    AttackCell cell;
    cell.n = params.n;
    cell.m = m;
    cell.target = target;
    cell.target_colour = c.colour.at(target);
    cell.trials = trials;
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (trials + kBlock - 1) / kBlock;
    struct Tally {
        std::size_t failures = 0, tolerant = 0, y = 0, z = 0;
    };
    std::vector<Tally> tallies(blocks);
    auto body = [&](std::size_t b) {
        Rng rng(derive_seed(seed, {b}));
        Tally t;
        const std::size_t end = std::min(trials, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            const SigmaOutcome o = sigma_m_trial(params, m, cell.target_colour, rng);
            const bool corrupt = 2 * o.affected >= params.d;
            t.failures += (corrupt && o.failed_tests < params.w) ? 1 : 0;
            t.tolerant += (corrupt && o.failed_tests <= params.w) ? 1 : 0;
            t.y += o.failed_tests;
            t.z += o.affected;
        }
        tallies[b] = t;
    };
    const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long b = 0; b < nb; ++b) {
        body(static_cast<std::size_t>(b));
    }
    std::size_t y = 0, z = 0;
    for (const auto &t : tallies) {
        cell.failures += t.failures;
        cell.failures_tolerant += t.tolerant;
        y += t.y;
        z += t.z;
    }
    cell.mean_failed_tests = trials ? static_cast<double>(y) / static_cast<double>(trials) : 0.0;
    cell.mean_affected = trials ? static_cast<double>(z) / static_cast<double>(trials) : 0.0;
    return cell;
}

AttackSweep attack_sweep(const ProtocolParams &params, double omega, const Colouring &c, std::vector<std::size_t> ms,
                         std::vector<std::size_t> targets, std::size_t trials, std::uint64_t seed, bool parallel) {
    AttackSweep s;
    s.params = params;
    s.omega = omega;
    try {
        s.bound = bounds::optimize_verifiability_bound(params.n, params.d, params.t, params.k, omega);
    } catch (const bounds::Infeasible &) {
        s.bound.reset();
    }
    if (ms.empty()) {
        for (std::size_t m = 0; m <= params.n; ++m) {
            ms.push_back(m);
        }
    }
    if (targets.empty()) {
        for (std::size_t v = 0; v < c.colour.size(); ++v) {
            targets.push_back(v);
        }
    }
    for (std::size_t m : ms) {
        for (std::size_t v : targets) {
            s.cells.push_back(attack_cell(params, m, v, c, trials, derive_seed(seed, {params.n, m, v}), parallel));
        }
    }
    return s;
}

json AttackSweep::to_json(const Graph &g) const {
    json j;
    j["schema"] = "vbqc.attack/1";
    j["params"] = {{"n", params.n}, {"d", params.d}, {"t", params.t}, {"w", params.w}, {"k", params.k}};
    j["omega"] = omega;
    if (bound) {
        j["epsilon_ver"] = bound->epsilon;
        j["log_epsilon_ver"] = bound->log_epsilon;
        j["argmin"] = {{"eps1", bound->argmin.eps1}, {"eps2", bound->argmin.eps2}, {"phi", bound->argmin.phi}};
    } else {
        j["epsilon_ver"] = nullptr;
    }
    json cells_json = json::array();
    for (const auto &c : cells) {
        const auto exact = sigma_m_failure_probability(c.m, params);
        cells_json.push_back({{"m", c.m},
                              {"target", g.id(c.target)},
                              {"target_colour", c.target_colour},
                              {"trials", c.trials},
                              {"failures", c.failures},
                              {"rate", c.rate()},
                              {"exact", exact.strict},
                              {"rate_tolerant", static_cast<double>(c.failures_tolerant) / static_cast<double>(c.trials)},
                              {"exact_tolerant", exact.tolerant},
                              {"mean_failed_tests", c.mean_failed_tests},
                              {"mean_affected", c.mean_affected}});
    }
    j["cells"] = cells_json;
    return j;
}

json BlindnessReport::to_json() const {
    json j;
    j["schema"] = "vbqc.blindness/1";
    j["samples"] = samples;
    j["alpha"] = alpha;
    j["threshold"] = threshold;
    j["min_p"] = min_p;
    j["uniform"] = uniform();
    j["p_mixed"] = p_mixed;
    j["p_computation"] = p_computation;
    j["p_test"] = p_test;
    json d = json::array();
    for (const auto &r : distinguishers) {
        d.push_back({{"name", r.name}, {"auc", r.auc}, {"samples", r.samples}});
    }
    j["distinguishers"] = d;
    return j;
}

namespace {

std::vector<std::uint8_t> features(const RunTranscript &tr) {
    std::vector<std::uint8_t> f(tr.deltas.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
        f[v] = static_cast<std::uint8_t>(2 * tr.deltas[v].value() + (tr.outcomes[v] & 1));
    }
    return f;
}

}  // namespace

BlindnessReport blindness_test(const MeasurementPattern &p, const Colouring &c, std::size_t samples,
                               std::uint64_t seed, const ClientOptions &client) {
    const std::size_t nv = p.graph.size();
    const std::size_t ni = p.graph.inputs().size();
    BlindnessReport rep;
    rep.samples = samples;
    ServerConfig honest;
    honest.seed = derive_seed(seed, {stream::kServer});
    const Server server(p.graph, honest);
    ServerConfig redo_cfg = honest;
    redo_cfg.forced_redo_rate = 0.5;
    const Server redo_server(p.graph, redo_cfg);

    std::vector<std::vector<std::size_t>> mixed(nv, std::vector<std::size_t>(8, 0));
    auto comp = mixed, test = mixed;

    auto sample_run = [&](Rng &rng, bool computation) {
        if (computation) {
            return sample_computation_secrets(p, rng, client);
        }
        const int colour = std::uniform_int_distribution<int>(0, c.k - 1)(rng);
        return sample_test_secrets(p, c, colour, rng, client);
    };

    // Run type.
    std::vector<std::vector<std::uint8_t>> xs;
    std::vector<int> ys;
    {
        InProcessLink link(server, 1);
        for (std::size_t i = 0; i < samples; ++i) {
            Rng rng(derive_seed(seed, {1, i}));
            const bool is_comp = random_bit(rng);
            const RunSecrets s = sample_run(rng, is_comp);
            auto ch = link.open_run(i, 0);
            const RunAttempt a = execute_run(p, s, std::vector<Bit>(ni, 0), *ch, rng);
            for (std::size_t v = 0; v < nv; ++v) {
                const auto val = a.transcript.deltas[v].value();
                ++mixed[v][val];
                ++(is_comp ? comp : test)[v][val];
            }
            xs.push_back(features(a.transcript));
            ys.push_back(is_comp ? 1 : 0);
        }
        rep.distinguishers.push_back({"run_type", stats::holdout_auc(xs, ys, 16), samples});
    }
    // Input.
    xs.clear();
    ys.clear();
    {
        InProcessLink link(server, 2);
        for (std::size_t i = 0; i < samples; ++i) {
            Rng rng(derive_seed(seed, {2, i}));
            const Bit label = random_bit(rng);
            const RunSecrets s = sample_computation_secrets(p, rng, client);
            auto ch = link.open_run(i, 0);
            const RunAttempt a = execute_run(p, s, std::vector<Bit>(ni, label), *ch, rng);
            xs.push_back(features(a.transcript));
            ys.push_back(label);
        }
        rep.distinguishers.push_back({"input", stats::holdout_auc(xs, ys, 16), samples});
    }
    // Redo history: completed attempts that followed at least one Redo.
    xs.clear();
    ys.clear();
    {
        InProcessLink link(redo_server, 3);
        for (std::size_t i = 0; i < samples; ++i) {
            Rng type_rng(derive_seed(seed, {3, i}));
            const bool is_comp = random_bit(type_rng);
            for (std::size_t attempt = 0;; ++attempt) {
                Rng rng(derive_seed(seed, {3, i, attempt + 1}));
                const RunSecrets s = sample_run(rng, is_comp);
                auto ch = link.open_run(i, attempt);
                const RunAttempt a = execute_run(p, s, std::vector<Bit>(ni, 0), *ch, rng);
                if (!a.server_redo) {
                    xs.push_back(features(a.transcript));
                    ys.push_back(attempt > 0 ? 1 : 0);
                    break;
                }
            }
        }
        rep.distinguishers.push_back({"redo", stats::holdout_auc(xs, ys, 16), samples});
    }

    const std::size_t tests = 3 * nv;
    rep.threshold = rep.alpha / static_cast<double>(tests);
    auto pvals = [&](const std::vector<std::vector<std::size_t>> &counts, std::vector<double> &dst) {
        for (const auto &row : counts) {
            const double pv = stats::chi_square_uniform(row).p_value;
            dst.push_back(pv);
            rep.min_p = std::min(rep.min_p, pv);
        }
    };
    pvals(mixed, rep.p_mixed);
    pvals(comp, rep.p_computation);
    pvals(test, rep.p_test);
    return rep;
}

json RobustnessRow::to_json() const {
    json j;
    j["noise"] = noise;
    j["omega"] = omega;
    j["w"] = w;
    j["p_min"] = p_bounds.p_min;
    j["p_max"] = p_bounds.p_max;
    j["rate_min"] = p_bounds.rate_min;
    j["rate_max"] = p_bounds.rate_max;
    j["regime"] = regime;
    j["accept_rate"] = static_cast<double>(summary.accept) / static_cast<double>(summary.trials);
    j["correct_accept_rate"] = static_cast<double>(summary.correct_accept) / static_cast<double>(summary.trials);
    j["eps_cor"] = eps_cor ? json(*eps_cor) : json(nullptr);
    j["abort_bound"] = abort_bound ? json(*abort_bound) : json(nullptr);
    j["consistent"] = consistent;
    return j;
}

std::vector<RobustnessRow> robustness_sweep(const ExperimentConfig &base, const std::vector<double> &noise_levels,
                                            const std::vector<double> &omegas, std::size_t estimate_trials) {
    ExperimentConfig probe = base;
    if (!probe.w && !probe.omega && !omegas.empty()) {
        probe.omega = omegas.front();
    }
    const Experiment e0 = resolve(probe);
    std::vector<RobustnessRow> rows;
    for (std::size_t pi = 0; pi < noise_levels.size(); ++pi) {
        const double p = noise_levels[pi];
        PBounds pb;
        if (p > 0.0) {
            pb = estimate_p_bounds(depolarizing_noise(p, base.behaviour.schedule), e0.pattern, e0.colouring,
                                   estimate_trials, derive_seed(base.seed, {0x70b, pi}));
        }
        for (double omega : omegas) {
            ExperimentConfig cfg = base;
            cfg.behaviour.kind = p > 0.0 ? BehaviourSpec::Kind::Depolarizing : BehaviourSpec::Kind::Honest;
            cfg.behaviour.p = p;
            cfg.omega = omega;
            cfg.w.reset();
            cfg.out.clear();
            RobustnessRow row;
            row.noise = p;
            row.omega = omega;
            row.w = threshold_from_omega(omega, base.n - base.d);
            row.p_bounds = pb;
            row.summary = monte_carlo(cfg);
            const double trials = static_cast<double>(row.summary.trials);
            const double accept_rate = static_cast<double>(row.summary.accept) / trials;
            const double good_rate = static_cast<double>(row.summary.correct_accept) / trials;
            bounds::RobustnessParams rp;
            rp.p_min = pb.p_min;
            rp.p_max = pb.p_max;
            rp.omega = omega;
            rp.tau = static_cast<double>(base.n - base.d) / static_cast<double>(base.n);
            rp.delta_ratio = static_cast<double>(base.d) / static_cast<double>(base.n);
            rp.n = base.n;
            if (p == 0.0) {
                row.regime = "noiseless";
                row.consistent = omega <= 0.0 || row.summary.correct_accept == row.summary.trials;
            } else if (omega > pb.p_max && pb.p_max < 0.5) {
                row.regime = "accept_whp";
                row.eps_cor = bounds::correctness_epsilon(rp);
                row.consistent = good_rate >= 1.0 - *row.eps_cor;
            } else if (omega < pb.p_min) {
                row.regime = "abort_whp";
                row.abort_bound = bounds::abort_probability_bound(pb.p_min, omega, rp.tau, base.n);
                row.consistent = accept_rate <= *row.abort_bound;
            } else {
                row.regime = "unbounded";
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double tune_depolarizing(const MeasurementPattern &p, const Colouring &c, double target, std::size_t trials,
                         std::uint64_t seed, int iterations) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const PBounds b = estimate_p_bounds(depolarizing_noise(mid), p, c, trials, seed);
        if (b.rate_max < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace vbqc
