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

#include "vbqc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vbqc/server.hpp"
#include "vbqc/stats.hpp"
#include "vbqc/ubqc.hpp"

namespace vbqc {

std::vector<std::pair<std::size_t, Pauli>> Attack::on_run(std::size_t run) const {
    std::vector<std::pair<std::size_t, Pauli>> out;
    for (const auto &d : deviations) {
        if (d.run == run) {
            out.emplace_back(d.vertex, d.pauli);
        }
    }
    return out;
}

std::string Attack::describe() const {
    std::ostringstream os;
    os << deviations.size() << " deviation(s)";
    return os.str();
}

Attack sigma_m_attack(std::size_t m, std::size_t target, std::size_t n) {
    if (m > n) {
        throw std::invalid_argument("sigma_m needs m <= n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
    Attack a;
    for (std::size_t j = 0; j < m; ++j) {
        a.deviations.push_back({j, target, Pauli::X});
    }
    return a;
}

const char *schedule_name(NoiseSchedule s) {
    return s == NoiseSchedule::AfterEntangling ? "after_entangling" : "on_preparation";
}

NoiseSchedule parse_schedule(const std::string &s) {
    if (s == "after_entangling") {
        return NoiseSchedule::AfterEntangling;
    }
    if (s == "on_preparation") {
        return NoiseSchedule::OnPreparation;
    }
    throw std::invalid_argument("unknown noise schedule '" + s + "'");
}

NoiseModel depolarizing_noise(double p, NoiseSchedule schedule) {
    NoiseModel m;
    m.default_channel = KrausChannel::depolarizing(p);
    m.schedule = schedule;
    std::ostringstream os;
    os << "depolarizing p=" << p;
    m.description = os.str();
    return m;
}

std::string describe(const ServerBehaviour &b) {
    if (std::holds_alternative<Honest>(b)) {
        return "honest";
    }
    if (const auto *n = std::get_if<Noisy>(&b)) {
        return "noisy (" + n->model.description + ")";
    }
    return "malicious (" + std::get<Malicious>(b).attack.describe() + ")";
}

namespace {

double log_choose(double a, double b) {
    return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
}

}  // namespace

ClassicalOutcome classical_attack_outcome(const Attack &attack, const std::vector<bool> &is_computation,
                                          const std::vector<int> &test_colour, const Colouring &vertex_colour,
                                          const ProtocolParams &params) {
    const std::size_t n = is_computation.size();
    std::vector<char> hit(n, 0), failed(n, 0);
    for (const auto &d : attack.deviations) {
        if (d.pauli == Pauli::Z || d.pauli == Pauli::I) {
            throw std::invalid_argument("classical evaluation needs X or Y deviations; use the quantum path");
        }
        if (d.run >= n) {
            continue;
        }
        hit[d.run] = 1;
        if (!is_computation[d.run] && vertex_colour.colour.at(d.vertex) == test_colour.at(d.run)) {
            failed[d.run] = 1;
        }
    }
    ClassicalOutcome o;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_computation[j]) {
            o.affected_runs += hit[j];
        } else {
            o.failed_tests += failed[j];
        }
    }
    o.accept_side = o.failed_tests < params.w;
    o.accept_side_tolerant = o.failed_tests <= params.w;
    o.corruption_possible = 2 * o.affected_runs >= params.d;
    return o;
}

FailureProbability exact_failure_probability(const Attack &attack, const Colouring &vertex_colour,
                                             const ProtocolParams &params) {
    params.validate();
    const std::size_t n = params.n;
    if (n > 16) {
        throw std::invalid_argument("exact enumeration limited to n <= 16");
    }
    const double configs = std::exp(log_choose(static_cast<double>(n), static_cast<double>(params.d))) *
                           std::pow(static_cast<double>(params.k), static_cast<double>(params.t));
    if (configs > 5e7) {
        throw std::invalid_argument("exact enumeration too large");
    }
    std::size_t partitions = 0;
    double strict = 0.0, tolerant = 0.0;
    std::vector<bool> is_comp(n);
    std::vector<int> colour(n, -1);
    std::vector<std::size_t> tests;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != params.d) {
            continue;
        }
        ++partitions;
        tests.clear();
        for (std::size_t j = 0; j < n; ++j) {
            is_comp[j] = (mask >> j) & 1;
            colour[j] = -1;
            if (!is_comp[j]) {
                tests.push_back(j);
            }
        }
        // Odometer over k^t colour assignments.
        std::vector<int> digits(tests.size(), 0);
        std::size_t hits_strict = 0, hits_tolerant = 0, total = 0;
        while (true) {
            for (std::size_t i = 0; i < tests.size(); ++i) {
                colour[tests[i]] = digits[i];
            }
            const ClassicalOutcome o = classical_attack_outcome(attack, is_comp, colour, vertex_colour, params);
            hits_strict += o.failure();
            hits_tolerant += o.failure_tolerant();
            ++total;
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == params.k) {
                digits[i++] = 0;
            }
            if (i == digits.size()) {
                break;
            }
        }
        strict += static_cast<double>(hits_strict) / static_cast<double>(total);
        tolerant += static_cast<double>(hits_tolerant) / static_cast<double>(total);
    }
    return {strict / static_cast<double>(partitions), tolerant / static_cast<double>(partitions)};
}

FailureProbability sigma_m_failure_probability(std::size_t m, const ProtocolParams &params) {
    params.validate();
    if (m > params.n) {
        throw std::invalid_argument("m exceeds n");
    }
    const double q = 1.0 / params.k;
    FailureProbability out;
    // c attacked computation runs, m - c attacked test runs.
    for (std::size_t c = 0; c <= std::min(m, params.d); ++c) {
        if (m - c > params.t || 2 * c < params.d) {
            continue;
        }
        const std::size_t a = m - c;
        const double hyper =
            std::exp(log_choose(static_cast<double>(params.d), static_cast<double>(c)) +
                     log_choose(static_cast<double>(params.t), static_cast<double>(a)) -
                     log_choose(static_cast<double>(params.n), static_cast<double>(m)));
        double below = 0.0, at_most = 0.0;
        for (std::size_t y = 0; y <= a; ++y) {
            const double pmf = std::exp(log_choose(static_cast<double>(a), static_cast<double>(y)) +
                                        static_cast<double>(y) * std::log(q) +
                                        (a > y ? static_cast<double>(a - y) * std::log1p(-q) : 0.0));
            if (y < params.w) {
                below += pmf;
            }
            if (y <= params.w) {
                at_most += pmf;
            }
        }
        out.strict += hyper * below;
        out.tolerant += hyper * at_most;
    }
    return out;
}

PBounds estimate_p_bounds(const NoiseModel &noise, const MeasurementPattern &p, const Colouring &c,
                          std::size_t trials, std::uint64_t seed, double confidence) {
    if (trials < 1000) {
        throw std::invalid_argument("estimate_p_bounds needs at least 1000 trials per colour");
    }
    ServerConfig cfg;
    cfg.behaviour = Noisy{noise};
    cfg.seed = derive_seed(seed, {stream::kServer});
    Server server(p.graph, cfg);
    PBounds out;
    for (int colour = 0; colour < c.k; ++colour) {
        InProcessLink link(server, static_cast<std::uint64_t>(colour));
        ColourEstimate e;
        e.colour = colour;
        e.runs = trials;
        for (std::size_t i = 0; i < trials; ++i) {
            Rng rng(derive_seed(seed, {stream::kClient, static_cast<std::uint64_t>(colour), i}));
            const RunSecrets s = sample_test_secrets(p, c, colour, rng);
            auto ch = link.open_run(i, 0);
            const RunAttempt a = execute_run(p, s, {}, *ch, rng);
            e.failures += failed_traps(p, s, a.transcript).empty() ? 0 : 1;
        }
        e.rate = static_cast<double>(e.failures) / static_cast<double>(trials);
        const stats::Interval ci = stats::wilson(e.failures, trials, confidence);
        e.lower = ci.lower;
        e.upper = ci.upper;
        out.per_colour.push_back(e);
    }
    out.p_min = out.rate_min = 1.0;
    for (const auto &e : out.per_colour) {
        out.p_min = std::min(out.p_min, e.lower);
        out.p_max = std::max(out.p_max, e.upper);
        out.rate_min = std::min(out.rate_min, e.rate);
        out.rate_max = std::max(out.rate_max, e.rate);
    }
    return out;
}

}  // namespace vbqc
