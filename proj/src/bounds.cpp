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

#include "vbqc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace vbqc::bounds {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) {
        throw std::invalid_argument(msg);
    }
}

double log_add_exp(double a, double b) {
    const double hi = std::max(a, b);
    if (hi == -std::numeric_limits<double>::infinity()) {
        return hi;
    }
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

double hypergeom_lower_tail_bound(std::size_t N, std::size_t K, std::size_t n, double lambda) {
    require(K <= N && n <= N && N > 0, "hypergeometric parameters need K <= N and n <= N");
    const double mean = static_cast<double>(n) * K / N;
    require(lambda > 0.0 && lambda < mean, "lower tail needs 0 < lambda < nK/N");
    const double gap = static_cast<double>(K) / N - lambda / n;
    return std::exp(-2.0 * n * gap * gap);
}

double hypergeom_upper_tail_bound(std::size_t N, std::size_t K, std::size_t n, double lambda) {
    require(K <= N && n <= N && N > 0, "hypergeometric parameters need K <= N and n <= N");
    const double mean = static_cast<double>(n) * K / N;
    require(lambda > mean, "upper tail needs lambda > nK/N");
    const double gap = lambda / n - static_cast<double>(K) / N;
    return std::exp(-2.0 * n * gap * gap);
}

double binomial_tail_bound(std::size_t n, double p, double cutoff, Side side) {
    require(n > 0 && p >= 0.0 && p <= 1.0, "binomial parameters need n > 0 and p in [0, 1]");
    const double mean = n * p;
    if (side == Side::Lower) {
        require(cutoff <= mean, "lower tail needs cutoff <= np");
    } else {
        require(cutoff >= mean, "upper tail needs cutoff >= np");
    }
    const double gap = mean - cutoff;
    return std::exp(-2.0 * gap * gap / n);
}

namespace exact {

namespace {

constexpr std::size_t kMaxPopulation = 10000;

long double log_choose(std::size_t a, std::size_t b) {
    return std::lgamma(static_cast<long double>(a) + 1) - std::lgamma(static_cast<long double>(b) + 1) -
           std::lgamma(static_cast<long double>(a - b) + 1);
}

double tail_sum(const std::vector<double> &pmf, long long from, long long to) {
    from = std::max<long long>(from, 0);
    to = std::min<long long>(to, static_cast<long long>(pmf.size()) - 1);
    if (from > to) {
        return 0.0;
    }
    long double acc = 0.0L;
    for (long long i = from; i <= to; ++i) {
        acc += pmf[static_cast<std::size_t>(i)];
    }
    return static_cast<double>(std::min<long double>(acc, 1.0L));
}

}  // namespace

std::vector<double> hypergeom_pmf(std::size_t N, std::size_t K, std::size_t n) {
    require(N <= kMaxPopulation, "exact hypergeometric limited to N <= 10000");
    require(K <= N && n <= N, "hypergeometric parameters need K <= N and n <= N");
    std::vector<double> pmf(n + 1, 0.0);
    const std::size_t lo = n + K > N ? n + K - N : 0;
    const std::size_t hi = std::min(n, K);
    // Start at the lowest support point, then P(k+1)/P(k) =
    // (K-k)(n-k) / ((k+1)(N-K-n+k+1)).
    long double p = std::exp(log_choose(K, lo) + log_choose(N - K, n - lo) - log_choose(N, n));
    pmf[lo] = static_cast<double>(p);
    for (std::size_t k = lo; k < hi; ++k) {
        const long double num = static_cast<long double>(K - k) * static_cast<long double>(n - k);
        const long double den = static_cast<long double>(k + 1) * static_cast<long double>(N - K - n + k + 1);
        p = p * num / den;
        pmf[k + 1] = static_cast<double>(p);
    }
    return pmf;
}

double hypergeom_cdf(std::size_t N, std::size_t K, std::size_t n, long long k) {
    auto pmf = hypergeom_pmf(N, K, n);
    if (k >= static_cast<long long>(n)) {
        return 1.0;
    }
    return tail_sum(pmf, 0, k);
}

double hypergeom_upper(std::size_t N, std::size_t K, std::size_t n, long long k) {
    auto pmf = hypergeom_pmf(N, K, n);
    if (k <= 0) {
        return 1.0;
    }
    return tail_sum(pmf, k, static_cast<long long>(n));
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
    require(n <= kMaxPopulation, "exact binomial limited to n <= 10000");
    require(p >= 0.0 && p <= 1.0, "binomial needs p in [0, 1]");
    std::vector<double> pmf(n + 1, 0.0);
    if (p == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p == 1.0) {
        pmf[n] = 1.0;
        return pmf;
    }
    const long double lq = std::log1p(-static_cast<long double>(p));
    long double prob = std::exp(static_cast<long double>(n) * lq);
    pmf[0] = static_cast<double>(prob);
    const long double ratio = static_cast<long double>(p) / (1.0L - static_cast<long double>(p));
    for (std::size_t k = 0; k < n; ++k) {
        prob = prob * static_cast<long double>(n - k) / static_cast<long double>(k + 1) * ratio;
        pmf[k + 1] = static_cast<double>(prob);
    }
    return pmf;
}

double binomial_cdf(std::size_t n, double p, long long k) {
    if (k >= static_cast<long long>(n)) {
        return 1.0;
    }
    return tail_sum(binomial_pmf(n, p), 0, k);
}

double binomial_upper(std::size_t n, double p, long long k) {
    if (k <= 0) {
        return 1.0;
    }
    return tail_sum(binomial_pmf(n, p), k, static_cast<long long>(n));
}

}  // namespace exact

double BoundParams::omega() const {
    return (1.0 / k - eps2) * (0.5 - phi - eps1);
}

void BoundParams::validate() const {
    require(n > 0 && d + t == n, "bound needs n = d + t > 0");
    require(k >= 1, "bound needs k >= 1");
    require(eps1 > 0.0 && eps1 < 0.5, "need 0 < eps1 < 1/2");
    require(eps2 > 0.0 && eps2 < 1.0 / k, "need 0 < eps2 < 1/k");
    require(phi > 0.0 && phi < 0.5 - eps1, "need 0 < phi < 1/2 - eps1");
}

BoundValue verifiability_bound(const BoundParams &p) {
    p.validate();
    const double n = static_cast<double>(p.n), d = static_cast<double>(p.d), t = static_cast<double>(p.t);
    const double h = 0.5 - p.phi;
    BoundValue b;
    b.log_computation_term = -2.0 * (p.phi * p.phi / h) * (d * d / n);
    b.log_test_term_a = -2.0 * (t * t / (h * n)) * p.eps1 * p.eps1;
    b.log_test_term_b = -2.0 * t * (h - p.eps1) * p.eps2 * p.eps2;
    b.log_value = std::max(b.log_computation_term, log_add_exp(b.log_test_term_a, b.log_test_term_b));
    b.value = std::exp(b.log_value);
    return b;
}

double omega_supremum(int k) {
    require(k >= 1, "need k >= 1");
    return 1.0 / (2.0 * k);
}

namespace {

// Feasible triple from phi in (0, L) and eps1 in (0, L - phi), L = 1/2 - k omega.
BoundParams point(std::size_t n, std::size_t d, std::size_t t, int k, double omega, double phi, double eps1) {
    BoundParams bp;
    bp.n = n;
    bp.d = d;
    bp.t = t;
    bp.k = k;
    bp.phi = phi;
    bp.eps1 = eps1;
    bp.eps2 = 1.0 / k - omega / (0.5 - phi - eps1);
    return bp;
}

// Grid scan of the open interval followed by golden-section refinement in the
// bracket around the best grid point. Returns (argmin, value).
template <class F>
std::pair<double, double> minimize_1d(F f, double lo, double hi) {
    constexpr int kGrid = 96;
    const double h = (hi - lo) / (kGrid + 1);
    int best_i = 1;
    double best_v = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= kGrid; ++i) {
        const double v = f(lo + i * h);
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    double a = lo + (best_i - 1) * h, b = lo + (best_i + 1) * h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double best_x = lo + best_i * h;
    while (b - a > 1e-13 * std::max(1.0, std::abs(b))) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
        if (f1 < best_v) {
            best_v = f1;
            best_x = x1;
        }
        if (f2 < best_v) {
            best_v = f2;
            best_x = x2;
        }
    }
    return {best_x, best_v};
}

}  // namespace

OptimizedBound optimize_verifiability_bound(std::size_t n, std::size_t d, std::size_t t, int k, double omega) {
    require(k >= 1, "need k >= 1");
    require(n > 0 && d + t == n, "need n = d + t > 0");
    if (!(omega < omega_supremum(k))) {
        throw Infeasible("infeasible: omega >= 1/(2k)");
    }
    if (!(omega > 0.0)) {
        throw Infeasible("infeasible: omega must be positive");
    }
    OptimizedBound best;
    const double L = 0.5 - k * omega;
    auto eval = [&](double phi, double eps1) {
        ++best.evaluations;
        try {
            return verifiability_bound(point(n, d, t, k, omega, phi, eps1)).log_value;
        } catch (const std::invalid_argument &) {
            return std::numeric_limits<double>::infinity();
        }
    };
    auto inner = [&](double phi) {
        return minimize_1d([&](double eps1) { return eval(phi, eps1); }, 0.0, L - phi);
    };
    const auto [phi, log_eps] = minimize_1d([&](double phi) { return inner(phi).second; }, 0.0, L);
    best.argmin = point(n, d, t, k, omega, phi, inner(phi).first);
    best.log_epsilon = log_eps;
    best.epsilon = std::min(1.0, std::exp(log_eps));
    return best;
}

double composable_epsilon(double eps_ver) {
    require(eps_ver >= 0.0, "eps_ver must be nonnegative");
    return 4.0 * std::sqrt(2.0 * eps_ver);
}

double correctness_epsilon(const RobustnessParams &rp) {
    require(rp.p_max < 0.5, "need p_max < 1/2");
    require(rp.omega > rp.p_max, "need omega > p_max");
    const double n = static_cast<double>(rp.n);
    const double a = rp.omega - rp.p_max, b = 0.5 - rp.p_max;
    return std::exp(-2.0 * a * a * rp.tau * n) + std::exp(-2.0 * b * b * rp.delta_ratio * n);
}

double abort_probability_bound(double p_min, double omega, double tau, std::size_t n) {
    require(omega < p_min, "need omega < p_min");
    const double a = p_min - omega;
    return std::exp(-2.0 * a * a * tau * static_cast<double>(n));
}

PlanResult min_n_for_target(double eps_target, double delta_ratio, double omega, int k) {
    require(eps_target > 0.0 && eps_target <= 1.0, "target must lie in (0, 1]");
    require(delta_ratio > 0.0 && delta_ratio < 1.0, "d/n must lie in (0, 1)");
    if (!(omega > 0.0 && omega < omega_supremum(k))) {
        throw Infeasible("infeasible: omega >= 1/(2k)");
    }
    auto at = [&](std::size_t n) -> std::optional<PlanResult> {
        auto d = static_cast<std::size_t>(std::llround(delta_ratio * static_cast<double>(n)));
        if (d == 0 || d >= n) {
            return std::nullopt;
        }
        PlanResult r;
        r.n = n;
        r.d = d;
        r.t = n - d;
        r.bound = optimize_verifiability_bound(n, d, n - d, k, omega);
        return r;
    };
    auto ok = [&](std::size_t n) {
        auto r = at(n);
        return r && r->bound.epsilon <= eps_target;
    };
    std::size_t lo = 1;  // largest n known to fail (n = 1 has no valid split)
    std::size_t hi = 2;
    while (!ok(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > (std::size_t{1} << 40)) {
            throw std::runtime_error("target not reachable");
        }
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (ok(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return *at(hi);
}

}  // namespace vbqc::bounds
