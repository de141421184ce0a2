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
#include <stdexcept>
#include <vector>

namespace vbqc::bounds {

/// exp(-2n (K/N - lambda/n)^2) for Pr[X <= lambda], X ~ Hypergeometric(N, K, n).
/// Throws std::invalid_argument unless 0 < lambda < nK/N.
double hypergeom_lower_tail_bound(std::size_t N, std::size_t K, std::size_t n, double lambda);
/// exp(-2n (lambda/n - K/N)^2) for Pr[X >= lambda].
/// Throws std::invalid_argument unless lambda > nK/N.
double hypergeom_upper_tail_bound(std::size_t N, std::size_t K, std::size_t n, double lambda);

enum class Side { Lower, Upper };
/// exp(-2 (np - cutoff)^2 / n) for Pr[X <= cutoff] (Lower, cutoff <= np) or
/// Pr[X >= cutoff] (Upper, cutoff >= np), X ~ Binomial(n, p).
double binomial_tail_bound(std::size_t n, double p, double cutoff, Side side);

/// Exact oracles by stable summation. Reject N > 10^4.
namespace exact {
/// Pr[X = k] for k = 0..n.
std::vector<double> hypergeom_pmf(std::size_t N, std::size_t K, std::size_t n);
double hypergeom_cdf(std::size_t N, std::size_t K, std::size_t n, long long k);    // Pr[X <= k]
double hypergeom_upper(std::size_t N, std::size_t K, std::size_t n, long long k);  // Pr[X >= k]
std::vector<double> binomial_pmf(std::size_t n, double p);
double binomial_cdf(std::size_t n, double p, long long k);    // Pr[X <= k]
double binomial_upper(std::size_t n, double p, long long k);  // Pr[X >= k]
}  // namespace exact

struct BoundParams {
    std::size_t n = 0, d = 0, t = 0;
    int k = 2;
    double eps1 = 0.0, eps2 = 0.0, phi = 0.0;

    /// (1/k - eps2)(1/2 - phi - eps1)
    double omega() const;
    /// Throws std::invalid_argument when 0 < eps1 < 1/2, 0 < eps2 < 1/k,
    /// 0 < phi < 1/2 - eps1 or n = d + t fails.
    void validate() const;
};

struct BoundValue {
    double value = 0.0;      // as printed; may exceed 1
    double log_value = 0.0;  // natural log of value
    double log_computation_term = 0.0;  // first branch of the max
    double log_test_term_a = 0.0;       // first summand of the second branch
    double log_test_term_b = 0.0;       // second summand
};

/// max{exp(-2 phi^2/(1/2 - phi) d^2/n),
///     exp(-2 t^2/((1/2 - phi) n) eps1^2) + exp(-2 t (1/2 - phi - eps1) eps2^2)}
BoundValue verifiability_bound(const BoundParams &p);

class Infeasible : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct OptimizedBound {
    double epsilon = 1.0;      // min(1, exp(log_epsilon))
    double log_epsilon = 0.0;  // unclipped
    BoundParams argmin;
    std::size_t evaluations = 0;
};

/// Minimizes verifiability_bound over (eps1, eps2, phi) tied to omega by
/// eliminating eps2. Deterministic nested grid and golden-section search.
/// Throws Infeasible unless 0 < omega < 1/(2k).
OptimizedBound optimize_verifiability_bound(std::size_t n, std::size_t d, std::size_t t, int k, double omega);

/// Supremum of feasible omega, 1/(2k).
double omega_supremum(int k);

/// 4 sqrt(2 eps_ver)
double composable_epsilon(double eps_ver);

struct RobustnessParams {
    double p_min = 0.0, p_max = 0.0;
    double omega = 0.0;
    double tau = 0.5;
    double delta_ratio = 0.5;
    std::size_t n = 0;
};

/// exp(-2 (omega - p_max)^2 tau n) + exp(-2 (1/2 - p_max)^2 delta n).
/// Throws std::invalid_argument unless omega > p_max and p_max < 1/2.
double correctness_epsilon(const RobustnessParams &rp);
/// exp(-2 (p_min - omega)^2 tau n). Throws unless omega < p_min.
double abort_probability_bound(double p_min, double omega, double tau, std::size_t n);

struct PlanResult {
    std::size_t n = 0, d = 0, t = 0;
    OptimizedBound bound;
};

/// Smallest n (d = round(delta_ratio n), t = n - d) whose optimized bound is at
/// most eps_target. Throws Infeasible for omega >= 1/(2k).
PlanResult min_n_for_target(double eps_target, double delta_ratio, double omega, int k);

}  // namespace vbqc::bounds
