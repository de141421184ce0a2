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

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/hypergeometric.hpp>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "vbqc/bounds.hpp"

namespace vbqc::bounds {
namespace {

TEST(Exact, HandValues) {
    const auto pmf = exact::hypergeom_pmf(4, 2, 2);
    ASSERT_EQ(pmf.size(), 3u);
    EXPECT_NEAR(pmf[0], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(pmf[1], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(pmf[2], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(exact::binomial_cdf(2, 0.5, 1), 0.75, 1e-15);
    EXPECT_EQ(exact::hypergeom_cdf(50, 20, 10, 10), 1.0);
    EXPECT_EQ(exact::binomial_cdf(30, 0.3, 30), 1.0);
    EXPECT_EQ(exact::hypergeom_cdf(50, 20, 10, -1), 0.0);
    EXPECT_THROW(exact::hypergeom_pmf(20000, 10, 10), std::invalid_argument);
}

TEST(Exact, AgreesWithBoostAndOracle) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        const unsigned N = 1 + rng() % 300;
        const unsigned K = rng() % (N + 1);
        const unsigned n = rng() % (N + 1);
        const auto pmf = exact::hypergeom_pmf(N, K, n);
        boost::math::hypergeometric_distribution<double> h(K, n, N);
        const long long lo = std::max<long long>(0, static_cast<long long>(n) + K - N);
        const long long hi = std::min<unsigned>(n, K);
        for (long long j = lo; j <= hi; ++j) {
            const double ref = boost::math::pdf(h, static_cast<unsigned>(j));
            EXPECT_NEAR(pmf[static_cast<std::size_t>(j)], ref, 1e-12 + 1e-9 * ref);
            if (N <= 60) {
                EXPECT_NEAR(pmf[static_cast<std::size_t>(j)], static_cast<double>(oracle::hypergeom(N, K, n, j)),
                            1e-13);
            }
        }
        const unsigned bn = 1 + rng() % 200;
        const double p = (rng() % 1001) / 1000.0;
        boost::math::binomial_distribution<double> b(bn, p);
        const unsigned k = rng() % (bn + 1);
        EXPECT_NEAR(exact::binomial_cdf(bn, p, k), boost::math::cdf(b, k), 1e-11);
        EXPECT_NEAR(exact::binomial_upper(bn, p, k) + exact::binomial_cdf(bn, p, static_cast<long long>(k) - 1), 1.0,
                    1e-12);
    }
}

TEST(TailBounds, DominateExactTails) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked_lower = 0, checked_upper = 0, checked_binom = 0;
    while (checked_lower < 1000 || checked_upper < 1000) {
        const std::size_t N = 2 + rng() % 400;
        const std::size_t K = 1 + rng() % (N - 1);
        const std::size_t n = 1 + rng() % N;
        const double mean = static_cast<double>(n) * K / N;
        const double lam_lo = u(rng) * mean;
        if (lam_lo > 0.0 && lam_lo < mean && checked_lower < 1000) {
            EXPECT_GE(hypergeom_lower_tail_bound(N, K, n, lam_lo),
                      exact::hypergeom_cdf(N, K, n, static_cast<long long>(std::floor(lam_lo))) - 1e-12);
            ++checked_lower;
        }
        const double lam_hi = mean + u(rng) * (static_cast<double>(n) - mean);
        if (lam_hi > mean && checked_upper < 1000) {
            EXPECT_GE(hypergeom_upper_tail_bound(N, K, n, lam_hi),
                      exact::hypergeom_upper(N, K, n, static_cast<long long>(std::ceil(lam_hi))) - 1e-12);
            ++checked_upper;
        }
    }
    while (checked_binom < 2000) {
        const std::size_t n = 1 + rng() % 500;
        const double p = u(rng);
        const double mean = n * p;
        const double lo = u(rng) * mean, hi = mean + u(rng) * (n - mean);
        EXPECT_GE(binomial_tail_bound(n, p, lo, Side::Lower),
                  exact::binomial_cdf(n, p, static_cast<long long>(std::floor(lo))) - 1e-12);
        EXPECT_GE(binomial_tail_bound(n, p, hi, Side::Upper),
                  exact::binomial_upper(n, p, static_cast<long long>(std::ceil(hi))) - 1e-12);
        checked_binom += 2;
    }
}

TEST(TailBounds, SymmetryAndDomain) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const std::size_t N = 2 + rng() % 300, K = 1 + rng() % (N - 1), n = 1 + rng() % N;
        const double mean = static_cast<double>(n) * K / N;
        const double lam = mean * (0.01 + 0.98 * (rng() % 1000) / 1000.0);
        // X ~ HG(N, K, n) <= lam  iff  n - X ~ HG(N, N - K, n) >= n - lam.
        EXPECT_NEAR(hypergeom_lower_tail_bound(N, K, n, lam), hypergeom_upper_tail_bound(N, N - K, n, n - lam),
                    1e-12);
    }
    EXPECT_THROW(hypergeom_lower_tail_bound(10, 5, 4, 2.5), std::invalid_argument);
    EXPECT_THROW(hypergeom_upper_tail_bound(10, 5, 4, 1.0), std::invalid_argument);
    EXPECT_THROW(binomial_tail_bound(10, 0.5, 7.0, Side::Lower), std::invalid_argument);
}

TEST(Verifiability, GoldenPoint) {
    // n = 32, d = t = 16, k = 2, eps1 = eps2 = phi = 0.1:
    // max(e^-0.4, e^-0.4 + e^-0.096).
    const BoundValue v = verifiability_bound({32, 16, 16, 2, 0.1, 0.1, 0.1});
    EXPECT_NEAR(v.value, 1.5787840621043454, 1e-14);
    EXPECT_NEAR(v.log_computation_term, -0.4, 1e-14);
    EXPECT_NEAR(v.log_test_term_a, -0.4, 1e-14);
    EXPECT_NEAR(v.log_test_term_b, -0.096, 1e-14);
    EXPECT_NEAR(BoundParams({32, 16, 16, 2, 0.1, 0.1, 0.1}).omega(), 0.4 * 0.3, 1e-15);
}

TEST(Verifiability, DomainErrors) {
    EXPECT_THROW(verifiability_bound({32, 16, 15, 2, 0.1, 0.1, 0.1}), std::invalid_argument);
    EXPECT_THROW(verifiability_bound({32, 16, 16, 2, 0.0, 0.1, 0.1}), std::invalid_argument);
    EXPECT_THROW(verifiability_bound({32, 16, 16, 2, 0.1, 0.5, 0.1}), std::invalid_argument);
    EXPECT_THROW(verifiability_bound({32, 16, 16, 2, 0.3, 0.1, 0.2}), std::invalid_argument);
}

TEST(Verifiability, NonincreasingInN) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double e1 = 0.49 * u(rng), ph = (0.5 - e1) * u(rng), e2 = 0.5 * u(rng);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t n = 4; n <= 4096; n *= 2) {
            const double v = verifiability_bound({n, n / 2, n / 2, 2, e1, e2, ph}).log_value;
            EXPECT_LE(v, prev + 1e-12);
            prev = v;
        }
    }
}

TEST(Optimizer, MatchesIndependentOptimum) {
    // Minimum of the log bound found by an independent grid plus restarted
    // Nelder-Mead search on (phi, eps1), eps2 eliminated through omega.
    struct Case {
        std::size_t n, d;
        int k;
        double omega, log_opt;
    };
    const Case cases[] = {
        {1000, 500, 2, 0.1, -9.989707094988066},
        {200, 100, 2, 0.05, -3.8121353060813705},
        {2000, 1000, 4, 0.05, -9.302795981634578},
        {64, 32, 2, 0.1, -0.21724853950869522},
        {32, 16, 2, 0.1, 0.042551282143351576},
    };
    for (const auto &c : cases) {
        const auto b = optimize_verifiability_bound(c.n, c.d, c.n - c.d, c.k, c.omega);
        EXPECT_LE(b.log_epsilon, c.log_opt + 1e-9) << c.n;
        EXPECT_NEAR(b.log_epsilon, c.log_opt, 1e-6) << c.n;
        EXPECT_NEAR(b.argmin.omega(), c.omega, 1e-12);
        EXPECT_NEAR(verifiability_bound(b.argmin).log_value, b.log_epsilon, 1e-12);
        EXPECT_EQ(b.epsilon, std::min(1.0, std::exp(b.log_epsilon)));
    }
}

TEST(Optimizer, NeverWorseThanHandPickedPoints) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int i = 0; i < 300; ++i) {
        const int k = 2 + static_cast<int>(rng() % 3);
        const std::size_t n = 16 + rng() % 2000, d = 1 + rng() % (n - 1);
        const double e1 = 0.49 * u(rng), ph = (0.5 - e1) * u(rng), e2 = u(rng) / k;
        const BoundParams bp{n, d, n - d, k, e1, e2, ph};
        const double omega = bp.omega();
        const auto opt = optimize_verifiability_bound(n, d, n - d, k, omega);
        EXPECT_LE(opt.log_epsilon, verifiability_bound(bp).log_value + 1e-9);
    }
}

TEST(Optimizer, FeasibilityBoundary) {
    EXPECT_DOUBLE_EQ(omega_supremum(2), 0.25);
    EXPECT_DOUBLE_EQ(omega_supremum(4), 0.125);
    for (int k : {2, 4}) {
        const double sup = omega_supremum(k);
        try {
            optimize_verifiability_bound(100, 50, 50, k, sup);
            ADD_FAILURE() << "boundary accepted";
        } catch (const Infeasible &e) {
            EXPECT_STREQ(e.what(), "infeasible: omega >= 1/(2k)");
        }
        EXPECT_NO_THROW(optimize_verifiability_bound(100, 50, 50, k, std::nextafter(sup, 0.0)));
        EXPECT_THROW(optimize_verifiability_bound(100, 50, 50, k, 0.3), Infeasible);
    }
}

TEST(Robustness, Formulas) {
    EXPECT_NEAR(abort_probability_bound(0.2, 0.05, 0.5, 100), std::exp(-2.25), 1e-15);
    EXPECT_THROW(abort_probability_bound(0.2, 0.2, 0.5, 100), std::invalid_argument);
    RobustnessParams rp{0.0, 0.1, 0.2, 0.5, 0.5, 100};
    EXPECT_NEAR(correctness_epsilon(rp), std::exp(-1.0) + std::exp(-16.0), 1e-15);
    double prev = 2.0;
    for (std::size_t n = 10; n <= 1000; n += 10) {
        rp.n = n;
        const double e = correctness_epsilon(rp);
        EXPECT_LT(e, prev);
        prev = e;
    }
    prev = 2.0;
    rp.n = 100;
    for (double w = 0.11; w < 0.5; w += 0.01) {
        rp.omega = w;
        const double e = correctness_epsilon(rp);
        EXPECT_LT(e, prev);
        prev = e;
    }
    rp.omega = 0.05;
    EXPECT_THROW(correctness_epsilon(rp), std::invalid_argument);
    EXPECT_EQ(composable_epsilon(0.0), 0.0);
    EXPECT_LT(composable_epsilon(1e-6), composable_epsilon(2e-6));
}

TEST(Plan, GoldenAndLogarithmicGrowth) {
    // Golden value confirmed by the independent optimum at n = 15268 (above
    // log 1e-6) and n = 15269 (below).
    const auto r = min_n_for_target(1e-6, 0.5, 0.2, 2);
    EXPECT_EQ(r.n, 15269u);
    EXPECT_EQ(r.d, 7635u);
    EXPECT_LE(r.bound.epsilon, 1e-6);
    EXPECT_GT(optimize_verifiability_bound(15268, 7634, 7634, 2, 0.2).epsilon, 1e-6);

    EXPECT_EQ(min_n_for_target(1.0, 0.5, 0.2, 2).n, 2u);
    std::vector<std::size_t> ns;
    for (double eps = 1e-3; eps > 1e-9; eps /= 2) {
        ns.push_back(min_n_for_target(eps, 0.5, 0.1, 2).n);
    }
    for (std::size_t i = 2; i < ns.size(); ++i) {
        const double step = static_cast<double>(ns[i] - ns[i - 1]);
        EXPECT_NEAR(step, std::log(2.0) / 0.010497349914313775, 3.0) << i;
    }
    EXPECT_THROW(min_n_for_target(1e-6, 0.5, 0.25, 2), Infeasible);
}

}  // namespace
}  // namespace vbqc::bounds
