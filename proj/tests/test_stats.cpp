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

#include <random>

#include "vbqc/stats.hpp"

namespace vbqc::stats {
namespace {

TEST(Stats, ChiSquareUniform) {
    const auto perfect = chi_square_uniform({100, 100, 100, 100});
    EXPECT_EQ(perfect.statistic, 0.0);
    EXPECT_EQ(perfect.dof, 3.0);
    EXPECT_NEAR(perfect.p_value, 1.0, 1e-12);
    EXPECT_NEAR(chi_square_uniform({30, 70}).statistic, 16.0, 1e-12);
    // Statistic 4 on 1 dof: p = erfc(sqrt(2)).
    EXPECT_NEAR(chi_square_uniform({40, 60}).p_value, std::erfc(std::sqrt(2.0)), 1e-9);
}

TEST(Stats, ChiSquareIndependence) {
    const auto r = chi_square_independence({{10, 20}, {20, 40}});
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_EQ(r.dof, 1.0);
    EXPECT_LT(chi_square_independence({{100, 0}, {0, 100}}).p_value, 1e-10);
}

TEST(Stats, WilsonInterval) {
    // 0 successes in 1000 at 99%: upper = z^2 / (n + z^2).
    const double z = 2.5758293035489004;
    const auto w0 = wilson(0, 1000, 0.99);
    EXPECT_EQ(w0.lower, 0.0);
    EXPECT_NEAR(w0.upper, z * z / (1000 + z * z), 1e-12);
    const auto w = wilson(100, 1000, 0.99);
    EXPECT_LT(w.lower, 0.1);
    EXPECT_GT(w.upper, 0.1);
    const auto empty = wilson(0, 0, 0.99);
    EXPECT_EQ(empty.lower, 0.0);
    EXPECT_EQ(empty.upper, 1.0);
}

TEST(Stats, AucAndNaiveBayes) {
    EXPECT_EQ(auc({2, 3}, {0, 1}), 1.0);
    EXPECT_EQ(auc({0, 1}, {2, 3}), 0.0);
    EXPECT_EQ(auc({1, 1}, {1, 1}), 0.5);
    std::mt19937_64 rng(1);
    std::vector<std::vector<std::uint8_t>> xs;
    std::vector<int> ys;
    for (int i = 0; i < 4000; ++i) {
        const int y = static_cast<int>(rng() & 1);
        std::vector<std::uint8_t> x(3);
        for (auto &f : x) f = static_cast<std::uint8_t>(rng() % 4);
        if (y && rng() % 2) x[1] = 3;  // informative feature
        xs.push_back(x);
        ys.push_back(y);
    }
    EXPECT_GT(holdout_auc(xs, ys, 4), 0.6);
    for (auto &x : xs) x[1] = static_cast<std::uint8_t>(rng() % 4);
    EXPECT_NEAR(holdout_auc(xs, ys, 4), 0.5, 0.05);
}

TEST(Stats, TwoProportion) {
    EXPECT_EQ(two_proportion_z(50, 100, 50, 100), 0.0);
    EXPECT_GT(std::abs(two_proportion_z(10, 1000, 100, 1000)), 5.0);
    EXPECT_NEAR(binomial_se(0.5, 100), 0.05, 1e-15);
}

}  // namespace
}  // namespace vbqc::stats
