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

#include "vbqc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace vbqc::stats {

namespace {

double chi2_survival(double x, double dof) {
    if (dof <= 0.0) {
        return 1.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), x));
}

}  // namespace

ChiSquare chi_square_uniform(const std::vector<std::size_t> &counts) {
    if (counts.size() < 2) {
        throw std::invalid_argument("chi-square needs at least two cells");
    }
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    if (total == 0.0) {
        throw std::invalid_argument("chi-square needs observations");
    }
    const double expected = total / static_cast<double>(counts.size());
    ChiSquare r;
    for (std::size_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        r.statistic += diff * diff / expected;
    }
    r.dof = static_cast<double>(counts.size() - 1);
    r.p_value = chi2_survival(r.statistic, r.dof);
    return r;
}

ChiSquare chi_square_independence(const std::vector<std::vector<std::size_t>> &table) {
    const std::size_t rows = table.size();
    if (rows < 2) {
        throw std::invalid_argument("independence test needs at least two rows");
    }
    const std::size_t cols = table[0].size();
    std::vector<double> rsum(rows, 0.0), csum(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (table[i].size() != cols) {
            throw std::invalid_argument("ragged contingency table");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            rsum[i] += static_cast<double>(table[i][j]);
            csum[j] += static_cast<double>(table[i][j]);
            total += static_cast<double>(table[i][j]);
        }
    }
    ChiSquare r;
    std::size_t live_rows = 0, live_cols = 0;
    for (double v : rsum) {
        live_rows += v > 0.0;
    }
    for (double v : csum) {
        live_cols += v > 0.0;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double e = rsum[i] * csum[j] / total;
            if (e > 0.0) {
                const double diff = static_cast<double>(table[i][j]) - e;
                r.statistic += diff * diff / e;
            }
        }
    }
    r.dof = live_rows > 1 && live_cols > 1 ? static_cast<double>((live_rows - 1) * (live_cols - 1)) : 0.0;
    r.p_value = chi2_survival(r.statistic, r.dof);
    return r;
}

Interval wilson(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double auc(const std::vector<double> &pos, const std::vector<double> &neg) {
    if (pos.empty() || neg.empty()) {
        throw std::invalid_argument("AUC needs both classes");
    }
    std::vector<std::pair<double, int>> all;
    all.reserve(pos.size() + neg.size());
    for (double s : pos) {
        all.emplace_back(s, 1);
    }
    for (double s : neg) {
        all.emplace_back(s, 0);
    }
    std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    // Midranks over tied blocks.
    double rank_sum = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) {
            ++j;
        }
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t m = i; m < j; ++m) {
            if (all[m].second == 1) {
                rank_sum += mid;
            }
        }
        i = j;
    }
    const double np = static_cast<double>(pos.size()), nn = static_cast<double>(neg.size());
    return (rank_sum - np * (np + 1) / 2.0) / (np * nn);
}

NaiveBayes::NaiveBayes(std::size_t features, std::size_t cardinality) : features_(features), cardinality_(cardinality) {
    for (auto &lp : log_prob_) {
        lp.assign(features * cardinality, 0.0);
    }
}

void NaiveBayes::fit(const std::vector<std::vector<std::uint8_t>> &samples, const std::vector<int> &labels) {
    if (samples.size() != labels.size()) {
        throw std::invalid_argument("samples and labels differ in length");
    }
    std::vector<double> counts[2];
    double class_count[2] = {0.0, 0.0};
    for (auto &c : counts) {
        c.assign(features_ * cardinality_, 1.0);  // Laplace
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const int y = labels[i] ? 1 : 0;
        class_count[y] += 1.0;
        for (std::size_t f = 0; f < features_; ++f) {
            counts[y][f * cardinality_ + samples[i].at(f)] += 1.0;
        }
    }
    for (int y = 0; y < 2; ++y) {
        const double denom = class_count[y] + static_cast<double>(cardinality_);
        for (std::size_t f = 0; f < features_; ++f) {
            for (std::size_t v = 0; v < cardinality_; ++v) {
                log_prob_[y][f * cardinality_ + v] = std::log(counts[y][f * cardinality_ + v] / denom);
            }
        }
        log_prior_[y] = std::log((class_count[y] + 1.0) / (static_cast<double>(samples.size()) + 2.0));
    }
}

double NaiveBayes::score(const std::vector<std::uint8_t> &x) const {
    double s = log_prior_[1] - log_prior_[0];
    for (std::size_t f = 0; f < features_; ++f) {
        const std::size_t idx = f * cardinality_ + x.at(f);
        s += log_prob_[1][idx] - log_prob_[0][idx];
    }
    return s;
}

double holdout_auc(const std::vector<std::vector<std::uint8_t>> &samples, const std::vector<int> &labels,
                   std::size_t cardinality) {
    if (samples.empty()) {
        throw std::invalid_argument("no samples");
    }
    std::vector<std::vector<std::uint8_t>> train;
    std::vector<int> train_labels;
    for (std::size_t i = 0; i < samples.size(); i += 2) {
        train.push_back(samples[i]);
        train_labels.push_back(labels[i]);
    }
    NaiveBayes nb(samples[0].size(), cardinality);
    nb.fit(train, train_labels);
    std::vector<double> pos, neg;
    for (std::size_t i = 1; i < samples.size(); i += 2) {
        (labels[i] ? pos : neg).push_back(nb.score(samples[i]));
    }
    return auc(pos, neg);
}

double binomial_se(double p, std::size_t n) {
    return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double two_proportion_z(std::size_t s1, std::size_t n1, std::size_t s2, std::size_t n2) {
    if (n1 == 0 || n2 == 0) {
        throw std::invalid_argument("proportions need nonzero sample sizes");
    }
    const double p1 = static_cast<double>(s1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(s2) / static_cast<double>(n2);
    const double se = std::sqrt(binomial_se(p1, n1) * binomial_se(p1, n1) + binomial_se(p2, n2) * binomial_se(p2, n2));
    if (se == 0.0) {
        return p1 == p2 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::abs(p1 - p2) / se;
}

}  // namespace vbqc::stats
