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
#include <cstdint>
#include <utility>
#include <vector>

namespace vbqc::stats {

struct ChiSquare {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Goodness of fit of `counts` against equal cell probabilities.
ChiSquare chi_square_uniform(const std::vector<std::size_t> &counts);
/// Pearson independence test on an r x c contingency table (row major).
ChiSquare chi_square_independence(const std::vector<std::vector<std::size_t>> &table);

struct Interval {
    double lower = 0.0;
    double upper = 1.0;
};
/// Wilson score interval for `successes` of `trials` at two-sided `confidence`.
Interval wilson(std::size_t successes, std::size_t trials, double confidence);

/// Area under the ROC curve via the Mann-Whitney statistic (ties count 1/2).
double auc(const std::vector<double> &positive_scores, const std::vector<double> &negative_scores);

/// Categorical naive Bayes with Laplace smoothing; features take values in
/// [0, cardinality).
class NaiveBayes {
  public:
    NaiveBayes(std::size_t features, std::size_t cardinality);
    void fit(const std::vector<std::vector<std::uint8_t>> &samples, const std::vector<int> &labels);
    /// log P(label = 1 | x) - log P(label = 0 | x), up to a constant.
    double score(const std::vector<std::uint8_t> &x) const;

  private:
    std::size_t features_, cardinality_;
    std::vector<double> log_prob_[2];  // [feature * cardinality + value]
    double log_prior_[2] = {0.0, 0.0};
};

/// Trains on the even-indexed samples, scores the odd-indexed ones, returns
/// the held-out AUC.
double holdout_auc(const std::vector<std::vector<std::uint8_t>> &samples, const std::vector<int> &labels,
                   std::size_t cardinality);

/// |p1 - p2| / standard error of the difference under independent binomials.
/// Returns 0 when both proportions are degenerate and equal.
double two_proportion_z(std::size_t s1, std::size_t n1, std::size_t s2, std::size_t n2);

/// Standard error of a binomial proportion estimate.
double binomial_se(double p, std::size_t n);

}  // namespace vbqc::stats
