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
#include <string>

namespace vbqc {

/// Run counts for one protocol execution: n = d + t, abort iff c_fail >= w.
struct ProtocolParams {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t t = 0;
    std::size_t w = 0;
    int k = 1;

    /// Throws std::invalid_argument unless n = d + t, 0 < d < n, w <= t, k >= 1.
    static ProtocolParams make(std::size_t n, std::size_t d, std::size_t w, int k);
    /// d = round(delta_ratio * n), t = n - d, w = ceil(omega * t).
    static ProtocolParams from_ratios(std::size_t n, double delta_ratio, double omega, int k);

    void validate() const;
    double delta_ratio() const {
        return static_cast<double>(d) / static_cast<double>(n);
    }
    double tau() const {
        return static_cast<double>(t) / static_cast<double>(n);
    }
    double omega() const {
        return t == 0 ? 0.0 : static_cast<double>(w) / static_cast<double>(t);
    }
    /// w/t < 1/(2k). Recorded only; never enforced.
    bool secure_regime() const {
        return 2 * static_cast<std::size_t>(k) * w < t;
    }
    std::string str() const;
};

/// Smallest integer w with w >= omega * t (up to a 1e-9 slack for ratios
/// that are exact in decimal but not in binary).
std::size_t threshold_from_omega(double omega, std::size_t t);

}  // namespace vbqc
