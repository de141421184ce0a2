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

#include "vbqc/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vbqc {

std::size_t threshold_from_omega(double omega, std::size_t t) {
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw std::invalid_argument("omega must lie in [0, 1]");
    }
    return static_cast<std::size_t>(std::ceil(omega * static_cast<double>(t) - 1e-9));
}

ProtocolParams ProtocolParams::make(std::size_t n, std::size_t d, std::size_t w, int k) {
    ProtocolParams p;
    p.n = n;
    p.d = d;
    p.t = d <= n ? n - d : 0;
    p.w = w;
    p.k = k;
    p.validate();
    return p;
}

ProtocolParams ProtocolParams::from_ratios(std::size_t n, double delta_ratio, double omega, int k) {
    if (!(delta_ratio > 0.0 && delta_ratio < 1.0)) {
        throw std::invalid_argument("d/n must lie in (0, 1)");
    }
    auto d = static_cast<std::size_t>(std::llround(delta_ratio * static_cast<double>(n)));
    d = std::max<std::size_t>(1, std::min(d, n - 1));
    return make(n, d, threshold_from_omega(omega, n - d), k);
}

void ProtocolParams::validate() const {
    if (d == 0 || d >= n) {
        throw std::invalid_argument("need 0 < d < n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
    if (d + t != n) {
        throw std::invalid_argument("need n = d + t");
    }
    if (w > t) {
        throw std::invalid_argument("need w <= t");
    }
    if (k < 1) {
        throw std::invalid_argument("need k >= 1");
    }
}

std::string ProtocolParams::str() const {
    return "n=" + std::to_string(n) + " d=" + std::to_string(d) + " t=" + std::to_string(t) +
           " w=" + std::to_string(w) + " k=" + std::to_string(k);
}

}  // namespace vbqc
