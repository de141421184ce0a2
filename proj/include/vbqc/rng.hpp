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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vbqc {

/// Engine used for every random draw. Always passed explicitly.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of a child substream identified by `parts` under `parent`.
/// Order-sensitive: derive_seed(s, {1, 2}) != derive_seed(s, {2, 1}).
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix64(parent);
    for (std::uint64_t p : parts) {
        h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

// Domain tags keep client, server and harness substreams apart.
namespace stream {
inline constexpr std::uint64_t kTrial = 0x7472;
inline constexpr std::uint64_t kProtocol = 0x7072;
inline constexpr std::uint64_t kRun = 0x7275;
inline constexpr std::uint64_t kClient = 0x636c;
inline constexpr std::uint64_t kPhysics = 0x7068;
inline constexpr std::uint64_t kServer = 0x7376;
}  // namespace stream

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return derive_seed(master, {stream::kTrial, trial});
}

inline std::uint64_t run_seed(std::uint64_t trial, std::uint64_t run, std::uint64_t attempt) {
    return derive_seed(trial, {stream::kRun, run, attempt});
}

inline bool random_bit(Rng &rng) {
    return (rng() >> 63) != 0;
}

inline double uniform01(Rng &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace vbqc
