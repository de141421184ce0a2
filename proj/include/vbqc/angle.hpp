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
#include <numbers>
#include <string>

namespace vbqc {

using Bit = std::uint8_t;
using VertexIndex = std::uint32_t;

/// Multiple of pi/4, stored exactly as an integer mod 8.
class Angle8 {
  public:
    constexpr Angle8() = default;
    /// Reduces any integer mod 8.
    constexpr explicit Angle8(int eighths) : value_(static_cast<std::uint8_t>(((eighths % 8) + 8) % 8)) {
    }

    /// Throws std::out_of_range unless 0 <= v <= 7.
    static Angle8 checked(long long v);

    static constexpr Angle8 pi() {
        return Angle8(4);
    }
    /// k * pi for a bit k.
    static constexpr Angle8 pi_times(Bit k) {
        return Angle8(4 * (k & 1));
    }

    constexpr std::uint8_t value() const {
        return value_;
    }
    double radians() const {
        return value_ * std::numbers::pi / 4.0;
    }

    constexpr Angle8 operator-() const {
        return Angle8(8 - value_);
    }
    constexpr Angle8 &operator+=(Angle8 o) {
        value_ = static_cast<std::uint8_t>((value_ + o.value_) & 7);
        return *this;
    }
    friend constexpr Angle8 operator+(Angle8 a, Angle8 b) {
        return a += b;
    }
    friend constexpr Angle8 operator-(Angle8 a, Angle8 b) {
        return a + (-b);
    }
    friend constexpr bool operator==(Angle8, Angle8) = default;

    std::string str() const;

  private:
    std::uint8_t value_ = 0;
};

/// (-1)^s * a, the sign flip applied by an X byproduct.
constexpr Angle8 signed_by(Bit s, Angle8 a) {
    return (s & 1) ? -a : a;
}

}  // namespace vbqc
