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

#include "vbqc/angle.hpp"

#include <stdexcept>

namespace vbqc {

Angle8 Angle8::checked(long long v) {
    if (v < 0 || v > 7) {
        throw std::out_of_range("angle must be an integer in 0..7 (units of pi/4), got " + std::to_string(v));
    }
    return Angle8(static_cast<int>(v));
}

std::string Angle8::str() const {
    return std::to_string(value_) + "pi/4";
}

}  // namespace vbqc
