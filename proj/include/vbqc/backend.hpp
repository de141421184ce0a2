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
#include <optional>
#include <vector>

#include "vbqc/angle.hpp"
#include "vbqc/rng.hpp"
#include "vbqc/statevector.hpp"

namespace vbqc {

class QuantumBackend;
struct OpaqueCodec;

/// A prepared qubit in transit from Client to Server. Its description is
/// private: only the backend that materializes it, and the wire codec that
/// carries it in simulation mode, can read it.
class OpaqueQubit {
  public:
    OpaqueQubit() = default;

  private:
    explicit OpaqueQubit(const PreparedQubit &q) : prepared_(q) {
    }
    PreparedQubit prepared_ = PlusTheta{};

    friend OpaqueQubit seal(const PreparedQubit &q);
    friend class QuantumBackend;
    friend struct OpaqueCodec;
};

OpaqueQubit seal(const PreparedQubit &q);

/// Server-owned simulator for one run. Qubits are loaded as opaque handles and
/// attached to the state vector only when first touched.
class QuantumBackend {
  public:
    QuantumBackend(std::uint64_t physics_seed, std::size_t cap = 16);

    /// Registers the qubit for `label`. Throws if the label was already used.
    void load(QubitLabel label, OpaqueQubit q);
    bool loaded(QubitLabel label) const;
    bool active(QubitLabel label) const;
    bool measured(QubitLabel label) const;

    /// Attaches a loaded qubit if needed. Returns true if it was attached now.
    bool touch(QubitLabel label);
    void cz(QubitLabel a, QubitLabel b);
    void pauli(QubitLabel label, Pauli p);
    void channel(QubitLabel label, const KrausChannel &ch);
    /// Pauli `p` expressed in the measurement frame of angle `delta`: X and Y
    /// flip the reported outcome, Z leaves it unchanged.
    void frame_pauli(QubitLabel label, Angle8 delta, Pauli p);
    Bit measure(QubitLabel label, Angle8 delta);

    std::size_t max_width() const {
        return state_.max_width_seen();
    }

  private:
    struct Slot {
        std::optional<PreparedQubit> prepared;
        bool measured = false;
    };
    Slot &slot(QubitLabel label);

    StateVector state_;
    Rng physics_;
    std::vector<Slot> slots_;
};

/// Matrix of a measurement-frame Pauli in the computational basis.
Mat2 frame_pauli_matrix(Angle8 delta, Pauli p);

}  // namespace vbqc
