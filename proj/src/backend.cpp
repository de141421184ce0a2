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

#include "vbqc/backend.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vbqc {

OpaqueQubit seal(const PreparedQubit &q) {
    return OpaqueQubit(q);
}

QuantumBackend::QuantumBackend(std::uint64_t physics_seed, std::size_t cap) : state_(cap), physics_(physics_seed) {
}

QuantumBackend::Slot &QuantumBackend::slot(QubitLabel label) {
    if (label >= slots_.size() || !slots_[label].prepared) {
        throw std::invalid_argument("qubit " + std::to_string(label) + " was never loaded");
    }
    return slots_[label];
}

void QuantumBackend::load(QubitLabel label, OpaqueQubit q) {
    if (label >= slots_.size()) {
        slots_.resize(label + 1);
    }
    if (slots_[label].prepared) {
        throw std::invalid_argument("qubit " + std::to_string(label) + " loaded twice");
    }
    slots_[label].prepared = q.prepared_;
}

bool QuantumBackend::loaded(QubitLabel label) const {
    return label < slots_.size() && slots_[label].prepared.has_value();
}

bool QuantumBackend::active(QubitLabel label) const {
    return state_.is_active(label);
}

bool QuantumBackend::measured(QubitLabel label) const {
    return loaded(label) && slots_[label].measured;
}

bool QuantumBackend::touch(QubitLabel label) {
    Slot &s = slot(label);
    if (s.measured) {
        throw std::logic_error("qubit " + std::to_string(label) + " was already measured");
    }
    if (state_.is_active(label)) {
        return false;
    }
    state_.attach(label, *s.prepared);
    return true;
}

void QuantumBackend::cz(QubitLabel a, QubitLabel b) {
    touch(a);
    touch(b);
    state_.apply_cz(a, b);
}

void QuantumBackend::pauli(QubitLabel label, Pauli p) {
    touch(label);
    state_.apply_pauli(label, p);
}

void QuantumBackend::channel(QubitLabel label, const KrausChannel &ch) {
    touch(label);
    const QubitLabel one[1] = {label};
    state_.apply_channel(one, ch, physics_);
}

Mat2 frame_pauli_matrix(Angle8 delta, Pauli p) {
    // R = H diag(1, e^{-i delta}) maps |+_delta> to |0>; the physical operator
    // is R^dagger P R.
    const double s = 1.0 / std::sqrt(2.0);
    const Complex e = phase8(delta);
    const Complex ec = std::conj(e);
    const Mat2 r = {s, s * ec, s, -s * ec};
    const Mat2 rd = {std::conj(r[0]), std::conj(r[2]), std::conj(r[1]), std::conj(r[3])};
    const Mat2 pm = pauli_matrix(p);
    auto mul = [](const Mat2 &a, const Mat2 &b) {
        return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                    a[2] * b[1] + a[3] * b[3]};
    };
    return mul(rd, mul(pm, r));
}

void QuantumBackend::frame_pauli(QubitLabel label, Angle8 delta, Pauli p) {
    touch(label);
    if (p != Pauli::I) {
        state_.apply_unitary(label, frame_pauli_matrix(delta, p));
    }
}

Bit QuantumBackend::measure(QubitLabel label, Angle8 delta) {
    touch(label);
    Bit b = state_.measure_rotated(label, delta, physics_);
    slot(label).measured = true;
    return b;
}

}  // namespace vbqc
