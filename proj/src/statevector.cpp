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

#include "vbqc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vbqc {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

Complex phase8(Angle8 a) {
    static const Complex table[8] = {
        {1.0, 0.0}, {kInvSqrt2, kInvSqrt2}, {0.0, 1.0}, {-kInvSqrt2, kInvSqrt2},
        {-1.0, 0.0}, {-kInvSqrt2, -kInvSqrt2}, {0.0, -1.0}, {kInvSqrt2, -kInvSqrt2},
    };
    return table[a.value()];
}

char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

Pauli parse_pauli(const std::string &s) {
    if (s == "I") {
        return Pauli::I;
    }
    if (s == "X") {
        return Pauli::X;
    }
    if (s == "Y") {
        return Pauli::Y;
    }
    if (s == "Z") {
        return Pauli::Z;
    }
    throw std::invalid_argument("unknown Pauli '" + s + "'");
}

Mat2 pauli_matrix(Pauli p) {
    const Complex o(0, 0), l(1, 0), i(0, 1);
    switch (p) {
    case Pauli::I:
        return {l, o, o, l};
    case Pauli::X:
        return {o, l, l, o};
    case Pauli::Y:
        return {o, -i, i, o};
    case Pauli::Z:
        return {l, o, o, -l};
    }
    return {l, o, o, l};
}

KrausChannel::KrausChannel(std::size_t qubits, std::vector<std::vector<Complex>> operators)
    : qubits_(qubits), ops_(std::move(operators)) {
    const std::size_t d = dim();
    if (ops_.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    for (const auto &k : ops_) {
        if (k.size() != d * d) {
            throw std::invalid_argument("Kraus operator has wrong shape");
        }
    }
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            Complex acc = 0;
            for (const auto &k : ops_) {
                for (std::size_t m = 0; m < d; ++m) {
                    acc += std::conj(k[m * d + r]) * k[m * d + c];
                }
            }
            Complex expect = r == c ? 1.0 : 0.0;
            if (std::abs(acc - expect) > kTolerance) {
                throw std::invalid_argument("Kraus operators are not complete");
            }
        }
    }
}

KrausChannel KrausChannel::identity(std::size_t qubits) {
    const std::size_t d = std::size_t{1} << qubits;
    std::vector<Complex> id(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        id[i * d + i] = 1.0;
    }
    return KrausChannel(qubits, {id});
}

KrausChannel KrausChannel::pauli_mixture(double pi, double px, double py, double pz) {
    for (double q : {pi, px, py, pz}) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::invalid_argument("Pauli probabilities must lie in [0, 1]");
        }
    }
    std::vector<std::vector<Complex>> ops;
    const Pauli ps[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    const double ws[4] = {pi, px, py, pz};
    for (int j = 0; j < 4; ++j) {
        if (ws[j] == 0.0) {
            continue;
        }
        Mat2 m = pauli_matrix(ps[j]);
        double s = std::sqrt(ws[j]);
        ops.push_back({m[0] * s, m[1] * s, m[2] * s, m[3] * s});
    }
    return KrausChannel(1, std::move(ops));
}

KrausChannel KrausChannel::depolarizing(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing parameter must lie in [0, 1]");
    }
    return pauli_mixture(1.0 - 0.75 * p, p / 4, p / 4, p / 4);
}

StateVector::StateVector(std::size_t cap) : cap_(cap) {
}

bool StateVector::is_active(QubitLabel label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t StateVector::position(QubitLabel label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("qubit " + std::to_string(label) + " is not active");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::attach(QubitLabel label, const PreparedQubit &q) {
    if (is_active(label)) {
        throw std::invalid_argument("qubit " + std::to_string(label) + " is already active");
    }
    if (labels_.size() >= cap_) {
        throw std::length_error("state vector cap of " + std::to_string(cap_) + " qubits exceeded");
    }
    Complex c0, c1;
    if (const auto *p = std::get_if<PlusTheta>(&q)) {
        c0 = kInvSqrt2;
        c1 = kInvSqrt2 * phase8(p->theta);
    } else {
        Bit b = std::get<DummyState>(q).bit & 1;
        c0 = b ? 0.0 : 1.0;
        c1 = b ? 1.0 : 0.0;
    }
    const std::size_t half = amps_.size();
    amps_.resize(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        amps_[half + i] = amps_[i] * c1;
        amps_[i] *= c0;
    }
    labels_.push_back(label);
    max_width_ = std::max(max_width_, labels_.size());
}

void StateVector::apply_cz(QubitLabel a, QubitLabel b) {
    const std::size_t pa = position(a), pb = position(b);
    if (pa == pb) {
        throw std::invalid_argument("CZ needs two distinct qubits");
    }
    const std::size_t mask = (std::size_t{1} << pa) | (std::size_t{1} << pb);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply_unitary(QubitLabel label, const Mat2 &u) {
    const std::size_t bit = std::size_t{1} << position(label);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            continue;
        }
        Complex a0 = amps_[i], a1 = amps_[i | bit];
        amps_[i] = u[0] * a0 + u[1] * a1;
        amps_[i | bit] = u[2] * a0 + u[3] * a1;
    }
}

void StateVector::apply_pauli(QubitLabel label, Pauli p) {
    if (p == Pauli::I) {
        position(label);
        return;
    }
    apply_unitary(label, pauli_matrix(p));
}

std::size_t StateVector::apply_channel(std::span<const QubitLabel> labels, const KrausChannel &ch, Rng &rng) {
    if (labels.size() != ch.qubits()) {
        throw std::invalid_argument("channel arity does not match the number of target qubits");
    }
    std::vector<std::size_t> pos;
    for (QubitLabel l : labels) {
        pos.push_back(position(l));
    }
    const std::size_t d = ch.dim();
    std::size_t tmask = 0;
    for (std::size_t p : pos) {
        tmask |= std::size_t{1} << p;
    }
    // Scatter offsets of the 2^m sub-indices over the target bit positions.
    std::vector<std::size_t> offset(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t b = 0; b < pos.size(); ++b) {
            if (j & (std::size_t{1} << b)) {
                offset[j] |= std::size_t{1} << pos[b];
            }
        }
    }
    auto apply = [&](const std::vector<Complex> &k) {
        std::vector<Complex> out(amps_.size(), 0.0);
        for (std::size_t base = 0; base < amps_.size(); ++base) {
            if (base & tmask) {
                continue;
            }
            for (std::size_t r = 0; r < d; ++r) {
                Complex acc = 0;
                for (std::size_t c = 0; c < d; ++c) {
                    acc += k[r * d + c] * amps_[base | offset[c]];
                }
                out[base | offset[r]] = acc;
            }
        }
        return out;
    };

    const double u = uniform01(rng);
    double cumulative = 0.0;
    const auto &ops = ch.operators();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        std::vector<Complex> next = apply(ops[i]);
        double w = 0.0;
        for (const auto &a : next) {
            w += std::norm(a);
        }
        cumulative += w;
        if (u < cumulative || i + 1 == ops.size()) {
            if (w < 1e-300) {
                continue;
            }
            const double s = 1.0 / std::sqrt(w);
            for (auto &a : next) {
                a *= s;
            }
            amps_ = std::move(next);
            return i;
        }
    }
    // Only reachable when the trailing operators all annihilate the state;
    // fall back to the last branch with nonzero weight.
    for (std::size_t i = ops.size(); i-- > 0;) {
        std::vector<Complex> next = apply(ops[i]);
        double w = 0.0;
        for (const auto &a : next) {
            w += std::norm(a);
        }
        if (w > 1e-300) {
            const double s = 1.0 / std::sqrt(w);
            for (auto &a : next) {
                a *= s;
            }
            amps_ = std::move(next);
            return i;
        }
    }
    throw std::logic_error("channel annihilated the state");
}

std::vector<Complex> StateVector::contract(std::size_t pos, Angle8 delta, Bit outcome) const {
    // <+/-_delta| = (<0| +/- e^{-i delta} <1|)/sqrt(2)
    Complex w1 = std::conj(phase8(delta)) * kInvSqrt2;
    if (outcome & 1) {
        w1 = -w1;
    }
    const std::size_t low = (std::size_t{1} << pos) - 1;
    const std::size_t half = amps_.size() / 2;
    std::vector<Complex> out(half);
    for (std::size_t j = 0; j < half; ++j) {
        std::size_t i0 = (j & low) | ((j & ~low) << 1);
        std::size_t i1 = i0 | (std::size_t{1} << pos);
        out[j] = kInvSqrt2 * amps_[i0] + w1 * amps_[i1];
    }
    return out;
}

double StateVector::probability_one(QubitLabel label, Angle8 delta) const {
    auto branch = contract(position(label), delta, 1);
    double p = 0.0;
    for (const auto &a : branch) {
        p += std::norm(a);
    }
    return std::clamp(p, 0.0, 1.0);
}

void StateVector::collapse(std::size_t pos, std::vector<Complex> next, double prob) {
    const double s = 1.0 / std::sqrt(prob);
    for (auto &a : next) {
        a *= s;
    }
    amps_ = std::move(next);
    labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(pos));
}

Bit StateVector::measure_rotated(QubitLabel label, Angle8 delta, Rng &rng) {
    const std::size_t pos = position(label);
    auto b0 = contract(pos, delta, 0);
    double p0 = 0.0;
    for (const auto &a : b0) {
        p0 += std::norm(a);
    }
    const double u = uniform01(rng);
    if (u < p0) {
        collapse(pos, std::move(b0), p0);
        return 0;
    }
    auto b1 = contract(pos, delta, 1);
    double p1 = 0.0;
    for (const auto &a : b1) {
        p1 += std::norm(a);
    }
    if (p1 < 1e-300) {
        collapse(pos, std::move(b0), p0);
        return 0;
    }
    collapse(pos, std::move(b1), p1);
    return 1;
}

double StateVector::project_rotated(QubitLabel label, Angle8 delta, Bit outcome) {
    const std::size_t pos = position(label);
    auto b = contract(pos, delta, outcome);
    double p = 0.0;
    for (const auto &a : b) {
        p += std::norm(a);
    }
    if (p < 1e-12) {
        throw std::domain_error("forced outcome has zero probability");
    }
    collapse(pos, std::move(b), p);
    return p;
}

}  // namespace vbqc
