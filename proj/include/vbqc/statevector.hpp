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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "vbqc/angle.hpp"
#include "vbqc/rng.hpp"

namespace vbqc {

using Complex = std::complex<double>;
using QubitLabel = std::uint32_t;

inline constexpr double kTolerance = 1e-9;

/// |+_theta> = (|0> + e^{i theta}|1>)/sqrt(2).
struct PlusTheta {
    Angle8 theta;
};
/// Computational basis state |bit>.
struct DummyState {
    Bit bit = 0;
};
using PreparedQubit = std::variant<PlusTheta, DummyState>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };
char pauli_char(Pauli p);
/// Accepts "I", "X", "Y", "Z". Throws std::invalid_argument otherwise.
Pauli parse_pauli(const std::string &s);

using Mat2 = std::array<Complex, 4>;  // row major
Mat2 pauli_matrix(Pauli p);

/// Kraus operators on m qubits, each a row-major 2^m x 2^m matrix.
class KrausChannel {
  public:
    KrausChannel() = default;
    /// Throws std::invalid_argument on shape mismatch or if
    /// sum K^dagger K differs from the identity by more than 1e-9.
    KrausChannel(std::size_t qubits, std::vector<std::vector<Complex>> operators);

    static KrausChannel identity(std::size_t qubits = 1);
    /// rho -> (1 - p) rho + p I/2: I with weight 1 - 3p/4, X, Y, Z with p/4 each.
    static KrausChannel depolarizing(double p);
    /// Applies each Pauli with the given probability (probabilities sum to 1).
    static KrausChannel pauli_mixture(double pi, double px, double py, double pz);

    std::size_t qubits() const {
        return qubits_;
    }
    std::size_t dim() const {
        return std::size_t{1} << qubits_;
    }
    const std::vector<std::vector<Complex>> &operators() const {
        return ops_;
    }

  private:
    std::size_t qubits_ = 1;
    std::vector<std::vector<Complex>> ops_;
};

/// Dense state of the currently active qubits. Active qubit i is bit i of the
/// amplitude index.
class StateVector {
  public:
    explicit StateVector(std::size_t cap = 16);

    std::size_t cap() const {
        return cap_;
    }
    std::size_t width() const {
        return labels_.size();
    }
    std::size_t max_width_seen() const {
        return max_width_;
    }
    const std::vector<QubitLabel> &labels() const {
        return labels_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amps_;
    }
    bool is_active(QubitLabel label) const;
    double norm_squared() const;

    /// Throws std::length_error at the cap, std::invalid_argument if active.
    void attach(QubitLabel label, const PreparedQubit &q);
    void apply_cz(QubitLabel a, QubitLabel b);
    void apply_pauli(QubitLabel label, Pauli p);
    void apply_unitary(QubitLabel label, const Mat2 &u);
    /// Samples one Kraus branch with Born weights and renormalizes.
    /// Returns the index of the chosen operator.
    std::size_t apply_channel(std::span<const QubitLabel> labels, const KrausChannel &ch, Rng &rng);

    /// Probability of outcome 1 (the |-_delta> projector) without collapsing.
    double probability_one(QubitLabel label, Angle8 delta) const;
    /// Measures in {|+_delta>, |-_delta>}; outcome 0 is |+_delta>. The qubit is
    /// removed from the active set. Consumes exactly one uniform draw.
    Bit measure_rotated(QubitLabel label, Angle8 delta, Rng &rng);
    /// Same as measure_rotated with the outcome forced; returns its probability.
    /// Throws std::domain_error if the forced outcome has probability < 1e-12.
    double project_rotated(QubitLabel label, Angle8 delta, Bit outcome);

  private:
    std::size_t position(QubitLabel label) const;
    /// Amplitudes of <+/-_delta| on qubit at `pos`, qubit removed.
    std::vector<Complex> contract(std::size_t pos, Angle8 delta, Bit outcome) const;
    void collapse(std::size_t pos, std::vector<Complex> next, double prob);

    std::size_t cap_;
    std::size_t max_width_ = 0;
    std::vector<QubitLabel> labels_;
    std::vector<Complex> amps_{Complex(1.0, 0.0)};
};

/// Amplitude e^{i k pi/4}, exact for the eight lattice points up to rounding.
Complex phase8(Angle8 a);

}  // namespace vbqc
