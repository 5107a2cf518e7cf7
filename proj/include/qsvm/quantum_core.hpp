// Copyright 2026 The qsvm-ocr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense state-vector and density-matrix simulation primitives.
 *
 * Qubit 0 is the most significant bit of an amplitude index, so the basis
 * label |q0 q1 ... q(n-1)> reads in circuit order from top to bottom.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsvm::quantum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;

class Gate;

/// Normalized complex amplitude array over n qubits.
class StateVector {
  public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(std::size_t n_qubits);

    static StateVector basis(std::size_t n_qubits, std::size_t index);
    /// Takes amplitudes that are already unit norm (within kNormTolerance).
    static StateVector from_amplitudes(CVector amplitudes);
    /// Rescales a nonzero amplitude array to unit norm.
    static StateVector normalized(CVector amplitudes);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] const CVector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amplitudes_[static_cast<Eigen::Index>(i)];
    }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }

    /// <this|other>
    [[nodiscard]] Complex inner(const StateVector &other) const;
    /// |<this|other>|, insensitive to global phase.
    [[nodiscard]] double fidelity(const StateVector &other) const;
    /// this (x) other; `this` occupies the leading qubits.
    [[nodiscard]] StateVector tensor(const StateVector &other) const;

    /// In-place gate application; see apply_gate.
    void apply(const Gate &gate, std::span<const std::size_t> targets);
    void apply(const Gate &gate, std::initializer_list<std::size_t> targets) {
        apply(gate, std::span<const std::size_t>(targets.begin(), targets.size()));
    }

  private:
    StateVector(std::size_t n_qubits, CVector amplitudes);

    std::size_t n_qubits_;
    CVector amplitudes_;
};

/// Unitary acting on `arity()` qubits. Construction rejects non-unitary
/// matrices and non power-of-two dimensions.
class Gate {
  public:
    explicit Gate(CMatrix matrix);

    [[nodiscard]] std::size_t arity() const { return arity_; }
    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    [[nodiscard]] const CMatrix &matrix() const { return matrix_; }
    [[nodiscard]] Gate adjoint() const;
    /// this * other, i.e. `other` acts first.
    [[nodiscard]] Gate compose(const Gate &other) const;

  private:
    struct Unchecked {};
    Gate(CMatrix matrix, Unchecked);
    friend Gate controlled(const Gate &, int);
    friend Gate multiplexed(std::span<const Gate>);

    CMatrix matrix_;
    std::size_t arity_;
};

/// Control qubit first, then the gate's own qubits. Acts as `gate` when the
/// control equals `control_value`, identity otherwise.
Gate controlled(const Gate &gate, int control_value = 1);

/// Block-diagonal select: with k selector qubits leading, applies
/// `branches[s]` to the remaining qubits when the selector reads s.
/// All branches must share one arity and there must be 2^k of them.
Gate multiplexed(std::span<const Gate> branches);

namespace gates {
Gate identity(std::size_t arity = 1);
Gate hadamard();
Gate pauli_x();
Gate pauli_y();
Gate pauli_z();
/// diag(1, i)
Gate phase_s();
/// Full-angle rotation exp(-i theta sigma_y) = [[cos, -sin], [sin, cos]].
/// R_y(theta)|0> = cos(theta)|0> + sin(theta)|1>.
Gate ry(double theta);
/// Half-angle rotation exp(-i theta sigma_y / 2); ry_half(2t) == ry(t).
Gate ry_half(double theta);
Gate swap();
/// Discrete Fourier transform on `arity` qubits, MSB-first indexing.
Gate qft(std::size_t arity);
} // namespace gates

/// Returns a copy of `state` with `gate` applied to `targets` (ordered;
/// targets[0] is the gate's most significant qubit).
StateVector apply_gate(const StateVector &state, const Gate &gate,
                       std::span<const std::size_t> targets);
inline StateVector apply_gate(const StateVector &state, const Gate &gate,
                              std::initializer_list<std::size_t> targets) {
    return apply_gate(state, gate,
                      std::span<const std::size_t>(targets.begin(), targets.size()));
}

/// State with amplitudes v / |v|. Length must be a power of two.
StateVector amplitude_encode(const Eigen::VectorXd &v);

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
  public:
    explicit DensityMatrix(CMatrix entries);
    static DensityMatrix from_pure(const StateVector &state);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    [[nodiscard]] const CMatrix &matrix() const { return entries_; }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    [[nodiscard]] Complex trace() const { return entries_.trace(); }
    [[nodiscard]] Eigen::VectorXd eigenvalues() const;

  private:
    CMatrix entries_;
    std::size_t n_qubits_;
};

/// Reduced state on `keep` (sorted ascending in the output ordering).
DensityMatrix partial_trace(const StateVector &state,
                            std::span<const std::size_t> keep);
inline DensityMatrix partial_trace(const StateVector &state,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(state,
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Operator on a power-of-two dimensional space; need not be Hermitian.
class Observable {
  public:
    explicit Observable(CMatrix matrix);
    [[nodiscard]] std::size_t arity() const { return arity_; }
    [[nodiscard]] const CMatrix &matrix() const { return matrix_; }

  private:
    CMatrix matrix_;
    std::size_t arity_;
};

/// <psi| O |psi> with O embedded on `targets` and identity elsewhere.
Complex expectation(const StateVector &state, const Observable &obs,
                    std::span<const std::size_t> targets);
inline Complex expectation(const StateVector &state, const Observable &obs,
                           std::initializer_list<std::size_t> targets) {
    return expectation(state, obs,
                       std::span<const std::size_t>(targets.begin(), targets.size()));
}

/// Number of qubits needed to index `count` slots (at least one).
std::size_t qubits_for(std::size_t count);

namespace detail {
/// Applies an arbitrary 2^k x 2^k matrix on `targets` in place.
void apply_matrix(CVector &amplitudes, std::size_t n_qubits, const CMatrix &m,
                  std::span<const std::size_t> targets);
} // namespace detail

} // namespace qsvm::quantum
