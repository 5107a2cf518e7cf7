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

#include "qsvm/quantum_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsvm::quantum {

namespace {

std::size_t log2_exact(std::size_t dim, const char *what) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument(std::string(what) +
                                    ": dimension must be a power of two, got " +
                                    std::to_string(dim));
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

void check_targets(std::size_t n_qubits, std::span<const std::size_t> targets,
                   std::size_t arity) {
    if (targets.size() != arity) {
        throw std::invalid_argument("gate arity " + std::to_string(arity) +
                                    " does not match " +
                                    std::to_string(targets.size()) + " targets");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(targets[i]) +
                                    " out of range for " + std::to_string(n_qubits) +
                                    " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("repeated target qubit " +
                                            std::to_string(targets[i]));
            }
        }
    }
}

bool is_unitary(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const CMatrix gram = m.adjoint() * m;
    return (gram - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <=
           kUnitaryTolerance;
}

} // namespace

std::size_t qubits_for(std::size_t count) {
    if (count <= 2) {
        return 1;
    }
    return static_cast<std::size_t>(std::bit_width(count - 1));
}

namespace detail {

void apply_matrix(CVector &amplitudes, std::size_t n_qubits, const CMatrix &m,
                  std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    const std::size_t sub = std::size_t{1} << k;
    const std::size_t dim = std::size_t{1} << n_qubits;

    std::size_t target_mask = 0;
    std::vector<std::size_t> offsets(sub, 0);
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t bit = std::size_t{1} << (n_qubits - 1 - targets[t]);
        target_mask |= bit;
        for (std::size_t j = 0; j < sub; ++j) {
            if ((j >> (k - 1 - t)) & 1U) {
                offsets[j] |= bit;
            }
        }
    }

    CVector in(static_cast<Eigen::Index>(sub));
    CVector out(static_cast<Eigen::Index>(sub));
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t j = 0; j < sub; ++j) {
            in[static_cast<Eigen::Index>(j)] =
                amplitudes[static_cast<Eigen::Index>(base | offsets[j])];
        }
        out.noalias() = m * in;
        for (std::size_t j = 0; j < sub; ++j) {
            amplitudes[static_cast<Eigen::Index>(base | offsets[j])] =
                out[static_cast<Eigen::Index>(j)];
        }
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits),
      amplitudes_(CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_qubits))) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, CVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    if (index >= (std::size_t{1} << n_qubits)) {
        throw std::out_of_range("basis index out of range");
    }
    StateVector s(n_qubits);
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(CVector amplitudes) {
    const std::size_t n =
        log2_exact(static_cast<std::size_t>(amplitudes.size()), "StateVector");
    if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("StateVector amplitudes are not normalized");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::normalized(CVector amplitudes) {
    const std::size_t n =
        log2_exact(static_cast<std::size_t>(amplitudes.size()), "StateVector");
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("cannot normalize a zero amplitude vector");
    }
    amplitudes /= norm;
    return StateVector(n, std::move(amplitudes));
}

Complex StateVector::inner(const StateVector &other) const {
    if (dim() != other.dim()) {
        throw std::invalid_argument("inner product of states with different dimension");
    }
    return amplitudes_.dot(other.amplitudes_);
}

double StateVector::fidelity(const StateVector &other) const {
    return std::abs(inner(other));
}

StateVector StateVector::tensor(const StateVector &other) const {
    CVector out(amplitudes_.size() * other.amplitudes_.size());
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        out.segment(i * other.amplitudes_.size(), other.amplitudes_.size()) =
            amplitudes_[i] * other.amplitudes_;
    }
    return StateVector(n_qubits_ + other.n_qubits_, std::move(out));
}

void StateVector::apply(const Gate &gate, std::span<const std::size_t> targets) {
    check_targets(n_qubits_, targets, gate.arity());
    detail::apply_matrix(amplitudes_, n_qubits_, gate.matrix(), targets);
}

StateVector apply_gate(const StateVector &state, const Gate &gate,
                       std::span<const std::size_t> targets) {
    StateVector out = state;
    out.apply(gate, targets);
    return out;
}

StateVector amplitude_encode(const Eigen::VectorXd &v) {
    if (v.size() == 0 || v.norm() == 0.0) {
        throw std::invalid_argument("amplitude_encode: zero vector");
    }
    return StateVector::normalized(v.cast<Complex>());
}

// ---------------------------------------------------------------------------
// Gate

Gate::Gate(CMatrix matrix)
    : matrix_(std::move(matrix)),
      arity_(log2_exact(static_cast<std::size_t>(matrix_.rows()), "Gate")) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("Gate matrix must be square");
    }
    if (!is_unitary(matrix_)) {
        throw std::invalid_argument("Gate matrix is not unitary");
    }
}

Gate::Gate(CMatrix matrix, Unchecked)
    : matrix_(std::move(matrix)),
      arity_(static_cast<std::size_t>(std::countr_zero(
          static_cast<std::size_t>(matrix_.rows())))) {}

Gate Gate::adjoint() const { return Gate(matrix_.adjoint(), Unchecked{}); }

Gate Gate::compose(const Gate &other) const {
    if (other.arity_ != arity_) {
        throw std::invalid_argument("cannot compose gates of different arity");
    }
    return Gate(matrix_ * other.matrix_, Unchecked{});
}

Gate controlled(const Gate &gate, int control_value) {
    if (control_value != 0 && control_value != 1) {
        throw std::invalid_argument("control value must be 0 or 1");
    }
    const Eigen::Index d = gate.matrix().rows();
    CMatrix m = CMatrix::Identity(2 * d, 2 * d);
    m.block(control_value * d, control_value * d, d, d) = gate.matrix();
    return Gate(std::move(m), Gate::Unchecked{});
}

Gate multiplexed(std::span<const Gate> branches) {
    if (branches.empty()) {
        throw std::invalid_argument("multiplexed: no branches");
    }
    log2_exact(branches.size(), "multiplexed");
    const Eigen::Index d = branches.front().matrix().rows();
    const auto count = static_cast<Eigen::Index>(branches.size());
    CMatrix m = CMatrix::Zero(count * d, count * d);
    for (Eigen::Index s = 0; s < count; ++s) {
        const Gate &g = branches[static_cast<std::size_t>(s)];
        if (g.matrix().rows() != d) {
            throw std::invalid_argument("multiplexed: branch arity mismatch");
        }
        m.block(s * d, s * d, d, d) = g.matrix();
    }
    return Gate(std::move(m), Gate::Unchecked{});
}

namespace gates {

Gate identity(std::size_t arity) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << arity);
    return Gate(CMatrix::Identity(d, d));
}

Gate hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    CMatrix m(2, 2);
    m << s, s, s, -s;
    return Gate(std::move(m));
}

Gate pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return Gate(std::move(m));
}

Gate pauli_y() {
    const Complex i{0.0, 1.0};
    CMatrix m(2, 2);
    m << 0, -i, i, 0;
    return Gate(std::move(m));
}

Gate pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return Gate(std::move(m));
}

Gate phase_s() {
    CMatrix m(2, 2);
    m << 1, 0, 0, Complex(0.0, 1.0);
    return Gate(std::move(m));
}

Gate ry(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    CMatrix m(2, 2);
    m << c, -s, s, c;
    return Gate(std::move(m));
}

Gate ry_half(double theta) { return ry(theta / 2.0); }

Gate swap() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return Gate(std::move(m));
}

Gate qft(std::size_t arity) {
    const std::size_t n = std::size_t{1} << arity;
    const auto d = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix m(d, d);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce j*k mod n first so large registers keep full phase accuracy.
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>((j * k) % n) /
                                 static_cast<double>(n);
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                scale * std::polar(1.0, angle);
        }
    }
    return Gate(std::move(m));
}

} // namespace gates

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries)
    : entries_(std::move(entries)),
      n_qubits_(log2_exact(static_cast<std::size_t>(entries_.rows()), "DensityMatrix")) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("DensityMatrix must be square");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance) {
        throw std::invalid_argument("DensityMatrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex(1.0)) > kDensityTolerance) {
        throw std::invalid_argument("DensityMatrix trace differs from 1");
    }
    if (eigenvalues().minCoeff() < -kPsdTolerance) {
        throw std::invalid_argument("DensityMatrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state) {
    const CVector &a = state.amplitudes();
    return DensityMatrix(a * a.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

DensityMatrix partial_trace(const StateVector &state,
                            std::span<const std::size_t> keep) {
    const std::size_t n = state.n_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw std::invalid_argument("partial_trace: repeated qubit in keep set");
    }
    if (kept.back() >= n) {
        throw std::out_of_range("partial_trace: qubit index out of range");
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0, j = 0; q < n; ++q) {
        if (j < kept.size() && kept[j] == q) {
            ++j;
        } else {
            traced.push_back(q);
        }
    }

    // Spread a local index over the global bit positions of `qubits`.
    auto scatter = [n](const std::vector<std::size_t> &qubits, std::size_t local) {
        std::size_t global = 0;
        const std::size_t k = qubits.size();
        for (std::size_t t = 0; t < k; ++t) {
            if ((local >> (k - 1 - t)) & 1U) {
                global |= std::size_t{1} << (n - 1 - qubits[t]);
            }
        }
        return global;
    };

    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t dr = std::size_t{1} << traced.size();
    std::vector<std::size_t> kept_offsets(dk);
    for (std::size_t i = 0; i < dk; ++i) {
        kept_offsets[i] = scatter(kept, i);
    }

    const CVector &a = state.amplitudes();
    const auto d = static_cast<Eigen::Index>(dk);
    CMatrix rho = CMatrix::Zero(d, d);
    CVector slice(d);
    for (std::size_t r = 0; r < dr; ++r) {
        const std::size_t base = scatter(traced, r);
        for (std::size_t i = 0; i < dk; ++i) {
            slice[static_cast<Eigen::Index>(i)] =
                a[static_cast<Eigen::Index>(base | kept_offsets[i])];
        }
        rho.noalias() += slice * slice.adjoint();
    }
    // Exact Hermitian symmetrization removes rounding asymmetry.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(CMatrix matrix)
    : matrix_(std::move(matrix)),
      arity_(log2_exact(static_cast<std::size_t>(matrix_.rows()), "Observable")) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("Observable must be square");
    }
}

Complex expectation(const StateVector &state, const Observable &obs,
                    std::span<const std::size_t> targets) {
    check_targets(state.n_qubits(), targets, obs.arity());
    CVector transformed = state.amplitudes();
    detail::apply_matrix(transformed, state.n_qubits(), obs.matrix(), targets);
    return state.amplitudes().dot(transformed);
}

} // namespace qsvm::quantum
