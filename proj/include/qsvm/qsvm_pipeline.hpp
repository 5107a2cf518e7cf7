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
 * Simulated quantum support-vector classifier.
 *
 * Stages:
 *  1. Training-data oracle: an index register weighted by |x_i| drives a
 *     multiplexed R_y(theta_i) onto one data qubit, giving
 *     |chi> = sum_i |x_i| |i>|x_i> / sqrt(N_chi).
 *  2. Tracing out the data qubit leaves K / tr(K) on the index register.
 *  3. Phase-estimation matrix inversion of F = K + I/gamma applied to |y>.
 *  4. |u~> = (b|0>|0> + sum_k |x_k| a_k |k>|x_k>) / sqrt(N_u) and the query
 *     state |x0~> are prepared; under an ancilla in (|0>+|1>)/sqrt(2) the
 *     |1> branch runs U_x0 |u~> where U_x0 maps |x0~> to |0...0>.
 *  5. The sign of <psi| (|0..0><0..0| (x) |0><1|_A) |psi> is the label.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qsvm/quantum_core.hpp"
#include "qsvm/svm_classical.hpp"

namespace qsvm::pipeline {

using quantum::Complex;
using quantum::DensityMatrix;
using quantum::Gate;
using quantum::StateVector;
using svm::Label;
using svm::TrainingSet;

enum class PostselectMode { exact, sampled };

struct QsvmConfig {
    double gamma = 2.0;
    std::size_t phase_qubits = 2;
    double evolution_time = std::numbers::pi / 2.0;
    /// Unset means the smallest nonzero register eigenvalue.
    std::optional<double> inversion_constant;
    PostselectMode postselect = PostselectMode::exact;
    std::size_t shots = 8192;
    std::uint64_t seed = 0x5eed;

    /// 2 pi / (t0 2^m): the eigenvalue encoded by register value 1.
    [[nodiscard]] double min_register_eigenvalue() const;
    [[nodiscard]] double effective_inversion_constant() const;
    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

struct OracleSpec {
    std::vector<double> angles;
    std::vector<double> norms;
};

struct HhlResult {
    StateVector solution;
    /// Weight of the rotation ancilla in |1>.
    double success_probability = 0.0;
};

struct ClassificationResult {
    Complex expectation;
    Label label = Label::ambiguous;
    double postselect_probability = 0.0;
};

/// Raised when some eigenvalue of F has lambda t0 / 2 pi outside (0, 1).
class EigenphaseOverflowError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// theta_i = atan2(x_i2, x_i1), so R_y(theta_i)|0> = |x_i>.
OracleSpec oracle_angles(const TrainingSet &ts);

/// Index register (qubits_for(M) qubits, zero-norm padding) followed by one
/// data qubit.
StateVector build_chi(const TrainingSet &ts);

/// Reduced state of the index register; the leading M x M block is K / tr(K).
DensityMatrix kernel_via_discard(const StateVector &chi, const TrainingSet &ts);

/// Phase-estimation inversion of a real symmetric positive definite F on
/// qubits_for(dim) system qubits. The solution is the post-selected
/// (ancilla |1>, clock |0...0>) system state, normalized.
HhlResult hhl_solve(const Eigen::MatrixXd &f, const StateVector &y_state,
                    const QsvmConfig &cfg);

/// |y> for the label vector; (1, -1) is prepared as R_y(-pi/4)|0>.
StateVector prepare_label_state(const Eigen::VectorXd &labels);

/// Index register of qubits_for(M + 1) qubits (slot 0 holds the offset)
/// followed by one data qubit.
StateVector prepare_u_tilde(const Eigen::VectorXd &alphas, double offset, const TrainingSet &ts);

/// Same layout as prepare_u_tilde; N = 1 + M |x0|^2.
StateVector prepare_x0_tilde(const Eigen::VectorXd &x0, std::size_t training_size);

/// Unitary with U |x0~> = |0...0>, completed by a Householder reflection.
Gate u_x0_unitary(const StateVector &x0_tilde);

/// Trained quantum model. Kernel estimation and matrix inversion run once;
/// classify() then only builds the readout circuit.
class QuantumSvm {
  public:
    static QuantumSvm train(const TrainingSet &ts, const QsvmConfig &cfg);

    [[nodiscard]] ClassificationResult classify(const Eigen::VectorXd &x0) const;

    [[nodiscard]] const TrainingSet &training_set() const { return ts_; }
    [[nodiscard]] const QsvmConfig &config() const { return cfg_; }
    /// Reduced index-register state (padded).
    [[nodiscard]] const DensityMatrix &kernel_state() const { return kernel_state_; }
    /// K recovered as tr(K) * rho, M x M.
    [[nodiscard]] const Eigen::MatrixXd &kernel() const { return kernel_; }
    /// Post-selected inversion output; unit norm, proportional to alpha.
    [[nodiscard]] const Eigen::VectorXd &alphas() const { return alphas_; }
    [[nodiscard]] const StateVector &u_tilde() const { return u_tilde_; }
    [[nodiscard]] double success_probability() const { return success_probability_; }

  private:
    QuantumSvm(TrainingSet ts, QsvmConfig cfg, DensityMatrix kernel_state,
               Eigen::MatrixXd kernel, Eigen::VectorXd alphas, StateVector u_tilde,
               double success_probability);

    TrainingSet ts_;
    QsvmConfig cfg_;
    DensityMatrix kernel_state_;
    Eigen::MatrixXd kernel_;
    Eigen::VectorXd alphas_;
    StateVector u_tilde_;
    Gate u_prep_;
    double success_probability_;
};

/// End-to-end: train then classify one query.
ClassificationResult qsvm_classify(const TrainingSet &ts, const Eigen::VectorXd &x0,
                                   const QsvmConfig &cfg);

} // namespace qsvm::pipeline
