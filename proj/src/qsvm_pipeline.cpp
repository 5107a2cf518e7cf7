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

#include "qsvm/qsvm_pipeline.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace qsvm::pipeline {

using quantum::CMatrix;
using quantum::CVector;

namespace {

constexpr std::size_t kMaxPhaseQubits = 12;
constexpr double kVanishingBranch = 1e-24;

void require_planar(const TrainingSet &ts) {
    if (ts.dimension() != 2) {
        throw std::invalid_argument("quantum path supports 2-dimensional features only, got " +
                                    std::to_string(ts.dimension()));
    }
}

std::vector<std::size_t> iota(std::size_t first, std::size_t count) {
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = first + i;
    }
    return v;
}

// exp(i F t) for real symmetric F given its eigendecomposition.
Gate evolution(const Eigen::MatrixXd &vectors, const Eigen::VectorXd &values, double t) {
    CVector phases(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        phases[i] = std::polar(1.0, values[i] * t);
    }
    const CMatrix v = vectors.cast<Complex>();
    return Gate(v * phases.asDiagonal() * v.adjoint());
}

// Shot estimate of <P (x) sigma> on the ancilla, where P projects the
// register onto |0...0> and the basis change maps sigma to Z.
double sample_projected(StateVector state, const Gate &basis_change, std::size_t ancilla,
                        std::size_t shots, std::mt19937_64 &rng) {
    state.apply(basis_change, {ancilla});
    // Ancilla is the last qubit: indices 0 and 1 are register |0...0>.
    const double p_plus = std::norm(state[0]);
    const double p_minus = std::norm(state[1]);
    std::discrete_distribution<int> outcome(
        {p_plus, p_minus, std::max(0.0, 1.0 - p_plus - p_minus)});
    long long total = 0;
    for (std::size_t s = 0; s < shots; ++s) {
        const int o = outcome(rng);
        total += (o == 0) ? 1 : (o == 1 ? -1 : 0);
    }
    return static_cast<double>(total) / static_cast<double>(shots);
}

} // namespace

// ---------------------------------------------------------------------------
// QsvmConfig

double QsvmConfig::min_register_eigenvalue() const {
    return 2.0 * std::numbers::pi /
           (evolution_time * static_cast<double>(std::size_t{1} << phase_qubits));
}

double QsvmConfig::effective_inversion_constant() const {
    return inversion_constant.value_or(min_register_eigenvalue());
}

void QsvmConfig::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (phase_qubits < 1 || phase_qubits > kMaxPhaseQubits) {
        throw std::invalid_argument("phase qubit count must be in [1, " +
                                    std::to_string(kMaxPhaseQubits) + "]");
    }
    if (!(evolution_time > 0.0) || !std::isfinite(evolution_time)) {
        throw std::invalid_argument("evolution time t0 must be positive");
    }
    const double c = effective_inversion_constant();
    if (!(c > 0.0)) {
        throw std::invalid_argument("inversion constant C must be positive");
    }
    const double limit = min_register_eigenvalue();
    if (c > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "inversion constant C = " << c
            << " exceeds the smallest representable eigenvalue " << limit;
        throw std::invalid_argument(msg.str());
    }
    if (postselect == PostselectMode::sampled && shots == 0) {
        throw std::invalid_argument("sampled post-selection needs at least one shot");
    }
}

// ---------------------------------------------------------------------------
// Oracle and kernel

OracleSpec oracle_angles(const TrainingSet &ts) {
    require_planar(ts);
    OracleSpec spec;
    for (const auto &x : ts.vectors()) {
        spec.angles.push_back(std::atan2(x[1], x[0]));
        spec.norms.push_back(x.norm());
    }
    return spec;
}

StateVector build_chi(const TrainingSet &ts) {
    const OracleSpec oracle = oracle_angles(ts);
    const std::size_t q = quantum::qubits_for(ts.size());
    const std::size_t slots = std::size_t{1} << q;

    Eigen::VectorXd weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(slots));
    std::vector<Gate> branches;
    branches.reserve(slots);
    for (std::size_t i = 0; i < slots; ++i) {
        if (i < ts.size()) {
            weights[static_cast<Eigen::Index>(i)] = oracle.norms[i];
            branches.push_back(quantum::gates::ry(oracle.angles[i]));
        } else {
            branches.push_back(quantum::gates::identity());
        }
    }

    StateVector chi = quantum::amplitude_encode(weights).tensor(StateVector(1));
    const auto targets = iota(0, q + 1);
    chi.apply(quantum::multiplexed(branches), targets);
    return chi;
}

DensityMatrix kernel_via_discard(const StateVector &chi, const TrainingSet &ts) {
    const std::size_t q = quantum::qubits_for(ts.size());
    if (chi.n_qubits() != q + 1) {
        throw std::invalid_argument("state does not match the training-set register layout");
    }
    return quantum::partial_trace(chi, iota(0, q));
}

// ---------------------------------------------------------------------------
// Matrix inversion

HhlResult hhl_solve(const Eigen::MatrixXd &f, const StateVector &y_state,
                    const QsvmConfig &cfg) {
    cfg.validate();
    if (f.rows() != f.cols() || f.rows() == 0) {
        throw std::invalid_argument("F must be a non-empty square matrix");
    }
    if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, f.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("F must be symmetric");
    }
    const auto d = static_cast<std::size_t>(f.rows());
    const std::size_t s = quantum::qubits_for(d);
    const std::size_t slots = std::size_t{1} << s;
    if (y_state.dim() != slots) {
        throw std::invalid_argument("right-hand side state has dimension " +
                                    std::to_string(y_state.dim()) + ", expected " +
                                    std::to_string(slots));
    }

    const double t0 = cfg.evolution_time;
    const double lambda_unit = cfg.min_register_eigenvalue();
    const double c = cfg.effective_inversion_constant();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double lambda = eig.eigenvalues()[i];
        const double phase = lambda * t0 / (2.0 * std::numbers::pi);
        if (!(phase > 0.0)) {
            throw EigenphaseOverflowError("F has a non-positive eigenvalue " +
                                          std::to_string(lambda));
        }
        if (phase >= 1.0) {
            std::ostringstream msg;
            msg << "eigenphase overflow: lambda t0 / 2pi = " << phase << " >= 1 for lambda = "
                << lambda << "; use t0 < " << 2.0 * std::numbers::pi / lambda;
            throw EigenphaseOverflowError(msg.str());
        }
    }

    // Pad to the register size with a representable eigenvalue; y has no
    // weight there, so the padded block never mixes in.
    Eigen::MatrixXd fp = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(slots),
                                                   static_cast<Eigen::Index>(slots)) *
                         lambda_unit;
    fp.topLeftCorner(f.rows(), f.cols()) = f;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_padded(fp);
    const Eigen::MatrixXd &vectors = eig_padded.eigenvectors();
    const Eigen::VectorXd &values = eig_padded.eigenvalues();

    const std::size_t m = cfg.phase_qubits;
    const std::size_t clock_slots = std::size_t{1} << m;
    const std::size_t ancilla = m + s;
    const auto clock = iota(0, m);
    const auto system = iota(m, s);

    StateVector state = StateVector(m).tensor(y_state).tensor(StateVector(1));
    const Gate h = quantum::gates::hadamard();

    std::vector<Gate> powers;
    powers.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double p = static_cast<double>(std::size_t{1} << (m - 1 - j));
        powers.push_back(quantum::controlled(evolution(vectors, values, t0 * p)));
    }
    auto controlled_targets = [&](std::size_t control) {
        std::vector<std::size_t> t{control};
        t.insert(t.end(), system.begin(), system.end());
        return t;
    };

    // Phase estimation.
    for (std::size_t j : clock) {
        state.apply(h, {j});
    }
    for (std::size_t j = 0; j < m; ++j) {
        state.apply(powers[j], controlled_targets(j));
    }
    const Gate qft = quantum::gates::qft(m);
    state.apply(qft.adjoint(), clock);

    // Eigenvalue-conditioned rotation: |k> -> C / lambda_k amplitude on |1>_A.
    std::vector<Gate> rotations;
    rotations.reserve(clock_slots);
    rotations.push_back(quantum::gates::identity());
    for (std::size_t k = 1; k < clock_slots; ++k) {
        const double lambda_k = lambda_unit * static_cast<double>(k);
        rotations.push_back(quantum::gates::ry(std::asin(std::min(1.0, c / lambda_k))));
    }
    std::vector<std::size_t> rotation_targets = clock;
    rotation_targets.push_back(ancilla);
    state.apply(quantum::multiplexed(rotations), rotation_targets);

    // Uncompute the clock.
    state.apply(qft, clock);
    for (std::size_t j = m; j-- > 0;) {
        state.apply(powers[j].adjoint(), controlled_targets(j));
    }
    for (std::size_t j : clock) {
        state.apply(h, {j});
    }

    double success = 0.0;
    for (std::size_t i = 1; i < state.dim(); i += 2) {
        success += std::norm(state[i]);
    }
    // Clock |0...0> and ancilla |1>: index (sys << 1) | 1.
    CVector branch(static_cast<Eigen::Index>(slots));
    for (std::size_t sys = 0; sys < slots; ++sys) {
        branch[static_cast<Eigen::Index>(sys)] = state[(sys << 1) | 1U];
    }
    if (branch.squaredNorm() < kVanishingBranch) {
        throw std::runtime_error("post-selected inversion branch vanished; increase phase "
                                 "qubits or adjust t0");
    }

    if (cfg.postselect == PostselectMode::sampled) {
        std::mt19937_64 rng(cfg.seed);
        std::binomial_distribution<std::size_t> draws(cfg.shots, std::min(1.0, success));
        success = static_cast<double>(draws(rng)) / static_cast<double>(cfg.shots);
    }
    return HhlResult{StateVector::normalized(std::move(branch)), std::min(1.0, success)};
}

StateVector prepare_label_state(const Eigen::VectorXd &labels) {
    if (labels.size() == 2 && labels[0] == 1.0 && labels[1] == -1.0) {
        StateVector y(1);
        y.apply(quantum::gates::ry(-std::numbers::pi / 4.0), {0});
        return y;
    }
    return quantum::amplitude_encode(labels);
}

// ---------------------------------------------------------------------------
// Readout states

StateVector prepare_u_tilde(const Eigen::VectorXd &alphas, double offset, const TrainingSet &ts) {
    require_planar(ts);
    const std::size_t m = ts.size();
    if (static_cast<std::size_t>(alphas.size()) != m) {
        throw std::invalid_argument("need one multiplier per training vector");
    }
    const std::size_t q = quantum::qubits_for(m + 1);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(std::size_t{2} << q));
    amps[0] = offset;
    for (std::size_t k = 1; k <= m; ++k) {
        const Eigen::VectorXd &x = ts.vector(k - 1);
        for (std::size_t j = 0; j < 2; ++j) {
            amps[static_cast<Eigen::Index>((k << 1) | j)] =
                alphas[static_cast<Eigen::Index>(k - 1)] * x[static_cast<Eigen::Index>(j)];
        }
    }
    if (amps.squaredNorm() == 0.0) {
        throw std::invalid_argument("training-data state has all-zero coefficients");
    }
    return StateVector::normalized(std::move(amps));
}

StateVector prepare_x0_tilde(const Eigen::VectorXd &x0, std::size_t training_size) {
    if (x0.size() != 2) {
        throw std::invalid_argument("query must be 2-dimensional");
    }
    if (x0.norm() == 0.0) {
        throw std::invalid_argument("query vector is zero");
    }
    if (training_size == 0) {
        throw std::invalid_argument("training size must be positive");
    }
    const std::size_t q = quantum::qubits_for(training_size + 1);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(std::size_t{2} << q));
    amps[0] = 1.0;
    for (std::size_t k = 1; k <= training_size; ++k) {
        amps[static_cast<Eigen::Index>(k << 1)] = x0[0];
        amps[static_cast<Eigen::Index>((k << 1) | 1U)] = x0[1];
    }
    return StateVector::normalized(std::move(amps));
}

Gate u_x0_unitary(const StateVector &x0_tilde) {
    const CVector &x = x0_tilde.amplitudes();
    if (std::abs(x.squaredNorm() - 1.0) > quantum::kNormTolerance) {
        throw std::invalid_argument("query state is not normalized");
    }
    const Eigen::Index d = x.size();
    const double theta = std::abs(x[0]) > 0.0 ? std::arg(x[0]) : 0.0;
    const Complex lead = std::polar(1.0, theta);

    // Reflection about w maps x to -lead |0>; w never vanishes.
    CVector w = x;
    w[0] += lead;
    CMatrix u = CMatrix::Identity(d, d) - (2.0 / w.squaredNorm()) * (w * w.adjoint());
    u.row(0) *= -std::conj(lead);
    return Gate(std::move(u));
}

// ---------------------------------------------------------------------------
// QuantumSvm

QuantumSvm::QuantumSvm(TrainingSet ts, QsvmConfig cfg, DensityMatrix kernel_state,
                       Eigen::MatrixXd kernel, Eigen::VectorXd alphas, StateVector u_tilde,
                       double success_probability)
    : ts_(std::move(ts)), cfg_(cfg), kernel_state_(std::move(kernel_state)),
      kernel_(std::move(kernel)), alphas_(std::move(alphas)), u_tilde_(std::move(u_tilde)),
      u_prep_(u_x0_unitary(u_tilde_).adjoint()), success_probability_(success_probability) {}

QuantumSvm QuantumSvm::train(const TrainingSet &ts, const QsvmConfig &cfg) {
    cfg.validate();
    const auto m = static_cast<Eigen::Index>(ts.size());

    DensityMatrix rho = kernel_via_discard(build_chi(ts), ts);
    const double trace_k = ts.kernel_trace();
    const Eigen::MatrixXd k_padded = trace_k * rho.matrix().real();
    const auto slots = k_padded.rows();

    // Padded slots carry no kernel weight, so F is 1/gamma there.
    const Eigen::MatrixXd f =
        k_padded + Eigen::MatrixXd::Identity(slots, slots) / cfg.gamma;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(slots);
    y.head(m) = ts.label_vector();

    HhlResult inverted = hhl_solve(f, prepare_label_state(y), cfg);
    Eigen::VectorXd alphas = inverted.solution.amplitudes().real().head(m);
    StateVector u = prepare_u_tilde(alphas, 0.0, ts);

    return QuantumSvm(ts, cfg, std::move(rho), k_padded.topLeftCorner(m, m), std::move(alphas),
                      std::move(u), inverted.success_probability);
}

ClassificationResult QuantumSvm::classify(const Eigen::VectorXd &x0) const {
    const StateVector x0_tilde = prepare_x0_tilde(x0, ts_.size());
    const Gate branch = u_x0_unitary(x0_tilde).compose(u_prep_);

    const std::size_t reg = u_tilde_.n_qubits();
    const std::size_t ancilla = reg;
    StateVector psi(reg + 1);
    psi.apply(quantum::gates::hadamard(), {ancilla});
    std::vector<std::size_t> targets{ancilla};
    for (std::size_t q = 0; q < reg; ++q) {
        targets.push_back(q);
    }
    psi.apply(quantum::controlled(branch, 1), targets);

    ClassificationResult result;
    result.postselect_probability = success_probability_;
    if (cfg_.postselect == PostselectMode::exact) {
        CMatrix coherence = CMatrix::Zero(static_cast<Eigen::Index>(psi.dim()),
                                          static_cast<Eigen::Index>(psi.dim()));
        coherence(0, 1) = 1.0;
        result.expectation =
            quantum::expectation(psi, quantum::Observable(std::move(coherence)), iota(0, reg + 1));
    } else {
        // |0><1| = (X + iY) / 2 on the ancilla.
        std::mt19937_64 rng(cfg_.seed);
        const Gate to_x = quantum::gates::hadamard();
        const Gate to_y = quantum::gates::hadamard().compose(quantum::gates::phase_s().adjoint());
        const double x = sample_projected(psi, to_x, ancilla, cfg_.shots, rng);
        const double y = sample_projected(psi, to_y, ancilla, cfg_.shots, rng);
        result.expectation = Complex(x / 2.0, y / 2.0);
    }
    result.label = svm::sign_label(result.expectation.real());
    return result;
}

ClassificationResult qsvm_classify(const TrainingSet &ts, const Eigen::VectorXd &x0,
                                   const QsvmConfig &cfg) {
    return QuantumSvm::train(ts, cfg).classify(x0);
}

} // namespace qsvm::pipeline
