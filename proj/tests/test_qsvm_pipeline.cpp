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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qsvm/qsvm_pipeline.hpp"

using namespace qsvm;
using namespace qsvm::pipeline;
using quantum::CVector;

namespace {

const Eigen::Vector2d kX1(0.9872, 0.1595);
const Eigen::Vector2d kX2(0.3544, 0.9351);

TrainingSet paper_set() { return TrainingSet({kX1, kX2}, {1, -1}); }

Eigen::Matrix2d paper_f() {
    Eigen::Matrix2d f;
    f << 1.5, 0.4990, 0.4990, 1.5;
    return f;
}

StateVector real_state(std::initializer_list<double> amps) {
    CVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (double a : amps) {
        v[i++] = a;
    }
    return StateVector::normalized(v);
}

// Exact normalized F^-1 y via the closed-form 2x2 inverse.
StateVector exact_inverse2(const Eigen::Matrix2d &f, const Eigen::Vector2d &y) {
    const auto x = oracle::solve2(f(0, 0), f(0, 1), f(1, 0), f(1, 1), y[0], y[1]);
    return real_state({x[0], x[1]});
}

Eigen::Vector2d unit(const std::array<double, 2> &a) { return {a[0], a[1]}; }

} // namespace

TEST_SUITE("oracle_angles and build_chi") {
    TEST_CASE("angles") {
        const TrainingSet ts({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), kX1}, {1, -1, 1});
        const OracleSpec spec = oracle_angles(ts);
        CHECK(spec.angles[0] == doctest::Approx(0.0));
        CHECK(spec.angles[1] == doctest::Approx(std::numbers::pi / 2));
        CHECK(std::abs(spec.angles[2] - 0.16016) < 1e-4);
        for (double a : spec.angles) {
            CHECK(a > -std::numbers::pi);
            CHECK(a <= std::numbers::pi);
        }
        const StateVector rotated =
            quantum::apply_gate(StateVector(1), quantum::gates::ry(spec.angles[2]), {0});
        CHECK(std::abs(rotated[0].real() - 0.9872 / kX1.norm()) < 1e-12);
        CHECK(std::abs(rotated[1].real() - 0.1595 / kX1.norm()) < 1e-12);
    }

    TEST_CASE("non-planar training data is rejected") {
        const TrainingSet ts({Eigen::Vector3d(1, 0, 0)}, {1});
        CHECK_THROWS_AS(oracle_angles(ts), std::invalid_argument);
        CHECK_THROWS_AS(build_chi(ts), std::invalid_argument);
    }

    TEST_CASE("examples") {
        const double r = 1.0 / std::sqrt(2.0);
        const StateVector same =
            build_chi(TrainingSet({Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0)}, {1, -1}));
        CHECK(same.fidelity(real_state({r, 0, r, 0})) > 1 - 1e-12);

        const StateVector chi = build_chi(paper_set());
        REQUIRE(chi.n_qubits() == 2);
        const double amps[] = {0.9872, 0.1595, 0.3544, 0.9351};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(chi[i].real() - amps[i] * r) < 1e-4);
            CHECK(chi[i].imag() == 0.0);
        }
        // Direct normalization by the summed squared norms.
        const double n_chi = kX1.squaredNorm() + kX2.squaredNorm();
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(chi[i].real() - amps[i] / std::sqrt(n_chi)) < 1e-12);
        }

        const StateVector single = build_chi(TrainingSet({Eigen::Vector2d(0, 1)}, {1}));
        CHECK(single.n_qubits() == 2);
        CHECK(std::abs(single[1]) > 1 - 1e-12);
    }

    TEST_CASE("non-power-of-two training sets are padded with empty slots") {
        const TrainingSet ts({kX1, kX2, Eigen::Vector2d(1, 1)}, {1, -1, 1});
        const StateVector chi = build_chi(ts);
        CHECK(chi.n_qubits() == 3);
        CHECK(std::abs(chi[6]) == 0.0);
        CHECK(std::abs(chi[7]) == 0.0);
    }
}

TEST_SUITE("kernel_via_discard") {
    TEST_CASE("orthonormal vectors") {
        const TrainingSet ts({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}, {1, -1});
        const auto rho = kernel_via_discard(build_chi(ts), ts).matrix();
        CHECK((rho - quantum::CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("reference vectors against the ideal and the measured kernel") {
        const TrainingSet ts = paper_set();
        const auto rho = kernel_via_discard(build_chi(ts), ts).matrix();
        const double ideal[2][2] = {{0.5000, 0.2495}, {0.2495, 0.5000}};
        const double measured[2][2] = {{0.5065, 0.2425}, {0.2425, 0.4935}};
        const double trace = oracle::dot2({0.9872, 0.1595}, {0.9872, 0.1595}) +
                             oracle::dot2({0.3544, 0.9351}, {0.3544, 0.9351});
        const double k12 = oracle::dot2({0.9872, 0.1595}, {0.3544, 0.9351});
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(rho(i, j).real() - ideal[i][j]) < 1e-3);
                CHECK(std::abs(rho(i, j).real() - measured[i][j]) < 0.02);
                CHECK(std::abs(rho(i, j).imag()) < 1e-15);
            }
        }
        CHECK(std::abs(rho(0, 1).real() - k12 / trace) < 1e-12);
    }

    TEST_CASE("layout mismatch") {
        const TrainingSet ts = paper_set();
        CHECK_THROWS_AS(kernel_via_discard(StateVector(3), ts), std::invalid_argument);
    }

    TEST_CASE("equals K / tr K over 1000 random training sets") {
        std::mt19937_64 rng(101);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t m = 1 + rng() % 4;
            std::vector<Eigen::VectorXd> xs;
            std::vector<int> ys;
            for (std::size_t i = 0; i < m; ++i) {
                xs.push_back(Eigen::Vector2d(g(rng), g(rng)));
                ys.push_back(i % 2 ? -1 : 1);
            }
            const TrainingSet ts(xs, ys);
            const StateVector chi = build_chi(ts);
            const auto rho = kernel_via_discard(chi, ts).matrix();
            // Brute-force reduced state and explicit Gram sums.
            std::vector<std::size_t> keep;
            for (std::size_t q = 0; q + 1 < chi.n_qubits(); ++q) {
                keep.push_back(q);
            }
            const auto brute = oracle::reduced(chi.amplitudes(), chi.n_qubits(), keep);
            REQUIRE((rho - brute).cwiseAbs().maxCoeff() <= 1e-10);
            double trace = 0.0;
            for (const auto &x : xs) {
                trace += x[0] * x[0] + x[1] * x[1];
            }
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    const double kij = xs[i][0] * xs[j][0] + xs[i][1] * xs[j][1];
                    REQUIRE(std::abs(rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                     kij / trace) <= 1e-10);
                }
            }
        }
    }
}

TEST_SUITE("QsvmConfig") {
    TEST_CASE("defaults and validation") {
        QsvmConfig cfg;
        CHECK(cfg.gamma == 2.0);
        CHECK(cfg.phase_qubits == 2);
        CHECK(cfg.min_register_eigenvalue() == doctest::Approx(1.0));
        CHECK(cfg.effective_inversion_constant() == doctest::Approx(1.0));
        CHECK_NOTHROW(cfg.validate());

        QsvmConfig bad = cfg;
        bad.phase_qubits = 0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = cfg;
        bad.evolution_time = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = cfg;
        bad.inversion_constant = 1.5;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = cfg;
        bad.inversion_constant = -1.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = cfg;
        bad.gamma = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}

TEST_SUITE("hhl_solve") {
    TEST_CASE("identity leaves the state unchanged") {
        QsvmConfig cfg;
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const auto u = oracle::random_unit2(rng);
            const StateVector y = real_state({u[0], u[1]});
            const HhlResult r = hhl_solve(Eigen::Matrix2d::Identity(), y, cfg);
            CHECK(r.solution.fidelity(y) > 1 - 1e-12);
            // F = I and C equal to the eigenvalue: the ancilla always flips.
            CHECK(std::abs(r.success_probability - 1.0) < 1e-12);
        }
    }

    TEST_CASE("eigenphase-exact diagonal matrix") {
        const Eigen::Matrix2d f = Eigen::Vector2d(1, 2).asDiagonal();
        const double r = 1.0 / std::sqrt(2.0);
        const HhlResult out = hhl_solve(f, real_state({r, r}), QsvmConfig{});
        CHECK(std::abs(out.solution[0].real() - 2 / std::sqrt(5.0)) < 1e-9);
        CHECK(std::abs(out.solution[1].real() - 1 / std::sqrt(5.0)) < 1e-9);
        CHECK(out.solution.fidelity(exact_inverse2(f, {r, r})) >= 1 - 1e-9);
        CHECK(out.success_probability >= 0.0);
        CHECK(out.success_probability <= 1.0);
    }

    TEST_CASE("reference F") {
        const StateVector y = prepare_label_state(Eigen::Vector2d(1, -1));
        const HhlResult out = hhl_solve(paper_f(), y, QsvmConfig{});
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(out.solution.fidelity(exact_inverse2(paper_f(), {r, -r})) >= 0.999);
        CHECK(out.solution.fidelity(real_state({1, -1})) >= 0.999);
    }

    TEST_CASE("fidelity does not decrease with more phase qubits") {
        const double r = 1.0 / std::sqrt(2.0);
        const StateVector y = real_state({r, -r});
        double previous = 0.0;
        for (std::size_t m = 1; m <= 7; ++m) {
            QsvmConfig cfg;
            cfg.phase_qubits = m;
            const double fid =
                hhl_solve(paper_f(), y, cfg).solution.fidelity(exact_inverse2(paper_f(), {r, -r}));
            CHECK(fid >= previous - 1e-12);
            previous = fid;
        }
    }

    TEST_CASE("exact on representable spectra") {
        // Random eigenbasis with eigenvalues k * lambda_unit.
        std::mt19937_64 rng(11);
        for (std::size_t m = 2; m <= 4; ++m) {
            QsvmConfig cfg;
            cfg.phase_qubits = m;
            const double unit_lambda = cfg.min_register_eigenvalue();
            const auto slots = std::size_t{1} << m;
            for (int trial = 0; trial < 20; ++trial) {
                const auto v = oracle::random_unit2(rng);
                Eigen::Matrix2d q;
                q << v[0], -v[1], v[1], v[0];
                const double l1 = unit_lambda * static_cast<double>(1 + rng() % (slots - 1));
                const double l2 = unit_lambda * static_cast<double>(1 + rng() % (slots - 1));
                const Eigen::Matrix2d f = q * Eigen::Vector2d(l1, l2).asDiagonal() * q.transpose();
                const auto y = oracle::random_unit2(rng);
                const HhlResult out = hhl_solve(f, real_state({y[0], y[1]}), cfg);
                REQUIRE(out.solution.fidelity(exact_inverse2(f, unit(y))) >= 1 - 1e-9);
                REQUIRE(out.success_probability >= 0.0);
                REQUIRE(out.success_probability <= 1.0);
            }
        }
    }

    TEST_CASE("errors") {
        const StateVector y(1);
        CHECK_THROWS_AS(hhl_solve(Eigen::Matrix2d::Identity() * 4.0, y, QsvmConfig{}),
                        EigenphaseOverflowError);
        CHECK_THROWS_AS(hhl_solve(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix(), y,
                                  QsvmConfig{}),
                        EigenphaseOverflowError);
        QsvmConfig big_c;
        big_c.inversion_constant = 2.0;
        CHECK_THROWS_AS(hhl_solve(Eigen::Matrix2d::Identity(), y, big_c), std::invalid_argument);
        Eigen::Matrix2d asym;
        asym << 1, 0.2, 0.1, 1;
        CHECK_THROWS_AS(hhl_solve(asym, y, QsvmConfig{}), std::invalid_argument);
        CHECK_THROWS_AS(hhl_solve(Eigen::Matrix2d::Identity(), StateVector(2), QsvmConfig{}),
                        std::invalid_argument);
    }

    TEST_CASE("sampled mode estimates the success probability") {
        QsvmConfig cfg;
        cfg.postselect = PostselectMode::sampled;
        cfg.shots = 20000;
        const StateVector y = prepare_label_state(Eigen::Vector2d(1, -1));
        const double exact = hhl_solve(paper_f(), y, QsvmConfig{}).success_probability;
        const HhlResult s = hhl_solve(paper_f(), y, cfg);
        CHECK(std::abs(s.success_probability - exact) < 0.02);
        CHECK(hhl_solve(paper_f(), y, cfg).success_probability == s.success_probability);
    }
}

TEST_SUITE("label state") {
    TEST_CASE("opposite labels use the fixed rotation") {
        const StateVector y = prepare_label_state(Eigen::Vector2d(1, -1));
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(y[0].real() - r) < 1e-12);
        CHECK(std::abs(y[1].real() + r) < 1e-12);
    }
    TEST_CASE("other labels are amplitude encoded") {
        const StateVector y = prepare_label_state(Eigen::Vector4d(1, 1, -1, 0));
        CHECK(y.n_qubits() == 2);
        CHECK(std::abs(y[2].real() + 1 / std::sqrt(3.0)) < 1e-12);
    }
}

TEST_SUITE("readout states") {
    TEST_CASE("u tilde examples") {
        const double r = 1.0 / std::sqrt(2.0);
        const StateVector u = prepare_u_tilde(Eigen::Vector2d(r, -r), 0.0, paper_set());
        REQUIRE(u.n_qubits() == 3);
        // The normalized amplitudes are x_k / sqrt(2), as |x_k| ~ 1.
        const double expect[] = {0.9872, 0.1595, -0.3544, -0.9351};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(u[2 + i].real() - expect[i] * r) < 1e-3);
        }
        CHECK(std::abs(u[0]) == 0.0);

        const StateVector offset_only = prepare_u_tilde(Eigen::Vector2d(0, 0), 1.0, paper_set());
        CHECK(std::abs(offset_only[0]) == doctest::Approx(1.0));

        const TrainingSet one({Eigen::Vector2d(1, 0)}, {1});
        const StateVector single = prepare_u_tilde(Eigen::VectorXd::Ones(1), 0.0, one);
        CHECK(std::abs(single[2]) == doctest::Approx(1.0));

        CHECK_THROWS_AS(prepare_u_tilde(Eigen::Vector2d(0, 0), 0.0, paper_set()),
                        std::invalid_argument);
        CHECK_THROWS_AS(prepare_u_tilde(Eigen::Vector3d(1, 0, 0), 0.0, paper_set()),
                        std::invalid_argument);
    }

    TEST_CASE("x0 tilde examples") {
        const double r = 1.0 / std::sqrt(2.0);
        const StateVector a = prepare_x0_tilde(Eigen::Vector2d(1, 0), 1);
        CHECK(a.fidelity(real_state({r, 0, r, 0})) > 1 - 1e-12);

        const StateVector b = prepare_x0_tilde(Eigen::Vector2d(0, 2), 1);
        CHECK(std::abs(b[0].real() - 1 / std::sqrt(5.0)) < 1e-12);
        CHECK(std::abs(b[3].real() - 2 / std::sqrt(5.0)) < 1e-12);

        const StateVector c = prepare_x0_tilde(kX1, 2);
        const double s3 = 1.0 / std::sqrt(3.0);
        const double expect[] = {1, 0, 0.9872, 0.1595, 0.9872, 0.1595, 0, 0};
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(std::abs(c[i].real() - expect[i] * s3) < 1e-3);
        }
        const double n = 1.0 + 2.0 * kX1.squaredNorm();
        CHECK(std::abs(c[2].real() - 0.9872 / std::sqrt(n)) < 1e-12);

        CHECK_THROWS_AS(prepare_x0_tilde(Eigen::Vector2d(0, 0), 2), std::invalid_argument);
    }

    TEST_CASE("U_x0 maps the query state to zero and preserves overlaps") {
        const StateVector zero(3);
        CHECK(quantum::apply_gate(zero, u_x0_unitary(zero), {0, 1, 2}).fidelity(zero) >
              1 - 1e-12);

        std::mt19937_64 rng(13);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 200; ++trial) {
            const StateVector x0 = prepare_x0_tilde(Eigen::Vector2d(g(rng), g(rng)), 2);
            const Gate u = u_x0_unitary(x0);
            const StateVector mapped = quantum::apply_gate(x0, u, {0, 1, 2});
            REQUIRE(std::abs(mapped[0] - quantum::Complex(1.0, 0.0)) <= 1e-12);

            const auto psi = oracle::random_state(3, rng);
            const StateVector utilde = StateVector::from_amplitudes(psi);
            const auto lead = quantum::apply_gate(utilde, u, {0, 1, 2})[0];
            const quantum::Complex direct = x0.amplitudes().dot(psi); // conj(x0) . psi
            REQUIRE(std::abs(lead - direct) <= 1e-12);
        }
        // Complex input.
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector x = StateVector::from_amplitudes(oracle::random_state(2, rng));
            const StateVector mapped = quantum::apply_gate(x, u_x0_unitary(x), {0, 1});
            REQUIRE(std::abs(mapped[0] - quantum::Complex(1.0, 0.0)) <= 1e-12);
        }
    }

    TEST_CASE("U_x0 rejects unnormalized input") {
        CVector v = CVector::Zero(4);
        v[0] = 2.0;
        CHECK_THROWS(u_x0_unitary(StateVector::from_amplitudes(v)));
    }
}

TEST_SUITE("QuantumSvm") {
    TEST_CASE("reference training points") {
        const QsvmConfig cfg;
        const ClassificationResult six = qsvm_classify(paper_set(), kX1, cfg);
        const ClassificationResult nine = qsvm_classify(paper_set(), kX2, cfg);
        CHECK(svm::character(six.label) == "6");
        CHECK(svm::character(nine.label) == "9");
        CHECK(six.postselect_probability > 0.0);
        CHECK(six.postselect_probability <= 1.0);

        const svm::SvmModel classical = svm::train_no_offset(paper_set(), 2.0);
        CHECK(six.label == svm::classify(classical, kX1));
        CHECK(nine.label == svm::classify(classical, kX2));
    }

    TEST_CASE("trained state") {
        const QuantumSvm model = QuantumSvm::train(paper_set(), QsvmConfig{});
        const Eigen::MatrixXd k = svm::kernel_matrix(paper_set());
        CHECK((model.kernel() - k).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(model.alphas().norm() - 1.0) < 1e-12);
        // (1, -1) is close to an eigenvector of F.
        CHECK(std::abs(model.alphas()[0] + model.alphas()[1]) < 1e-3);
        CHECK(model.alphas()[0] > 0.0);
    }

    TEST_CASE("exact expectation is half the readout overlap") {
        const QuantumSvm model = QuantumSvm::train(paper_set(), QsvmConfig{});
        std::mt19937_64 rng(17);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 200; ++trial) {
            const Eigen::Vector2d x0(g(rng), g(rng));
            const auto r = model.classify(x0);
            const auto overlap = prepare_x0_tilde(x0, 2).inner(model.u_tilde());
            REQUIRE(std::abs(r.expectation - overlap / 2.0) <= 1e-10);
            if (std::abs(r.expectation.real()) > 1e-9 && std::abs(overlap.real()) > 1e-9) {
                REQUIRE(std::signbit(r.expectation.real()) == std::signbit(overlap.real()));
            }
        }
    }

    TEST_CASE("label is invariant under query scaling") {
        const QuantumSvm model = QuantumSvm::train(paper_set(), QsvmConfig{});
        std::mt19937_64 rng(19);
        int checked = 0;
        for (int trial = 0; trial < 500; ++trial) {
            const Eigen::Vector2d x0 = unit(oracle::random_unit2(rng));
            const Label base = model.classify(x0).label;
            if (base == Label::ambiguous) {
                continue;
            }
            ++checked;
            for (double c : {0.1, 1.0, 10.0}) {
                REQUIRE(model.classify(c * x0).label == base);
            }
        }
        CHECK(checked > 400);
    }

    TEST_CASE("exactly symmetric query is ambiguous") {
        const TrainingSet ts({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}, {1, -1});
        const double r = 1.0 / std::sqrt(2.0);
        const auto out = qsvm_classify(ts, Eigen::Vector2d(r, r), QsvmConfig{});
        CHECK(out.label == Label::ambiguous);
    }

    TEST_CASE("sampled readout agrees with the exact sign away from zero") {
        QsvmConfig cfg;
        cfg.postselect = PostselectMode::sampled;
        cfg.shots = 20000;
        const QuantumSvm sampled = QuantumSvm::train(paper_set(), cfg);
        const QuantumSvm exact = QuantumSvm::train(paper_set(), QsvmConfig{});
        for (const Eigen::Vector2d &x0 : {kX1, kX2}) {
            const auto s = sampled.classify(x0);
            const auto e = exact.classify(x0);
            CHECK(s.label == e.label);
            CHECK(std::abs(s.expectation.real() - e.expectation.real()) < 0.02);
            CHECK(std::abs(s.expectation.imag() - e.expectation.imag()) < 0.02);
        }
    }

    TEST_CASE("agrees with the classical decision on 1000 random queries") {
        const QuantumSvm model = QuantumSvm::train(paper_set(), QsvmConfig{});
        const svm::SvmModel classical = svm::train_no_offset(paper_set(), 2.0);
        std::mt19937_64 rng(23);
        int compared = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const Eigen::Vector2d x0 = unit(oracle::random_unit2(rng));
            const double d = svm::decision_value(classical, x0);
            if (std::abs(d) <= 0.05) {
                continue;
            }
            ++compared;
            REQUIRE(model.classify(x0).label == svm::sign_label(d));
        }
        CHECK(compared > 900);
    }
}
