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

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsvm/ocr_features.hpp"
#include "qsvm/qsvm_pipeline.hpp"
#include "qsvm/svm_classical.hpp"

namespace py = pybind11;
using namespace qsvm;

namespace {

svm::TrainingSet training_set(const Eigen::MatrixXd &vectors, const std::vector<int> &labels) {
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(static_cast<std::size_t>(vectors.rows()));
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        rows.emplace_back(vectors.row(i).transpose());
    }
    return svm::TrainingSet(std::move(rows), labels);
}

pipeline::QsvmConfig make_config(double gamma, std::size_t phase_qubits, double t0,
                                 std::optional<double> inversion_constant,
                                 const std::string &postselect, std::size_t shots,
                                 std::uint64_t seed) {
    pipeline::QsvmConfig cfg;
    cfg.gamma = gamma;
    cfg.phase_qubits = phase_qubits;
    cfg.evolution_time = t0;
    cfg.inversion_constant = inversion_constant;
    if (postselect == "exact") {
        cfg.postselect = pipeline::PostselectMode::exact;
    } else if (postselect == "sampled") {
        cfg.postselect = pipeline::PostselectMode::sampled;
    } else {
        throw std::invalid_argument("postselect must be 'exact' or 'sampled'");
    }
    cfg.shots = shots;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

py::dict classification_dict(const pipeline::ClassificationResult &r) {
    py::dict d;
    d["expectation"] = r.expectation;
    d["label"] = svm::character(r.label);
    d["postselect_probability"] = r.postselect_probability;
    return d;
}

ocr::ConversionMap preset(const std::string &name) {
    if (name == "paper") {
        return ocr::ConversionMap::paper();
    }
    if (name == "identity") {
        return ocr::ConversionMap::identity(false);
    }
    throw std::invalid_argument("preset must be 'paper' or 'identity'");
}

// Keyword defaults shared by every entry point that takes a configuration.
#define QSVM_CONFIG_ARGS                                                                          \
    py::arg("gamma") = 2.0, py::arg("phase_qubits") = 2,                                          \
    py::arg("t0") = std::numbers::pi / 2.0, py::arg("inversion_constant") = py::none(),           \
    py::arg("postselect") = "exact", py::arg("shots") = 8192, py::arg("seed") = 0x5eed

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulated quantum support-vector classifier for two-character recognition";

    py::register_exception<pipeline::EigenphaseOverflowError>(m, "EigenphaseOverflowError",
                                                              PyExc_ValueError);
    py::register_exception<svm::SingularSystemError>(m, "SingularSystemError",
                                                     PyExc_ArithmeticError);
    py::register_exception<ocr::PgmFormatError>(m, "PgmFormatError", PyExc_ValueError);
    py::register_exception<ocr::BlankHalfError>(m, "BlankHalfError", PyExc_ValueError);

    // Classical reference.
    m.def(
        "kernel_matrix",
        [](const Eigen::MatrixXd &vectors, const std::vector<int> &labels) {
            return svm::kernel_matrix(training_set(vectors, labels));
        },
        py::arg("vectors"), py::arg("labels"), "Gram matrix of the rows of `vectors`.");
    m.def("solve_no_offset", &svm::solve_no_offset, py::arg("kernel"), py::arg("labels"),
          py::arg("gamma"), "Solve (K + I/gamma) alpha = y.");
    m.def(
        "solve_ls_svm",
        [](const Eigen::MatrixXd &vectors, const std::vector<int> &labels, double gamma) {
            const svm::SvmModel model = svm::solve_ls_svm(training_set(vectors, labels), gamma);
            return py::make_tuple(model.offset, model.alphas);
        },
        py::arg("vectors"), py::arg("labels"), py::arg("gamma") = 2.0,
        "Full LS-SVM with offset; returns (offset, alphas).");
    m.def(
        "decision_value",
        [](const Eigen::MatrixXd &vectors, const std::vector<int> &labels,
           const Eigen::VectorXd &query, double gamma) {
            return svm::decision_value(svm::train_no_offset(training_set(vectors, labels), gamma),
                                       query);
        },
        py::arg("vectors"), py::arg("labels"), py::arg("query"), py::arg("gamma") = 2.0,
        "Decision value of the no-offset model.");
    m.def(
        "classical_classify",
        [](const Eigen::MatrixXd &vectors, const std::vector<int> &labels,
           const Eigen::VectorXd &query, double gamma) {
            return svm::character(
                svm::classify(svm::train_no_offset(training_set(vectors, labels), gamma), query));
        },
        py::arg("vectors"), py::arg("labels"), py::arg("query"), py::arg("gamma") = 2.0);

    // Quantum pipeline.
    m.def(
        "simulated_kernel",
        [](const Eigen::MatrixXd &vectors, const std::vector<int> &labels) {
            const svm::TrainingSet ts = training_set(vectors, labels);
            const auto rho = pipeline::kernel_via_discard(pipeline::build_chi(ts), ts);
            const auto m = static_cast<Eigen::Index>(ts.size());
            return Eigen::MatrixXd(rho.matrix().real().topLeftCorner(m, m));
        },
        py::arg("vectors"), py::arg("labels"),
        "K / tr(K) read from the reduced index register.");
    m.def(
        "hhl_solve",
        [](const Eigen::MatrixXd &f, const Eigen::VectorXcd &rhs, std::size_t phase_qubits,
           double t0, std::optional<double> inversion_constant) {
            const auto cfg =
                make_config(2.0, phase_qubits, t0, inversion_constant, "exact", 1, 0);
            const auto out =
                pipeline::hhl_solve(f, quantum::StateVector::normalized(rhs), cfg);
            return py::make_tuple(Eigen::VectorXcd(out.solution.amplitudes()),
                                  out.success_probability);
        },
        py::arg("f"), py::arg("rhs"), py::arg("phase_qubits") = 2,
        py::arg("t0") = std::numbers::pi / 2.0, py::arg("inversion_constant") = py::none(),
        "Phase-estimation inversion; returns (normalized solution, success probability).");

    py::class_<pipeline::QuantumSvm>(m, "QuantumSvm")
        .def(py::init([](const Eigen::MatrixXd &vectors, const std::vector<int> &labels,
                         double gamma, std::size_t phase_qubits, double t0,
                         std::optional<double> c, const std::string &postselect,
                         std::size_t shots, std::uint64_t seed) {
                 return pipeline::QuantumSvm::train(
                     training_set(vectors, labels),
                     make_config(gamma, phase_qubits, t0, c, postselect, shots, seed));
             }),
             py::arg("vectors"), py::arg("labels"), QSVM_CONFIG_ARGS)
        .def(
            "classify",
            [](const pipeline::QuantumSvm &self, const Eigen::VectorXd &query) {
                return classification_dict(self.classify(query));
            },
            py::arg("query"))
        .def_property_readonly("kernel", &pipeline::QuantumSvm::kernel)
        .def_property_readonly("alphas", &pipeline::QuantumSvm::alphas)
        .def_property_readonly("success_probability",
                               &pipeline::QuantumSvm::success_probability);

    m.def(
        "qsvm_classify",
        [](const Eigen::MatrixXd &vectors, const std::vector<int> &labels,
           const Eigen::VectorXd &query, double gamma, std::size_t phase_qubits, double t0,
           std::optional<double> c, const std::string &postselect, std::size_t shots,
           std::uint64_t seed) {
            return classification_dict(pipeline::qsvm_classify(
                training_set(vectors, labels), query,
                make_config(gamma, phase_qubits, t0, c, postselect, shots, seed)));
        },
        py::arg("vectors"), py::arg("labels"), py::arg("query"), QSVM_CONFIG_ARGS,
        "Train and classify one query; returns expectation, label and post-selection weight.");

    // Features.
    m.def(
        "raw_ratios",
        [](const std::string &path) {
            const auto f = ocr::ratios(ocr::binarize(ocr::load_image_file(path)));
            return py::make_tuple(f.v, f.h);
        },
        py::arg("path"), "Ink ratios (left/right, upper/lower) of a PGM glyph.");
    m.def(
        "featurize",
        [](const std::string &path, const std::string &preset_name) {
            const auto f = ocr::featurize(ocr::load_image_file(path), preset(preset_name));
            return py::make_tuple(f.v, f.h);
        },
        py::arg("path"), py::arg("preset") = "paper",
        "Converted feature vector of a PGM glyph.");
}
