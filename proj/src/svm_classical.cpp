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

#include "qsvm/svm_classical.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qsvm::svm {

namespace {

constexpr double kMinReciprocalCondition = 1e-14;
constexpr double kResidualTolerance = 1e-8;

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be a positive finite number");
    }
}

Eigen::VectorXd lu_solve(const Eigen::MatrixXd &a, const Eigen::VectorXd &rhs) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
    const double rcond = pivot_ratio > kMinReciprocalCondition ? lu.rcond() : 0.0;
    if (!(rcond > kMinReciprocalCondition)) {
        const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
        throw SingularSystemError("LS-SVM system is singular (condition estimate " +
                                      std::to_string(cond) + ")",
                                  cond);
    }
    Eigen::VectorXd x = lu.solve(rhs);
    const double residual = (a * x - rhs).lpNorm<Eigen::Infinity>();
    if (!(residual <= kResidualTolerance * std::max(1.0, rhs.lpNorm<Eigen::Infinity>()))) {
        throw SingularSystemError("LS-SVM solve residual " + std::to_string(residual) +
                                      " exceeds tolerance",
                                  1.0 / rcond);
    }
    return x;
}

} // namespace

TrainingSet::TrainingSet(std::vector<Eigen::VectorXd> vectors, std::vector<int> labels)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
    if (vectors_.empty()) {
        throw std::invalid_argument("training set is empty");
    }
    if (vectors_.size() != labels_.size()) {
        throw std::invalid_argument("training set needs one label per vector");
    }
    const auto n = vectors_.front().size();
    if (n == 0) {
        throw std::invalid_argument("training vectors must be non-empty");
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        if (vectors_[i].size() != n) {
            throw std::invalid_argument("training vector " + std::to_string(i) +
                                        " has inconsistent dimension");
        }
        if (vectors_[i].norm() == 0.0) {
            throw std::invalid_argument("training vector " + std::to_string(i) + " is zero");
        }
        if (labels_[i] != 1 && labels_[i] != -1) {
            throw std::invalid_argument("labels must be +1 or -1");
        }
    }
}

Eigen::VectorXd TrainingSet::label_vector() const {
    Eigen::VectorXd y(static_cast<Eigen::Index>(labels_.size()));
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        y[static_cast<Eigen::Index>(i)] = labels_[i];
    }
    return y;
}

double TrainingSet::kernel_trace() const {
    double t = 0.0;
    for (const auto &v : vectors_) {
        t += v.squaredNorm();
    }
    return t;
}

std::string_view character(Label label) {
    switch (label) {
    case Label::positive:
        return "6";
    case Label::negative:
        return "9";
    case Label::ambiguous:
        break;
    }
    return "ambiguous";
}

Label sign_label(double value, double threshold) {
    if (!(std::abs(value) >= threshold)) {
        return Label::ambiguous;
    }
    return value > 0.0 ? Label::positive : Label::negative;
}

Eigen::MatrixXd kernel_matrix(const TrainingSet &ts) {
    const auto m = static_cast<Eigen::Index>(ts.size());
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = ts.vector(static_cast<std::size_t>(i))
                                 .dot(ts.vector(static_cast<std::size_t>(j)));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

SvmModel solve_ls_svm(const TrainingSet &ts, double gamma) {
    check_gamma(gamma);
    const auto m = static_cast<Eigen::Index>(ts.size());
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m + 1, m + 1);
    f.block(0, 1, 1, m).setOnes();
    f.block(1, 0, m, 1).setOnes();
    f.block(1, 1, m, m) =
        kernel_matrix(ts) + Eigen::MatrixXd::Identity(m, m) / gamma;
    Eigen::VectorXd rhs(m + 1);
    rhs << 0.0, ts.label_vector();

    const Eigen::VectorXd sol = lu_solve(f, rhs);
    return SvmModel{sol[0], sol.tail(m), gamma, true, ts};
}

Eigen::VectorXd solve_no_offset(const Eigen::MatrixXd &kernel, const Eigen::VectorXd &labels,
                                double gamma) {
    check_gamma(gamma);
    if (kernel.rows() != kernel.cols()) {
        throw std::invalid_argument("kernel matrix must be square");
    }
    if (kernel.rows() != labels.size()) {
        throw std::invalid_argument("kernel and label dimensions differ");
    }
    const auto m = kernel.rows();
    return lu_solve(kernel + Eigen::MatrixXd::Identity(m, m) / gamma, labels);
}

SvmModel train_no_offset(const TrainingSet &ts, double gamma) {
    return SvmModel{0.0, solve_no_offset(kernel_matrix(ts), ts.label_vector(), gamma), gamma,
                    false, ts};
}

double decision_value(const SvmModel &model, const Eigen::VectorXd &x0) {
    const TrainingSet &ts = model.training_set;
    if (static_cast<std::size_t>(x0.size()) != ts.dimension()) {
        throw std::invalid_argument("query dimension " + std::to_string(x0.size()) +
                                    " does not match training dimension " +
                                    std::to_string(ts.dimension()));
    }
    double value = model.offset;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        value += model.alphas[static_cast<Eigen::Index>(i)] * ts.vector(i).dot(x0);
    }
    return value;
}

Label classify(const SvmModel &model, const Eigen::VectorXd &x0) {
    return sign_label(decision_value(model, x0));
}

} // namespace qsvm::svm
