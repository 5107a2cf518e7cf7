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
 * Exact least-squares SVM with a linear kernel.
 *
 * Training solves
 *
 *     [ 0   1^T          ] [ b ]   [ 0 ]
 *     [ 1   K + I/gamma  ] [ a ] = [ y ]
 *
 * by dense LU with partial pivoting, or the offset-free reduction
 * (K + I/gamma) a = y. These routines are the reference the simulated
 * quantum classifier is checked against.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qsvm::svm {

/// Decision values with magnitude below this are reported as ambiguous.
inline constexpr double kAmbiguityThreshold = 1e-9;

/// M labelled real vectors of a common dimension N.
class TrainingSet {
  public:
    TrainingSet(std::vector<Eigen::VectorXd> vectors, std::vector<int> labels);

    [[nodiscard]] std::size_t size() const { return vectors_.size(); }
    [[nodiscard]] std::size_t dimension() const {
        return static_cast<std::size_t>(vectors_.front().size());
    }
    [[nodiscard]] const Eigen::VectorXd &vector(std::size_t i) const { return vectors_.at(i); }
    [[nodiscard]] int label(std::size_t i) const { return labels_.at(i); }
    [[nodiscard]] const std::vector<Eigen::VectorXd> &vectors() const { return vectors_; }
    [[nodiscard]] Eigen::VectorXd label_vector() const;
    /// Sum of squared norms, i.e. the trace of the linear kernel.
    [[nodiscard]] double kernel_trace() const;

  private:
    std::vector<Eigen::VectorXd> vectors_;
    std::vector<int> labels_;
};

struct SvmModel {
    double offset = 0.0;
    Eigen::VectorXd alphas;
    double gamma = 0.0;
    bool with_offset = false;
    TrainingSet training_set;
};

enum class Label { negative = -1, ambiguous = 0, positive = 1 };

/// "6" for the positive class, "9" for the negative class.
std::string_view character(Label label);
Label sign_label(double value, double threshold = kAmbiguityThreshold);

class SingularSystemError : public std::runtime_error {
  public:
    SingularSystemError(const std::string &what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}
    /// Reciprocal-condition based estimate of cond_1 (may be +inf).
    [[nodiscard]] double condition_estimate() const { return condition_estimate_; }

  private:
    double condition_estimate_;
};

/// Gram matrix of pairwise dot products.
Eigen::MatrixXd kernel_matrix(const TrainingSet &ts);

/// Full system with offset; sum(alphas) == 0 up to rounding.
SvmModel solve_ls_svm(const TrainingSet &ts, double gamma);

/// Offset-free reduction (K + I/gamma) a = y.
Eigen::VectorXd solve_no_offset(const Eigen::MatrixXd &kernel, const Eigen::VectorXd &labels,
                                double gamma);

/// solve_no_offset wrapped into a model with offset 0.
SvmModel train_no_offset(const TrainingSet &ts, double gamma);

/// b + sum_i alpha_i (x_i . x0)
double decision_value(const SvmModel &model, const Eigen::VectorXd &x0);

Label classify(const SvmModel &model, const Eigen::VectorXd &x0);

} // namespace qsvm::svm
