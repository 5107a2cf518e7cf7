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
 * Commands behind the `qsvm` executable and their report formats.
 *
 * Exit codes: 0 success, 1 error, 2 at least one ambiguous classification.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qsvm/ocr_features.hpp"
#include "qsvm/qsvm_pipeline.hpp"
#include "qsvm/svm_classical.hpp"

namespace qsvm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAmbiguous = 2;

enum class OutputFormat { json, csv };

struct Options {
    pipeline::QsvmConfig qsvm;
    std::string preset = "paper";
    OutputFormat format = OutputFormat::json;
    std::filesystem::path asset_dir;
};

/// key=value lines, '#' comments. Recognized keys: gamma, phase_qubits, t0,
/// inversion_constant, preset, format, postselect, shots, seed.
std::map<std::string, std::string> parse_config_text(const std::string &text);
std::map<std::string, std::string> load_config_file(const std::filesystem::path &path);
/// Applies config entries onto `opts`; throws on unknown keys or bad values.
void apply_config(Options &opts, const std::map<std::string, std::string> &config);

/// QSVM_ASSET_DIR if set, else the directory configured at build time.
std::filesystem::path default_asset_dir();

ocr::ConversionMap preset_map(const std::string &name);

struct TrainingEntry {
    std::string id;
    Eigen::VectorXd vector;
    int label = 1;
};

struct QueryRecord {
    std::string id;
    std::string source;
    std::optional<ocr::FeatureVector> raw;
    Eigen::VectorXd features;
    double classical_decision = 0.0;
    pipeline::Complex quantum_expectation;
    svm::Label classical_label = svm::Label::ambiguous;
    svm::Label quantum_label = svm::Label::ambiguous;
    bool agree = false;
    std::optional<std::string> expected;
};

struct RunReport {
    std::string command;
    Options options;
    std::vector<TrainingEntry> training;
    Eigen::MatrixXd kernel_ideal;
    Eigen::MatrixXd kernel_simulated;
    std::optional<Eigen::MatrixXd> kernel_paper_reference;
    Eigen::VectorXd alphas_classical;
    Eigen::VectorXd alphas_quantum;
    double success_probability = 0.0;
    std::vector<QueryRecord> queries;
};

/// Measured K / tr(K) reported for the hardware run.
Eigen::Matrix2d paper_measured_kernel();
/// (0.9872, 0.1595) for "6" and (0.3544, 0.9351) for "9".
Eigen::Vector2d paper_x1();
Eigen::Vector2d paper_x2();

/// A spec is an inline "v,h" pair or a PGM path featurized with `map`.
Eigen::VectorXd resolve_vector(const std::string &spec, const ocr::ConversionMap &map,
                               std::optional<ocr::FeatureVector> *raw = nullptr);

RunReport run_pipeline(const std::string &command, const Options &opts,
                       std::vector<TrainingEntry> training,
                       std::vector<QueryRecord> queries);

RunReport cmd_reproduce(const Options &opts);
/// `train_specs` entries are LABEL=SPEC with LABEL one of 6, 9, +1, -1.
/// Empty means the two reference vectors.
RunReport cmd_classify(const Options &opts, const std::vector<std::string> &train_specs,
                       const std::vector<std::string> &query_specs);
nlohmann::json cmd_features(const std::filesystem::path &image, const std::string &preset);

/// Rounds to 6 significant digits so reports are byte-stable.
double round6(double x);

nlohmann::json to_json(const RunReport &report);
std::string to_csv(const RunReport &report);
int exit_code(const RunReport &report);

/// Entry point used by the executable; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qsvm::cli
