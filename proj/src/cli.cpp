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

#include "qsvm/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#ifndef QSVM_DEFAULT_ASSET_DIR
#define QSVM_DEFAULT_ASSET_DIR "assets"
#endif

namespace qsvm::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string &key, const std::string &value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != value.size() || value.empty()) {
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + value + "'");
    }
    return v;
}

std::size_t parse_count(const std::string &key, const std::string &value) {
    const double v = parse_double(key, value);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw std::invalid_argument("config: '" + key + "' expects a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

OutputFormat parse_format(const std::string &value) {
    if (value == "json") {
        return OutputFormat::json;
    }
    if (value == "csv") {
        return OutputFormat::csv;
    }
    throw std::invalid_argument("format must be json or csv, got '" + value + "'");
}

// Parses "a,b" into a vector; nullopt when the text is not two numbers.
std::optional<Eigen::VectorXd> parse_inline(const std::string &spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
        return std::nullopt;
    }
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        std::size_t used = 0;
        try {
            parts.push_back(std::stod(item, &used));
        } catch (const std::exception &) {
            return std::nullopt;
        }
        if (used != item.size()) {
            return std::nullopt;
        }
    }
    if (parts.size() != 2) {
        return std::nullopt;
    }
    return Eigen::Vector2d(parts[0], parts[1]);
}

int parse_label(const std::string &text) {
    if (text == "6" || text == "+1" || text == "1") {
        return 1;
    }
    if (text == "9" || text == "-1") {
        return -1;
    }
    throw std::invalid_argument("training label must be 6, 9, +1 or -1, got '" + text + "'");
}

std::string label_string(svm::Label l) { return std::string(svm::character(l)); }

json matrix_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(round6(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Eigen::VectorXd &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(round6(v[i]));
    }
    return out;
}

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string postselect_name(pipeline::PostselectMode mode) {
    return mode == pipeline::PostselectMode::exact ? "exact" : "sampled";
}

std::string stem_of(const std::string &spec) { return std::filesystem::path(spec).stem().string(); }

} // namespace

// ---------------------------------------------------------------------------
// Configuration

std::map<std::string, std::string> parse_config_text(const std::string &text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> load_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_config(Options &opts, const std::map<std::string, std::string> &config) {
    for (const auto &[key, value] : config) {
        if (key == "gamma") {
            opts.qsvm.gamma = parse_double(key, value);
        } else if (key == "phase_qubits") {
            opts.qsvm.phase_qubits = parse_count(key, value);
        } else if (key == "t0") {
            opts.qsvm.evolution_time = parse_double(key, value);
        } else if (key == "inversion_constant") {
            opts.qsvm.inversion_constant = parse_double(key, value);
        } else if (key == "preset") {
            preset_map(value);
            opts.preset = value;
        } else if (key == "format") {
            opts.format = parse_format(value);
        } else if (key == "postselect") {
            if (value == "exact") {
                opts.qsvm.postselect = pipeline::PostselectMode::exact;
            } else if (value == "sampled") {
                opts.qsvm.postselect = pipeline::PostselectMode::sampled;
            } else {
                throw std::invalid_argument("postselect must be exact or sampled");
            }
        } else if (key == "shots") {
            opts.qsvm.shots = parse_count(key, value);
        } else if (key == "seed") {
            opts.qsvm.seed = parse_count(key, value);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

std::filesystem::path default_asset_dir() {
    if (const char *env = std::getenv("QSVM_ASSET_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return QSVM_DEFAULT_ASSET_DIR;
}

ocr::ConversionMap preset_map(const std::string &name) {
    if (name == "paper") {
        return ocr::ConversionMap::paper();
    }
    if (name == "identity") {
        return ocr::ConversionMap::identity(false);
    }
    throw std::invalid_argument("preset must be paper or identity, got '" + name + "'");
}

Eigen::Matrix2d paper_measured_kernel() {
    Eigen::Matrix2d k;
    k << 0.5065, 0.2425, 0.2425, 0.4935;
    return k;
}

Eigen::Vector2d paper_x1() { return {0.9872, 0.1595}; }
Eigen::Vector2d paper_x2() { return {0.3544, 0.9351}; }

Eigen::VectorXd resolve_vector(const std::string &spec, const ocr::ConversionMap &map,
                               std::optional<ocr::FeatureVector> *raw) {
    if (auto v = parse_inline(spec)) {
        return *v;
    }
    const ocr::FeatureVector r = ocr::ratios(ocr::binarize(ocr::load_image_file(spec)));
    if (raw != nullptr) {
        *raw = r;
    }
    return map.apply(r).as_vector();
}

// ---------------------------------------------------------------------------
// Commands

RunReport run_pipeline(const std::string &command, const Options &opts,
                       std::vector<TrainingEntry> training, std::vector<QueryRecord> queries) {
    std::vector<Eigen::VectorXd> vectors;
    std::vector<int> labels;
    for (const auto &t : training) {
        vectors.push_back(t.vector);
        labels.push_back(t.label);
    }
    const svm::TrainingSet ts(vectors, labels);
    const svm::SvmModel classical = svm::train_no_offset(ts, opts.qsvm.gamma);
    const auto quantum = pipeline::QuantumSvm::train(ts, opts.qsvm);

    RunReport report;
    report.command = command;
    report.options = opts;
    report.training = std::move(training);
    report.kernel_ideal = svm::kernel_matrix(ts) / ts.kernel_trace();
    report.kernel_simulated = quantum.kernel() / ts.kernel_trace();
    report.alphas_classical = classical.alphas;
    report.alphas_quantum = quantum.alphas();
    report.success_probability = quantum.success_probability();

    for (auto &q : queries) {
        q.classical_decision = svm::decision_value(classical, q.features);
        q.classical_label = svm::sign_label(q.classical_decision);
        const pipeline::ClassificationResult r = quantum.classify(q.features);
        q.quantum_expectation = r.expectation;
        q.quantum_label = r.label;
        q.agree = q.classical_label == q.quantum_label && q.quantum_label != svm::Label::ambiguous;
    }
    report.queries = std::move(queries);
    return report;
}

RunReport cmd_reproduce(const Options &opts) {
    const std::filesystem::path glyphs = opts.asset_dir / "glyphs";
    const std::filesystem::path manifest = glyphs / "handwritten.txt";
    for (const auto &p : {glyphs / "standard_6.pgm", glyphs / "standard_9.pgm", manifest}) {
        if (!std::filesystem::exists(p)) {
            throw std::runtime_error("missing bundled asset: " + p.string() +
                                     " (set QSVM_ASSET_DIR)");
        }
    }
    const ocr::ConversionMap map = preset_map(opts.preset);

    std::vector<TrainingEntry> training{{"x1", paper_x1(), 1}, {"x2", paper_x2(), -1}};

    std::vector<std::pair<std::string, std::string>> sources{{"standard_6.pgm", "6"},
                                                             {"standard_9.pgm", "9"}};
    std::ifstream in(manifest);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string file, expected;
        if (!(fields >> file >> expected)) {
            throw std::runtime_error("malformed manifest line: " + line);
        }
        sources.emplace_back(file, expected);
    }

    std::vector<QueryRecord> queries;
    for (const auto &[file, expected] : sources) {
        QueryRecord q;
        q.id = stem_of(file);
        q.source = file;
        q.features = resolve_vector((glyphs / file).string(), map, &q.raw);
        q.expected = expected;
        queries.push_back(std::move(q));
    }

    RunReport report = run_pipeline("reproduce", opts, std::move(training), std::move(queries));
    report.kernel_paper_reference = Eigen::MatrixXd(paper_measured_kernel());
    return report;
}

RunReport cmd_classify(const Options &opts, const std::vector<std::string> &train_specs,
                       const std::vector<std::string> &query_specs) {
    if (query_specs.empty()) {
        throw std::invalid_argument("classify needs at least one query");
    }
    const ocr::ConversionMap map = preset_map(opts.preset);

    std::vector<TrainingEntry> training;
    if (train_specs.empty()) {
        training = {{"x1", paper_x1(), 1}, {"x2", paper_x2(), -1}};
    }
    for (std::size_t i = 0; i < train_specs.size(); ++i) {
        const auto &spec = train_specs[i];
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("training spec must be LABEL=SPEC, got '" + spec + "'");
        }
        const std::string body = spec.substr(eq + 1);
        const bool is_inline = parse_inline(body).has_value();
        training.push_back({is_inline ? "t" + std::to_string(i + 1) : stem_of(body),
                            resolve_vector(body, map), parse_label(spec.substr(0, eq))});
    }

    std::vector<QueryRecord> queries;
    for (std::size_t i = 0; i < query_specs.size(); ++i) {
        QueryRecord q;
        q.source = query_specs[i];
        q.id = parse_inline(q.source) ? "q" + std::to_string(i + 1) : stem_of(q.source);
        q.features = resolve_vector(q.source, map, &q.raw);
        queries.push_back(std::move(q));
    }
    return run_pipeline("classify", opts, std::move(training), std::move(queries));
}

json cmd_features(const std::filesystem::path &image, const std::string &preset) {
    const ocr::ConversionMap map = preset_map(preset);
    const ocr::FeatureVector raw = ocr::ratios(ocr::binarize(ocr::load_image_file(image)));
    const ocr::FeatureVector converted = map.apply(raw);
    return json{{"image", image.string()},
                {"preset", preset},
                {"raw", {{"v", round6(raw.v)}, {"h", round6(raw.h)}}},
                {"features", {{"v", round6(converted.v)}, {"h", round6(converted.h)}}}};
}

// ---------------------------------------------------------------------------
// Reports

double round6(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::strtod(fmt6(x).c_str(), nullptr);
}

json to_json(const RunReport &report) {
    const auto &cfg = report.options.qsvm;
    json j;
    j["command"] = report.command;
    j["config"] = {{"gamma", round6(cfg.gamma)},
                   {"phase_qubits", cfg.phase_qubits},
                   {"t0", round6(cfg.evolution_time)},
                   {"inversion_constant", round6(cfg.effective_inversion_constant())},
                   {"offset", 0.0},
                   {"preset", report.options.preset},
                   {"postselect", postselect_name(cfg.postselect)}};
    if (cfg.postselect == pipeline::PostselectMode::sampled) {
        j["config"]["shots"] = cfg.shots;
        j["config"]["seed"] = cfg.seed;
    }

    json training = json::array();
    for (const auto &t : report.training) {
        training.push_back({{"id", t.id},
                            {"label", t.label > 0 ? "6" : "9"},
                            {"vector", vector_json(t.vector)}});
    }
    j["training"] = std::move(training);

    j["kernel"] = {{"ideal", matrix_json(report.kernel_ideal)},
                   {"simulated", matrix_json(report.kernel_simulated)}};
    if (report.kernel_paper_reference) {
        const Eigen::MatrixXd dev = report.kernel_simulated - *report.kernel_paper_reference;
        j["kernel"]["paper_reference"] = matrix_json(*report.kernel_paper_reference);
        j["kernel"]["deviation"] = matrix_json(dev);
        j["kernel"]["max_abs_deviation"] = round6(dev.cwiseAbs().maxCoeff());
    }
    j["alphas"] = {{"classical", vector_json(report.alphas_classical)},
                   {"quantum_normalized", vector_json(report.alphas_quantum)}};
    j["success_probability"] = round6(report.success_probability);

    json queries = json::array();
    std::size_t agreements = 0;
    std::size_t ambiguous = 0;
    for (const auto &q : report.queries) {
        json r{{"id", q.id},
               {"source", q.source},
               {"features", {{"v", round6(q.features[0])}, {"h", round6(q.features[1])}}},
               {"classical_decision", round6(q.classical_decision)},
               {"quantum_expectation",
                {{"re", round6(q.quantum_expectation.real())},
                 {"im", round6(q.quantum_expectation.imag())}}},
               {"classical_label", label_string(q.classical_label)},
               {"quantum_label", label_string(q.quantum_label)},
               {"agree", q.agree}};
        if (q.raw) {
            r["raw_ratios"] = {{"v", round6(q.raw->v)}, {"h", round6(q.raw->h)}};
        }
        if (q.expected) {
            r["expected_label"] = *q.expected;
        }
        agreements += q.agree;
        ambiguous += q.classical_label == svm::Label::ambiguous ||
                     q.quantum_label == svm::Label::ambiguous;
        queries.push_back(std::move(r));
    }
    j["queries"] = std::move(queries);
    j["summary"] = {{"queries", report.queries.size()},
                    {"agreements", agreements},
                    {"ambiguous", ambiguous},
                    {"all_agree", agreements == report.queries.size()}};
    return j;
}

std::string to_csv(const RunReport &report) {
    std::ostringstream out;
    out << "query_id,v,h,classical_decision,quantum_expectation_re,classical_label,"
           "quantum_label,agree\n";
    for (const auto &q : report.queries) {
        out << q.id << ',' << fmt6(q.features[0]) << ',' << fmt6(q.features[1]) << ','
            << fmt6(q.classical_decision) << ',' << fmt6(q.quantum_expectation.real()) << ','
            << label_string(q.classical_label) << ',' << label_string(q.quantum_label) << ','
            << (q.agree ? "true" : "false") << '\n';
    }
    return out.str();
}

int exit_code(const RunReport &report) {
    for (const auto &q : report.queries) {
        if (q.classical_label == svm::Label::ambiguous ||
            q.quantum_label == svm::Label::ambiguous) {
            return kExitAmbiguous;
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Entry point

namespace {

struct CommonFlags {
    double gamma = 0.0;
    std::size_t phase_qubits = 0;
    double t0 = 0.0;
    std::string preset;
    std::string format;
    std::string config;
    CLI::Option *gamma_opt = nullptr;
    CLI::Option *phase_opt = nullptr;
    CLI::Option *t0_opt = nullptr;
    CLI::Option *preset_opt = nullptr;
    CLI::Option *format_opt = nullptr;
    CLI::Option *config_opt = nullptr;

    void attach(CLI::App *app, bool pipeline_flags) {
        if (pipeline_flags) {
            gamma_opt = app->add_option("--gamma", gamma, "LS-SVM weight gamma (default 2)");
            phase_opt = app->add_option("--phase-qubits", phase_qubits,
                                        "eigenvalue register size m (default 2)");
            t0_opt = app->add_option("--t0", t0, "evolution time t0 (default pi/2)");
            format_opt = app->add_option("--format", format, "report format: json or csv")
                             ->check(CLI::IsMember({"json", "csv"}));
        }
        preset_opt = app->add_option("--preset", preset, "feature conversion preset")
                         ->check(CLI::IsMember({"paper", "identity"}));
        config_opt = app->add_option("--config", config, "key=value configuration file");
    }

    // Flags > config file > defaults.
    Options resolve() const {
        Options opts;
        opts.asset_dir = default_asset_dir();
        if (config_opt != nullptr && config_opt->count() > 0) {
            apply_config(opts, load_config_file(config));
        }
        if (gamma_opt != nullptr && gamma_opt->count() > 0) {
            opts.qsvm.gamma = gamma;
        }
        if (phase_opt != nullptr && phase_opt->count() > 0) {
            opts.qsvm.phase_qubits = phase_qubits;
        }
        if (t0_opt != nullptr && t0_opt->count() > 0) {
            opts.qsvm.evolution_time = t0;
        }
        if (preset_opt != nullptr && preset_opt->count() > 0) {
            opts.preset = preset;
        }
        if (format_opt != nullptr && format_opt->count() > 0) {
            opts.format = parse_format(format);
        }
        return opts;
    }
};

int emit(const RunReport &report, std::ostream &out) {
    if (report.options.format == OutputFormat::csv) {
        out << to_csv(report);
    } else {
        out << to_json(report).dump(2) << '\n';
    }
    return exit_code(report);
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulated quantum SVM for two-character handwriting recognition"};
    app.require_subcommand(1);

    CLI::App *reproduce = app.add_subcommand(
        "reproduce", "Run the reference training set against the bundled glyphs");
    CommonFlags reproduce_flags;
    reproduce_flags.attach(reproduce, true);

    CLI::App *classify = app.add_subcommand("classify", "Train and classify queries");
    CommonFlags classify_flags;
    classify_flags.attach(classify, true);
    std::vector<std::string> train_specs;
    std::vector<std::string> query_specs;
    classify->add_option("--train", train_specs,
                         "training sample LABEL=SPEC (label 6/9/+1/-1; SPEC is v,h or a PGM "
                         "path); repeatable")
        ->allow_extra_args(false);
    std::vector<std::string> positional_queries;
    classify->add_option("--query", query_specs, "query: v,h or a PGM path; repeatable")
        ->allow_extra_args(false);
    classify->add_option("queries", positional_queries, "further queries");

    CLI::App *features = app.add_subcommand("features", "Print ink-ratio features of a PGM");
    CommonFlags features_flags;
    features_flags.attach(features, false);
    std::string image;
    features->add_option("image", image, "PGM image path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*reproduce) {
            return emit(cmd_reproduce(reproduce_flags.resolve()), out);
        }
        if (*classify) {
            query_specs.insert(query_specs.end(), positional_queries.begin(),
                               positional_queries.end());
            return emit(cmd_classify(classify_flags.resolve(), train_specs, query_specs), out);
        }
        if (*features) {
            const Options opts = features_flags.resolve();
            out << cmd_features(image, opts.preset).dump(2) << '\n';
            return kExitOk;
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace qsvm::cli
