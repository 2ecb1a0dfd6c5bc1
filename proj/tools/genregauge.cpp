#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "genregauge/classifier.hpp"
#include "genregauge/feature_csv.hpp"
#include "genregauge/features.hpp"
#include "genregauge/model_io.hpp"
#include "genregauge/synth.hpp"
#include "genregauge/training.hpp"
#include "genregauge/wav.hpp"

namespace fs = std::filesystem;
using namespace genregauge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;

unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("GENREGAUGE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Runs fn(i) for i in [0, n) on up to thread_cap() workers. fn must not
// throw; slot-indexed outputs keep results in input order.
template <typename Fn>
void parallel_for_each(std::size_t n, Fn&& fn) {
    const unsigned threads = std::min<std::size_t>(thread_cap(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

bool has_extension(const fs::path& path, std::string_view ext) {
    std::string e = path.extension().string();
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e == ext;
}

// Expands directories to the WAV files inside them; the combined list is
// sorted by path.
std::vector<fs::path> collect_wavs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> paths;
    for (const auto& input : inputs) {
        const fs::path p(input);
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && has_extension(entry.path(), ".wav"))
                    paths.push_back(entry.path());
        } else {
            paths.push_back(p);
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

// Labels come from an explicit file or from a labels.csv sitting next to
// the inputs.
std::map<std::string, std::string> gather_labels(const std::vector<std::string>& inputs,
                                                 const std::string& labels_path) {
    std::map<std::string, std::string> labels;
    if (!labels_path.empty()) return read_labels_csv(labels_path);
    for (const auto& input : inputs) {
        const fs::path p(input);
        if (!fs::is_directory(p)) continue;
        const fs::path candidate = p / "labels.csv";
        if (fs::exists(candidate))
            for (auto& [id, cls] : read_labels_csv(candidate)) labels[id] = cls;
    }
    return labels;
}

// A silent buffer still has well-defined length, level and crossing
// features; the spectral, pitch and tempo ones stay flagged invalid.
FeatureObservation silent_observation(const AudioBuffer& buf) {
    FeatureObservation obs;
    obs.values.set(FeatureId::SamplingRate, static_cast<double>(buf.sample_rate_hz));
    obs.set_valid(FeatureId::SamplingRate, true);
    obs.values.set(FeatureId::TemporalLength, temporal_length(buf));
    obs.set_valid(FeatureId::TemporalLength, true);
    obs.set_valid(FeatureId::RmsEnergy, true);
    obs.set_valid(FeatureId::LowEnergyRate, true);
    obs.set_valid(FeatureId::ZcrPerSecond, true);
    obs.set_valid(FeatureId::PulseClarity, true);
    return obs;
}

FeatureTable extract_table(const std::vector<fs::path>& paths,
                           const std::map<std::string, std::string>& labels) {
    struct Slot {
        bool ok = false;
        FeatureRow row;
        std::string error;
    };
    std::vector<Slot> slots(paths.size());

    parallel_for_each(paths.size(), [&](std::size_t i) {
        Slot& slot = slots[i];
        slot.row.file_id = paths[i].stem().string();
        try {
            const AudioBuffer buf = load_wav(paths[i]);
            try {
                slot.row.obs = extract_all(buf);
            } catch (const AllSilent&) {
                slot.row.obs = silent_observation(buf);
            }
            slot.ok = true;
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });

    FeatureTable table;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].ok) {
            std::cerr << "warning: skipping " << paths[i].string() << ": " << slots[i].error
                      << "\n";
            continue;
        }
        auto& row = slots[i].row;
        if (auto it = labels.find(row.file_id); it != labels.end()) row.class_label = it->second;
        table.rows.push_back(std::move(row));
    }
    return table;
}

int cmd_extract(const std::vector<std::string>& inputs, const std::string& out,
                const std::string& labels_path) {
    const auto paths = collect_wavs(inputs);
    if (paths.empty()) {
        std::cerr << "error: no WAV inputs found\n";
        return kExitError;
    }
    const auto table = extract_table(paths, gather_labels(inputs, labels_path));
    if (table.rows.empty()) {
        std::cerr << "error: every input failed to decode\n";
        return kExitError;
    }
    write_feature_csv(out, table);
    std::cout << "wrote " << table.rows.size() << " rows to " << out << "\n";
    return kExitOk;
}

void print_matrix(const GainRatioMatrix& matrix) {
    std::size_t label_w = std::string("Threshold").size();
    for (const auto& cls : matrix.class_order) label_w = std::max(label_w, cls.size());

    std::printf("%-*s", static_cast<int>(label_w + 2), "");
    for (const auto& feature : matrix.feature_order)
        std::printf("  %*s", static_cast<int>(feature.size()), feature.c_str());
    std::printf("\n");

    auto print_row = [&](const std::string& label, const std::map<std::string, double>& row) {
        std::printf("%-*s", static_cast<int>(label_w + 2), label.c_str());
        for (const auto& feature : matrix.feature_order)
            std::printf("  %*.4f", static_cast<int>(feature.size()), row.at(feature));
        std::printf("\n");
    };

    for (const auto& cls : matrix.class_order) print_row(cls, matrix.entries.at(cls));
    print_row("Max", matrix.max_row);
    print_row("Avg", matrix.avg_row);
    print_row("Threshold", matrix.threshold_row);
}

int cmd_train(const std::string& features_path, const std::string& out, int k,
              const std::string& variant_name) {
    const auto table = read_feature_csv(features_path);
    const auto variant = formula_variant_from_name(variant_name);
    std::vector<std::string> warnings;
    const auto model = train(table, k, variant, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    print_matrix(model.matrix);
    std::printf("selected features (k=%d):", k);
    for (const auto& f : model.selected_features) std::printf(" %s", f.c_str());
    std::printf("\n");

    save_model(out, model);
    std::cout << "wrote model to " << out << "\n";
    return kExitOk;
}

int cmd_classify(const std::vector<std::string>& inputs, const std::string& model_path,
                 const std::string& out, const std::string& labels_path) {
    const auto model = load_model(model_path);
    for (const auto& name : model.selected_features)
        if (!feature_from_name(name)) {
            std::cerr << "error: model selects unknown feature " << name << "\n";
            return kExitError;
        }

    FeatureTable table;
    if (inputs.size() == 1 && has_extension(inputs.front(), ".csv")) {
        table = read_feature_csv(inputs.front());
    } else {
        const auto paths = collect_wavs(inputs);
        if (paths.empty()) {
            std::cerr << "error: no WAV inputs found\n";
            return kExitError;
        }
        table = extract_table(paths, gather_labels(inputs, labels_path));
    }

    std::vector<ResultRow> rows;
    bool any_label = false;
    for (const auto& row : table.rows) {
        ResultRow result;
        result.file_id = row.file_id;
        result.actual = row.class_label;
        try {
            const auto outcome = classify(row.obs, model);
            result.predicted = outcome.predicted;
            result.distance_best = outcome.candidates.front().distance;
            result.used_features = outcome.used_features;
        } catch (const MissingFeature& e) {
            std::cerr << "warning: skipping " << row.file_id << ": " << e.what() << "\n";
            continue;
        }
        if (!result.actual.empty()) any_label = true;
        rows.push_back(std::move(result));
    }
    if (rows.empty()) {
        std::cerr << "error: nothing classified\n";
        return kExitError;
    }
    write_results_csv(out, rows, any_label);
    std::cout << "wrote " << rows.size() << " results to " << out << "\n";
    return kExitOk;
}

int cmd_report(const std::string& results_path) {
    bool has_actual = false;
    const auto rows = read_results_csv(results_path, &has_actual);
    if (!has_actual) {
        std::cerr << "error: results file carries no actual labels\n";
        return kExitError;
    }
    std::vector<LabeledPrediction> pairs;
    pairs.reserve(rows.size());
    for (const auto& row : rows) pairs.push_back({row.predicted, row.actual});
    const auto report = evaluate(pairs);

    char successful_h[40];
    std::snprintf(successful_h, sizeof successful_h, "Successful (%.2f%%)",
                  100.0 * report.accuracy);
    char unsuccessful_h[40];
    std::snprintf(unsuccessful_h, sizeof unsuccessful_h, "Unsuccessful (%.2f%%)",
                  100.0 * (1.0 - report.accuracy));
    std::printf("%-8s%-24s%s\n", "Total", successful_h, unsuccessful_h);
    std::printf("%-8zu%-24zu%zu\n", report.total, report.successful,
                report.total - report.successful);

    std::string errors;
    for (const auto& [cls, count] : report.per_class_errors) {
        if (!errors.empty()) errors += "  ";
        errors += cls + ":" + std::to_string(count);
    }
    if (!errors.empty()) std::printf("errors by class: %s\n", errors.c_str());
    return kExitOk;
}

int cmd_synth(int classes, int files, std::uint64_t seed, const std::string& out) {
    const auto written = generate_corpus(classes, files, seed, out);
    std::cout << "wrote " << written.size() << " files to " << out << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"genre feature extraction, gain-ratio training and range classification"};
    app.require_subcommand(1);

    auto* extract = app.add_subcommand("extract", "extract feature vectors from WAV files");
    std::vector<std::string> extract_inputs;
    std::string extract_out;
    std::string extract_labels;
    extract->add_option("inputs", extract_inputs, "WAV files or directories")->required();
    extract->add_option("-o,--out", extract_out, "output feature CSV")->required();
    extract->add_option("--labels", extract_labels, "labels CSV (file_id,class_label)");

    auto* train_cmd = app.add_subcommand("train", "train a model from a labeled feature CSV");
    std::string train_features;
    std::string train_out;
    int train_k = 3;
    std::string train_variant = "table_mean";
    train_cmd->add_option("--features", train_features, "labeled feature CSV")->required();
    train_cmd->add_option("-o,--out", train_out, "output model JSON")->required();
    train_cmd->add_option("--k", train_k, "number of features to select");
    train_cmd->add_option("--variant", train_variant, "threshold formula")
        ->check(CLI::IsMember({"table_mean", "text_formula"}));

    auto* classify_cmd = app.add_subcommand("classify", "classify WAV files or a feature CSV");
    std::vector<std::string> classify_inputs;
    std::string classify_model;
    std::string classify_out;
    std::string classify_labels;
    classify_cmd->add_option("inputs", classify_inputs, "WAV files, directories or a feature CSV")
        ->required();
    classify_cmd->add_option("--model", classify_model, "model JSON")->required();
    classify_cmd->add_option("-o,--out", classify_out, "output results CSV")->required();
    classify_cmd->add_option("--labels", classify_labels, "labels CSV for the inputs");

    auto* report_cmd = app.add_subcommand("report", "summarize a labeled results CSV");
    std::string report_results;
    report_cmd->add_option("results", report_results, "results CSV")->required();

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic labeled corpus");
    int synth_classes = 0;
    int synth_files = 0;
    std::uint64_t synth_seed = 0;
    std::string synth_out;
    synth_cmd->add_option("--classes", synth_classes, "number of classes")->required();
    synth_cmd->add_option("--files", synth_files, "files per class")->required();
    synth_cmd->add_option("--seed", synth_seed, "corpus seed");
    synth_cmd->add_option("-o,--out", synth_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (app.got_subcommand(extract)) return cmd_extract(extract_inputs, extract_out, extract_labels);
        if (app.got_subcommand(train_cmd))
            return cmd_train(train_features, train_out, train_k, train_variant);
        if (app.got_subcommand(classify_cmd))
            return cmd_classify(classify_inputs, classify_model, classify_out, classify_labels);
        if (app.got_subcommand(report_cmd)) return cmd_report(report_results);
        if (app.got_subcommand(synth_cmd))
            return cmd_synth(synth_classes, synth_files, synth_seed, synth_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
