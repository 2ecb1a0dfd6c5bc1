#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "genregauge/training.hpp"

namespace genregauge {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Feature CSV layout: file_id, class_label (may be empty), one column per
// feature in canonical order, then a 0/1 validity column per feature.
void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::filesystem::path& path);

struct ResultRow {
    std::string file_id;
    std::string predicted;
    std::string actual; // empty when unknown
    double distance_best = 0.0;
    std::vector<std::string> used_features;
};

// Results CSV: file_id, predicted, actual (column present only when
// with_actual), distance_best, used_features joined with semicolons.
void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       bool with_actual);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path, bool* has_actual);

// labels.csv: header file_id,class_label.
std::map<std::string, std::string> read_labels_csv(const std::filesystem::path& path);

} // namespace genregauge
