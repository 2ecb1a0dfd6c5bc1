#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "genregauge/features.hpp"
#include "genregauge/infotheory.hpp"

namespace genregauge {

struct FeatureRow {
    std::string file_id;
    std::string class_label; // empty when unlabeled
    FeatureObservation obs;
};

struct FeatureTable {
    std::vector<FeatureRow> rows;
};

enum class FormulaVariant { TableMean, TextFormula };

std::string_view formula_variant_name(FormulaVariant variant);
FormulaVariant formula_variant_from_name(std::string_view name);

struct FeatureRange {
    double min = 0.0;
    double max = 0.0;
};

// class label -> feature name -> observed range
using RangeMap = std::map<std::string, std::map<std::string, FeatureRange>>;

// Per-class gain ratios of every feature against the pulse-clarity bins.
// max_row/avg_row/threshold_row are column statistics over the classes.
struct GainRatioMatrix {
    std::vector<std::string> class_order;
    std::vector<std::string> feature_order;
    std::map<std::string, std::map<std::string, double>> entries;
    std::map<std::string, double> max_row;
    std::map<std::string, double> avg_row;
    std::map<std::string, double> threshold_row;
    std::vector<std::string> degenerate_classes; // constant pulse clarity
};

struct GenreModel {
    std::vector<std::string> classes;
    RangeMap ranges;
    GainRatioMatrix matrix;
    std::map<std::string, BinEdges> bin_edges; // tertile edges over all rows
    std::vector<std::string> selected_features;
    FormulaVariant formula_variant = FormulaVariant::TableMean;
};

struct UnlabeledRow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-class min/max of every feature. Every row must carry a class label.
RangeMap compute_class_ranges(const FeatureTable& table);

// Gain ratio of each feature's tertile bins against the pulse-clarity
// tertile bins. With per_class, bins are re-fit on each class's rows and
// the matrix holds one row per class; otherwise a single pooled row keyed
// "all". Classes whose pulse clarity is constant are listed as degenerate.
GainRatioMatrix compute_gain_ratio_matrix(const FeatureTable& table, bool per_class);

// Fills max_row and avg_row from the entries.
void compute_column_stats(GainRatioMatrix& matrix);

// TableMean: (max + avg) / 2. TextFormula: (max + avg) / 2 + (max - avg) / 4.
std::map<std::string, double> compute_thresholds(const GainRatioMatrix& matrix,
                                                 FormulaVariant variant);

// The k features with the highest threshold values, descending; ties fall
// back to the canonical feature order.
std::vector<std::string> select_features(const std::map<std::string, double>& thresholds, int k);

// Full pipeline: ranges, per-class matrix, thresholds, selection. Appends
// a note per class with fewer than 4 rows when a warning sink is given.
GenreModel train(const FeatureTable& table, int k = 3,
                 FormulaVariant variant = FormulaVariant::TableMean,
                 std::vector<std::string>* warnings = nullptr);

} // namespace genregauge
