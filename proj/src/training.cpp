#include "genregauge/training.hpp"

#include <algorithm>
#include <cmath>

namespace genregauge {

namespace {

constexpr std::string_view kPooledKey = "all";

std::vector<std::string> ordered_classes(const FeatureTable& table) {
    std::vector<std::string> classes;
    for (const auto& row : table.rows) {
        if (row.class_label.empty())
            throw UnlabeledRow("row " + row.file_id + " has no class label");
        if (std::find(classes.begin(), classes.end(), row.class_label) == classes.end())
            classes.push_back(row.class_label);
    }
    return classes;
}

std::vector<std::string> attribute_features() {
    std::vector<std::string> names;
    for (FeatureId id : kAllFeatures)
        if (id != FeatureId::PulseClarity) names.emplace_back(feature_name(id));
    return names;
}

std::vector<double> column(const std::vector<const FeatureRow*>& rows, FeatureId id) {
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto* row : rows) values.push_back(row->obs.values.get(id));
    return values;
}

// One matrix row: gain ratios of every non-clarity feature against the
// pulse-clarity bins, both discretized over exactly these rows.
std::map<std::string, double> matrix_row(const std::vector<const FeatureRow*>& rows,
                                         bool* degenerate) {
    const auto clarity = discretize_equal_width(column(rows, FeatureId::PulseClarity));
    if (degenerate) *degenerate = clarity.edges.hi == clarity.edges.lo;

    DiscreteDataset ds;
    ds.rows.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        ds.rows[i].class_label = std::string(bin_label_name(clarity.labels[i]));

    std::map<std::string, double> out;
    for (const auto& name : attribute_features()) {
        const FeatureId id = *feature_from_name(name);
        const auto bins = discretize_equal_width(column(rows, id));
        for (std::size_t i = 0; i < rows.size(); ++i) ds.rows[i].attribute_bins[name] = bins.labels[i];
        out[name] = gain_ratio(ds, name);
    }
    return out;
}

} // namespace

std::string_view formula_variant_name(FormulaVariant variant) {
    return variant == FormulaVariant::TableMean ? "table_mean" : "text_formula";
}

FormulaVariant formula_variant_from_name(std::string_view name) {
    if (name == "table_mean") return FormulaVariant::TableMean;
    if (name == "text_formula") return FormulaVariant::TextFormula;
    throw std::invalid_argument("unknown formula variant: " + std::string(name));
}

RangeMap compute_class_ranges(const FeatureTable& table) {
    if (table.rows.empty()) throw EmptyClass("table has no rows");
    RangeMap ranges;
    for (const auto& row : table.rows) {
        if (row.class_label.empty())
            throw UnlabeledRow("row " + row.file_id + " has no class label");
        auto& per_feature = ranges[row.class_label];
        for (FeatureId id : kAllFeatures) {
            const double v = row.obs.values.get(id);
            auto [it, inserted] = per_feature.try_emplace(std::string(feature_name(id)),
                                                          FeatureRange{v, v});
            if (!inserted) {
                it->second.min = std::min(it->second.min, v);
                it->second.max = std::max(it->second.max, v);
            }
        }
    }
    return ranges;
}

GainRatioMatrix compute_gain_ratio_matrix(const FeatureTable& table, bool per_class) {
    if (table.rows.empty()) throw EmptyClass("table has no rows");

    GainRatioMatrix matrix;
    matrix.feature_order = attribute_features();

    if (per_class) {
        matrix.class_order = ordered_classes(table);
        for (const auto& cls : matrix.class_order) {
            std::vector<const FeatureRow*> rows;
            for (const auto& row : table.rows)
                if (row.class_label == cls) rows.push_back(&row);
            if (rows.empty()) throw EmptyClass("class has no rows: " + cls);
            bool degenerate = false;
            matrix.entries[cls] = matrix_row(rows, &degenerate);
            if (degenerate) matrix.degenerate_classes.push_back(cls);
        }
    } else {
        matrix.class_order = {std::string(kPooledKey)};
        std::vector<const FeatureRow*> rows;
        for (const auto& row : table.rows) rows.push_back(&row);
        bool degenerate = false;
        matrix.entries[std::string(kPooledKey)] = matrix_row(rows, &degenerate);
        if (degenerate) matrix.degenerate_classes.push_back(std::string(kPooledKey));
    }

    compute_column_stats(matrix);
    return matrix;
}

void compute_column_stats(GainRatioMatrix& matrix) {
    matrix.max_row.clear();
    matrix.avg_row.clear();
    for (const auto& feature : matrix.feature_order) {
        double max_v = 0.0;
        double sum = 0.0;
        bool first = true;
        for (const auto& cls : matrix.class_order) {
            const double v = matrix.entries.at(cls).at(feature);
            max_v = first ? v : std::max(max_v, v);
            sum += v;
            first = false;
        }
        matrix.max_row[feature] = max_v;
        matrix.avg_row[feature] = sum / static_cast<double>(matrix.class_order.size());
    }
}

std::map<std::string, double> compute_thresholds(const GainRatioMatrix& matrix,
                                                 FormulaVariant variant) {
    std::map<std::string, double> thresholds;
    for (const auto& feature : matrix.feature_order) {
        const double max_v = matrix.max_row.at(feature);
        const double avg_v = matrix.avg_row.at(feature);
        double t = (max_v + avg_v) / 2.0;
        if (variant == FormulaVariant::TextFormula) t += (max_v - avg_v) / 4.0;
        thresholds[feature] = t;
    }
    return thresholds;
}

std::vector<std::string> select_features(const std::map<std::string, double>& thresholds, int k) {
    if (k < 0 || static_cast<std::size_t>(k) > thresholds.size())
        throw KTooLarge("k exceeds the number of scored features");
    std::vector<std::string> names;
    names.reserve(thresholds.size());
    for (const auto& [name, value] : thresholds) names.push_back(name);
    std::sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) {
        const double va = thresholds.at(a);
        const double vb = thresholds.at(b);
        if (va != vb) return va > vb;
        const int ra = feature_rank(a);
        const int rb = feature_rank(b);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    names.resize(static_cast<std::size_t>(k));
    return names;
}

GenreModel train(const FeatureTable& table, int k, FormulaVariant variant,
                 std::vector<std::string>* warnings) {
    GenreModel model;
    model.ranges = compute_class_ranges(table);
    model.matrix = compute_gain_ratio_matrix(table, true);
    model.classes = model.matrix.class_order;
    model.matrix.threshold_row = compute_thresholds(model.matrix, variant);
    model.selected_features = select_features(model.matrix.threshold_row, k);
    model.formula_variant = variant;

    for (FeatureId id : kAllFeatures) {
        std::vector<double> values;
        values.reserve(table.rows.size());
        for (const auto& row : table.rows) values.push_back(row.obs.values.get(id));
        model.bin_edges[std::string(feature_name(id))] = discretize_equal_width(values).edges;
    }

    if (warnings) {
        for (const auto& cls : model.classes) {
            const auto n = static_cast<std::size_t>(
                std::count_if(table.rows.begin(), table.rows.end(),
                              [&](const FeatureRow& row) { return row.class_label == cls; }));
            if (n < 4)
                warnings->push_back("class " + cls + " has only " + std::to_string(n) +
                                    " rows; ranges may not generalize");
        }
        for (const auto& cls : model.matrix.degenerate_classes)
            warnings->push_back("class " + cls +
                                " has constant pulse clarity; its gain ratios are degenerate");
    }
    return model;
}

} // namespace genregauge
