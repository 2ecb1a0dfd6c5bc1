#include "genregauge/model_io.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace genregauge {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kModelVersion = 1;
constexpr std::string_view kDecisionRule = "range_containment_with_center_distance_tie_break";

ordered_json edges_to_json(const BinEdges& edges) {
    ordered_json j;
    j["lo"] = edges.lo;
    j["cut1"] = edges.cut1;
    j["cut2"] = edges.cut2;
    j["hi"] = edges.hi;
    return j;
}

BinEdges edges_from_json(const ordered_json& j) {
    return BinEdges{j.at("lo").get<double>(), j.at("cut1").get<double>(),
                    j.at("cut2").get<double>(), j.at("hi").get<double>()};
}

std::vector<std::string> feature_order_from_keys(const ordered_json& row) {
    std::vector<std::string> names;
    for (auto it = row.begin(); it != row.end(); ++it) names.push_back(it.key());
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
        const int ra = feature_rank(a);
        const int rb = feature_rank(b);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    return names;
}

} // namespace

std::string serialize_model(const GenreModel& model) {
    ordered_json j;
    j["classes"] = model.classes;

    ordered_json ranges;
    for (const auto& cls : model.classes) {
        ordered_json per_feature;
        for (const auto& [feature, range] : model.ranges.at(cls)) {
            ordered_json r;
            r["min"] = range.min;
            r["max"] = range.max;
            per_feature[feature] = r;
        }
        ranges[cls] = per_feature;
    }
    j["ranges"] = ranges;

    ordered_json matrix;
    for (const auto& cls : model.matrix.class_order) {
        ordered_json row;
        for (const auto& [feature, value] : model.matrix.entries.at(cls)) row[feature] = value;
        matrix[cls] = row;
    }
    j["gain_ratio_matrix"] = matrix;
    j["max"] = model.matrix.max_row;
    j["avg"] = model.matrix.avg_row;
    j["thresholds"] = model.matrix.threshold_row;
    j["selected_features"] = model.selected_features;

    ordered_json edges;
    for (const auto& [feature, e] : model.bin_edges) edges[feature] = edges_to_json(e);
    j["bin_edges"] = edges;

    j["formula_variant"] = std::string(formula_variant_name(model.formula_variant));
    j["decision_rule"] = std::string(kDecisionRule);
    j["version"] = kModelVersion;
    return j.dump(2) + "\n";
}

GenreModel parse_model(const std::string& json_text) {
    const auto j = ordered_json::parse(json_text);

    GenreModel model;
    model.classes = j.at("classes").get<std::vector<std::string>>();

    for (auto cls_it = j.at("ranges").begin(); cls_it != j.at("ranges").end(); ++cls_it) {
        auto& per_feature = model.ranges[cls_it.key()];
        for (auto f_it = cls_it->begin(); f_it != cls_it->end(); ++f_it)
            per_feature[f_it.key()] = FeatureRange{f_it->at("min").get<double>(),
                                                   f_it->at("max").get<double>()};
    }

    const auto& matrix = j.at("gain_ratio_matrix");
    for (auto cls_it = matrix.begin(); cls_it != matrix.end(); ++cls_it) {
        model.matrix.class_order.push_back(cls_it.key());
        auto& row = model.matrix.entries[cls_it.key()];
        for (auto f_it = cls_it->begin(); f_it != cls_it->end(); ++f_it)
            row[f_it.key()] = f_it->get<double>();
    }
    if (!matrix.empty()) model.matrix.feature_order = feature_order_from_keys(matrix.begin().value());

    model.matrix.max_row = j.at("max").get<std::map<std::string, double>>();
    model.matrix.avg_row = j.at("avg").get<std::map<std::string, double>>();
    model.matrix.threshold_row = j.at("thresholds").get<std::map<std::string, double>>();
    model.selected_features = j.at("selected_features").get<std::vector<std::string>>();

    for (auto e_it = j.at("bin_edges").begin(); e_it != j.at("bin_edges").end(); ++e_it)
        model.bin_edges[e_it.key()] = edges_from_json(e_it.value());

    model.formula_variant = formula_variant_from_name(j.at("formula_variant").get<std::string>());
    return model;
}

void save_model(const std::filesystem::path& path, const GenreModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << serialize_model(model);
}

GenreModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_model(text);
}

} // namespace genregauge
