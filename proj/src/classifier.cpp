#include "genregauge/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace genregauge {

namespace {

// Width floor keeps the center distance finite for degenerate ranges.
constexpr double kMinRangeWidth = 1e-9;

} // namespace

ClassificationResult classify(const FeatureObservation& obs, const GenreModel& model) {
    std::vector<FeatureId> selected;
    for (const auto& name : model.selected_features) {
        const auto id = feature_from_name(name);
        if (!id) throw MissingFeature("model selects unknown feature: " + name);
        if (!obs.is_valid(*id))
            throw MissingFeature("selected feature is not valid for this vector: " + name);
        selected.push_back(*id);
    }

    ClassificationResult result;
    result.used_features = model.selected_features;

    std::string best_contained;
    double best_contained_distance = std::numeric_limits<double>::infinity();
    std::size_t contained_count = 0;

    for (const auto& cls : model.classes) {
        const auto& ranges = model.ranges.at(cls);
        double distance = 0.0;
        bool contained = true;
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const auto& range = ranges.at(model.selected_features[i]);
            const double v = obs.values.get(selected[i]);
            if (v < range.min || v > range.max) contained = false;
            const double width = std::max(range.max - range.min, kMinRangeWidth);
            const double center = 0.5 * (range.min + range.max);
            distance += std::abs(v - center) / width;
        }
        result.candidates.push_back({cls, distance});
        if (contained) {
            ++contained_count;
            if (distance < best_contained_distance) {
                best_contained_distance = distance;
                best_contained = cls;
            }
        }
    }

    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const CandidateDistance& a, const CandidateDistance& b) {
                         return a.distance < b.distance;
                     });

    result.predicted = contained_count == 0 ? std::string(kUnclassified) : best_contained;
    return result;
}

EvaluationReport evaluate(const std::vector<LabeledPrediction>& results) {
    if (results.empty()) throw EmptyResults("no results to evaluate");
    EvaluationReport report;
    report.total = results.size();
    for (const auto& r : results) {
        if (r.predicted == r.actual) {
            ++report.successful;
        } else {
            ++report.per_class_errors[r.actual];
        }
    }
    report.accuracy = static_cast<double>(report.successful) / static_cast<double>(report.total);
    return report;
}

} // namespace genregauge
