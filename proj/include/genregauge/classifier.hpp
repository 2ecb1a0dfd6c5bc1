#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "genregauge/training.hpp"

namespace genregauge {

inline constexpr std::string_view kUnclassified = "UNCLASSIFIED";

struct CandidateDistance {
    std::string class_label;
    double distance = 0.0;
};

struct ClassificationResult {
    std::string file_id;
    std::string predicted;
    std::vector<CandidateDistance> candidates; // every class, ascending distance
    std::vector<std::string> used_features;
};

struct LabeledPrediction {
    std::string predicted;
    std::string actual;
};

struct EvaluationReport {
    std::size_t total = 0;
    std::size_t successful = 0;
    std::map<std::string, std::size_t> per_class_errors; // keyed by actual label
    double accuracy = 0.0;
};

struct MissingFeature : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyResults : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A class matches when every selected feature lies inside its range
// (inclusive). One match wins outright; several are broken by the summed
// normalized center distance; none yields UNCLASSIFIED. Candidates list
// the distance of every class regardless of containment.
ClassificationResult classify(const FeatureObservation& obs, const GenreModel& model);

EvaluationReport evaluate(const std::vector<LabeledPrediction>& results);

} // namespace genregauge
