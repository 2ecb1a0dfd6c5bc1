#pragma once

#include <filesystem>
#include <string>

#include "genregauge/training.hpp"

namespace genregauge {

// Stable JSON form of a trained model. Serialization is deterministic:
// the same model always yields the same bytes, and numbers keep full
// round-trip precision.
std::string serialize_model(const GenreModel& model);
GenreModel parse_model(const std::string& json_text);

void save_model(const std::filesystem::path& path, const GenreModel& model);
GenreModel load_model(const std::filesystem::path& path);

} // namespace genregauge
