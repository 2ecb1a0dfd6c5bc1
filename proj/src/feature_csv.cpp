#include "genregauge/feature_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace genregauge {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::string feature_header() {
    std::string h = "file_id,class_label";
    for (FeatureId id : kAllFeatures) {
        h += ',';
        h += feature_name(id);
    }
    for (FeatureId id : kAllFeatures) {
        h += ',';
        h += feature_name(id);
        h += "_valid";
    }
    return h;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("not a number: " + std::string(text));
    return value;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << feature_header() << '\n';
    for (const auto& row : table.rows) {
        out << row.file_id << ',' << row.class_label;
        for (FeatureId id : kAllFeatures) out << ',' << format_double(row.obs.values.get(id));
        for (FeatureId id : kAllFeatures) out << ',' << (row.obs.is_valid(id) ? '1' : '0');
        out << '\n';
    }
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw std::runtime_error("empty feature CSV: " + path.string());
    if (lines.front() != feature_header())
        throw std::runtime_error("unexpected feature CSV header in " + path.string());

    FeatureTable table;
    const std::size_t expected = 2 + 2 * static_cast<std::size_t>(kFeatureCount);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split(lines[li], ',');
        if (fields.size() != expected)
            throw std::runtime_error("bad field count on line " + std::to_string(li + 1) +
                                     " of " + path.string());
        FeatureRow row;
        row.file_id = fields[0];
        row.class_label = fields[1];
        for (std::size_t i = 0; i < kAllFeatures.size(); ++i)
            row.obs.values.set(kAllFeatures[i], parse_double(fields[2 + i]));
        for (std::size_t i = 0; i < kAllFeatures.size(); ++i) {
            const auto& flag = fields[2 + kAllFeatures.size() + i];
            if (flag != "0" && flag != "1")
                throw std::runtime_error("bad validity flag on line " + std::to_string(li + 1));
            row.obs.set_valid(kAllFeatures[i], flag == "1");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       bool with_actual) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << (with_actual ? "file_id,predicted,actual,distance_best,used_features"
                        : "file_id,predicted,distance_best,used_features")
        << '\n';
    for (const auto& row : rows) {
        out << row.file_id << ',' << row.predicted;
        if (with_actual) out << ',' << row.actual;
        out << ',' << format_double(row.distance_best) << ',';
        for (std::size_t i = 0; i < row.used_features.size(); ++i) {
            if (i > 0) out << ';';
            out << row.used_features[i];
        }
        out << '\n';
    }
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path, bool* has_actual) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw std::runtime_error("empty results file: " + path.string());
    bool actual = false;
    if (lines.front() == "file_id,predicted,actual,distance_best,used_features") {
        actual = true;
    } else if (lines.front() != "file_id,predicted,distance_best,used_features") {
        throw std::runtime_error("unexpected results header in " + path.string());
    }
    if (has_actual) *has_actual = actual;

    std::vector<ResultRow> rows;
    const std::size_t expected = actual ? 5 : 4;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split(lines[li], ',');
        if (fields.size() != expected)
            throw std::runtime_error("bad field count on line " + std::to_string(li + 1) +
                                     " of " + path.string());
        ResultRow row;
        std::size_t f = 0;
        row.file_id = fields[f++];
        row.predicted = fields[f++];
        if (actual) row.actual = fields[f++];
        row.distance_best = parse_double(fields[f++]);
        for (auto& name : split(fields[f], ';'))
            if (!name.empty()) row.used_features.push_back(std::move(name));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::map<std::string, std::string> read_labels_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines.front() != "file_id,class_label")
        throw std::runtime_error("unexpected labels header in " + path.string());
    std::map<std::string, std::string> labels;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split(lines[li], ',');
        if (fields.size() != 2)
            throw std::runtime_error("bad field count on line " + std::to_string(li + 1) +
                                     " of " + path.string());
        labels[fields[0]] = fields[1];
    }
    return labels;
}

} // namespace genregauge
