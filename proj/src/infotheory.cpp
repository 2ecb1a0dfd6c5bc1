#include "genregauge/infotheory.hpp"

#include <algorithm>
#include <cmath>

namespace genregauge {

namespace {

// Class counts inside each partition induced by the attribute, keyed by
// the attribute's bin value.
std::map<BinLabel, std::map<std::string, std::size_t>>
partition_by(const DiscreteDataset& ds, std::string_view attribute) {
    if (ds.rows.empty()) throw EmptyDataset("dataset has no rows");
    std::map<BinLabel, std::map<std::string, std::size_t>> parts;
    const std::string key(attribute);
    for (const auto& row : ds.rows) {
        auto it = row.attribute_bins.find(key);
        if (it == row.attribute_bins.end())
            throw UnknownAttribute("attribute missing from row: " + key);
        ++parts[it->second][row.class_label];
    }
    return parts;
}

std::size_t partition_size(const std::map<std::string, std::size_t>& class_counts) {
    std::size_t n = 0;
    for (const auto& [cls, count] : class_counts) n += count;
    return n;
}

} // namespace

std::string_view bin_label_name(BinLabel label) {
    switch (label) {
    case BinLabel::Low: return "low";
    case BinLabel::Medium: return "medium";
    case BinLabel::High: return "high";
    }
    return "";
}

BinLabel bin_of(double value, const BinEdges& edges) {
    if (edges.hi == edges.lo) return BinLabel::Medium;
    if (value < edges.cut1) return BinLabel::Low;
    if (value < edges.cut2) return BinLabel::Medium;
    return BinLabel::High;
}

Discretization discretize_equal_width(std::span<const double> values) {
    if (values.empty()) throw EmptyDataset("no values to discretize");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    Discretization out;
    out.edges.lo = *lo_it;
    out.edges.hi = *hi_it;
    const double width = (out.edges.hi - out.edges.lo) / 3.0;
    out.edges.cut1 = out.edges.lo + width;
    out.edges.cut2 = out.edges.lo + 2.0 * width;
    out.labels.reserve(values.size());
    for (double v : values) out.labels.push_back(bin_of(v, out.edges));
    return out;
}

double entropy(const std::map<std::string, std::size_t>& class_counts) {
    const std::size_t total = partition_size(class_counts);
    if (total == 0) throw EmptyDataset("entropy of an empty histogram");
    double h = 0.0;
    for (const auto& [cls, count] : class_counts) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

double dataset_entropy(const DiscreteDataset& ds) {
    if (ds.rows.empty()) throw EmptyDataset("dataset has no rows");
    std::map<std::string, std::size_t> counts;
    for (const auto& row : ds.rows) ++counts[row.class_label];
    return entropy(counts);
}

double expected_info(const DiscreteDataset& ds, std::string_view attribute) {
    const auto parts = partition_by(ds, attribute);
    const double total = static_cast<double>(ds.rows.size());
    double info = 0.0;
    for (const auto& [bin, class_counts] : parts) {
        const double weight = static_cast<double>(partition_size(class_counts)) / total;
        info += weight * entropy(class_counts);
    }
    return info;
}

double gain(const DiscreteDataset& ds, std::string_view attribute) {
    return dataset_entropy(ds) - expected_info(ds, attribute);
}

double split_info(const DiscreteDataset& ds, std::string_view attribute) {
    const auto parts = partition_by(ds, attribute);
    const double total = static_cast<double>(ds.rows.size());
    double h = 0.0;
    for (const auto& [bin, class_counts] : parts) {
        const double p = static_cast<double>(partition_size(class_counts)) / total;
        h -= p * std::log2(p);
    }
    return h;
}

double gain_ratio(const DiscreteDataset& ds, std::string_view attribute) {
    const double split = split_info(ds, attribute);
    if (split == 0.0) return 0.0;
    return gain(ds, attribute) / split;
}

} // namespace genregauge
