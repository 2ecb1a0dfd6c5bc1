#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genregauge {

enum class BinLabel { Low = 0, Medium, High };

std::string_view bin_label_name(BinLabel label);

// Equal-width tertiles over [lo, hi]: [lo, cut1), [cut1, cut2), [cut2, hi].
struct BinEdges {
    double lo = 0.0;
    double cut1 = 0.0;
    double cut2 = 0.0;
    double hi = 0.0;
};

struct Discretization {
    BinEdges edges;
    std::vector<BinLabel> labels;
};

// Bins are left-closed; hi itself labels High. A constant sequence maps
// every value to Medium.
Discretization discretize_equal_width(std::span<const double> values);
BinLabel bin_of(double value, const BinEdges& edges);

struct EmptyDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownAttribute : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DatasetRow {
    std::map<std::string, BinLabel> attribute_bins;
    std::string class_label;
};

struct DiscreteDataset {
    std::vector<DatasetRow> rows;
};

// Shannon entropy in bits of a class-count histogram. Zero counts
// contribute nothing; an all-zero histogram is an error.
double entropy(const std::map<std::string, std::size_t>& class_counts);

// Entropy of the class labels over the whole dataset.
double dataset_entropy(const DiscreteDataset& ds);

// Weighted entropy after partitioning by the attribute's distinct values.
double expected_info(const DiscreteDataset& ds, std::string_view attribute);

// dataset_entropy - expected_info; non-negative up to rounding.
double gain(const DiscreteDataset& ds, std::string_view attribute);

// Entropy of the partition sizes themselves.
double split_info(const DiscreteDataset& ds, std::string_view attribute);

// gain / split_info, defined as 0 when split_info is 0 (single-valued
// attribute).
double gain_ratio(const DiscreteDataset& ds, std::string_view attribute);

} // namespace genregauge
