#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "genregauge/infotheory.hpp"

using namespace genregauge;

namespace {

// Independent oracle: gain statistics computed the slow way, straight from
// row lists and probability sums.
namespace oracle {

double h(const std::vector<std::string>& labels) {
    double out = 0.0;
    std::vector<std::string> seen;
    for (const auto& l : labels) {
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == l;
        if (dup) continue;
        seen.push_back(l);
        double count = 0.0;
        for (const auto& m : labels)
            if (m == l) count += 1.0;
        const double p = count / static_cast<double>(labels.size());
        out -= p * std::log(p) / std::log(2.0);
    }
    return out;
}

struct Row {
    BinLabel a;
    std::string cls;
};

std::vector<std::string> classes_of(const std::vector<Row>& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(r.cls);
    return out;
}

double expected_info(const std::vector<Row>& rows) {
    double out = 0.0;
    for (BinLabel b : {BinLabel::Low, BinLabel::Medium, BinLabel::High}) {
        std::vector<std::string> part;
        for (const auto& r : rows)
            if (r.a == b) part.push_back(r.cls);
        if (part.empty()) continue;
        out += static_cast<double>(part.size()) / static_cast<double>(rows.size()) * h(part);
    }
    return out;
}

double gain(const std::vector<Row>& rows) { return h(classes_of(rows)) - expected_info(rows); }

double split_info(const std::vector<Row>& rows) {
    double out = 0.0;
    for (BinLabel b : {BinLabel::Low, BinLabel::Medium, BinLabel::High}) {
        double count = 0.0;
        for (const auto& r : rows)
            if (r.a == b) count += 1.0;
        if (count == 0.0) continue;
        const double p = count / static_cast<double>(rows.size());
        out -= p * std::log(p) / std::log(2.0);
    }
    return out;
}

double gain_ratio(const std::vector<Row>& rows) {
    const double s = split_info(rows);
    return s == 0.0 ? 0.0 : gain(rows) / s;
}

} // namespace oracle

DiscreteDataset to_dataset(const std::vector<oracle::Row>& rows) {
    DiscreteDataset ds;
    for (const auto& r : rows) {
        DatasetRow row;
        row.attribute_bins["a"] = r.a;
        row.class_label = r.cls;
        ds.rows.push_back(row);
    }
    return ds;
}

} // namespace

TEST_CASE("equal-width tertiles over 0..9") {
    std::vector<double> values;
    for (int i = 0; i < 10; ++i) values.push_back(i);
    const auto d = discretize_equal_width(values);
    CHECK(d.edges.lo == 0.0);
    CHECK(d.edges.hi == 9.0);
    CHECK(d.edges.cut1 == doctest::Approx(3.0));
    CHECK(d.edges.cut2 == doctest::Approx(6.0));
    CHECK(d.labels[2] == BinLabel::Low);
    CHECK(d.labels[3] == BinLabel::Medium); // boundary joins the upper bin
    CHECK(d.labels[4] == BinLabel::Medium);
    CHECK(d.labels[6] == BinLabel::High);
    CHECK(d.labels[8] == BinLabel::High);
    CHECK(d.labels[9] == BinLabel::High); // hi itself labels high
}

TEST_CASE("constant values all map to the middle bin") {
    const std::vector<double> values(5, 2.5);
    const auto d = discretize_equal_width(values);
    for (auto l : d.labels) CHECK(l == BinLabel::Medium);
}

TEST_CASE("discretize rejects empty input") {
    CHECK_THROWS_AS(discretize_equal_width(std::vector<double>{}), EmptyDataset);
}

TEST_CASE("entropy of known histograms") {
    CHECK(entropy({{"a", 5}, {"b", 5}}) == doctest::Approx(1.0));
    CHECK(entropy({{"a", 7}}) == doctest::Approx(0.0));
    CHECK(entropy({{"yes", 9}, {"no", 5}}) == doctest::Approx(0.94029).epsilon(1e-4));
    CHECK(entropy({{"a", 3}, {"b", 0}, {"c", 3}}) == doctest::Approx(1.0)); // zero count ignored
    CHECK_THROWS_AS(entropy({}), EmptyDataset);
    CHECK_THROWS_AS(entropy({{"a", 0}}), EmptyDataset);
}

TEST_CASE("split info of balanced partitions") {
    // Three equal partitions: entropy of {1/3, 1/3, 1/3}.
    std::vector<oracle::Row> rows = {{BinLabel::Low, "x"},    {BinLabel::Low, "y"},
                                     {BinLabel::Medium, "x"}, {BinLabel::Medium, "y"},
                                     {BinLabel::High, "x"},   {BinLabel::High, "y"}};
    const auto ds = to_dataset(rows);
    CHECK(split_info(ds, "a") == doctest::Approx(std::log2(3.0)).epsilon(1e-12));

    // Single partition: split info 0, gain ratio defined as 0.
    std::vector<oracle::Row> flat = {{BinLabel::Low, "x"}, {BinLabel::Low, "y"}};
    CHECK(split_info(to_dataset(flat), "a") == 0.0);
    CHECK(gain_ratio(to_dataset(flat), "a") == 0.0);
}

TEST_CASE("perfectly aligned attribute reaches gain ratio 1") {
    std::vector<oracle::Row> rows = {{BinLabel::Low, "x"},  {BinLabel::Low, "x"},
                                     {BinLabel::High, "y"}, {BinLabel::High, "y"}};
    const auto ds = to_dataset(rows);
    CHECK(gain(ds, "a") == doctest::Approx(1.0));
    CHECK(split_info(ds, "a") == doctest::Approx(1.0));
    CHECK(gain_ratio(ds, "a") == doctest::Approx(1.0));
}

TEST_CASE("unknown attribute raises") {
    std::vector<oracle::Row> rows = {{BinLabel::Low, "x"}};
    const auto ds = to_dataset(rows);
    CHECK_THROWS_AS(expected_info(ds, "b"), UnknownAttribute);
    CHECK_THROWS_AS(split_info(ds, "b"), UnknownAttribute);
    CHECK_THROWS_AS(gain(ds, "b"), UnknownAttribute);
}

TEST_CASE("empty dataset raises") {
    DiscreteDataset ds;
    CHECK_THROWS_AS(dataset_entropy(ds), EmptyDataset);
    CHECK_THROWS_AS(expected_info(ds, "a"), EmptyDataset);
}

TEST_CASE("gain statistics match the brute-force oracle on small datasets") {
    // Exhaustive over all multisets of (bin, class) rows with <= 4 rows,
    // one ternary attribute, two classes.
    std::vector<oracle::Row> kinds;
    for (BinLabel b : {BinLabel::Low, BinLabel::Medium, BinLabel::High})
        for (const char* cls : {"c0", "c1"}) kinds.push_back({b, cls});

    std::size_t checked = 0;
    std::vector<int> counts(kinds.size(), 0);
    auto verify = [&](const std::vector<int>& take) {
        std::vector<oracle::Row> rows;
        for (std::size_t i = 0; i < kinds.size(); ++i)
            for (int c = 0; c < take[i]; ++c) rows.push_back(kinds[i]);
        if (rows.empty()) return;
        const auto ds = to_dataset(rows);
        CHECK(gain(ds, "a") == doctest::Approx(oracle::gain(rows)).epsilon(1e-12));
        CHECK(split_info(ds, "a") == doctest::Approx(oracle::split_info(rows)).epsilon(1e-12));
        CHECK(gain_ratio(ds, "a") == doctest::Approx(oracle::gain_ratio(rows)).epsilon(1e-12));
        CHECK(gain(ds, "a") >= -1e-12);
        ++checked;
    };

    // Enumerate counts per row kind summing to <= 4.
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == counts.size()) {
            verify(counts);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c);
        }
        counts[i] = 0;
    };
    rec(0, 4);
    // Non-empty multisets of <= 4 rows over 6 kinds: sum of C(n+5, 5) - 1.
    CHECK(checked == 209);
}

TEST_CASE("gain ratio is invariant under bin and class relabeling") {
    std::vector<oracle::Row> rows = {{BinLabel::Low, "x"},    {BinLabel::Medium, "y"},
                                     {BinLabel::Medium, "x"}, {BinLabel::High, "y"},
                                     {BinLabel::High, "y"},   {BinLabel::Low, "x"}};
    const auto base = gain_ratio(to_dataset(rows), "a");

    auto permute_bin = [](BinLabel b) {
        switch (b) {
        case BinLabel::Low: return BinLabel::High;
        case BinLabel::Medium: return BinLabel::Low;
        case BinLabel::High: return BinLabel::Medium;
        }
        return b;
    };
    std::vector<oracle::Row> relabeled;
    for (const auto& r : rows)
        relabeled.push_back({permute_bin(r.a), r.cls == "x" ? "zebra" : "aard"});
    CHECK(gain_ratio(to_dataset(relabeled), "a") == doctest::Approx(base).epsilon(1e-12));
}
