#pragma once

#include <optional>
#include <vector>

#include "wsnr/outlier.hpp"

namespace wsnr {

struct ComparisonRow {
    ObjectId id;
    double error_a = 0.0;
    double error_b = 0.0;
    double sq_reduction = 0.0;
    std::optional<double> improvement_pct;  // absent when error_a == 0

    friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct ComparisonReport {
    ModelKind model_a = ModelKind::one_dimensional;
    ModelKind model_b = ModelKind::weighted_spatial;
    std::vector<ComparisonRow> rows;  // id order
    std::optional<double> mean_improvement;
    std::size_t baseline_zero_count = 0;
    std::vector<ObjectId> flagged_both;
    std::vector<ObjectId> flagged_only_a;
    std::vector<ObjectId> flagged_only_b;

    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Magnitude of the prediction error, |expected - actual|.
double error_of(double actual, double expected);

/// error_a^2 - error_b^2.
double squared_reduction(double error_a, double error_b);

/// (error_a^2 - error_b^2) / error_a^2. Negative when model B does worse.
/// Throws BaselineZeroError when error_a is 0.
double improvement_pct(double error_a, double error_b);

/// Row-by-row comparison of model B against baseline model A over the
/// objects scored by both. Throws MismatchedDatasets when the reports cover
/// different objects or attributes.
ComparisonReport compare(const OutlierReport& report_a, const OutlierReport& report_b);

}  // namespace wsnr
