#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnr/dataset.hpp"
#include "wsnr/neighborhood.hpp"

namespace wsnr {

enum class ModelKind { one_dimensional, classical_spatial, weighted_spatial };

std::string_view to_string(ModelKind m) noexcept;
/// Throws InvalidArgument.
ModelKind parse_model(std::string_view name);

struct ObjectScore {
    ObjectId id;
    double actual = 0.0;
    double expected = 0.0;
    double diff = 0.0;
    double z = 0.0;
    bool is_outlier = false;
    ModelKind model = ModelKind::weighted_spatial;

    friend bool operator==(const ObjectScore&, const ObjectScore&) = default;
};

struct OutlierReport {
    ModelKind model = ModelKind::weighted_spatial;
    std::string attribute;
    double theta = 2.0;
    double mu = 0.0;
    double sigma = 0.0;
    /// Set when the difference distribution has no spread; no object is
    /// flagged and every z is reported as 0.
    bool degenerate = false;
    std::vector<ObjectScore> scores;  // z ascending, id tiebreak
    std::vector<ObjectId> excluded;   // no neighbors; spatial models only

    std::size_t flagged_count() const;
    std::vector<ObjectId> flagged() const;

    friend bool operator==(const OutlierReport&, const OutlierReport&) = default;
};

struct WeightedValue {
    double weight;
    double value;
};

/// Arithmetic mean of the neighbor values. Throws EmptyNeighborhood.
double expected_uniform(std::span<const double> neighbor_values);

/// Sum of weight * value; the weights must sum to 1 within
/// kWeightSumTolerance (WeightsNotNormalized otherwise). The result is kept
/// inside [min value, max value].
double expected_weighted(std::span<const WeightedValue> pairs);

inline double diff_function(double actual, double expected) { return actual - expected; }

struct SignificanceResult {
    std::vector<double> z;
    std::vector<bool> flags;
    double mu = 0.0;
    double sigma = 0.0;
    bool degenerate = false;
};

/// Relative spread below which a difference distribution counts as flat.
inline constexpr double kDegenerateRelTolerance = 1e-12;

/// Standardizes the differences with their mean and population standard
/// deviation and flags |z| > theta. When sigma <= kDegenerateRelTolerance *
/// scale the result is marked degenerate with all z = 0 and no flags.
/// Throws TooFewObjects for fewer than two values.
SignificanceResult significance_test(std::span<const double> diffs, double theta, double scale = 0.0);

/// Scores every object under `model`. The framework is required for the
/// spatial models and ignored for the one-dimensional one.
/// Throws MissingAttribute, EmptyDataset, MismatchedDatasets, TooFewObjects.
OutlierReport detect(const Dataset& objects, const WeightedNeighborhood* framework,
                     std::string_view attribute, ModelKind model, double theta);

}  // namespace wsnr
