#include "wsnr/outlier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsnr/error.hpp"

namespace wsnr {

namespace {

constexpr const char* kModule = "outlier-engine";

std::string where(const char* op) { return std::string(kModule) + "/" + op; }

}  // namespace

std::string_view to_string(ModelKind m) noexcept {
    switch (m) {
        case ModelKind::one_dimensional: return "one_dimensional";
        case ModelKind::classical_spatial: return "classical_spatial";
        case ModelKind::weighted_spatial: return "weighted_spatial";
    }
    return "unknown";
}

ModelKind parse_model(std::string_view name) {
    if (name == "one_dimensional") return ModelKind::one_dimensional;
    if (name == "classical_spatial") return ModelKind::classical_spatial;
    if (name == "weighted_spatial") return ModelKind::weighted_spatial;
    throw Error(ErrorCode::InvalidArgument, "unknown model '" + std::string(name) + "'", kModule);
}

std::size_t OutlierReport::flagged_count() const {
    return static_cast<std::size_t>(
        std::count_if(scores.begin(), scores.end(), [](const ObjectScore& s) { return s.is_outlier; }));
}

std::vector<ObjectId> OutlierReport::flagged() const {
    std::vector<ObjectId> out;
    for (const auto& s : scores) {
        if (s.is_outlier) out.push_back(s.id);
    }
    std::sort(out.begin(), out.end(), id_less);
    return out;
}

double expected_uniform(std::span<const double> neighbor_values) {
    if (neighbor_values.empty()) {
        throw Error(ErrorCode::EmptyNeighborhood, "no neighbor values", where("expected_uniform"));
    }
    double sum = 0.0;
    for (double v : neighbor_values) sum += v;
    return sum / static_cast<double>(neighbor_values.size());
}

double expected_weighted(std::span<const WeightedValue> pairs) {
    if (pairs.empty()) {
        throw Error(ErrorCode::EmptyNeighborhood, "no neighbor values", where("expected_weighted"));
    }
    double wsum = 0.0;
    double acc = 0.0;
    double lo = pairs.front().value;
    double hi = pairs.front().value;
    for (const auto& p : pairs) {
        wsum += p.weight;
        acc += p.weight * p.value;
        lo = std::min(lo, p.value);
        hi = std::max(hi, p.value);
    }
    if (std::abs(wsum - 1.0) > kWeightSumTolerance) {
        throw Error(ErrorCode::WeightsNotNormalized, "weights sum to " + std::to_string(wsum),
                    where("expected_weighted"));
    }
    return std::clamp(acc, lo, hi);
}

SignificanceResult significance_test(std::span<const double> diffs, double theta, double scale) {
    if (diffs.size() < 2) {
        throw Error(ErrorCode::TooFewObjects, "need at least two differences",
                    where("significance_test"));
    }
    if (!(theta >= 0.0) || !std::isfinite(theta)) {
        throw Error(ErrorCode::InvalidArgument, "theta must be finite and non-negative",
                    where("significance_test"));
    }
    const double n = static_cast<double>(diffs.size());
    SignificanceResult out;
    out.mu = std::accumulate(diffs.begin(), diffs.end(), 0.0) / n;
    double ss = 0.0;
    for (double d : diffs) ss += (d - out.mu) * (d - out.mu);
    out.sigma = std::sqrt(ss / n);
    for (double d : diffs) scale = std::max(scale, std::abs(d));
    out.z.assign(diffs.size(), 0.0);
    out.flags.assign(diffs.size(), false);
    if (!(out.sigma > kDegenerateRelTolerance * scale) || out.sigma == 0.0) {
        out.degenerate = true;
        return out;
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        out.z[i] = (diffs[i] - out.mu) / out.sigma;
        out.flags[i] = std::abs(out.z[i]) > theta;
    }
    return out;
}

OutlierReport detect(const Dataset& objects, const WeightedNeighborhood* framework,
                     std::string_view attribute, ModelKind model, double theta) {
    if (objects.empty()) throw Error(ErrorCode::EmptyDataset, "no objects", where("detect"));
    const std::vector<double> values = [&] {
        try {
            return objects.attribute(attribute);
        } catch (const Error& e) {
            throw e.with_context(where("detect"));
        }
    }();

    OutlierReport report;
    report.model = model;
    report.attribute = std::string(attribute);
    report.theta = theta;

    std::vector<std::size_t> included;
    std::vector<double> expected;
    if (model == ModelKind::one_dimensional) {
        const double mean = expected_uniform(values);
        included.resize(objects.size());
        std::iota(included.begin(), included.end(), std::size_t{0});
        expected.assign(objects.size(), mean);
    } else {
        if (framework == nullptr) {
            throw Error(ErrorCode::InvalidArgument, "spatial models need a neighborhood framework",
                        where("detect"));
        }
        bool same = framework->size() == objects.size();
        for (std::size_t i = 0; same && i < objects.size(); ++i) same = framework->id(i) == objects[i].id;
        if (!same) {
            throw Error(ErrorCode::MismatchedDatasets, "framework was built for another dataset",
                        where("detect"));
        }
        for (std::size_t i = 0; i < objects.size(); ++i) {
            const auto& rel = framework->neighbors(i);
            if (rel.empty()) {
                report.excluded.push_back(objects[i].id);
                continue;
            }
            included.push_back(i);
            try {
                if (model == ModelKind::classical_spatial) {
                    std::vector<double> nv;
                    nv.reserve(rel.size());
                    for (const auto& r : rel) nv.push_back(values[r.index]);
                    expected.push_back(expected_uniform(nv));
                } else {
                    std::vector<WeightedValue> pairs;
                    pairs.reserve(rel.size());
                    for (const auto& r : rel) pairs.push_back({r.weight, values[r.index]});
                    expected.push_back(expected_weighted(pairs));
                }
            } catch (const Error& e) {
                throw e.with_context(where("detect"), objects[i].id);
            }
        }
        std::sort(report.excluded.begin(), report.excluded.end(), id_less);
    }

    std::vector<double> diffs(included.size());
    double scale = 0.0;
    for (std::size_t k = 0; k < included.size(); ++k) {
        diffs[k] = diff_function(values[included[k]], expected[k]);
        scale = std::max(scale, std::abs(values[included[k]]));
    }
    SignificanceResult st;
    try {
        st = significance_test(diffs, theta, scale);
    } catch (const Error& e) {
        throw e.with_context(where("detect"));
    }
    report.mu = st.mu;
    report.sigma = st.sigma;
    report.degenerate = st.degenerate;

    report.scores.reserve(included.size());
    for (std::size_t k = 0; k < included.size(); ++k) {
        const std::size_t i = included[k];
        report.scores.push_back(
            {objects[i].id, values[i], expected[k], diffs[k], st.z[k], st.flags[k], model});
    }
    std::stable_sort(report.scores.begin(), report.scores.end(),
                     [](const ObjectScore& a, const ObjectScore& b) {
                         if (a.z != b.z) return a.z < b.z;
                         return id_less(a.id, b.id);
                     });
    return report;
}

}  // namespace wsnr
