#include "wsnr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "wsnr/error.hpp"

namespace wsnr {

double error_of(double actual, double expected) { return std::abs(expected - actual); }

double squared_reduction(double error_a, double error_b) {
    return error_a * error_a - error_b * error_b;
}

double improvement_pct(double error_a, double error_b) {
    if (error_a == 0.0) {
        throw Error(ErrorCode::BaselineZeroError, "baseline error is zero",
                    "evaluation/improvement_pct");
    }
    return squared_reduction(error_a, error_b) / (error_a * error_a);
}

namespace {

std::set<ObjectId> covered_ids(const OutlierReport& r) {
    std::set<ObjectId> ids(r.excluded.begin(), r.excluded.end());
    for (const auto& s : r.scores) ids.insert(s.id);
    return ids;
}

}  // namespace

ComparisonReport compare(const OutlierReport& report_a, const OutlierReport& report_b) {
    if (report_a.attribute != report_b.attribute) {
        throw Error(ErrorCode::MismatchedDatasets,
                    "reports score different attributes ('" + report_a.attribute + "' vs '" +
                        report_b.attribute + "')",
                    "evaluation/compare");
    }
    if (covered_ids(report_a) != covered_ids(report_b)) {
        throw Error(ErrorCode::MismatchedDatasets, "reports cover different objects",
                    "evaluation/compare");
    }

    std::map<ObjectId, const ObjectScore*> by_id_b;
    for (const auto& s : report_b.scores) by_id_b.emplace(s.id, &s);

    std::vector<const ObjectScore*> a_scores;
    for (const auto& s : report_a.scores) a_scores.push_back(&s);
    std::sort(a_scores.begin(), a_scores.end(),
              [](const ObjectScore* x, const ObjectScore* y) { return id_less(x->id, y->id); });

    ComparisonReport out;
    out.model_a = report_a.model;
    out.model_b = report_b.model;
    double improvement_sum = 0.0;
    std::size_t defined = 0;
    for (const ObjectScore* a : a_scores) {
        const auto it = by_id_b.find(a->id);
        if (it == by_id_b.end()) continue;
        const ObjectScore* b = it->second;
        if (a->actual != b->actual) {
            throw Error(ErrorCode::MismatchedDatasets, "attribute values differ between reports",
                        "evaluation/compare", a->id);
        }
        ComparisonRow row;
        row.id = a->id;
        row.error_a = error_of(a->actual, a->expected);
        row.error_b = error_of(b->actual, b->expected);
        row.sq_reduction = squared_reduction(row.error_a, row.error_b);
        if (row.error_a != 0.0) {
            row.improvement_pct = improvement_pct(row.error_a, row.error_b);
            improvement_sum += *row.improvement_pct;
            ++defined;
        } else {
            ++out.baseline_zero_count;
        }
        if (a->is_outlier && b->is_outlier) out.flagged_both.push_back(a->id);
        if (a->is_outlier && !b->is_outlier) out.flagged_only_a.push_back(a->id);
        if (!a->is_outlier && b->is_outlier) out.flagged_only_b.push_back(a->id);
        out.rows.push_back(std::move(row));
    }
    if (defined > 0) out.mean_improvement = improvement_sum / static_cast<double>(defined);
    return out;
}

}  // namespace wsnr
