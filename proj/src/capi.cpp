#include "wsnr/wsnr.h"

#include <exception>
#include <new>
#include <optional>
#include <string>

#include "wsnr/datagen.hpp"
#include "wsnr/error.hpp"
#include "wsnr/evaluation.hpp"
#include "wsnr/io.hpp"
#include "wsnr/neighborhood.hpp"
#include "wsnr/outlier.hpp"
#include "wsnr/pipeline.hpp"

struct wsnr_dataset {
    wsnr::Dataset value;
};
struct wsnr_network {
    wsnr::ConnectionNetwork value;
};
struct wsnr_config {
    wsnr::RunConfig value;
};
struct wsnr_framework {
    wsnr::WeightedNeighborhood value;
};
struct wsnr_report {
    wsnr::OutlierReport value;
};
struct wsnr_comparison {
    wsnr::ComparisonReport value;
};
struct wsnr_run_result {
    wsnr::RunResult value;
    std::vector<std::string> files;
    std::vector<wsnr_report> reports;
    std::vector<wsnr_comparison> comparisons;
};

namespace {

thread_local std::string g_last_error;

wsnr_status to_status(wsnr::ErrorCode code) {
    using wsnr::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return WSNR_E_INVALID_ARGUMENT;
        case ErrorCode::ParseError: return WSNR_E_PARSE;
        case ErrorCode::DuplicateId: return WSNR_E_DUPLICATE_ID;
        case ErrorCode::InvalidGeometry: return WSNR_E_INVALID_GEOMETRY;
        case ErrorCode::DegenerateGeometry: return WSNR_E_DEGENERATE_GEOMETRY;
        case ErrorCode::UnknownObject: return WSNR_E_UNKNOWN_OBJECT;
        case ErrorCode::ReferentialError: return WSNR_E_REFERENTIAL;
        case ErrorCode::InvalidRadius: return WSNR_E_INVALID_RADIUS;
        case ErrorCode::NotPolygonal: return WSNR_E_NOT_POLYGONAL;
        case ErrorCode::ZeroDistance: return WSNR_E_ZERO_DISTANCE;
        case ErrorCode::ZeroCost: return WSNR_E_ZERO_COST;
        case ErrorCode::NoConnections: return WSNR_E_NO_CONNECTIONS;
        case ErrorCode::CoefficientSum: return WSNR_E_COEFFICIENT_SUM;
        case ErrorCode::MissingFactorData: return WSNR_E_MISSING_FACTOR_DATA;
        case ErrorCode::MissingNetwork: return WSNR_E_MISSING_NETWORK;
        case ErrorCode::EmptyNeighborhood: return WSNR_E_EMPTY_NEIGHBORHOOD;
        case ErrorCode::WeightsNotNormalized: return WSNR_E_WEIGHTS_NOT_NORMALIZED;
        case ErrorCode::DegenerateDistribution: return WSNR_E_DEGENERATE_DISTRIBUTION;
        case ErrorCode::TooFewObjects: return WSNR_E_TOO_FEW_OBJECTS;
        case ErrorCode::MissingAttribute: return WSNR_E_MISSING_ATTRIBUTE;
        case ErrorCode::EmptyDataset: return WSNR_E_EMPTY_DATASET;
        case ErrorCode::BaselineZeroError: return WSNR_E_BASELINE_ZERO_ERROR;
        case ErrorCode::MismatchedDatasets: return WSNR_E_MISMATCHED_DATASETS;
        case ErrorCode::InvalidSpec: return WSNR_E_INVALID_SPEC;
        case ErrorCode::TooLarge: return WSNR_E_TOO_LARGE;
        case ErrorCode::IoError: return WSNR_E_IO;
    }
    return WSNR_E_INTERNAL;
}

wsnr_status fail(wsnr_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, translating any exception into a status and the thread's
// last-error message.
template <class Fn>
wsnr_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const wsnr::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(WSNR_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WSNR_E_INTERNAL, e.what());
    } catch (...) {
        return fail(WSNR_E_INTERNAL, "unknown failure");
    }
}

wsnr_status null_arg(const char* what) {
    return fail(WSNR_E_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

wsnr::ModelKind to_model(wsnr_model m) {
    switch (m) {
        case WSNR_MODEL_ONE_DIMENSIONAL: return wsnr::ModelKind::one_dimensional;
        case WSNR_MODEL_CLASSICAL_SPATIAL: return wsnr::ModelKind::classical_spatial;
        case WSNR_MODEL_WEIGHTED_SPATIAL: return wsnr::ModelKind::weighted_spatial;
    }
    throw wsnr::Error(wsnr::ErrorCode::InvalidArgument, "unknown model", "capi");
}

wsnr_model from_model(wsnr::ModelKind m) {
    switch (m) {
        case wsnr::ModelKind::one_dimensional: return WSNR_MODEL_ONE_DIMENSIONAL;
        case wsnr::ModelKind::classical_spatial: return WSNR_MODEL_CLASSICAL_SPATIAL;
        case wsnr::ModelKind::weighted_spatial: return WSNR_MODEL_WEIGHTED_SPATIAL;
    }
    return WSNR_MODEL_WEIGHTED_SPATIAL;
}

wsnr::io::Format to_format(wsnr_format f) {
    return f == WSNR_FORMAT_CSV ? wsnr::io::Format::csv : wsnr::io::Format::json;
}

}  // namespace

extern "C" {

const char* wsnr_last_error(void) { return g_last_error.c_str(); }

const char* wsnr_status_name(wsnr_status status) {
    switch (status) {
        case WSNR_OK: return "OK";
        case WSNR_E_INVALID_ARGUMENT: return "InvalidArgument";
        case WSNR_E_PARSE: return "ParseError";
        case WSNR_E_DUPLICATE_ID: return "DuplicateId";
        case WSNR_E_INVALID_GEOMETRY: return "InvalidGeometry";
        case WSNR_E_DEGENERATE_GEOMETRY: return "DegenerateGeometry";
        case WSNR_E_UNKNOWN_OBJECT: return "UnknownObject";
        case WSNR_E_REFERENTIAL: return "ReferentialError";
        case WSNR_E_INVALID_RADIUS: return "InvalidRadius";
        case WSNR_E_NOT_POLYGONAL: return "NotPolygonal";
        case WSNR_E_ZERO_DISTANCE: return "ZeroDistance";
        case WSNR_E_ZERO_COST: return "ZeroCost";
        case WSNR_E_NO_CONNECTIONS: return "NoConnections";
        case WSNR_E_COEFFICIENT_SUM: return "CoefficientSum";
        case WSNR_E_MISSING_FACTOR_DATA: return "MissingFactorData";
        case WSNR_E_MISSING_NETWORK: return "MissingNetwork";
        case WSNR_E_EMPTY_NEIGHBORHOOD: return "EmptyNeighborhood";
        case WSNR_E_WEIGHTS_NOT_NORMALIZED: return "WeightsNotNormalized";
        case WSNR_E_DEGENERATE_DISTRIBUTION: return "DegenerateDistribution";
        case WSNR_E_TOO_FEW_OBJECTS: return "TooFewObjects";
        case WSNR_E_MISSING_ATTRIBUTE: return "MissingAttribute";
        case WSNR_E_EMPTY_DATASET: return "EmptyDataset";
        case WSNR_E_BASELINE_ZERO_ERROR: return "BaselineZeroError";
        case WSNR_E_MISMATCHED_DATASETS: return "MismatchedDatasets";
        case WSNR_E_INVALID_SPEC: return "InvalidSpec";
        case WSNR_E_TOO_LARGE: return "TooLarge";
        case WSNR_E_IO: return "IoError";
        case WSNR_E_INTERNAL: return "Internal";
    }
    return "Unknown";
}

wsnr_status_class wsnr_status_classify(wsnr_status status) {
    switch (status) {
        case WSNR_OK: return WSNR_CLASS_OK;
        case WSNR_E_INVALID_ARGUMENT:
        case WSNR_E_INVALID_RADIUS:
        case WSNR_E_COEFFICIENT_SUM:
        case WSNR_E_MISSING_NETWORK:
        case WSNR_E_INVALID_SPEC: return WSNR_CLASS_CONFIG;
        case WSNR_E_DEGENERATE_DISTRIBUTION: return WSNR_CLASS_DEGENERATE;
        case WSNR_E_INTERNAL: return WSNR_CLASS_INTERNAL;
        default: return WSNR_CLASS_DATA;
    }
}

const char* wsnr_version(void) { return "1.0.0"; }

// ---- datasets and networks ------------------------------------------------

wsnr_status wsnr_dataset_load(const char* geojson_path, wsnr_dataset** out) {
    if (geojson_path == nullptr || out == nullptr) return null_arg("path and out");
    return guarded([&] {
        *out = new wsnr_dataset{wsnr::io::load_dataset(geojson_path)};
        return WSNR_OK;
    });
}

wsnr_status wsnr_dataset_join_attributes(wsnr_dataset* dataset, const char* csv_path,
                                         const char* key_column) {
    if (dataset == nullptr || csv_path == nullptr || key_column == nullptr) {
        return null_arg("dataset, path and key column");
    }
    return guarded([&] {
        wsnr::io::join_attributes_file(dataset->value, csv_path, key_column);
        return WSNR_OK;
    });
}

wsnr_status wsnr_dataset_save(const wsnr_dataset* dataset, const char* geojson_path) {
    if (dataset == nullptr || geojson_path == nullptr) return null_arg("dataset and path");
    return guarded([&] {
        wsnr::io::save_dataset(dataset->value, geojson_path);
        return WSNR_OK;
    });
}

size_t wsnr_dataset_size(const wsnr_dataset* dataset) { return dataset ? dataset->value.size() : 0; }

const char* wsnr_dataset_id(const wsnr_dataset* dataset, size_t index) {
    if (dataset == nullptr || index >= dataset->value.size()) return nullptr;
    return dataset->value[index].id.c_str();
}

wsnr_status wsnr_dataset_attribute(const wsnr_dataset* dataset, size_t index, const char* name,
                                   double* out) {
    if (dataset == nullptr || name == nullptr || out == nullptr) return null_arg("arguments");
    if (index >= dataset->value.size()) return fail(WSNR_E_UNKNOWN_OBJECT, "index out of range");
    const auto& attrs = dataset->value[index].attributes;
    const auto it = attrs.find(name);
    if (it == attrs.end()) {
        return fail(WSNR_E_MISSING_ATTRIBUTE, std::string("attribute '") + name + "' is missing");
    }
    *out = it->second;
    return WSNR_OK;
}

void wsnr_dataset_free(wsnr_dataset* dataset) { delete dataset; }

wsnr_status wsnr_network_load(const char* csv_path, const wsnr_dataset* dataset, wsnr_network** out) {
    if (csv_path == nullptr || dataset == nullptr || out == nullptr) return null_arg("arguments");
    return guarded([&] {
        *out = new wsnr_network{wsnr::io::load_network(csv_path, dataset->value)};
        return WSNR_OK;
    });
}

wsnr_status wsnr_network_save(const wsnr_network* network, const char* csv_path) {
    if (network == nullptr || csv_path == nullptr) return null_arg("network and path");
    return guarded([&] {
        wsnr::io::save_network(network->value, csv_path);
        return WSNR_OK;
    });
}

size_t wsnr_network_edge_count(const wsnr_network* network) {
    return network ? network->value.edge_count() : 0;
}

wsnr_status wsnr_network_min_cost(const wsnr_network* network, const char* from, const char* to,
                                  double limit, double* cost, int* reachable) {
    if (network == nullptr || from == nullptr || to == nullptr || cost == nullptr || reachable == nullptr) {
        return null_arg("arguments");
    }
    return guarded([&] {
        const auto c = wsnr::min_cost(from, to, network->value, limit);
        *reachable = c.has_value() ? 1 : 0;
        if (c) *cost = *c;
        return WSNR_OK;
    });
}

void wsnr_network_free(wsnr_network* network) { delete network; }

void wsnr_gen_spec_init(wsnr_gen_spec* spec) {
    if (spec == nullptr) return;
    const wsnr::GenSpec d;
    spec->kind = WSNR_GEN_GRID;
    spec->rows = d.rows;
    spec->cols = d.cols;
    spec->cell_size = d.cell_size;
    spec->n_points = d.n_points;
    spec->extent = d.extent;
    spec->links = d.links;
    spec->smoothing = d.smoothing;
    spec->plants = nullptr;
    spec->plant_count = 0;
    spec->seed = d.seed;
    spec->attribute = nullptr;
}

wsnr_status wsnr_generate(const wsnr_gen_spec* spec, wsnr_dataset** dataset, wsnr_network** network) {
    if (spec == nullptr || dataset == nullptr) return null_arg("spec and dataset");
    if (spec->plant_count > 0 && spec->plants == nullptr) return null_arg("plants");
    return guarded([&] {
        wsnr::GenSpec s;
        s.kind = spec->kind == WSNR_GEN_RANDOM_POINTS ? wsnr::GenKind::random_points : wsnr::GenKind::grid;
        s.rows = spec->rows;
        s.cols = spec->cols;
        s.cell_size = spec->cell_size;
        s.n_points = spec->n_points;
        s.extent = spec->extent;
        s.links = spec->links;
        s.smoothing = spec->smoothing;
        for (size_t i = 0; i < spec->plant_count; ++i) s.planted.push_back({spec->plants[i].index, spec->plants[i].sigmas});
        s.seed = spec->seed;
        if (spec->attribute != nullptr) s.attribute = spec->attribute;
        auto generated = wsnr::generate(s);
        *dataset = new wsnr_dataset{std::move(generated.dataset)};
        if (network != nullptr) *network = new wsnr_network{std::move(generated.network)};
        return WSNR_OK;
    });
}

// ---- configuration --------------------------------------------------------

wsnr_config* wsnr_config_create(void) { return new (std::nothrow) wsnr_config{}; }

wsnr_status wsnr_config_set(wsnr_config* config, const char* key, const char* value) {
    if (config == nullptr || key == nullptr || value == nullptr) return null_arg("arguments");
    return guarded([&] {
        config->value.set(key, value);
        return WSNR_OK;
    });
}

wsnr_status wsnr_config_load(wsnr_config* config, const char* path) {
    if (config == nullptr || path == nullptr) return null_arg("config and path");
    return guarded([&] {
        for (const auto& [k, v] : wsnr::parse_config(wsnr::io::read_text(path))) config->value.set(k, v);
        return WSNR_OK;
    });
}

wsnr_status wsnr_config_validate(const wsnr_config* config) {
    if (config == nullptr) return null_arg("config");
    return guarded([&] {
        config->value.validate();
        return WSNR_OK;
    });
}

size_t wsnr_config_model_count(const wsnr_config* config) {
    return config ? config->value.models.size() : 0;
}

int wsnr_config_strict(const wsnr_config* config) { return config && config->value.strict ? 1 : 0; }

void wsnr_config_free(wsnr_config* config) { delete config; }

// ---- analysis -------------------------------------------------------------

wsnr_status wsnr_framework_build(const wsnr_dataset* dataset, const wsnr_network* network,
                                 const wsnr_config* config, wsnr_framework** out) {
    if (dataset == nullptr || config == nullptr || out == nullptr) return null_arg("arguments");
    return guarded([&] {
        *out = new wsnr_framework{wsnr::build_framework(
            dataset->value, network ? &network->value : nullptr, config->value.weights)};
        return WSNR_OK;
    });
}

size_t wsnr_framework_neighbor_count(const wsnr_framework* framework, size_t index) {
    if (framework == nullptr || index >= framework->value.size()) return 0;
    return framework->value.neighbors(index).size();
}

wsnr_status wsnr_framework_neighbor(const wsnr_framework* framework, size_t index, size_t k,
                                    const char** id, double* weight) {
    if (framework == nullptr || id == nullptr || weight == nullptr) return null_arg("arguments");
    if (index >= framework->value.size() || k >= framework->value.neighbors(index).size()) {
        return fail(WSNR_E_UNKNOWN_OBJECT, "neighbor index out of range");
    }
    const auto& rel = framework->value.neighbors(index)[k];
    *id = rel.id.c_str();
    *weight = rel.weight;
    return WSNR_OK;
}

size_t wsnr_framework_excluded_count(const wsnr_framework* framework) {
    return framework ? framework->value.excluded().size() : 0;
}

void wsnr_framework_free(wsnr_framework* framework) { delete framework; }

wsnr_status wsnr_detect(const wsnr_dataset* dataset, const wsnr_framework* framework,
                        const char* attribute, wsnr_model model, double theta, wsnr_report** out) {
    if (dataset == nullptr || attribute == nullptr || out == nullptr) return null_arg("arguments");
    return guarded([&] {
        *out = new wsnr_report{wsnr::detect(dataset->value, framework ? &framework->value : nullptr,
                                            attribute, to_model(model), theta)};
        return WSNR_OK;
    });
}

wsnr_status wsnr_report_load(const char* path, wsnr_report** out) {
    if (path == nullptr || out == nullptr) return null_arg("path and out");
    return guarded([&] {
        *out = new wsnr_report{wsnr::io::load_report(path)};
        return WSNR_OK;
    });
}

wsnr_status wsnr_report_write(const wsnr_report* report, const char* path, wsnr_format format) {
    if (report == nullptr || path == nullptr) return null_arg("report and path");
    return guarded([&] {
        wsnr::io::write_text(path, wsnr::io::report_to_string(report->value, to_format(format)));
        return WSNR_OK;
    });
}

wsnr_status wsnr_report_write_scatter(const wsnr_report* report, const char* path, wsnr_format format) {
    if (report == nullptr || path == nullptr) return null_arg("report and path");
    return guarded([&] {
        wsnr::io::write_text(path, wsnr::io::scatter_to_string(report->value, to_format(format)));
        return WSNR_OK;
    });
}

size_t wsnr_report_size(const wsnr_report* report) { return report ? report->value.scores.size() : 0; }

wsnr_status wsnr_report_score(const wsnr_report* report, size_t index, wsnr_score* out) {
    if (report == nullptr || out == nullptr) return null_arg("report and out");
    if (index >= report->value.scores.size()) return fail(WSNR_E_UNKNOWN_OBJECT, "score index out of range");
    const auto& s = report->value.scores[index];
    *out = {s.id.c_str(), s.actual, s.expected, s.diff, s.z, s.is_outlier ? 1 : 0};
    return WSNR_OK;
}

wsnr_model wsnr_report_model(const wsnr_report* report) {
    return report ? from_model(report->value.model) : WSNR_MODEL_WEIGHTED_SPATIAL;
}

const char* wsnr_report_attribute(const wsnr_report* report) {
    return report ? report->value.attribute.c_str() : "";
}

size_t wsnr_report_flagged_count(const wsnr_report* report) {
    return report ? report->value.flagged_count() : 0;
}

size_t wsnr_report_excluded_count(const wsnr_report* report) {
    return report ? report->value.excluded.size() : 0;
}

int wsnr_report_degenerate(const wsnr_report* report) { return report && report->value.degenerate ? 1 : 0; }

void wsnr_report_stats(const wsnr_report* report, double* theta, double* mu, double* sigma) {
    if (report == nullptr) return;
    if (theta) *theta = report->value.theta;
    if (mu) *mu = report->value.mu;
    if (sigma) *sigma = report->value.sigma;
}

void wsnr_report_free(wsnr_report* report) { delete report; }

wsnr_status wsnr_compare(const wsnr_report* baseline, const wsnr_report* candidate, wsnr_comparison** out) {
    if (baseline == nullptr || candidate == nullptr || out == nullptr) return null_arg("arguments");
    return guarded([&] {
        *out = new wsnr_comparison{wsnr::compare(baseline->value, candidate->value)};
        return WSNR_OK;
    });
}

int wsnr_comparison_mean_improvement(const wsnr_comparison* comparison, double* mean) {
    if (comparison == nullptr || !comparison->value.mean_improvement) return 0;
    if (mean) *mean = *comparison->value.mean_improvement;
    return 1;
}

size_t wsnr_comparison_size(const wsnr_comparison* comparison) {
    return comparison ? comparison->value.rows.size() : 0;
}

wsnr_status wsnr_comparison_write(const wsnr_comparison* comparison, const char* path, wsnr_format format) {
    if (comparison == nullptr || path == nullptr) return null_arg("comparison and path");
    return guarded([&] {
        wsnr::io::write_text(path, wsnr::io::comparison_to_string(comparison->value, to_format(format)));
        return WSNR_OK;
    });
}

void wsnr_comparison_free(wsnr_comparison* comparison) { delete comparison; }

// ---- end-to-end -----------------------------------------------------------

wsnr_status wsnr_run(const wsnr_config* config, wsnr_run_result** out) {
    if (config == nullptr || out == nullptr) return null_arg("config and out");
    return guarded([&] {
        auto* result = new wsnr_run_result{wsnr::run(config->value), {}, {}, {}};
        for (const auto& f : result->value.files) result->files.push_back(f.string());
        for (const auto& r : result->value.reports) result->reports.push_back({r});
        for (const auto& c : result->value.comparisons) result->comparisons.push_back({c});
        *out = result;
        if (config->value.strict && result->value.degenerate) {
            return fail(WSNR_E_DEGENERATE_DISTRIBUTION,
                        "difference distribution has zero spread (strict mode)");
        }
        return WSNR_OK;
    });
}

size_t wsnr_run_file_count(const wsnr_run_result* result) { return result ? result->files.size() : 0; }

const char* wsnr_run_file(const wsnr_run_result* result, size_t index) {
    if (result == nullptr || index >= result->files.size()) return nullptr;
    return result->files[index].c_str();
}

size_t wsnr_run_warning_count(const wsnr_run_result* result) {
    return result ? result->value.warnings.size() : 0;
}

const char* wsnr_run_warning(const wsnr_run_result* result, size_t index) {
    if (result == nullptr || index >= result->value.warnings.size()) return nullptr;
    return result->value.warnings[index].c_str();
}

size_t wsnr_run_report_count(const wsnr_run_result* result) { return result ? result->reports.size() : 0; }

const wsnr_report* wsnr_run_report(const wsnr_run_result* result, size_t index) {
    if (result == nullptr || index >= result->reports.size()) return nullptr;
    return &result->reports[index];
}

size_t wsnr_run_comparison_count(const wsnr_run_result* result) {
    return result ? result->comparisons.size() : 0;
}

const wsnr_comparison* wsnr_run_comparison(const wsnr_run_result* result, size_t index) {
    if (result == nullptr || index >= result->comparisons.size()) return nullptr;
    return &result->comparisons[index];
}

void wsnr_run_result_free(wsnr_run_result* result) { delete result; }

}  // extern "C"
