// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wsnr/wsnr.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitInternal = 1;

int exit_code(wsnr_status status) {
    switch (wsnr_status_classify(status)) {
        case WSNR_CLASS_OK: return 0;
        case WSNR_CLASS_CONFIG: return kExitConfig;
        case WSNR_CLASS_DATA: return kExitData;
        case WSNR_CLASS_DEGENERATE: return kExitDegenerate;
        case WSNR_CLASS_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

int report_failure(wsnr_status status) {
    std::fprintf(stderr, "wsnr: error (%s): %s\n", wsnr_status_name(status), wsnr_last_error());
    return exit_code(status);
}

const char* model_name(wsnr_model m) {
    switch (m) {
        case WSNR_MODEL_ONE_DIMENSIONAL: return "one_dimensional";
        case WSNR_MODEL_CLASSICAL_SPATIAL: return "classical_spatial";
        case WSNR_MODEL_WEIGHTED_SPATIAL: return "weighted_spatial";
    }
    return "?";
}

struct RunOptions {
    std::optional<std::string> config;
    std::vector<std::pair<std::string, std::optional<std::string>>> values;
    std::vector<std::string> models;
    bool polygon_mode = false;
    bool strict = false;

    std::optional<std::string>& slot(const std::string& key) {
        values.emplace_back(key, std::nullopt);
        return values.back().second;
    }
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    o.values.reserve(16);
    cmd->add_option("--config", o.config, "Flat key = value config file; flags override it");
    cmd->add_option("--dataset", o.slot("dataset"), "GeoJSON feature collection");
    cmd->add_option("--network", o.slot("network"), "Connection list: from_id,to_id,cost");
    cmd->add_option("--attributes", o.slot("attributes"), "Attribute table joined by --join-key");
    cmd->add_option("--join-key", o.slot("join-key"), "Key column of the attribute table");
    cmd->add_option("--attribute", o.slot("attribute"), "Attribute to test");
    cmd->add_option("--model", o.models,
                    "one_dimensional | classical_spatial | weighted_spatial (repeatable)");
    cmd->add_option("--strategy", o.slot("strategy"), "graph | distance | adjacency | hybrid");
    cmd->add_option("--alpha", o.slot("alpha"), "Inverse-distance coefficient");
    cmd->add_option("--beta", o.slot("beta"), "Direct-connection coefficient");
    cmd->add_option("--delta", o.slot("delta"), "Inverse minimal-cost coefficient");
    cmd->add_option("--radius", o.slot("radius"), "Buffer radius in map units");
    cmd->add_option("--cost-limit", o.slot("cost-limit"), "Ignore relations costing more than this");
    cmd->add_option("--theta", o.slot("theta"), "Significance threshold on |z| (default 2)");
    cmd->add_flag("--polygon-mode", o.polygon_mode, "Weigh neighbors by area over centroid distance");
    cmd->add_option("--out", o.slot("out"), "Output directory");
    cmd->add_option("--format", o.slot("format"), "csv | json");
    cmd->add_flag("--strict", o.strict, "Treat a zero-spread difference distribution as an error");
}

struct ConfigHandle {
    wsnr_config* ptr = wsnr_config_create();
    ~ConfigHandle() { wsnr_config_free(ptr); }
};

wsnr_status apply(const RunOptions& o, wsnr_config* cfg) {
    if (o.config) {
        if (auto st = wsnr_config_load(cfg, o.config->c_str()); st != WSNR_OK) return st;
    }
    for (const auto& [key, value] : o.values) {
        if (!value) continue;
        if (auto st = wsnr_config_set(cfg, key.c_str(), value->c_str()); st != WSNR_OK) return st;
    }
    if (!o.models.empty()) {
        std::string joined;
        for (const auto& m : o.models) joined += (joined.empty() ? "" : ",") + m;
        if (auto st = wsnr_config_set(cfg, "model", joined.c_str()); st != WSNR_OK) return st;
    }
    if (o.polygon_mode) {
        if (auto st = wsnr_config_set(cfg, "polygon-mode", "true"); st != WSNR_OK) return st;
    }
    if (o.strict) {
        if (auto st = wsnr_config_set(cfg, "strict", "true"); st != WSNR_OK) return st;
    }
    return WSNR_OK;
}

int run_models(const RunOptions& o, bool require_pair) {
    ConfigHandle cfg;
    if (cfg.ptr == nullptr) return kExitInternal;
    if (auto st = apply(o, cfg.ptr); st != WSNR_OK) return report_failure(st);
    if (require_pair && wsnr_config_model_count(cfg.ptr) != 2) {
        std::fprintf(stderr, "wsnr: error: compare needs exactly two --model values (baseline first)\n");
        return kExitConfig;
    }

    wsnr_run_result* result = nullptr;
    const wsnr_status st = wsnr_run(cfg.ptr, &result);
    if (result != nullptr) {
        for (size_t i = 0; i < wsnr_run_warning_count(result); ++i) {
            std::fprintf(stderr, "wsnr: warning: %s\n", wsnr_run_warning(result, i));
        }
        for (size_t i = 0; i < wsnr_run_report_count(result); ++i) {
            const wsnr_report* r = wsnr_run_report(result, i);
            std::printf("%-18s scored %zu, flagged %zu, excluded %zu\n", model_name(wsnr_report_model(r)),
                        wsnr_report_size(r), wsnr_report_flagged_count(r), wsnr_report_excluded_count(r));
        }
        for (size_t i = 0; i < wsnr_run_comparison_count(result); ++i) {
            double mean = 0.0;
            if (wsnr_comparison_mean_improvement(wsnr_run_comparison(result, i), &mean)) {
                std::printf("comparison %zu: mean improvement %.4f\n", i + 1, mean);
            } else {
                std::printf("comparison %zu: mean improvement undefined\n", i + 1);
            }
        }
        for (size_t i = 0; i < wsnr_run_file_count(result); ++i) {
            std::printf("wrote %s\n", wsnr_run_file(result, i));
        }
        wsnr_run_result_free(result);
    }
    return st == WSNR_OK ? 0 : report_failure(st);
}

struct GenOptions {
    std::string kind = "grid";
    size_t rows = 5;
    size_t cols = 5;
    double cell_size = 1.0;
    size_t points = 50;
    double extent = 100.0;
    size_t links = 3;
    size_t smoothing = 0;
    std::vector<std::string> plants;
    uint64_t seed = 0;
    std::string attribute = "value";
    std::string out = ".";
};

int run_gen(const GenOptions& o) {
    wsnr_gen_spec spec;
    wsnr_gen_spec_init(&spec);
    if (o.kind == "grid") {
        spec.kind = WSNR_GEN_GRID;
    } else if (o.kind == "random_points") {
        spec.kind = WSNR_GEN_RANDOM_POINTS;
    } else {
        std::fprintf(stderr, "wsnr: error: unknown --kind '%s'\n", o.kind.c_str());
        return kExitConfig;
    }
    std::vector<wsnr_plant> plants;
    for (const auto& p : o.plants) {
        const auto colon = p.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument(p);
            plants.push_back({std::stoul(p.substr(0, colon)), std::stod(p.substr(colon + 1))});
        } catch (const std::exception&) {
            std::fprintf(stderr, "wsnr: error: --plant expects INDEX:SIGMAS, got '%s'\n", p.c_str());
            return kExitConfig;
        }
    }
    spec.rows = o.rows;
    spec.cols = o.cols;
    spec.cell_size = o.cell_size;
    spec.n_points = o.points;
    spec.extent = o.extent;
    spec.links = o.links;
    spec.smoothing = o.smoothing;
    spec.plants = plants.data();
    spec.plant_count = plants.size();
    spec.seed = o.seed;
    spec.attribute = o.attribute.c_str();

    wsnr_dataset* ds = nullptr;
    wsnr_network* net = nullptr;
    if (auto st = wsnr_generate(&spec, &ds, &net); st != WSNR_OK) return report_failure(st);
    const std::string dataset_path = o.out + "/dataset.geojson";
    const std::string network_path = o.out + "/network.csv";
    wsnr_status st = wsnr_dataset_save(ds, dataset_path.c_str());
    if (st == WSNR_OK) st = wsnr_network_save(net, network_path.c_str());
    if (st == WSNR_OK) {
        std::printf("wrote %s (%zu objects)\nwrote %s (%zu edges)\n", dataset_path.c_str(),
                    wsnr_dataset_size(ds), network_path.c_str(), wsnr_network_edge_count(net));
    }
    wsnr_dataset_free(ds);
    wsnr_network_free(net);
    return st == WSNR_OK ? 0 : report_failure(st);
}

int run_report(const std::string& path) {
    wsnr_report* r = nullptr;
    if (auto st = wsnr_report_load(path.c_str(), &r); st != WSNR_OK) return report_failure(st);
    double theta = 0.0, mu = 0.0, sigma = 0.0;
    wsnr_report_stats(r, &theta, &mu, &sigma);
    std::printf("model      %s\nattribute  %s\ntheta      %g\nmean S(x)  %.10g\nsigma S(x) %.10g\n",
                model_name(wsnr_report_model(r)), wsnr_report_attribute(r), theta, mu, sigma);
    std::printf("scored %zu, flagged %zu, excluded %zu%s\n", wsnr_report_size(r),
                wsnr_report_flagged_count(r), wsnr_report_excluded_count(r),
                wsnr_report_degenerate(r) ? " (degenerate)" : "");
    std::printf("%-12s %12s %12s %12s\n", "id", "actual", "expected", "z");
    for (size_t i = 0; i < wsnr_report_size(r); ++i) {
        wsnr_score s;
        wsnr_report_score(r, i, &s);
        if (!s.is_outlier) continue;
        std::printf("%-12s %12.6g %12.6g %12.4f\n", s.id, s.actual, s.expected, s.z);
    }
    wsnr_report_free(r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted spatial neighborhood outlier detection"};
    app.set_version_flag("--version", std::string(wsnr_version()));
    app.require_subcommand(1);

    RunOptions detect_opts;
    auto* detect = app.add_subcommand("detect", "Score the selected models and write reports");
    add_run_options(detect, detect_opts);

    RunOptions compare_opts;
    auto* compare = app.add_subcommand("compare", "Score two models and compare them (baseline first)");
    add_run_options(compare, compare_opts);

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset and connection network");
    gen->add_option("--kind", gen_opts.kind, "grid | random_points");
    gen->add_option("--rows", gen_opts.rows);
    gen->add_option("--cols", gen_opts.cols);
    gen->add_option("--cell-size", gen_opts.cell_size);
    gen->add_option("--points", gen_opts.points);
    gen->add_option("--extent", gen_opts.extent);
    gen->add_option("--links", gen_opts.links, "Nearest neighbors linked per random point");
    gen->add_option("--smoothing", gen_opts.smoothing, "Neighbor-averaging passes");
    gen->add_option("--plant", gen_opts.plants, "INDEX:SIGMAS, repeatable");
    gen->add_option("--seed", gen_opts.seed);
    gen->add_option("--attribute", gen_opts.attribute);
    gen->add_option("--out", gen_opts.out, "Output directory");

    std::string report_path;
    auto* report = app.add_subcommand("report", "Summarize a report file");
    report->add_option("input", report_path, "Report file (.json or .csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (detect->parsed()) return run_models(detect_opts, false);
    if (compare->parsed()) return run_models(compare_opts, true);
    if (gen->parsed()) return run_gen(gen_opts);
    if (report->parsed()) return run_report(report_path);
    return kExitConfig;
}
