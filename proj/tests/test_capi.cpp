#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "wsnr/wsnr.h"

namespace fs = std::filesystem;
using doctest::Approx;

namespace {

std::string fixture(const char* name) { return std::string(WSNR_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("dataset handles") {
    wsnr_dataset* ds = nullptr;
    REQUIRE(wsnr_dataset_load(fixture("village27.geojson").c_str(), &ds) == WSNR_OK);
    CHECK(wsnr_dataset_size(ds) == 8);
    CHECK(std::string(wsnr_dataset_id(ds, 0)) == "27");
    double v = 0;
    CHECK(wsnr_dataset_attribute(ds, 0, "illiterate_female", &v) == WSNR_OK);
    CHECK(v == Approx(0.26));
    CHECK(wsnr_dataset_attribute(ds, 0, "nope", &v) == WSNR_E_MISSING_ATTRIBUTE);
    CHECK(std::strlen(wsnr_last_error()) > 0);
    CHECK(wsnr_dataset_id(ds, 99) == nullptr);
    wsnr_dataset_free(ds);
    wsnr_dataset_free(nullptr);
}

TEST_CASE("load failures report status and message") {
    wsnr_dataset* ds = nullptr;
    CHECK(wsnr_dataset_load("/nonexistent.geojson", &ds) == WSNR_E_IO);
    CHECK(ds == nullptr);
    CHECK(std::string(wsnr_last_error()).find("nonexistent") != std::string::npos);
    CHECK(wsnr_dataset_load(nullptr, &ds) == WSNR_E_INVALID_ARGUMENT);
}

TEST_CASE("networks and minimal cost") {
    wsnr_dataset* ds = nullptr;
    wsnr_network* net = nullptr;
    REQUIRE(wsnr_dataset_load(fixture("letters_points.geojson").c_str(), &ds) == WSNR_OK);
    REQUIRE(wsnr_network_load(fixture("letters_network.csv").c_str(), ds, &net) == WSNR_OK);
    CHECK(wsnr_network_edge_count(net) == 10);
    double cost = 0;
    int reachable = 0;
    CHECK(wsnr_network_min_cost(net, "A", "B", INFINITY, &cost, &reachable) == WSNR_OK);
    CHECK(reachable == 1);
    CHECK(cost == Approx(1.0));
    CHECK(wsnr_network_min_cost(net, "A", "B", 0.5, &cost, &reachable) == WSNR_OK);
    CHECK(reachable == 0);
    CHECK(wsnr_network_min_cost(net, "A", "Z", 1.0, &cost, &reachable) == WSNR_E_UNKNOWN_OBJECT);
    wsnr_network_free(net);
    wsnr_dataset_free(ds);
}

TEST_CASE("generate, build, detect and compare") {
    wsnr_gen_spec spec;
    wsnr_gen_spec_init(&spec);
    const wsnr_plant plant{12, 5.0};
    spec.smoothing = 3;
    spec.plants = &plant;
    spec.plant_count = 1;
    spec.seed = 7;
    wsnr_dataset* ds = nullptr;
    wsnr_network* net = nullptr;
    REQUIRE(wsnr_generate(&spec, &ds, &net) == WSNR_OK);
    CHECK(wsnr_dataset_size(ds) == 25);
    CHECK(wsnr_network_edge_count(net) == 40);

    wsnr_config* cfg = wsnr_config_create();
    REQUIRE(wsnr_config_set(cfg, "polygon-mode", "true") == WSNR_OK);
    wsnr_framework* fw = nullptr;
    REQUIRE(wsnr_framework_build(ds, net, cfg, &fw) == WSNR_OK);
    CHECK(wsnr_framework_neighbor_count(fw, 12) == 4);
    CHECK(wsnr_framework_excluded_count(fw) == 0);
    const char* nid = nullptr;
    double w = 0;
    CHECK(wsnr_framework_neighbor(fw, 12, 0, &nid, &w) == WSNR_OK);
    CHECK(w == Approx(0.25));
    CHECK(wsnr_framework_neighbor(fw, 12, 9, &nid, &w) == WSNR_E_UNKNOWN_OBJECT);

    wsnr_report* one = nullptr;
    wsnr_report* weighted = nullptr;
    REQUIRE(wsnr_detect(ds, nullptr, "value", WSNR_MODEL_ONE_DIMENSIONAL, 2.0, &one) == WSNR_OK);
    REQUIRE(wsnr_detect(ds, fw, "value", WSNR_MODEL_WEIGHTED_SPATIAL, 2.0, &weighted) == WSNR_OK);
    CHECK(wsnr_detect(ds, nullptr, "value", WSNR_MODEL_WEIGHTED_SPATIAL, 2.0, &weighted) != WSNR_OK);
    CHECK(wsnr_report_size(weighted) == 25);
    CHECK(wsnr_report_flagged_count(weighted) == 1);
    CHECK(wsnr_report_model(weighted) == WSNR_MODEL_WEIGHTED_SPATIAL);
    CHECK(std::string(wsnr_report_attribute(weighted)) == "value");
    wsnr_score top;
    REQUIRE(wsnr_report_score(weighted, 24, &top) == WSNR_OK);
    CHECK(std::string(top.id) == "12");
    CHECK(top.is_outlier == 1);
    double theta = 0, mu = 1, sigma = 0;
    wsnr_report_stats(weighted, &theta, &mu, &sigma);
    CHECK(theta == 2.0);
    CHECK(sigma > 0);

    wsnr_comparison* cmp = nullptr;
    REQUIRE(wsnr_compare(one, weighted, &cmp) == WSNR_OK);
    CHECK(wsnr_comparison_size(cmp) == 25);
    double mean = 0;
    CHECK(wsnr_comparison_mean_improvement(cmp, &mean) == 1);

    const auto dir = fs::temp_directory_path() / "wsnr_test_capi";
    fs::remove_all(dir);
    CHECK(wsnr_report_write(weighted, (dir / "r.json").c_str(), WSNR_FORMAT_JSON) == WSNR_OK);
    CHECK(wsnr_report_write_scatter(weighted, (dir / "s.csv").c_str(), WSNR_FORMAT_CSV) == WSNR_OK);
    CHECK(wsnr_comparison_write(cmp, (dir / "c.csv").c_str(), WSNR_FORMAT_CSV) == WSNR_OK);
    wsnr_report* back = nullptr;
    REQUIRE(wsnr_report_load((dir / "r.json").c_str(), &back) == WSNR_OK);
    CHECK(wsnr_report_flagged_count(back) == 1);

    wsnr_report_free(back);
    wsnr_comparison_free(cmp);
    wsnr_report_free(one);
    wsnr_report_free(weighted);
    wsnr_framework_free(fw);
    wsnr_config_free(cfg);
    wsnr_network_free(net);
    wsnr_dataset_free(ds);
}

TEST_CASE("config errors classify as config") {
    wsnr_config* cfg = wsnr_config_create();
    CHECK(wsnr_config_set(cfg, "bogus", "1") == WSNR_E_INVALID_ARGUMENT);
    CHECK(wsnr_config_set(cfg, "dataset", fixture("village27.geojson").c_str()) == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "attribute", "illiterate_female") == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "strategy", "hybrid") == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "alpha", "0.5") == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "beta", "0.4") == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "radius", "1") == WSNR_OK);
    const wsnr_status st = wsnr_config_validate(cfg);
    CHECK(st == WSNR_E_COEFFICIENT_SUM);
    CHECK(wsnr_status_classify(st) == WSNR_CLASS_CONFIG);
    wsnr_run_result* res = nullptr;
    CHECK(wsnr_run(cfg, &res) == WSNR_E_COEFFICIENT_SUM);
    CHECK(res == nullptr);
    wsnr_config_free(cfg);

    CHECK(wsnr_status_classify(WSNR_OK) == WSNR_CLASS_OK);
    CHECK(wsnr_status_classify(WSNR_E_PARSE) == WSNR_CLASS_DATA);
    CHECK(wsnr_status_classify(WSNR_E_DEGENERATE_DISTRIBUTION) == WSNR_CLASS_DEGENERATE);
    CHECK(std::string(wsnr_status_name(WSNR_E_ZERO_COST)) == "ZeroCost");
}

TEST_CASE("end-to-end run through the C API") {
    const auto dir = fs::temp_directory_path() / "wsnr_test_capi_run";
    fs::remove_all(dir);
    wsnr_config* cfg = wsnr_config_create();
    CHECK(wsnr_config_set(cfg, "dataset", fixture("golden_5x5/dataset.geojson").c_str()) == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "attribute", "value") == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "model", "one_dimensional,classical_spatial,weighted_spatial") == WSNR_OK);
    CHECK(wsnr_config_set(cfg, "out", dir.c_str()) == WSNR_OK);
    CHECK(wsnr_config_model_count(cfg) == 3);
    wsnr_run_result* res = nullptr;
    REQUIRE(wsnr_run(cfg, &res) == WSNR_OK);
    CHECK(wsnr_run_report_count(res) == 3);
    CHECK(wsnr_run_comparison_count(res) == 3);
    CHECK(wsnr_run_file_count(res) == 9);
    for (std::size_t i = 0; i < wsnr_run_file_count(res); ++i) CHECK(fs::exists(wsnr_run_file(res, i)));
    CHECK(wsnr_report_flagged_count(wsnr_run_report(res, 2)) == 1);
    wsnr_run_result_free(res);
    wsnr_config_free(cfg);
}

TEST_CASE("strict mode turns a degenerate run into an error") {
    const auto dir = fs::temp_directory_path() / "wsnr_test_capi_strict";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string flat = (dir / "flat.geojson").string();
    {
        FILE* f = std::fopen(flat.c_str(), "w");
        std::fputs(R"({"type":"FeatureCollection","features":[)"
                   R"({"type":"Feature","id":"a","properties":{"v":1},"geometry":{"type":"Point","coordinates":[0,0]}},)"
                   R"({"type":"Feature","id":"b","properties":{"v":1},"geometry":{"type":"Point","coordinates":[1,0]}}]})",
                   f);
        std::fclose(f);
    }
    wsnr_config* cfg = wsnr_config_create();
    wsnr_config_set(cfg, "dataset", flat.c_str());
    wsnr_config_set(cfg, "attribute", "v");
    wsnr_config_set(cfg, "model", "one_dimensional");
    wsnr_config_set(cfg, "out", dir.c_str());
    wsnr_run_result* res = nullptr;
    CHECK(wsnr_run(cfg, &res) == WSNR_OK);
    CHECK(wsnr_run_warning_count(res) == 1);
    wsnr_run_result_free(res);
    res = nullptr;
    wsnr_config_set(cfg, "strict", "true");
    CHECK(wsnr_config_strict(cfg) == 1);
    CHECK(wsnr_run(cfg, &res) == WSNR_E_DEGENERATE_DISTRIBUTION);
    CHECK(res != nullptr);
    wsnr_run_result_free(res);
    wsnr_config_free(cfg);
}
