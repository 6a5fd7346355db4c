#include <doctest.h>

#include <filesystem>

#include "support.hpp"
#include "wsnr/io.hpp"
#include "wsnr/pipeline.hpp"

using namespace wsnr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wsnr_test_pipeline_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig golden(const fs::path& out) {
    RunConfig cfg;
    cfg.set("dataset", testing::fixture("golden_5x5/dataset.geojson"));
    cfg.set("network", testing::fixture("golden_5x5/network.csv"));
    cfg.set("attribute", "value");
    cfg.set("polygon_mode", "true");
    cfg.set("out", out.string());
    return cfg;
}

}  // namespace

TEST_CASE("config keys") {
    RunConfig cfg;
    cfg.set("model", "one_dimensional, weighted_spatial");
    CHECK(cfg.models == std::vector<ModelKind>{ModelKind::one_dimensional, ModelKind::weighted_spatial});
    cfg.set("cost_limit", "inf");
    CHECK(std::isinf(cfg.weights.cost_limit));
    cfg.set("strategy", "hybrid");
    CHECK(cfg.weights.strategy == Strategy::hybrid);
    CHECK_THROWS_CODE(cfg.set("alpha", "lots"), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(cfg.set("colour", "red"), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(cfg.set("strict", "maybe"), ErrorCode::InvalidArgument);
}

TEST_CASE("config file parsing") {
    const auto kv = parse_config("# comment\ndataset = a.geojson\n\nattribute= v\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0] == std::pair<std::string, std::string>{"dataset", "a.geojson"});
    CHECK(kv[1].second == "v");
    CHECK_THROWS_CODE(parse_config("dataset a\n"), ErrorCode::ParseError);
}

TEST_CASE("validation") {
    RunConfig cfg;
    CHECK_THROWS_CODE(cfg.validate(), ErrorCode::InvalidArgument);
    cfg.set("dataset", "x.geojson");
    cfg.set("attribute", "v");
    CHECK_NOTHROW(cfg.validate());
    cfg.set("strategy", "hybrid");
    cfg.set("alpha", "0.5");
    cfg.set("beta", "0.4");
    cfg.set("radius", "1");
    CHECK_THROWS_CODE(cfg.validate(), ErrorCode::CoefficientSum);
    cfg.set("beta", "0.5");
    CHECK_THROWS_CODE(cfg.validate(), ErrorCode::MissingNetwork);
    cfg.set("model", "one_dimensional");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("weighted run on the golden grid matches the reference flags") {
    const auto out = scratch("golden");
    const auto result = run(golden(out));
    REQUIRE(result.reports.size() == 1);
    const auto ds = io::load_dataset(testing::fixture("golden_5x5/dataset.geojson"));
    WeightConfig wc;
    wc.polygon_mode = true;
    const auto fw = build_framework(ds, nullptr, wc);
    CHECK(result.reports[0].flagged() == oracle_detect(ds, fw, "value", 2.0));
    CHECK(fs::exists(out / "report_weighted_spatial.json"));
    CHECK(fs::exists(out / "scatter_weighted_spatial.json"));
    const auto loaded = io::load_report(out / "report_weighted_spatial.json");
    CHECK(loaded.flagged() == result.reports[0].flagged());
}

TEST_CASE("two models write a comparison with an improvement column") {
    const auto out = scratch("compare");
    auto cfg = golden(out);
    cfg.set("model", "classical_spatial,weighted_spatial");
    cfg.set("format", "csv");
    const auto result = run(cfg);
    CHECK(result.comparisons.size() == 1);
    const auto text = io::read_text(out / "comparison_classical_spatial_vs_weighted_spatial.csv");
    CHECK(text.find("id,error_a,error_b,sq_reduction,improvement_pct\n") != std::string::npos);
    CHECK(result.files.size() == 5);
}

TEST_CASE("run errors carry their origin") {
    auto cfg = golden(scratch("errors"));
    cfg.set("dataset", testing::fixture("missing.geojson"));
    CHECK_THROWS_CODE(run(cfg), ErrorCode::IoError);

    auto bad = golden(scratch("errors2"));
    bad.set("attribute", "nope");
    try {
        run(bad);
        FAIL("expected MissingAttribute");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingAttribute);
        CHECK_FALSE(e.where().empty());
    }
}

TEST_CASE("degenerate runs are reported") {
    const auto out = scratch("flat");
    fs::create_directories(out);
    GenSpec spec;
    auto g = generate(spec);
    for (std::size_t i = 0; i < g.dataset.size(); ++i) g.dataset.mutable_object(i).attributes["value"] = 0.5;
    io::save_dataset(g.dataset, out / "flat.geojson");
    RunConfig cfg;
    cfg.set("dataset", (out / "flat.geojson").string());
    cfg.set("attribute", "value");
    cfg.set("out", out.string());
    const auto result = run(cfg);
    CHECK(result.degenerate);
    CHECK_FALSE(result.warnings.empty());
}
