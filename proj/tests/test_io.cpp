#include <doctest.h>

#include <filesystem>

#include "support.hpp"
#include "wsnr/io.hpp"
#include "wsnr/outlier.hpp"

using namespace wsnr;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string square_feature(const std::string& id, int x) {
    const std::string a = std::to_string(x), b = std::to_string(x + 1);
    return R"({"type":"Feature","id":")" + id + R"(","properties":{"v":1.5},"geometry":{"type":"Polygon",)"
           R"("coordinates":[[[)" + a + ",0],[" + b + ",0],[" + b + ",1],[" + a + ",1],[" + a + ",0]]]}}";
}

std::string collection(const std::vector<std::string>& features) {
    std::string s = R"({"type":"FeatureCollection","features":[)";
    for (std::size_t i = 0; i < features.size(); ++i) s += (i ? "," : "") + features[i];
    return s + "]}";
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wsnr_test_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("load a 9-cell grid file") {
    std::vector<std::string> f;
    for (int i = 0; i < 9; ++i) f.push_back(square_feature(std::to_string(i), i));
    const auto ds = io::parse_dataset(collection(f));
    CHECK(ds.size() == 9);
    CHECK(ds[4].attributes.at("v") == 1.5);
}

TEST_CASE("dataset parse errors") {
    CHECK_THROWS_CODE(io::parse_dataset(collection({square_feature("27", 0), square_feature("27", 1)})),
                      ErrorCode::DuplicateId);
    CHECK_THROWS_CODE(io::parse_dataset("{\"type\": \"FeatureCollection\",\n \"features\": [ oops ]}"),
                      ErrorCode::ParseError);
    try {
        io::parse_dataset("{\"type\": \"FeatureCollection\",\n\n \"features\": [ oops ]}");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    const std::string bowtie =
        R"({"type":"Feature","id":"b","properties":{},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,1],[1,0],[0,1],[0,0]]]}})";
    try {
        io::parse_dataset(collection({bowtie}));
        FAIL("expected InvalidGeometry");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidGeometry);
        CHECK(e.object_id() == "b");
    }
    const std::string line =
        R"({"type":"Feature","id":"l","properties":{},"geometry":{"type":"LineString","coordinates":[[0,0],[1,1]]}})";
    CHECK_THROWS_CODE(io::parse_dataset(collection({line})), ErrorCode::InvalidGeometry);
}

TEST_CASE("numeric ids and property ids") {
    const std::string numeric =
        R"({"type":"Feature","id":12,"properties":{"v":2},"geometry":{"type":"Point","coordinates":[1,2]}})";
    const std::string prop =
        R"({"type":"Feature","properties":{"id":"x7","v":3},"geometry":{"type":"Point","coordinates":[3,4]}})";
    const auto ds = io::parse_dataset(collection({numeric, prop}));
    CHECK(ds[0].id == "12");
    CHECK(ds[1].id == "x7");
}

TEST_CASE("attribute table joined by village id") {
    auto ds = io::load_dataset(testing::fixture("villages_grid.geojson"));
    io::join_attributes_file(ds, testing::fixture("villages_illiteracy.csv"), "Village_ID");
    REQUIRE(ds.size() == 10);
    const auto& first = ds[ds.index_of("1")];
    CHECK(first.attributes.at("Mail") == Approx(0.5026608612));
    CHECK(first.attributes.at("Femail") == Approx(0.664791901012));
    CHECK(first.attributes.at("total") == Approx(0.577633289986996));
    CHECK(first.attributes.count("Village") == 0);
    CHECK(ds.attribute("Femail").size() == 10);

    CHECK_THROWS_CODE(io::join_attributes(ds, "Village_ID,x\n99,1\n", "Village_ID"), ErrorCode::ReferentialError);
    CHECK_THROWS(io::join_attributes(ds, "a,b\n1,2\n", "Village_ID"));
}

TEST_CASE("network files") {
    const auto ds = io::parse_dataset(collection({square_feature("a", 0), square_feature("b", 1),
                                                  square_feature("c", 2)}));
    const auto net = io::parse_network("from,to,cost\na,b,1\nb,c,2.5\n# note\nc,a,0\n", ds);
    CHECK(net.edge_count() == 3);

    const auto parallel = io::parse_network("a,b,1\na,b,3\n", ds);
    CHECK(direct_connection_count("a", "b", parallel) == 2);

    CHECK_THROWS_CODE(io::parse_network("a,b,-1\n", ds), ErrorCode::ParseError);
    CHECK_THROWS_CODE(io::parse_network("a,b\n", ds), ErrorCode::ParseError);
    CHECK_THROWS_CODE(io::parse_network("a,a,1\n", ds), ErrorCode::ParseError);
    CHECK_THROWS_CODE(io::parse_network("a,zz,1\n", ds), ErrorCode::ReferentialError);
    try {
        io::parse_network("a,b,1\na,c,x\n", ds);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("generate, write and load round trip") {
    const auto dir = scratch("roundtrip");
    for (GenKind kind : {GenKind::grid, GenKind::random_points}) {
        GenSpec spec;
        spec.kind = kind;
        spec.rows = 4;
        spec.cols = 6;
        spec.cell_size = 0.3;
        spec.n_points = 37;
        spec.smoothing = 2;
        spec.planted = {{5, -3.0}};
        spec.seed = 1234;
        const auto g = generate(spec);
        io::save_dataset(g.dataset, dir / "d.geojson");
        io::save_network(g.network, dir / "n.csv");
        const auto ds = io::load_dataset(dir / "d.geojson");
        CHECK(ds == g.dataset);
        CHECK(io::load_network(dir / "n.csv", ds) == g.network);
    }
}

TEST_CASE("number formatting") {
    CHECK(io::format_number(0.0) == "0");
    CHECK(io::format_number(-0.0) == "0");
    CHECK(io::format_number(0.1234567890123) == "0.123456789");
    CHECK(io::format_number(2.0) == "2");
}

TEST_CASE("reports round trip through both formats") {
    const auto rc = testing::random_case(5);
    const auto rep = detect(rc.data.dataset, &rc.framework, "value", ModelKind::weighted_spatial, 2.0);
    for (auto fmt : {io::Format::csv, io::Format::json}) {
        const auto text = io::report_to_string(rep, fmt);
        CHECK(text == io::report_to_string(rep, fmt));
        const auto back = io::parse_report(text, fmt);
        CHECK(back.model == rep.model);
        CHECK(back.attribute == rep.attribute);
        CHECK(back.flagged() == rep.flagged());
        CHECK(back.excluded == rep.excluded);
        REQUIRE(back.scores.size() == rep.scores.size());
        for (std::size_t i = 0; i < rep.scores.size(); ++i) {
            CHECK(back.scores[i].id == rep.scores[i].id);
            CHECK(back.scores[i].z == Approx(rep.scores[i].z).epsilon(1e-9));
        }
        CHECK(io::report_to_string(back, fmt) == text);
    }
}

TEST_CASE("scatter output carries id, value, expected and z") {
    const auto rc = testing::random_case(9);
    const auto rep = detect(rc.data.dataset, &rc.framework, "value", ModelKind::classical_spatial, 2.0);
    const auto csv = io::scatter_to_string(rep, io::Format::csv);
    CHECK(csv.rfind("id,value,expected,z\n", 0) == 0);
    const auto json = io::scatter_to_string(rep, io::Format::json);
    CHECK(json.find("\"points\"") != std::string::npos);
}

TEST_CASE("io failures") {
    CHECK_THROWS_CODE(io::load_dataset("/nonexistent/file.geojson"), ErrorCode::IoError);
    CHECK_THROWS_CODE(io::parse_format("xml"), ErrorCode::InvalidArgument);
}
