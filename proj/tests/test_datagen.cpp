#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wsnr/datagen.hpp"
#include "wsnr/io.hpp"
#include "wsnr/outlier.hpp"

using namespace wsnr;

namespace {

double mean_local_deviation(const Generated& g) {
    const auto values = g.dataset.attribute("value");
    double total = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double s = 0;
        std::size_t n = 0;
        for (std::size_t e : g.network.incident(i)) {
            const auto& edge = g.network.edges()[e];
            s += values[edge.a == i ? edge.b : edge.a];
            ++n;
        }
        if (n > 0) total += std::abs(values[i] - s / double(n));
    }
    return total / double(values.size());
}

}  // namespace

TEST_CASE("3x3 grid") {
    GenSpec spec;
    spec.rows = spec.cols = 3;
    spec.seed = 42;
    const auto g = generate(spec);
    CHECK(g.dataset.size() == 9);
    CHECK(g.network.edge_count() == 12);
    for (const auto& o : g.dataset.objects()) CHECK(std::holds_alternative<Polygon>(o.geometry));
    for (const auto& e : g.network.edges()) CHECK(e.cost == 1.0);
}

TEST_CASE("grid edges mirror rook adjacency") {
    for (std::size_t rows = 1; rows <= 6; ++rows) {
        for (std::size_t cols = 1; cols <= 6; ++cols) {
            if (rows * cols < 2) continue;
            GenSpec spec;
            spec.rows = rows;
            spec.cols = cols;
            const auto g = generate(spec);
            CHECK(g.network.edge_count() == rows * (cols - 1) + cols * (rows - 1));
            for (const auto& e : g.network.edges()) {
                const auto& a = std::get<Polygon>(g.dataset[e.a].geometry);
                const auto& b = std::get<Polygon>(g.dataset[e.b].geometry);
                CHECK(geom::shares_boundary(a, b));
            }
        }
    }
}

TEST_CASE("generation is deterministic") {
    GenSpec spec;
    spec.kind = GenKind::random_points;
    spec.n_points = 40;
    spec.smoothing = 2;
    spec.planted = {{3, 4.0}};
    spec.seed = 77;
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.dataset == b.dataset);
    CHECK(a.network == b.network);
    CHECK(io::dataset_to_geojson(a.dataset) == io::dataset_to_geojson(b.dataset));
    CHECK(io::network_to_csv(a.network) == io::network_to_csv(b.network));
    spec.seed = 78;
    CHECK_FALSE(generate(spec).dataset == a.dataset);
}

TEST_CASE("committed golden fixture matches the generator") {
    GenSpec spec;
    spec.smoothing = 3;
    spec.planted = {{12, 5.0}};
    spec.seed = 7;
    const auto g = generate(spec);
    CHECK(io::dataset_to_geojson(g.dataset) == io::read_text(testing::fixture("golden_5x5/dataset.geojson")));
    CHECK(io::network_to_csv(g.network) == io::read_text(testing::fixture("golden_5x5/network.csv")));
}

TEST_CASE("planted center is the only weighted outlier") {
    GenSpec spec;
    spec.smoothing = 3;
    spec.planted = {{12, 5.0}};
    spec.seed = 7;
    const auto g = generate(spec);
    WeightConfig cfg;
    cfg.polygon_mode = true;
    const auto fw = build_framework(g.dataset, nullptr, cfg);
    const auto rep = detect(g.dataset, &fw, "value", ModelKind::weighted_spatial, 2.0);
    CHECK(rep.flagged() == std::vector<ObjectId>{"12"});
    const auto oracle = oracle_detect(g.dataset, fw, "value", 2.0);
    CHECK(std::find(oracle.begin(), oracle.end(), "12") != oracle.end());
}

TEST_CASE("smoothing does not increase local deviation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (GenKind kind : {GenKind::grid, GenKind::random_points}) {
            GenSpec spec;
            spec.kind = kind;
            spec.rows = spec.cols = 6;
            spec.n_points = 30;
            spec.seed = seed;
            double prev = INFINITY;
            for (std::size_t passes = 0; passes <= 6; ++passes) {
                spec.smoothing = passes;
                const double dev = mean_local_deviation(generate(spec));
                CHECK(dev <= prev + 1e-12);
                prev = dev;
            }
        }
    }
}

TEST_CASE("invalid specs") {
    GenSpec spec;
    spec.rows = 0;
    CHECK_THROWS_CODE(generate(spec), ErrorCode::InvalidSpec);
    spec = {};
    spec.planted = {{25, 3.0}};
    CHECK_THROWS_CODE(generate(spec), ErrorCode::InvalidSpec);
    spec = {};
    spec.kind = GenKind::random_points;
    spec.n_points = 1;
    CHECK_THROWS_CODE(generate(spec), ErrorCode::InvalidSpec);
    spec = {};
    spec.cell_size = -1;
    CHECK_THROWS_CODE(generate(spec), ErrorCode::InvalidSpec);
}

TEST_CASE("min cost oracle basics") {
    ConnectionNetwork net(std::vector<ObjectId>{"a", "b", "c"});
    net.add_edge("a", "b", 2.5);
    CHECK(oracle_min_cost("a", "b", net, 10) == 2.5);
    CHECK_FALSE(oracle_min_cost("a", "c", net, 10).has_value());
    CHECK_FALSE(oracle_min_cost("a", "b", net, 2.0).has_value());

    std::vector<ObjectId> many;
    for (int i = 0; i < 11; ++i) many.push_back(std::to_string(i));
    CHECK_THROWS_CODE(oracle_min_cost("0", "1", ConnectionNetwork(many), 1.0), ErrorCode::TooLarge);
}

TEST_CASE("detect oracle basics") {
    GenSpec spec;
    spec.rows = spec.cols = 8;
    const auto big = generate(spec);
    WeightConfig cfg;
    const auto fw = build_framework(big.dataset, nullptr, cfg);
    CHECK_THROWS_CODE(oracle_detect(big.dataset, fw, "value", 2.0), ErrorCode::TooLarge);

    spec.rows = spec.cols = 4;
    auto flat = generate(spec);
    for (std::size_t i = 0; i < flat.dataset.size(); ++i) flat.dataset.mutable_object(i).attributes["value"] = 0.3;
    const auto ffw = build_framework(flat.dataset, nullptr, cfg);
    CHECK(oracle_detect(flat.dataset, ffw, "value", 2.0).empty());
}
