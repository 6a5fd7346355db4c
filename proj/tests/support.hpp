#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "wsnr/datagen.hpp"
#include "wsnr/error.hpp"
#include "wsnr/neighborhood.hpp"

#define CHECK_THROWS_CODE(expr, expected_code)                                  \
    do {                                                                        \
        bool thrown_ = false;                                                   \
        try {                                                                   \
            (void)(expr);                                                       \
        } catch (const ::wsnr::Error& e_) {                                     \
            thrown_ = true;                                                     \
            CHECK_MESSAGE(e_.code() == (expected_code), e_.what());             \
        }                                                                       \
        CHECK_MESSAGE(thrown_, "expected wsnr::Error from " #expr);             \
    } while (false)

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(WSNR_FIXTURES) + "/" + name; }

inline wsnr::ConnectionNetwork random_graph(std::mt19937_64& rng, std::size_t nodes, std::size_t edges,
                                            double max_cost) {
    std::vector<wsnr::ObjectId> ids;
    for (std::size_t i = 0; i < nodes; ++i) ids.push_back("n" + std::to_string(i));
    wsnr::ConnectionNetwork net(ids);
    std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
    std::uniform_real_distribution<double> cost(0.0, max_cost);
    for (std::size_t e = 0; e < edges; ++e) {
        const auto a = pick(rng);
        auto b = pick(rng);
        if (a == b) b = (b + 1) % nodes;
        net.add_edge(a, b, cost(rng));
    }
    return net;
}

inline wsnr::Coefficients random_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
        case 0: return {1.0, 0.0, 0.0};
        case 1: return {0.0, 1.0, 0.0};
        case 2: return {0.0, 0.0, 1.0};
        default: {
            const double a = u(rng);
            const double b = u(rng) * (1.0 - a);
            return {a, b, 1.0 - a - b};
        }
    }
}

// A dataset plus a framework drawn from every strategy in turn.
struct RandomCase {
    wsnr::Generated data;
    wsnr::WeightConfig cfg;
    wsnr::WeightedNeighborhood framework;
};

inline RandomCase random_case(std::uint64_t seed, std::size_t max_objects = 50) {
    std::mt19937_64 rng(seed);
    RandomCase rc;
    const auto strategy = static_cast<wsnr::Strategy>(seed % 4);
    wsnr::GenSpec spec;
    spec.seed = seed;
    spec.smoothing = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    if (strategy == wsnr::Strategy::adjacency) {
        spec.kind = wsnr::GenKind::grid;
        const std::size_t side_max = max_objects >= 49 ? 7 : 4;
        spec.rows = std::uniform_int_distribution<std::size_t>(2, side_max)(rng);
        spec.cols = std::uniform_int_distribution<std::size_t>(2, side_max)(rng);
        spec.cell_size = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
    } else {
        spec.kind = wsnr::GenKind::random_points;
        spec.n_points = std::uniform_int_distribution<std::size_t>(5, max_objects)(rng);
        spec.links = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    }
    rc.data = wsnr::generate(spec);

    rc.cfg.strategy = strategy;
    rc.cfg.coefficients = random_coefficients(rng);
    rc.cfg.buffer_radius = std::uniform_real_distribution<double>(15.0, 45.0)(rng);
    if (std::bernoulli_distribution(0.3)(rng)) {
        rc.cfg.cost_limit = std::uniform_real_distribution<double>(10.0, 80.0)(rng);
    }
    if (strategy == wsnr::Strategy::adjacency && std::bernoulli_distribution(0.5)(rng)) {
        rc.cfg.polygon_mode = true;
    }
    // Widen sparse settings until at least two objects have neighbors.
    for (;;) {
        rc.framework = wsnr::build_framework(rc.data.dataset, &rc.data.network, rc.cfg);
        std::size_t included = 0;
        for (std::size_t i = 0; i < rc.framework.size(); ++i) included += rc.framework.is_excluded(i) ? 0 : 1;
        if (included >= 2) return rc;
        rc.cfg.buffer_radius *= 2.0;
        rc.cfg.cost_limit = std::numeric_limits<double>::infinity();
    }
}

}  // namespace testing
