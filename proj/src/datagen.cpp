#include "wsnr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "wsnr/error.hpp"

namespace wsnr {

namespace {

constexpr const char* kWhere = "datagen/generate";

Polygon unit_cell(std::size_t row, std::size_t col, double size) {
    const double x0 = static_cast<double>(col) * size;
    const double y0 = static_cast<double>(row) * size;
    const double x1 = x0 + size;
    const double y1 = y0 + size;
    return Polygon{{Ring{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}}};
}

void smooth(std::vector<double>& field, const ConnectionNetwork& net, std::size_t passes) {
    std::vector<double> next(field.size());
    for (std::size_t pass = 0; pass < passes; ++pass) {
        for (std::size_t i = 0; i < field.size(); ++i) {
            double sum = field[i];
            std::size_t count = 1;
            for (std::size_t e : net.incident(i)) {
                const auto& edge = net.edges()[e];
                sum += field[edge.a == i ? edge.b : edge.a];
                ++count;
            }
            next[i] = sum / static_cast<double>(count);
        }
        field.swap(next);
    }
}

}  // namespace

void GenSpec::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidSpec, msg, kWhere); };
    std::size_t n = 0;
    if (kind == GenKind::grid) {
        if (rows == 0 || cols == 0) fail("grid needs at least one row and one column");
        if (!(cell_size > 0.0) || !std::isfinite(cell_size)) fail("cell size must be positive");
        n = rows * cols;
    } else {
        if (n_points < 2) fail("need at least two points");
        if (!(extent > 0.0) || !std::isfinite(extent)) fail("extent must be positive");
        if (links == 0) fail("each point needs at least one link");
        n = n_points;
    }
    for (const auto& p : planted) {
        if (p.index >= n) fail("planted index " + std::to_string(p.index) + " is out of range");
        if (!std::isfinite(p.sigmas)) fail("planted value must be finite");
    }
    if (attribute.empty()) fail("attribute name is empty");
}

Generated generate(const GenSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<SpatialObject> objects;
    if (spec.kind == GenKind::grid) {
        for (std::size_t r = 0; r < spec.rows; ++r) {
            for (std::size_t c = 0; c < spec.cols; ++c) {
                objects.push_back({std::to_string(r * spec.cols + c), unit_cell(r, c, spec.cell_size), {}});
            }
        }
    } else {
        std::uniform_real_distribution<double> coord(0.0, spec.extent);
        for (std::size_t i = 0; i < spec.n_points; ++i) {
            const double x = coord(rng);
            const double y = coord(rng);
            objects.push_back({std::to_string(i), Point{x, y}, {}});
        }
    }

    std::vector<ObjectId> ids;
    for (const auto& o : objects) ids.push_back(o.id);
    ConnectionNetwork net(ids);
    if (spec.kind == GenKind::grid) {
        for (std::size_t r = 0; r < spec.rows; ++r) {
            for (std::size_t c = 0; c < spec.cols; ++c) {
                const std::size_t i = r * spec.cols + c;
                if (c + 1 < spec.cols) net.add_edge(i, i + 1, 1.0);
                if (r + 1 < spec.rows) net.add_edge(i, i + spec.cols, 1.0);
            }
        }
    } else {
        const std::size_t n = objects.size();
        const std::size_t k = std::min(spec.links, n - 1);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& pi = std::get<Point>(objects[i].geometry);
            std::vector<std::size_t> order;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) order.push_back(j);
            }
            auto dist = [&](std::size_t j) {
                const Point& pj = std::get<Point>(objects[j].geometry);
                return std::hypot(pi.x - pj.x, pi.y - pj.y);
            };
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return dist(a) < dist(b); });
            for (std::size_t m = 0; m < k; ++m) {
                pairs.emplace_back(std::min(i, order[m]), std::max(i, order[m]));
            }
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (const auto& [a, b] : pairs) {
            const Point& pa = std::get<Point>(objects[a].geometry);
            const Point& pb = std::get<Point>(objects[b].geometry);
            net.add_edge(a, b, std::hypot(pa.x - pb.x, pa.y - pb.y));
        }
    }

    std::vector<double> field(objects.size());
    for (double& v : field) v = unit(rng);
    smooth(field, net, spec.smoothing);

    if (!spec.planted.empty()) {
        const double n = static_cast<double>(field.size());
        const double mean = std::accumulate(field.begin(), field.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : field) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / n);
        for (const auto& p : spec.planted) field[p.index] = mean + p.sigmas * sd;
    }

    for (std::size_t i = 0; i < objects.size(); ++i) objects[i].attributes[spec.attribute] = field[i];
    return {Dataset(std::move(objects)), std::move(net)};
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

void walk(std::size_t at, std::size_t target, double cost, const ConnectionNetwork& net,
          std::vector<bool>& visited, std::optional<double>& best) {
    if (at == target) {
        if (!best || cost < *best) best = cost;
        return;
    }
    for (const auto& edge : net.edges()) {
        std::size_t next;
        if (edge.a == at) {
            next = edge.b;
        } else if (edge.b == at) {
            next = edge.a;
        } else {
            continue;
        }
        if (visited[next]) continue;
        visited[next] = true;
        walk(next, target, cost + edge.cost, net, visited, best);
        visited[next] = false;
    }
}

}  // namespace

std::optional<double> oracle_min_cost(std::string_view x, std::string_view y,
                                      const ConnectionNetwork& net, double limit) {
    if (net.node_count() > kOracleMaxNodes) {
        throw Error(ErrorCode::TooLarge, "oracle enumerates paths on at most 10 nodes",
                    "datagen/oracle_min_cost");
    }
    const std::size_t xi = net.index_of(x);
    const std::size_t yi = net.index_of(y);
    std::vector<bool> visited(net.node_count(), false);
    visited[xi] = true;
    std::optional<double> best;
    walk(xi, yi, 0.0, net, visited, best);
    if (best && *best > limit) return std::nullopt;
    return best;
}

std::vector<ObjectId> oracle_detect(const Dataset& objects, const WeightedNeighborhood& framework,
                                    std::string_view attribute, double theta) {
    if (objects.size() > kOracleMaxObjects) {
        throw Error(ErrorCode::TooLarge, "oracle handles at most 50 objects", "datagen/oracle_detect");
    }
    const std::string key(attribute);
    auto f = [&](std::size_t i) { return objects[i].attributes.at(key); };

    // S(x) = f(x) - sum_y w_xy f(y) for every object with neighbors.
    std::vector<std::pair<ObjectId, double>> s;
    double largest = 0.0;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& rel = framework.neighbors(i);
        if (rel.empty()) continue;
        double aggregate = 0.0;
        for (const auto& r : rel) aggregate += r.weight * f(r.index);
        s.emplace_back(objects[i].id, f(i) - aggregate);
        largest = std::max({largest, std::abs(f(i)), std::abs(s.back().second)});
    }
    if (s.size() < 2) return {};

    double mean = 0.0;
    for (const auto& e : s) mean += e.second;
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (const auto& e : s) var += (e.second - mean) * (e.second - mean);
    const double sd = std::sqrt(var / static_cast<double>(s.size()));
    if (sd == 0.0 || sd <= 1e-12 * largest) return {};

    std::vector<ObjectId> flagged;
    for (const auto& e : s) {
        if (std::abs((e.second - mean) / sd) > theta) flagged.push_back(e.first);
    }
    std::sort(flagged.begin(), flagged.end(), id_less);
    return flagged;
}

}  // namespace wsnr
