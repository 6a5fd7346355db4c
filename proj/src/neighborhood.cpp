#include "wsnr/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "wsnr/error.hpp"

namespace wsnr {

namespace {

constexpr const char* kModule = "neighborhood";

std::string where(const char* op) { return std::string(kModule) + "/" + op; }

}  // namespace

// ---------------------------------------------------------------------------
// ConnectionNetwork

ConnectionNetwork::ConnectionNetwork(const Dataset& dataset) {
    std::vector<ObjectId> ids;
    ids.reserve(dataset.size());
    for (const auto& o : dataset.objects()) ids.push_back(o.id);
    *this = ConnectionNetwork(std::move(ids));
}

ConnectionNetwork::ConnectionNetwork(std::vector<ObjectId> node_ids)
    : ids_(std::move(node_ids)), incident_(ids_.size()) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i], i).second) {
            throw Error(ErrorCode::DuplicateId, "network node listed twice", kModule, ids_[i]);
        }
    }
}

std::size_t ConnectionNetwork::index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) {
        throw Error(ErrorCode::UnknownObject, "not a network node", kModule, std::string(id));
    }
    return it->second;
}

void ConnectionNetwork::add_edge(std::string_view from, std::string_view to, double cost) {
    const auto a = index_.find(std::string(from));
    const auto b = index_.find(std::string(to));
    if (a == index_.end() || b == index_.end()) {
        const std::string missing(a == index_.end() ? from : to);
        throw Error(ErrorCode::ReferentialError, "edge endpoint is not in the dataset", kModule,
                    missing);
    }
    add_edge(a->second, b->second, cost);
}

void ConnectionNetwork::add_edge(std::size_t a, std::size_t b, double cost) {
    if (a >= ids_.size() || b >= ids_.size()) {
        throw Error(ErrorCode::ReferentialError, "edge endpoint index out of range", kModule);
    }
    if (a == b) throw Error(ErrorCode::InvalidArgument, "self loop", kModule, ids_[a]);
    if (!(cost >= 0.0) || !std::isfinite(cost)) {
        throw Error(ErrorCode::InvalidArgument, "edge cost must be finite and non-negative", kModule,
                    ids_[a]);
    }
    incident_[a].push_back(edges_.size());
    incident_[b].push_back(edges_.size());
    edges_.push_back({a, b, cost});
}

// ---------------------------------------------------------------------------
// Configuration

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::graph: return "graph";
        case Strategy::distance: return "distance";
        case Strategy::adjacency: return "adjacency";
        case Strategy::hybrid: return "hybrid";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "graph") return Strategy::graph;
    if (name == "distance") return Strategy::distance;
    if (name == "adjacency") return Strategy::adjacency;
    if (name == "hybrid") return Strategy::hybrid;
    throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "'", kModule);
}

bool WeightConfig::needs_network() const {
    if (strategy == Strategy::graph) return true;
    if (polygon_mode) return false;
    return coefficients.beta > 0.0 || coefficients.delta > 0.0;
}

bool WeightConfig::uses_buffer() const {
    return strategy == Strategy::distance ||
           (strategy == Strategy::hybrid && coefficients.alpha > 0.0);
}

namespace {

void check_coefficients(const Coefficients& c) {
    for (double v : {c.alpha, c.beta, c.delta}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorCode::CoefficientSum, "coefficients must lie in [0, 1]", kModule);
        }
    }
    const double sum = c.alpha + c.beta + c.delta;
    if (std::abs(sum - 1.0) > kCoefficientSumTolerance) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "alpha + beta + delta = %.12g, expected 1", sum);
        throw Error(ErrorCode::CoefficientSum, buf, kModule);
    }
}

}  // namespace

void WeightConfig::validate() const {
    check_coefficients(coefficients);
    if (uses_buffer() && !(buffer_radius > 0.0 && std::isfinite(buffer_radius))) {
        throw Error(ErrorCode::InvalidRadius, "buffer radius must be positive", kModule);
    }
    if (!(cost_limit >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cost limit must be non-negative", kModule);
    }
    if (polygon_mode && strategy == Strategy::hybrid) {
        throw Error(ErrorCode::InvalidArgument,
                    "polygon mode weighs by area and distance; use a single-factor strategy",
                    kModule);
    }
}

// ---------------------------------------------------------------------------
// WeightedNeighborhood

WeightedNeighborhood::WeightedNeighborhood(std::vector<ObjectId> ids,
                                           std::vector<std::vector<Relation>> relations)
    : ids_(std::move(ids)), relations_(std::move(relations)) {
    if (ids_.size() != relations_.size()) {
        throw Error(ErrorCode::InvalidArgument, "one relation list per object is required", kModule);
    }
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        double sum = 0.0;
        for (const auto& r : relations_[i]) {
            if (r.index == i) throw Error(ErrorCode::InvalidArgument, "self relation", kModule, ids_[i]);
            if (r.index >= ids_.size() || ids_[r.index] != r.id) {
                throw Error(ErrorCode::InvalidArgument, "relation refers to an unknown object",
                            kModule, ids_[i]);
            }
            if (!(r.weight > 0.0 && r.weight <= 1.0)) {
                throw Error(ErrorCode::InvalidArgument, "weight outside (0, 1]", kModule, ids_[i]);
            }
            sum += r.weight;
        }
        if (!relations_[i].empty() && std::abs(sum - 1.0) > kWeightSumTolerance) {
            throw Error(ErrorCode::WeightsNotNormalized, "weights do not sum to 1", kModule, ids_[i]);
        }
    }
}

const std::vector<Relation>& WeightedNeighborhood::neighbors(std::string_view id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == id) return relations_[i];
    }
    throw Error(ErrorCode::UnknownObject, "not in framework", kModule, std::string(id));
}

std::vector<ObjectId> WeightedNeighborhood::excluded() const {
    std::vector<ObjectId> out;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (relations_[i].empty()) out.push_back(ids_[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Neighbor discovery

std::set<ObjectId> graph_neighbors(std::string_view x, const ConnectionNetwork& net) {
    const std::size_t xi = net.index_of(x);
    std::set<ObjectId> out;
    for (std::size_t e : net.incident(xi)) {
        const auto& edge = net.edges()[e];
        out.insert(net.node_id(edge.a == xi ? edge.b : edge.a));
    }
    return out;
}

std::set<ObjectId> distance_neighbors(std::string_view x, const Dataset& objects, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw Error(ErrorCode::InvalidRadius, "buffer radius must be positive",
                    where("distance_neighbors"));
    }
    const std::size_t xi = objects.index_of(x);
    const Point c = geom::center(objects[xi].geometry);
    std::set<ObjectId> out;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (i == xi) continue;
        if (geom::within_buffer(geom::center(objects[i].geometry), c, r)) out.insert(objects[i].id);
    }
    return out;
}

std::set<ObjectId> adjacency_neighbors(std::string_view x, const Dataset& objects) {
    if (!objects.all_polygons()) {
        throw Error(ErrorCode::NotPolygonal, "adjacency needs polygon geometries",
                    where("adjacency_neighbors"));
    }
    const std::size_t xi = objects.index_of(x);
    const auto& px = std::get<Polygon>(objects[xi].geometry);
    std::set<ObjectId> out;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (i == xi) continue;
        if (geom::shares_boundary(px, std::get<Polygon>(objects[i].geometry))) {
            out.insert(objects[i].id);
        }
    }
    return out;
}

std::size_t direct_connection_count(std::string_view x, std::string_view y,
                                    const ConnectionNetwork& net) {
    const std::size_t xi = net.index_of(x);
    const std::size_t yi = net.index_of(y);
    std::size_t count = 0;
    for (std::size_t e : net.incident(xi)) {
        const auto& edge = net.edges()[e];
        if ((edge.a == xi && edge.b == yi) || (edge.b == xi && edge.a == yi)) ++count;
    }
    return count;
}

std::vector<std::optional<double>> min_costs_from(std::size_t source, const ConnectionNetwork& net,
                                                  double limit) {
    if (!(limit >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cost limit must be non-negative", where("min_cost"));
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(net.node_count(), inf);
    std::vector<bool> done(net.node_count(), false);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) continue;
        done[u] = true;
        for (std::size_t e : net.incident(u)) {
            const auto& edge = net.edges()[e];
            const std::size_t v = edge.a == u ? edge.b : edge.a;
            const double nd = d + edge.cost;
            if (nd < dist[v] && nd <= limit) {
                dist[v] = nd;
                queue.emplace(nd, v);
            }
        }
    }
    std::vector<std::optional<double>> out(net.node_count());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (std::isfinite(dist[i]) && dist[i] <= limit) out[i] = dist[i];
    }
    return out;
}

std::optional<double> min_cost(std::string_view x, std::string_view y, const ConnectionNetwork& net,
                               double limit) {
    const std::size_t xi = net.index_of(x);
    const std::size_t yi = net.index_of(y);
    return min_costs_from(xi, net, limit)[yi];
}

// ---------------------------------------------------------------------------
// Weights

namespace {

void require_nonempty(std::size_t n, const char* op) {
    if (n == 0) throw Error(ErrorCode::EmptyNeighborhood, "no neighbors to weigh", where(op));
}

// (1/v_i) / sum(1/v_j) over the present entries; absent entries get 0.
std::vector<double> normalized_inverse(std::span<const std::optional<double>> values,
                                       ErrorCode zero_code, const char* op) {
    std::vector<double> inv(values.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) continue;
        const double v = *values[i];
        if (v == 0.0) throw Error(zero_code, "zero denominator term", where(op));
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "factor value must be positive and finite",
                        where(op));
        }
        inv[i] = 1.0 / v;
        sum += inv[i];
    }
    for (double& w : inv) w = w / sum;
    return inv;
}

std::vector<double> normalized_counts(std::span<const std::size_t> counts) {
    double sum = 0.0;
    for (std::size_t c : counts) sum += static_cast<double>(c);
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / sum;
    return out;
}

std::vector<std::optional<double>> all_present(std::span<const double> v) {
    return {v.begin(), v.end()};
}

}  // namespace

std::vector<double> weights_distance(std::span<const double> distances) {
    require_nonempty(distances.size(), "weights_distance");
    const auto present = all_present(distances);
    return normalized_inverse(present, ErrorCode::ZeroDistance, "weights_distance");
}

std::vector<double> weights_connections(std::span<const std::size_t> counts) {
    require_nonempty(counts.size(), "weights_connections");
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) {
        throw Error(ErrorCode::NoConnections, "all connection counts are zero",
                    where("weights_connections"));
    }
    return normalized_counts(counts);
}

std::vector<double> weights_hybrid(const FactorData& data, const Coefficients& c) {
    try {
        check_coefficients(c);
    } catch (const Error& e) {
        throw e.with_context(where("weights_hybrid"));
    }
    const std::size_t n = std::max({data.distances.size(), data.counts.size(), data.costs.size()});
    require_nonempty(n, "weights_hybrid");

    auto check_factor = [&](bool active, std::size_t size, bool any_member, const char* name) {
        if (!active) return;
        if (size != n || !any_member) {
            throw Error(ErrorCode::MissingFactorData,
                        std::string(name) + " factor is weighted but has no data",
                        where("weights_hybrid"));
        }
    };
    auto any_present = [](std::span<const std::optional<double>> v) {
        return std::any_of(v.begin(), v.end(), [](const auto& o) { return o.has_value(); });
    };
    check_factor(c.alpha > 0.0, data.distances.size(), any_present(data.distances), "distance");
    check_factor(c.beta > 0.0, data.counts.size(),
                 std::any_of(data.counts.begin(), data.counts.end(),
                             [](std::size_t k) { return k > 0; }),
                 "connection");
    check_factor(c.delta > 0.0, data.costs.size(), any_present(data.costs), "cost");

    std::vector<double> w(n, 0.0);
    if (c.alpha > 0.0) {
        const auto term = normalized_inverse(data.distances, ErrorCode::ZeroDistance, "weights_hybrid");
        for (std::size_t i = 0; i < n; ++i) w[i] += c.alpha * term[i];
    }
    if (c.beta > 0.0) {
        const auto term = normalized_counts(data.counts);
        for (std::size_t i = 0; i < n; ++i) w[i] += c.beta * term[i];
    }
    if (c.delta > 0.0) {
        const auto term = normalized_inverse(data.costs, ErrorCode::ZeroCost, "weights_hybrid");
        for (std::size_t i = 0; i < n; ++i) w[i] += c.delta * term[i];
    }
    return w;
}

std::vector<double> weights_polygon(std::span<const double> distances, std::span<const double> areas) {
    require_nonempty(distances.size(), "weights_polygon");
    if (areas.size() != distances.size()) {
        throw Error(ErrorCode::InvalidArgument, "one area per distance is required",
                    where("weights_polygon"));
    }
    std::vector<double> w(distances.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (distances[i] == 0.0) {
            throw Error(ErrorCode::ZeroDistance, "coincident centroids", where("weights_polygon"));
        }
        if (!(distances[i] > 0.0) || !std::isfinite(distances[i])) {
            throw Error(ErrorCode::InvalidArgument, "distance must be positive",
                        where("weights_polygon"));
        }
        if (!(areas[i] > geom::kAreaTolerance) || !std::isfinite(areas[i])) {
            throw Error(ErrorCode::DegenerateGeometry, "neighbor area must be positive",
                        where("weights_polygon"));
        }
        w[i] = areas[i] / distances[i];
        sum += w[i];
    }
    for (double& v : w) v = v / sum;
    return w;
}

// ---------------------------------------------------------------------------
// Framework construction

namespace {

struct Precomputed {
    std::vector<Point> centers;
    std::vector<double> areas;
    std::vector<std::vector<std::size_t>> adjacent;
};

Precomputed precompute(const Dataset& objects, const WeightConfig& cfg) {
    Precomputed pre;
    const bool need_centers = cfg.polygon_mode || cfg.coefficients.alpha > 0.0 || cfg.uses_buffer();
    for (std::size_t i = 0; i < objects.size(); ++i) {
        try {
            if (need_centers) pre.centers.push_back(geom::center(objects[i].geometry));
            if (cfg.polygon_mode) {
                const auto* poly = std::get_if<Polygon>(&objects[i].geometry);
                if (poly == nullptr) {
                    throw Error(ErrorCode::NotPolygonal, "polygon mode needs polygon geometries");
                }
                pre.areas.push_back(geom::polygon_area(*poly));
            }
        } catch (const Error& e) {
            throw e.with_context(where("build_framework"), objects[i].id);
        }
    }
    if (cfg.strategy == Strategy::adjacency) {
        if (!objects.all_polygons()) {
            throw Error(ErrorCode::NotPolygonal, "adjacency needs polygon geometries",
                        where("build_framework"));
        }
        pre.adjacent.resize(objects.size());
        for (std::size_t i = 0; i < objects.size(); ++i) {
            const auto& pi = std::get<Polygon>(objects[i].geometry);
            for (std::size_t j = i + 1; j < objects.size(); ++j) {
                if (geom::shares_boundary(pi, std::get<Polygon>(objects[j].geometry))) {
                    pre.adjacent[i].push_back(j);
                    pre.adjacent[j].push_back(i);
                }
            }
        }
    }
    return pre;
}

std::vector<Relation> relations_for(std::size_t x, const Dataset& objects, const ConnectionNetwork* net,
                                    const WeightConfig& cfg, const Precomputed& pre) {
    const auto& c = cfg.coefficients;
    const std::size_t n = objects.size();

    // Parallel-edge counts to every direct neighbor.
    std::vector<std::size_t> direct(n, 0);
    if (net != nullptr) {
        for (std::size_t e : net->incident(x)) {
            const auto& edge = net->edges()[e];
            ++direct[edge.a == x ? edge.b : edge.a];
        }
    }
    std::vector<std::optional<double>> reach;
    if (net != nullptr && !cfg.polygon_mode && c.delta > 0.0) reach = min_costs_from(x, *net, cfg.cost_limit);

    auto in_buffer = [&](std::size_t y) {
        return geom::euclidean_distance(pre.centers[y], pre.centers[x]) <= cfg.buffer_radius;
    };

    std::vector<std::size_t> candidates;
    for (std::size_t y = 0; y < n; ++y) {
        if (y == x) continue;
        bool member = false;
        switch (cfg.strategy) {
            case Strategy::graph: member = direct[y] > 0; break;
            case Strategy::distance: member = in_buffer(y); break;
            case Strategy::adjacency: break;
            case Strategy::hybrid:
                member = (c.alpha > 0.0 && in_buffer(y)) || (c.beta > 0.0 && direct[y] > 0) ||
                         (c.delta > 0.0 && reach[y].has_value());
                break;
        }
        if (member) candidates.push_back(y);
    }
    if (cfg.strategy == Strategy::adjacency) candidates = pre.adjacent[x];
    if (candidates.empty()) return {};

    std::vector<double> weights;
    if (cfg.polygon_mode) {
        std::vector<double> distances;
        std::vector<double> areas;
        for (std::size_t y : candidates) {
            distances.push_back(geom::euclidean_distance(pre.centers[x], pre.centers[y]));
            areas.push_back(pre.areas[y]);
        }
        weights = weights_polygon(distances, areas);
    } else {
        std::vector<std::optional<double>> distances(candidates.size());
        std::vector<std::size_t> counts(candidates.size(), 0);
        std::vector<std::optional<double>> costs(candidates.size());
        bool has_d = false;
        bool has_r = false;
        bool has_c = false;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const std::size_t y = candidates[k];
            if (c.alpha > 0.0 && (!cfg.uses_buffer() || in_buffer(y))) {
                distances[k] = geom::euclidean_distance(pre.centers[x], pre.centers[y]);
                has_d = true;
            }
            if (c.beta > 0.0) {
                counts[k] = direct[y];
                has_r = has_r || direct[y] > 0;
            }
            if (c.delta > 0.0 && reach[y]) {
                costs[k] = *reach[y];
                has_c = true;
            }
        }
        // A weighted factor with no members around x is dropped and the
        // remaining coefficients rescaled so the weights still sum to 1.
        Coefficients eff{has_d ? c.alpha : 0.0, has_r ? c.beta : 0.0, has_c ? c.delta : 0.0};
        const double total = eff.alpha + eff.beta + eff.delta;
        if (total == 0.0) return {};
        if (total != 1.0) eff = {eff.alpha / total, eff.beta / total, eff.delta / total};
        weights = weights_hybrid({distances, counts, costs}, eff);
    }

    std::vector<Relation> out;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (weights[k] > 0.0) out.push_back({candidates[k], objects[candidates[k]].id, std::min(weights[k], 1.0)});
    }
    return out;
}

}  // namespace

WeightedNeighborhood build_framework(const Dataset& objects, const ConnectionNetwork* net,
                                     const WeightConfig& cfg) {
    if (objects.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no objects", where("build_framework"));
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw e.with_context(where("build_framework"));
    }
    if (cfg.needs_network() && net == nullptr) {
        throw Error(ErrorCode::MissingNetwork, "this configuration needs a connection network",
                    where("build_framework"));
    }
    if (net != nullptr) {
        bool same = net->node_count() == objects.size();
        for (std::size_t i = 0; same && i < objects.size(); ++i) same = net->node_id(i) == objects[i].id;
        if (!same) {
            throw Error(ErrorCode::ReferentialError, "network was not built for this dataset",
                        where("build_framework"));
        }
    }

    const Precomputed pre = precompute(objects, cfg);
    std::vector<ObjectId> ids;
    std::vector<std::vector<Relation>> relations;
    ids.reserve(objects.size());
    relations.reserve(objects.size());
    for (std::size_t x = 0; x < objects.size(); ++x) {
        ids.push_back(objects[x].id);
        try {
            relations.push_back(relations_for(x, objects, net, cfg, pre));
        } catch (const Error& e) {
            throw e.with_context(where("build_framework"), objects[x].id);
        }
    }
    return WeightedNeighborhood(std::move(ids), std::move(relations));
}

}  // namespace wsnr
