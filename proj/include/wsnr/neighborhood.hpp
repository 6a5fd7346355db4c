#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsnr/dataset.hpp"

namespace wsnr {

/// Undirected multigraph of direct links between dataset objects.
/// Parallel edges are kept; each one is a separate direct connection.
class ConnectionNetwork {
public:
    struct Edge {
        std::size_t a;
        std::size_t b;
        double cost;

        friend bool operator==(const Edge&, const Edge&) = default;
    };

    ConnectionNetwork() = default;
    /// Nodes are the dataset's objects, in dataset order.
    explicit ConnectionNetwork(const Dataset& dataset);
    explicit ConnectionNetwork(std::vector<ObjectId> node_ids);

    /// Throws ReferentialError for unknown endpoints and InvalidArgument for
    /// self loops or a negative / non-finite cost.
    void add_edge(std::string_view from, std::string_view to, double cost);
    void add_edge(std::size_t a, std::size_t b, double cost);

    std::size_t node_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& incident(std::size_t node) const { return incident_[node]; }
    const ObjectId& node_id(std::size_t node) const { return ids_[node]; }
    const std::vector<ObjectId>& node_ids() const noexcept { return ids_; }

    /// Throws UnknownObject.
    std::size_t index_of(std::string_view id) const;

    friend bool operator==(const ConnectionNetwork& a, const ConnectionNetwork& b) {
        return a.ids_ == b.ids_ && a.edges_ == b.edges_;
    }

private:
    std::vector<ObjectId> ids_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
};

enum class Strategy { graph, distance, adjacency, hybrid };

std::string_view to_string(Strategy s) noexcept;
/// Throws InvalidArgument.
Strategy parse_strategy(std::string_view name);

struct Coefficients {
    double alpha = 1.0;  // inverse distance
    double beta = 0.0;   // direct connection count
    double delta = 0.0;  // inverse minimal cost
};

struct WeightConfig {
    Strategy strategy = Strategy::adjacency;
    Coefficients coefficients{};
    double buffer_radius = 0.0;
    double cost_limit = std::numeric_limits<double>::infinity();
    bool polygon_mode = false;

    bool needs_network() const;
    bool uses_buffer() const;
    /// Throws CoefficientSum, InvalidRadius or InvalidArgument.
    void validate() const;
};

struct Relation {
    std::size_t index;
    ObjectId id;
    double weight;
};

/// Per-object weighted neighbor lists. Direction matters: the list stored
/// for x holds the weights with which each neighbor affects x.
class WeightedNeighborhood {
public:
    WeightedNeighborhood() = default;
    /// `relations[i]` belongs to `ids[i]`. Throws InvalidArgument when the
    /// relations break normalization, range or self-relation rules.
    WeightedNeighborhood(std::vector<ObjectId> ids, std::vector<std::vector<Relation>> relations);

    std::size_t size() const noexcept { return ids_.size(); }
    const ObjectId& id(std::size_t i) const { return ids_[i]; }
    const std::vector<ObjectId>& ids() const noexcept { return ids_; }
    const std::vector<Relation>& neighbors(std::size_t i) const { return relations_[i]; }
    /// Throws UnknownObject.
    const std::vector<Relation>& neighbors(std::string_view id) const;
    bool is_excluded(std::size_t i) const { return relations_[i].empty(); }
    std::vector<ObjectId> excluded() const;

private:
    std::vector<ObjectId> ids_;
    std::vector<std::vector<Relation>> relations_;
};

inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kCoefficientSumTolerance = 1e-12;

// Neighbor discovery. Results hold ids other than x.

std::set<ObjectId> graph_neighbors(std::string_view x, const ConnectionNetwork& net);
std::set<ObjectId> distance_neighbors(std::string_view x, const Dataset& objects, double r);
/// Throws NotPolygonal if any geometry is a point.
std::set<ObjectId> adjacency_neighbors(std::string_view x, const Dataset& objects);

std::size_t direct_connection_count(std::string_view x, std::string_view y,
                                    const ConnectionNetwork& net);

/// Minimal total edge cost over all paths from x to y. Absent when y is
/// unreachable or the minimum exceeds `limit`.
std::optional<double> min_cost(std::string_view x, std::string_view y, const ConnectionNetwork& net,
                               double limit);

/// Single-source variant used by framework construction.
std::vector<std::optional<double>> min_costs_from(std::size_t source, const ConnectionNetwork& net,
                                                  double limit);

// Weight vectors. Entries line up with the neighbor order given.

std::vector<double> weights_distance(std::span<const double> distances);
std::vector<double> weights_connections(std::span<const std::size_t> counts);

/// Factor data per neighbor. An absent distance or cost (or a zero count)
/// means that neighbor is not a member of the factor and adds nothing to
/// that factor's term.
struct FactorData {
    std::span<const std::optional<double>> distances;
    std::span<const std::size_t> counts;
    std::span<const std::optional<double>> costs;
};

/// Coefficient-blended inverse distance, connection count and inverse cost.
/// Throws CoefficientSum, MissingFactorData, ZeroDistance, ZeroCost.
std::vector<double> weights_hybrid(const FactorData& data, const Coefficients& c);

/// Area over centroid distance, normalized.
std::vector<double> weights_polygon(std::span<const double> distances, std::span<const double> areas);

/// Throws the underlying operation error with the offending object id
/// attached, MissingNetwork, or EmptyDataset.
WeightedNeighborhood build_framework(const Dataset& objects, const ConnectionNetwork* net,
                                     const WeightConfig& cfg);

}  // namespace wsnr
