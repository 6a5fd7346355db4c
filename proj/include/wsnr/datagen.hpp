#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsnr/dataset.hpp"
#include "wsnr/neighborhood.hpp"

namespace wsnr {

enum class GenKind { grid, random_points };

/// Overwrites object `index` with mean + sigmas * stddev of the field as it
/// was before any plant was applied.
struct Plant {
    std::size_t index;
    double sigmas;
};

struct GenSpec {
    GenKind kind = GenKind::grid;
    std::size_t rows = 5;
    std::size_t cols = 5;
    double cell_size = 1.0;
    std::size_t n_points = 50;
    double extent = 100.0;
    std::size_t links = 3;  // nearest neighbors linked per random point
    std::size_t smoothing = 0;
    std::vector<Plant> planted;
    std::uint64_t seed = 0;
    std::string attribute = "value";

    /// Throws InvalidSpec.
    void validate() const;
};

struct Generated {
    Dataset dataset;
    ConnectionNetwork network;
};

/// Grid kind: rows x cols unit-square tessellation, ids "0".."n-1" row-major,
/// one unit-cost edge per shared boundary. Random kind: uniform points in
/// [0, extent]^2, each linked to its `links` nearest points at distance cost.
/// The attribute starts uniform in [0, 1) and is then averaged with its
/// network neighbors `smoothing` times.
Generated generate(const GenSpec& spec);

// Brute-force references for property tests. They share no code with the
// production paths they check.

inline constexpr std::size_t kOracleMaxNodes = 10;
inline constexpr std::size_t kOracleMaxObjects = 50;

/// Exhaustive simple-path enumeration. Throws TooLarge above kOracleMaxNodes.
std::optional<double> oracle_min_cost(std::string_view x, std::string_view y,
                                      const ConnectionNetwork& net, double limit);

/// Flags of the weighted model recomputed straight from the definition.
/// Returns flagged ids in id order. Throws TooLarge above kOracleMaxObjects.
std::vector<ObjectId> oracle_detect(const Dataset& objects, const WeightedNeighborhood& framework,
                                    std::string_view attribute, double theta);

}  // namespace wsnr
