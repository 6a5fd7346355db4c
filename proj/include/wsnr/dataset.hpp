#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsnr/geometry.hpp"

namespace wsnr {

using ObjectId = std::string;

/// Orders all-digit ids numerically ("9" < "10"), everything else
/// lexicographically after them.
bool id_less(const ObjectId& a, const ObjectId& b);

struct SpatialObject {
    ObjectId id;
    Geometry geometry;
    std::map<std::string, double> attributes;

    friend bool operator==(const SpatialObject&, const SpatialObject&) = default;
};

/// Ordered collection of spatial objects with unique ids.
/// Object indices are stable and used throughout the library.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<SpatialObject> objects);

    /// Throws DuplicateId, or InvalidArgument for a non-finite attribute.
    void add(SpatialObject object);

    std::size_t size() const noexcept { return objects_.size(); }
    bool empty() const noexcept { return objects_.empty(); }

    const SpatialObject& operator[](std::size_t i) const { return objects_[i]; }
    SpatialObject& mutable_object(std::size_t i) { return objects_[i]; }
    const std::vector<SpatialObject>& objects() const noexcept { return objects_; }

    std::optional<std::size_t> find(std::string_view id) const;
    /// Throws UnknownObject.
    std::size_t index_of(std::string_view id) const;

    /// Throws MissingAttribute naming the first object lacking `name`.
    std::vector<double> attribute(std::string_view name) const;

    bool all_polygons() const;

    friend bool operator==(const Dataset& a, const Dataset& b) { return a.objects_ == b.objects_; }

private:
    std::vector<SpatialObject> objects_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace wsnr
