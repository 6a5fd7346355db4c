#include "wsnr/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "wsnr/error.hpp"

namespace wsnr {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

bool id_less(const ObjectId& a, const ObjectId& b) {
    const bool da = all_digits(a);
    const bool db = all_digits(b);
    if (da != db) return da;
    if (da) {
        const auto sa = a.find_first_not_of('0');
        const auto sb = b.find_first_not_of('0');
        const std::string_view ta = sa == std::string::npos ? std::string_view{} : std::string_view(a).substr(sa);
        const std::string_view tb = sb == std::string::npos ? std::string_view{} : std::string_view(b).substr(sb);
        if (ta.size() != tb.size()) return ta.size() < tb.size();
        if (ta != tb) return ta < tb;
    }
    return a < b;
}

Dataset::Dataset(std::vector<SpatialObject> objects) {
    objects_.reserve(objects.size());
    for (auto& o : objects) add(std::move(o));
}

void Dataset::add(SpatialObject object) {
    for (const auto& [name, value] : object.attributes) {
        if (!std::isfinite(value)) {
            throw Error(ErrorCode::InvalidArgument, "attribute '" + name + "' is not finite",
                        "dataset", object.id);
        }
    }
    if (index_.count(object.id) != 0) {
        throw Error(ErrorCode::DuplicateId, "id appears more than once", "dataset", object.id);
    }
    index_.emplace(object.id, objects_.size());
    objects_.push_back(std::move(object));
}

std::optional<std::size_t> Dataset::find(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Dataset::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw Error(ErrorCode::UnknownObject, "no such object", "dataset", std::string(id));
}

std::vector<double> Dataset::attribute(std::string_view name) const {
    std::vector<double> values;
    values.reserve(objects_.size());
    const std::string key(name);
    for (const auto& o : objects_) {
        const auto it = o.attributes.find(key);
        if (it == o.attributes.end()) {
            throw Error(ErrorCode::MissingAttribute, "attribute '" + key + "' is missing", "dataset",
                        o.id);
        }
        values.push_back(it->second);
    }
    return values;
}

bool Dataset::all_polygons() const {
    for (const auto& o : objects_) {
        if (!std::holds_alternative<Polygon>(o.geometry)) return false;
    }
    return true;
}

}  // namespace wsnr
