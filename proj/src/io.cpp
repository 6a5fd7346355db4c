#include "wsnr/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsnr/error.hpp"

namespace wsnr::io {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kModule = "cli-io";

std::string where(const char* op) { return std::string(kModule) + "/" + op; }

Error parse_error(const char* op, std::size_t line, const std::string& msg) {
    return Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg, where(op));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> to_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    const std::string buf(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Splits one delimited line, honoring double-quoted fields.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::string(trim(cur)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::string(trim(cur)));
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Rounds to the 10 significant digits used for every emitted number.
double round10(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string join(const std::vector<ObjectId>& ids, char sep) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += ids[i];
    }
    return out;
}

std::vector<ObjectId> split_ids(std::string_view s, char sep) {
    std::vector<ObjectId> out;
    s = trim(s);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Point parse_position(const json& j, const std::string& id) {
    if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::InvalidGeometry, "position must be [x, y]", where("load_dataset"), id);
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Geometry parse_geometry(const json& g, const std::string& id) {
    if (!g.is_object() || !g.contains("type") || !g.contains("coordinates")) {
        throw Error(ErrorCode::InvalidGeometry, "feature has no geometry", where("load_dataset"), id);
    }
    const std::string type = g["type"].is_string() ? g["type"].get<std::string>() : "";
    const json& coords = g["coordinates"];
    if (type == "Point") {
        const Point p = parse_position(coords, id);
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::InvalidGeometry, "non-finite coordinate", where("load_dataset"), id);
        }
        return p;
    }
    if (type == "Polygon") {
        if (!coords.is_array() || coords.empty()) {
            throw Error(ErrorCode::InvalidGeometry, "polygon has no rings", where("load_dataset"), id);
        }
        Polygon poly;
        for (const auto& ring_json : coords) {
            if (!ring_json.is_array()) {
                throw Error(ErrorCode::InvalidGeometry, "ring must be an array", where("load_dataset"), id);
            }
            Ring ring;
            for (const auto& pos : ring_json) ring.push_back(parse_position(pos, id));
            poly.rings.push_back(std::move(ring));
        }
        try {
            geom::validate(poly);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidGeometry, e.detail(), where("load_dataset"), id);
        }
        return poly;
    }
    throw Error(ErrorCode::InvalidGeometry, "unsupported geometry type '" + type + "'",
                where("load_dataset"), id);
}

std::string id_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
    return {};
}

}  // namespace

std::string_view to_string(Format f) noexcept { return f == Format::csv ? "csv" : "json"; }

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "'", kModule);
}

std::string format_number(double v) {
    if (v == 0.0) return "0";  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string(), kModule);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string(), kModule);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string(), kModule);
}

// ---------------------------------------------------------------------------
// Datasets

Dataset parse_dataset(std::string_view geojson) {
    json doc;
    try {
        doc = json::parse(geojson.begin(), geojson.end());
    } catch (const json::parse_error& e) {
        throw parse_error("load_dataset", line_of_byte(geojson, e.byte), e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
        !doc["features"].is_array()) {
        throw parse_error("load_dataset", 1, "expected a GeoJSON FeatureCollection");
    }
    Dataset dataset;
    std::size_t index = 0;
    for (const auto& feature : doc["features"]) {
        const std::string label = "feature " + std::to_string(index++);
        if (!feature.is_object()) throw Error(ErrorCode::ParseError, label + " is not an object", where("load_dataset"));
        const json empty = json::object();
        const json& props = feature.contains("properties") && feature["properties"].is_object()
                                ? feature["properties"]
                                : empty;
        std::string id;
        if (feature.contains("id")) id = id_text(feature["id"]);
        if (id.empty() && props.contains("id")) id = id_text(props["id"]);
        if (id.empty()) throw Error(ErrorCode::ParseError, label + " has no usable id", where("load_dataset"));

        SpatialObject obj{id, parse_geometry(feature.contains("geometry") ? feature["geometry"] : json(), id), {}};
        for (const auto& [key, value] : props.items()) {
            if (key == "id" || !value.is_number()) continue;
            obj.attributes[key] = value.get<double>();
        }
        try {
            dataset.add(std::move(obj));
        } catch (const Error& e) {
            throw e.with_context(where("load_dataset"));
        }
    }
    return dataset;
}

Dataset load_dataset(const std::filesystem::path& path) { return parse_dataset(read_text(path)); }

std::string dataset_to_geojson(const Dataset& dataset) {
    json features = json::array();
    for (const auto& o : dataset.objects()) {
        json geometry;
        if (const auto* p = std::get_if<Point>(&o.geometry)) {
            geometry = {{"type", "Point"}, {"coordinates", {p->x, p->y}}};
        } else {
            json rings = json::array();
            for (const auto& ring : std::get<Polygon>(o.geometry).rings) {
                json r = json::array();
                for (const auto& p : ring) r.push_back({p.x, p.y});
                rings.push_back(std::move(r));
            }
            geometry = {{"type", "Polygon"}, {"coordinates", std::move(rings)}};
        }
        json props = json::object();
        for (const auto& [k, v] : o.attributes) props[k] = v;
        features.push_back({{"type", "Feature"}, {"id", o.id}, {"geometry", std::move(geometry)},
                            {"properties", std::move(props)}});
    }
    json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    return doc.dump(1) + "\n";
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    write_text(path, dataset_to_geojson(dataset));
}

void join_attributes(Dataset& dataset, std::string_view csv, std::string_view key_column) {
    const auto lines = lines_of(csv);
    std::size_t lineno = 0;
    std::vector<std::string> header;
    std::size_t key_index = 0;
    for (auto raw : lines) {
        ++lineno;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_csv(line);
        if (header.empty()) {
            header = std::move(fields);
            const auto it = std::find(header.begin(), header.end(), key_column);
            if (it == header.end()) {
                throw parse_error("join_attributes", lineno,
                                  "key column '" + std::string(key_column) + "' not in header");
            }
            key_index = static_cast<std::size_t>(it - header.begin());
            continue;
        }
        if (fields.size() != header.size()) {
            throw parse_error("join_attributes", lineno,
                              "expected " + std::to_string(header.size()) + " fields");
        }
        std::string key = fields[key_index];
        if (auto v = to_number(key); v && std::floor(*v) == *v) key = format_number(*v);
        const auto idx = dataset.find(key);
        if (!idx) {
            throw Error(ErrorCode::ReferentialError, "attribute row for unknown object",
                        where("join_attributes"), key);
        }
        auto& obj = dataset.mutable_object(*idx);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == key_index) continue;
            if (auto v = to_number(fields[i])) obj.attributes[header[i]] = *v;
        }
    }
    if (header.empty()) throw parse_error("join_attributes", lineno, "attribute table is empty");
}

void join_attributes_file(Dataset& dataset, const std::filesystem::path& path,
                          std::string_view key_column) {
    join_attributes(dataset, read_text(path), key_column);
}

// ---------------------------------------------------------------------------
// Networks

ConnectionNetwork parse_network(std::string_view text, const Dataset& dataset) {
    ConnectionNetwork net(dataset);
    std::size_t lineno = 0;
    bool first_data = true;
    for (auto raw : lines_of(text)) {
        ++lineno;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3) throw parse_error("load_network", lineno, "expected from_id,to_id,cost");
        const auto cost = to_number(fields[2]);
        if (!cost) {
            if (first_data) {  // header row
                first_data = false;
                continue;
            }
            throw parse_error("load_network", lineno, "cost '" + fields[2] + "' is not a number");
        }
        first_data = false;
        if (*cost < 0.0) throw parse_error("load_network", lineno, "negative cost");
        if (fields[0] == fields[1]) throw parse_error("load_network", lineno, "self loop");
        try {
            net.add_edge(fields[0], fields[1], *cost);
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.detail(),
                        where("load_network"), e.object_id());
        }
    }
    return net;
}

ConnectionNetwork load_network(const std::filesystem::path& path, const Dataset& dataset) {
    return parse_network(read_text(path), dataset);
}

std::string network_to_csv(const ConnectionNetwork& net) {
    std::string out = "from_id,to_id,cost\n";
    char buf[32];
    for (const auto& e : net.edges()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.cost);
        out += csv_field(net.node_id(e.a)) + "," + csv_field(net.node_id(e.b)) + "," + buf + "\n";
    }
    return out;
}

void save_network(const ConnectionNetwork& net, const std::filesystem::path& path) {
    write_text(path, network_to_csv(net));
}

// ---------------------------------------------------------------------------
// Reports

std::string report_to_string(const OutlierReport& r, Format format) {
    if (format == Format::json) {
        json scores = json::array();
        for (const auto& s : r.scores) {
            scores.push_back({{"id", s.id},
                              {"actual", round10(s.actual)},
                              {"expected", round10(s.expected)},
                              {"diff", round10(s.diff)},
                              {"z", round10(s.z)},
                              {"is_outlier", s.is_outlier}});
        }
        json doc = {{"model", to_string(r.model)},
                    {"attribute", r.attribute},
                    {"theta", round10(r.theta)},
                    {"mu", round10(r.mu)},
                    {"sigma", round10(r.sigma)},
                    {"degenerate", r.degenerate},
                    {"flagged", r.flagged()},
                    {"excluded", r.excluded},
                    {"scores", std::move(scores)}};
        return doc.dump(2) + "\n";
    }
    std::string out;
    out += "# model: " + std::string(to_string(r.model)) + "\n";
    out += "# attribute: " + r.attribute + "\n";
    out += "# theta: " + format_number(r.theta) + "\n";
    out += "# mu: " + format_number(r.mu) + "\n";
    out += "# sigma: " + format_number(r.sigma) + "\n";
    out += std::string("# degenerate: ") + (r.degenerate ? "true" : "false") + "\n";
    out += "# excluded: " + join(r.excluded, ';') + "\n";
    out += "id,actual,expected,diff,z,is_outlier\n";
    for (const auto& s : r.scores) {
        out += csv_field(s.id) + "," + format_number(s.actual) + "," + format_number(s.expected) + "," +
               format_number(s.diff) + "," + format_number(s.z) + "," + (s.is_outlier ? "1" : "0") + "\n";
    }
    return out;
}

OutlierReport parse_report(std::string_view text, Format format) {
    OutlierReport r;
    if (format == Format::json) {
        json doc;
        try {
            doc = json::parse(text.begin(), text.end());
            r.model = parse_model(doc.at("model").get<std::string>());
            r.attribute = doc.at("attribute").get<std::string>();
            r.theta = doc.at("theta").get<double>();
            r.mu = doc.at("mu").get<double>();
            r.sigma = doc.at("sigma").get<double>();
            r.degenerate = doc.at("degenerate").get<bool>();
            r.excluded = doc.at("excluded").get<std::vector<ObjectId>>();
            for (const auto& s : doc.at("scores")) {
                r.scores.push_back({s.at("id").get<std::string>(), s.at("actual").get<double>(),
                                    s.at("expected").get<double>(), s.at("diff").get<double>(),
                                    s.at("z").get<double>(), s.at("is_outlier").get<bool>(), r.model});
            }
        } catch (const json::parse_error& e) {
            throw parse_error("load_report", line_of_byte(text, e.byte), e.what());
        } catch (const json::exception& e) {
            throw parse_error("load_report", 1, e.what());
        }
        return r;
    }
    std::size_t lineno = 0;
    bool header_seen = false;
    for (auto raw : lines_of(text)) {
        ++lineno;
        const auto line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) continue;
            const auto key = trim(body.substr(0, colon));
            const auto value = trim(body.substr(colon + 1));
            auto num = [&] {
                if (auto v = to_number(value)) return *v;
                throw parse_error("load_report", lineno, "bad number for " + std::string(key));
            };
            if (key == "model") r.model = parse_model(value);
            else if (key == "attribute") r.attribute = std::string(value);
            else if (key == "theta") r.theta = num();
            else if (key == "mu") r.mu = num();
            else if (key == "sigma") r.sigma = num();
            else if (key == "degenerate") r.degenerate = value == "true";
            else if (key == "excluded") r.excluded = split_ids(value, ';');
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 6) throw parse_error("load_report", lineno, "expected 6 fields");
        ObjectScore s;
        s.id = f[0];
        const auto a = to_number(f[1]);
        const auto e = to_number(f[2]);
        const auto d = to_number(f[3]);
        const auto z = to_number(f[4]);
        if (!a || !e || !d || !z) throw parse_error("load_report", lineno, "bad number");
        s.actual = *a;
        s.expected = *e;
        s.diff = *d;
        s.z = *z;
        s.is_outlier = f[5] == "1";
        s.model = r.model;
        r.scores.push_back(std::move(s));
    }
    for (auto& s : r.scores) s.model = r.model;
    return r;
}

OutlierReport load_report(const std::filesystem::path& path) {
    const Format format = path.extension() == ".csv" ? Format::csv : Format::json;
    return parse_report(read_text(path), format);
}

std::string scatter_to_string(const OutlierReport& r, Format format) {
    if (format == Format::json) {
        json points = json::array();
        for (const auto& s : r.scores) {
            points.push_back({{"id", s.id},
                              {"value", round10(s.actual)},
                              {"expected", round10(s.expected)},
                              {"z", round10(s.z)}});
        }
        json doc = {{"model", to_string(r.model)}, {"attribute", r.attribute}, {"points", std::move(points)}};
        return doc.dump(2) + "\n";
    }
    std::string out = "id,value,expected,z\n";
    for (const auto& s : r.scores) {
        out += csv_field(s.id) + "," + format_number(s.actual) + "," + format_number(s.expected) + "," +
               format_number(s.z) + "\n";
    }
    return out;
}

std::string comparison_to_string(const ComparisonReport& c, Format format) {
    if (format == Format::json) {
        json rows = json::array();
        for (const auto& row : c.rows) {
            rows.push_back({{"id", row.id},
                            {"error_a", round10(row.error_a)},
                            {"error_b", round10(row.error_b)},
                            {"sq_reduction", round10(row.sq_reduction)},
                            {"improvement_pct", row.improvement_pct ? json(round10(*row.improvement_pct))
                                                                    : json(nullptr)}});
        }
        json doc = {{"model_a", to_string(c.model_a)},
                    {"model_b", to_string(c.model_b)},
                    {"mean_improvement",
                     c.mean_improvement ? json(round10(*c.mean_improvement)) : json(nullptr)},
                    {"baseline_zero_count", c.baseline_zero_count},
                    {"flagged_both", c.flagged_both},
                    {"flagged_only_a", c.flagged_only_a},
                    {"flagged_only_b", c.flagged_only_b},
                    {"rows", std::move(rows)}};
        return doc.dump(2) + "\n";
    }
    std::string out;
    out += "# model_a: " + std::string(to_string(c.model_a)) + "\n";
    out += "# model_b: " + std::string(to_string(c.model_b)) + "\n";
    out += "# mean_improvement: " + (c.mean_improvement ? format_number(*c.mean_improvement) : "") + "\n";
    out += "# baseline_zero_count: " + std::to_string(c.baseline_zero_count) + "\n";
    out += "# flagged_both: " + join(c.flagged_both, ';') + "\n";
    out += "# flagged_only_a: " + join(c.flagged_only_a, ';') + "\n";
    out += "# flagged_only_b: " + join(c.flagged_only_b, ';') + "\n";
    out += "id,error_a,error_b,sq_reduction,improvement_pct\n";
    for (const auto& row : c.rows) {
        out += csv_field(row.id) + "," + format_number(row.error_a) + "," + format_number(row.error_b) +
               "," + format_number(row.sq_reduction) + "," +
               (row.improvement_pct ? format_number(*row.improvement_pct) : "") + "\n";
    }
    return out;
}

}  // namespace wsnr::io
