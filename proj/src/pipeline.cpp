#include "wsnr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "wsnr/error.hpp"

namespace wsnr {

namespace {

constexpr const char* kWhere = "cli-io/run";

std::string normalize_key(std::string_view key) {
    std::string k(key);
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double number(std::string_view key, std::string_view value) {
    const std::string buf(trim(value));
    if (buf == "inf" || buf == "infinity") return INFINITY;
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || std::isnan(v)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(key) + " expects a number, got '" + buf + "'", "cli-io/config");
    }
    return v;
}

bool boolean(std::string_view key, std::string_view value) {
    const auto v = trim(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw Error(ErrorCode::InvalidArgument,
                std::string(key) + " expects true or false, got '" + std::string(v) + "'",
                "cli-io/config");
}

}  // namespace

void RunConfig::set(std::string_view raw_key, std::string_view raw_value) {
    const std::string key = normalize_key(trim(raw_key));
    const std::string_view value = trim(raw_value);
    try {
        if (key == "dataset") dataset = std::string(value);
        else if (key == "network") network = std::string(value);
        else if (key == "attributes") attributes = std::string(value);
        else if (key == "join-key") join_key = std::string(value);
        else if (key == "attribute") attribute = std::string(value);
        else if (key == "model") {
            models.clear();
            std::size_t start = 0;
            while (start <= value.size()) {
                const auto comma = value.find(',', start);
                const auto item = trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
                if (!item.empty()) models.push_back(parse_model(item));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        } else if (key == "strategy") weights.strategy = parse_strategy(value);
        else if (key == "alpha") weights.coefficients.alpha = number(key, value);
        else if (key == "beta") weights.coefficients.beta = number(key, value);
        else if (key == "delta") weights.coefficients.delta = number(key, value);
        else if (key == "radius") weights.buffer_radius = number(key, value);
        else if (key == "cost-limit") weights.cost_limit = number(key, value);
        else if (key == "theta") theta = number(key, value);
        else if (key == "polygon-mode") weights.polygon_mode = boolean(key, value);
        else if (key == "out") out = std::string(value);
        else if (key == "format") format = io::parse_format(value);
        else if (key == "strict") strict = boolean(key, value);
        else throw Error(ErrorCode::InvalidArgument, "unknown setting '" + key + "'");
    } catch (const Error& e) {
        throw e.with_context("cli-io/config");
    }
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) {
        throw Error(ErrorCode::InvalidArgument, msg, "cli-io/config");
    };
    if (dataset.empty()) fail("no dataset given");
    if (attribute.empty()) fail("no attribute given");
    if (models.empty()) fail("at least one model must be selected");
    if (!(theta >= 0.0) || !std::isfinite(theta)) fail("theta must be finite and non-negative");
    const bool spatial = std::any_of(models.begin(), models.end(),
                                     [](ModelKind m) { return m != ModelKind::one_dimensional; });
    if (spatial) {
        try {
            weights.validate();
        } catch (const Error& e) {
            throw e.with_context("cli-io/config");
        }
        if (weights.needs_network() && network.empty()) {
            throw Error(ErrorCode::MissingNetwork, "this weighting needs --network", "cli-io/config");
        }
    }
}

std::vector<std::pair<std::string, std::string>> parse_config(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(start, nl - start));
        start = nl + 1;
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected key = value",
                        "cli-io/config");
        }
        out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

RunResult run(const RunConfig& config) {
    config.validate();

    Dataset dataset = io::load_dataset(config.dataset);
    if (!config.attributes.empty()) io::join_attributes_file(dataset, config.attributes, config.join_key);
    if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no objects", kWhere);

    std::optional<ConnectionNetwork> network;
    if (!config.network.empty()) network = io::load_network(config.network, dataset);

    const bool spatial = std::any_of(config.models.begin(), config.models.end(),
                                     [](ModelKind m) { return m != ModelKind::one_dimensional; });
    std::optional<WeightedNeighborhood> framework;
    if (spatial) framework = build_framework(dataset, network ? &*network : nullptr, config.weights);

    RunResult result;
    const std::string ext = config.format == io::Format::csv ? ".csv" : ".json";
    for (ModelKind model : config.models) {
        OutlierReport report =
            detect(dataset, framework ? &*framework : nullptr, config.attribute, model, config.theta);
        const std::string name(to_string(model));
        if (report.degenerate) {
            result.degenerate = true;
            result.warnings.push_back(name + ": differences have zero spread; no object flagged");
        }
        if (!report.excluded.empty()) {
            result.warnings.push_back(name + ": " + std::to_string(report.excluded.size()) +
                                      " object(s) without neighbors excluded");
        }
        const auto report_path = config.out / ("report_" + name + ext);
        const auto scatter_path = config.out / ("scatter_" + name + ext);
        io::write_text(report_path, io::report_to_string(report, config.format));
        io::write_text(scatter_path, io::scatter_to_string(report, config.format));
        result.files.push_back(report_path);
        result.files.push_back(scatter_path);
        result.reports.push_back(std::move(report));
    }

    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        for (std::size_t j = i + 1; j < result.reports.size(); ++j) {
            ComparisonReport cmp = compare(result.reports[i], result.reports[j]);
            const auto path = config.out / ("comparison_" + std::string(to_string(cmp.model_a)) + "_vs_" +
                                            std::string(to_string(cmp.model_b)) + ext);
            io::write_text(path, io::comparison_to_string(cmp, config.format));
            result.files.push_back(path);
            result.comparisons.push_back(std::move(cmp));
        }
    }
    return result;
}

}  // namespace wsnr
