#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsnr/evaluation.hpp"
#include "wsnr/io.hpp"
#include "wsnr/neighborhood.hpp"
#include "wsnr/outlier.hpp"

namespace wsnr {

/// Everything one detection run needs. Keys accepted by `set` match the CLI
/// flag names without dashes: dataset, network, attributes, join-key,
/// attribute, model, strategy, alpha, beta, delta, radius, cost-limit,
/// theta, polygon-mode, out, format, strict.
struct RunConfig {
    std::filesystem::path dataset;
    std::filesystem::path network;
    std::filesystem::path attributes;
    std::string join_key = "id";
    std::string attribute;
    std::vector<ModelKind> models{ModelKind::weighted_spatial};
    WeightConfig weights{};
    double theta = 2.0;
    std::filesystem::path out = ".";
    io::Format format = io::Format::json;
    bool strict = false;

    /// `model` takes a comma separated list and replaces the current one.
    /// Throws InvalidArgument for unknown keys or malformed values.
    void set(std::string_view key, std::string_view value);

    /// Throws InvalidArgument, CoefficientSum, InvalidRadius.
    void validate() const;
};

/// `key = value` lines; blank lines and '#' comments are skipped.
/// Throws ParseError naming the line.
std::vector<std::pair<std::string, std::string>> parse_config(std::string_view text);

struct RunResult {
    std::vector<OutlierReport> reports;
    std::vector<ComparisonReport> comparisons;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
    bool degenerate = false;
};

/// Loads inputs, builds the neighborhood framework when a spatial model is
/// selected, scores every model and writes report, scatter and (for two or
/// more models) pairwise comparison files into `out`.
RunResult run(const RunConfig& config);

}  // namespace wsnr
