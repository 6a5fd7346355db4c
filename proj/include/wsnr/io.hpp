#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wsnr/dataset.hpp"
#include "wsnr/evaluation.hpp"
#include "wsnr/neighborhood.hpp"
#include "wsnr/outlier.hpp"

namespace wsnr::io {

enum class Format { csv, json };

std::string_view to_string(Format f) noexcept;
/// Throws InvalidArgument.
Format parse_format(std::string_view name);

/// GeoJSON FeatureCollection of Point or Polygon features. The feature id
/// (or an "id" property) names the object; numeric properties become
/// attributes, other properties are ignored.
/// Throws ParseError, DuplicateId, InvalidGeometry, IoError.
Dataset parse_dataset(std::string_view geojson);
Dataset load_dataset(const std::filesystem::path& path);

/// Coordinates and attributes are written at full round-trip precision.
std::string dataset_to_geojson(const Dataset& dataset);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Joins a delimited attribute table onto the dataset by `key_column`.
/// Every numeric cell becomes an attribute; rows naming an unknown object
/// raise ReferentialError.
void join_attributes(Dataset& dataset, std::string_view csv, std::string_view key_column);
void join_attributes_file(Dataset& dataset, const std::filesystem::path& path,
                          std::string_view key_column);

/// Rows of `from_id,to_id,cost`; an optional header row and '#' comments
/// are skipped. Throws ParseError (with line number) or ReferentialError.
ConnectionNetwork parse_network(std::string_view text, const Dataset& dataset);
ConnectionNetwork load_network(const std::filesystem::path& path, const Dataset& dataset);
std::string network_to_csv(const ConnectionNetwork& net);
void save_network(const ConnectionNetwork& net, const std::filesystem::path& path);

// Report emission. Numbers carry 10 significant digits.

std::string format_number(double v);

std::string report_to_string(const OutlierReport& report, Format format);
/// Reads back either format written by report_to_string.
OutlierReport parse_report(std::string_view text, Format format);
OutlierReport load_report(const std::filesystem::path& path);

/// Per-object plot data: id, attribute value, expected value, z.
std::string scatter_to_string(const OutlierReport& report, Format format);

std::string comparison_to_string(const ComparisonReport& report, Format format);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace wsnr::io
