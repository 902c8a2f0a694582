#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symdet/embedding.hpp"
#include "symdet/geometry.hpp"

namespace symdet::io {

/// Shortest round-trip-safe text (17 significant digits).
std::string format_double(double v);

/// Point cloud CSV: header `x,y`, one row per point. Rejects NaN/Inf.
void write_point_cloud(std::ostream& out, const PointCloud& cloud);
void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_point_cloud(std::istream& in);
PointCloud read_point_cloud(const std::filesystem::path& path);

/// Time-series CSV: a header naming every column (e.g. `value`), then one row
/// per sample. Returns one series per column, or only `column` when given.
std::vector<TimeSeries> read_time_series(std::istream& in, const std::optional<std::string>& column = std::nullopt,
                                         std::optional<std::size_t> cycle_length = std::nullopt);
std::vector<TimeSeries> read_time_series(const std::filesystem::path& path,
                                         const std::optional<std::string>& column = std::nullopt,
                                         std::optional<std::size_t> cycle_length = std::nullopt);
void write_time_series(const std::filesystem::path& path, const TimeSeries& series);

/// One manifest row: which file holds the series for a (subject, condition, joint, leg).
struct ManifestEntry {
    std::string subject;
    std::string condition;
    std::string joint;
    std::string leg;
    std::filesystem::path file;  ///< resolved against the manifest's directory
};

/// Manifest CSV with header `subject,condition,joint,leg,file`.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace symdet::io
