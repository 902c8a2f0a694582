#include "symdet/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "symdet/error.hpp"

namespace symdet::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view field, std::size_t line) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("cannot parse number '" + std::string(field) + "'", line);
    if (!std::isfinite(v)) throw ParseError("non-finite value '" + std::string(field) + "'", line);
    return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud) {
    out << "x,y\n";
    for (const auto& p : cloud) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
    auto out = open_out(path);
    write_point_cloud(out, cloud);
    if (!out) throw IoError("write failed: " + path.string());
}

PointCloud read_point_cloud(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<Point> pts;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto fields = split(line);
        if (!header) {
            if (fields.size() != 2 || fields[0] != "x" || fields[1] != "y")
                throw ParseError("expected header 'x,y'", lineno);
            header = true;
            continue;
        }
        if (fields.size() != 2) throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), lineno);
        pts.push_back({parse_double(fields[0], lineno), parse_double(fields[1], lineno)});
    }
    if (!header) throw ParseError("missing header 'x,y'");
    if (pts.empty()) throw ParseError("point cloud has no rows");
    return PointCloud(std::move(pts));
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_point_cloud(in);
}

std::vector<TimeSeries> read_time_series(std::istream& in, const std::optional<std::string>& column,
                                         std::optional<std::size_t> cycle_length) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto fields = split(line);
        if (names.empty()) {
            for (auto f : fields) {
                if (f.empty()) throw ParseError("empty column name in header", lineno);
                names.emplace_back(f);
            }
            cols.resize(names.size());
            continue;
        }
        if (fields.size() != names.size())
            throw ParseError("expected " + std::to_string(names.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        for (std::size_t c = 0; c < fields.size(); ++c) cols[c].push_back(parse_double(fields[c], lineno));
    }
    if (names.empty()) throw ParseError("missing header");

    std::vector<TimeSeries> out;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (column && names[c] != *column) continue;
        if (cols[c].size() < kMinSeriesLength)
            throw ParseError("column '" + names[c] + "' has fewer than " + std::to_string(kMinSeriesLength) +
                             " samples");
        out.emplace_back(std::move(cols[c]), cycle_length);
    }
    if (out.empty()) throw ParseError("no column named '" + column.value_or("") + "'");
    return out;
}

std::vector<TimeSeries> read_time_series(const std::filesystem::path& path, const std::optional<std::string>& column,
                                         std::optional<std::size_t> cycle_length) {
    auto in = open_in(path);
    return read_time_series(in, column, cycle_length);
}

void write_time_series(const std::filesystem::path& path, const TimeSeries& series) {
    auto out = open_out(path);
    out << "value\n";
    for (double v : series.samples()) out << format_double(v) << '\n';
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    auto in = open_in(path);
    const auto dir = path.parent_path();
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<ManifestEntry> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto f = split(line);
        if (!header) {
            if (f.size() != 5 || f[0] != "subject" || f[1] != "condition" || f[2] != "joint" || f[3] != "leg" ||
                f[4] != "file")
                throw ParseError("expected header 'subject,condition,joint,leg,file'", lineno);
            header = true;
            continue;
        }
        if (f.size() != 5) throw ParseError("expected 5 fields", lineno);
        std::filesystem::path file{std::string(f[4])};
        if (file.is_relative()) file = dir / file;
        out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]), std::string(f[3]), file});
    }
    if (!header) throw ParseError("missing manifest header");
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace symdet::io
