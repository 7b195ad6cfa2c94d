#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hqst::io {

inline constexpr const char* kVersion = "0.1.0";

/// Tabular output with a commented metadata block, a header row, and
/// pre-formatted data rows.  Rendering is deterministic; the timestamp line
/// is optional so byte-identical reruns are possible.
class Table {
public:
    Table(std::string title, std::vector<std::string> columns);

    void set_meta(const std::string& key, const std::string& value);
    void set_meta(const std::string& key, double value);
    void set_meta(const std::string& key, std::int64_t value);

    void add_row(const std::vector<std::string>& cells);
    void add_comment(const std::string& line);

    std::size_t row_count() const { return rows_.size(); }

    std::string to_csv(bool with_timestamp) const;
    std::string to_json(bool with_timestamp) const;

private:
    std::string title_;
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> rows_;       // pre-joined CSV rows
    std::vector<std::vector<std::string>> cells_;  // kept for JSON
    std::vector<std::string> trailing_comments_;
};

/// Fixed, locale-independent floating-point rendering (shortest round-trip
/// is unnecessary; 12 significant digits are stable across reruns).
std::string format_double(double v);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

/// Self-contained SVG line plot (no external plotting dependency).
std::string render_svg(const std::vector<Series>& series, const PlotOptions& options);

void write_file(const std::string& path, const std::string& content);

/// ISO-8601 UTC timestamp.
std::string timestamp_utc();

}  // namespace hqst::io
