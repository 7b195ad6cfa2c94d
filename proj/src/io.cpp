#include "hqst/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hqst::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Table::Table(std::string title, std::vector<std::string> columns)
    : title_(std::move(title)), columns_(std::move(columns)) {}

void Table::set_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void Table::set_meta(const std::string& key, double value) {
    meta_.emplace_back(key, format_double(value));
}

void Table::set_meta(const std::string& key, std::int64_t value) {
    meta_.emplace_back(key, std::to_string(value));
}

void Table::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) {
        throw std::invalid_argument("row width does not match the header");
    }
    std::string joined;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) joined += ',';
        joined += cells[i];
    }
    rows_.push_back(std::move(joined));
    cells_.push_back(cells);
}

void Table::add_comment(const std::string& line) { trailing_comments_.push_back(line); }

std::string Table::to_csv(bool with_timestamp) const {
    std::ostringstream os;
    os << "# " << title_ << '\n';
    os << "# version: " << kVersion << '\n';
    if (with_timestamp) os << "# generated: " << timestamp_utc() << '\n';
    for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << columns_[i];
    }
    os << '\n';
    for (const auto& r : rows_) os << r << '\n';
    for (const auto& c : trailing_comments_) os << "# " << c << '\n';
    return os.str();
}

std::string Table::to_json(bool with_timestamp) const {
    nlohmann::json j;
    j["title"] = title_;
    j["version"] = kVersion;
    if (with_timestamp) j["generated"] = timestamp_utc();
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : meta_) meta[k] = v;
    j["parameters"] = meta;
    j["columns"] = columns_;
    j["rows"] = cells_;
    if (!trailing_comments_.empty()) j["notes"] = trailing_comments_;
    return j.dump(2) + "\n";
}

namespace {

double axis_transform(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotOptions& opt) {
    const double ml = 72, mr = 24, mt = 40, mb = 56;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = s.x[i], y = s.y[i];
            if (opt.log_x && x <= 0.0) continue;
            if (opt.log_y && y <= 0.0) continue;
            const double tx = axis_transform(x, opt.log_x);
            const double ty = axis_transform(y, opt.log_y);
            xmin = std::min(xmin, tx); xmax = std::max(xmax, tx);
            ymin = std::min(ymin, ty); ymax = std::max(ymax, ty);
        }
    }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax - xmin < 1e-12) { xmax += 0.5; xmin -= 0.5; }
    if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }

    auto px = [&](double v) { return ml + pw * (axis_transform(v, opt.log_x) - xmin) / (xmax - xmin); };
    auto py = [&](double v) { return mt + ph * (1.0 - (axis_transform(v, opt.log_y) - ymin) / (ymax - ymin)); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
       << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << opt.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"15\">" << opt.title << "</text>\n";

    // Axes.
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double fy = ymin + (ymax - ymin) * i / nticks;
        const double gx = ml + pw * i / nticks;
        const double gy = mt + ph * (1.0 - double(i) / nticks);
        const double vx = opt.log_x ? std::pow(10.0, fx) : fx;
        const double vy = opt.log_y ? std::pow(10.0, fy) : fy;
        os << "<line x1=\"" << gx << "\" y1=\"" << mt + ph << "\" x2=\"" << gx << "\" y2=\""
           << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << gx << "\" y=\"" << mt + ph + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(vx) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << gy << "\" x2=\"" << ml << "\" y2=\"" << gy
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << gy + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(vy) << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << opt.x_label
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << opt.y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % 8];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (opt.log_x && s.x[i] <= 0.0) continue;
            if (opt.log_y && s.y[i] <= 0.0) continue;
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << ml + pw - 8 << "\" y=\"" << mt + 16 + 16 * si
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
           << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace hqst::io
