#include "oamix/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oamix/error.hpp"

namespace oamix::io {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                               : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::string> lines_of(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                                 : nl - start));
        if (!line.empty()) lines.push_back(std::move(line));
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return lines;
}

double parse_double(const std::string& field, const std::string& column, std::size_t line) {
    if (field.empty())
        throw Error(ErrorKind::SchemaError,
                    "empty cell in column '" + column + "' on line " + std::to_string(line));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != field.size() || !std::isfinite(v))
        throw Error(ErrorKind::SchemaError, "column '" + column + "' line " + std::to_string(line) +
                                                ": '" + field + "' is not a number");
    return v;
}

int parse_int(const std::string& field, const std::string& column, std::size_t line) {
    const double v = parse_double(field, column, line);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw Error(ErrorKind::SchemaError, "column '" + column + "' line " + std::to_string(line) +
                                                ": '" + field + "' is not an integer");
    return static_cast<int>(v);
}

std::string z_name(int j, int k) { return "z" + std::to_string(j) + std::to_string(k); }

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string write_design_csv(const BlockedDesign& design) {
    const bool amount = design.kind == DesignKind::Amount;
    const bool with_total =
        amount || std::any_of(design.runs.begin(), design.runs.end(),
                              [](const Run& r) { return r.amount != 0.0; });
    const char prefix = amount ? 'a' : 'x';
    std::ostringstream os;
    os << "run";
    for (int i = 1; i <= design.m; ++i) os << ',' << prefix << i;
    for (int j = 1; j <= design.m; ++j)
        for (int k = j + 1; k <= design.m; ++k) os << ',' << z_name(j, k);
    os << ",block";
    if (with_total) os << ",A";
    os << '\n';
    for (std::size_t u = 0; u < design.runs.size(); ++u) {
        const Run& r = design.runs[u];
        os << (u + 1);
        for (double v : r.values) os << ',' << format_number(v);
        for (int z : r.pwo) os << ',' << z;
        os << ',' << r.block;
        if (with_total) os << ',' << format_number(r.amount);
        os << '\n';
    }
    return os.str();
}

BlockedDesign parse_design_csv(std::string_view text, bool validate) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw Error(ErrorKind::SchemaError, "missing header");
    const auto header = split_fields(lines.front());
    if (header.empty() || header[0] != "run")
        throw Error(ErrorKind::SchemaError, "first column must be 'run', found '" +
                                                (header.empty() ? std::string() : header[0]) + "'");

    std::size_t col = 1;
    char prefix = 0;
    if (col < header.size() && !header[col].empty()) prefix = header[col][0];
    if (prefix != 'x' && prefix != 'a')
        throw Error(ErrorKind::SchemaError,
                    "column '" + (col < header.size() ? header[col] : std::string()) +
                        "': expected x1 or a1");
    int m = 0;
    while (col < header.size() && header[col] == std::string(1, prefix) + std::to_string(m + 1)) {
        ++m;
        ++col;
    }
    if (m < 2) throw Error(ErrorKind::SchemaError, "need at least two component columns");
    for (int j = 1; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k) {
            const std::string want = z_name(j, k);
            if (col >= header.size() || header[col] != want)
                throw Error(ErrorKind::SchemaError,
                            "column '" + (col < header.size() ? header[col] : std::string("<missing>")) +
                                "': expected " + want);
            ++col;
        }
    if (col >= header.size() || header[col] != "block")
        throw Error(ErrorKind::SchemaError,
                    "column '" + (col < header.size() ? header[col] : std::string("<missing>")) +
                        "': expected block");
    ++col;
    const bool amount = prefix == 'a';
    bool has_total = false;
    if (col < header.size() && header[col] == "A") {
        has_total = true;
        ++col;
    }
    if (col < header.size()) throw Error(ErrorKind::SchemaError, "unexpected column '" + header[col] + "'");
    if (amount && !has_total) throw Error(ErrorKind::SchemaError, "column 'A' is required for amount designs");

    BlockedDesign d;
    d.m = m;
    d.kind = amount ? DesignKind::Amount : DesignKind::Proportion;
    d.n_blocks = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split_fields(lines[li]);
        const std::size_t line_no = li + 1;
        if (fields.size() != header.size())
            throw Error(ErrorKind::SchemaError, "line " + std::to_string(line_no) + " has " +
                                                    std::to_string(fields.size()) + " fields, expected " +
                                                    std::to_string(header.size()));
        std::size_t c = 0;
        parse_int(fields[c], header[c], line_no);
        ++c;
        Run run;
        for (int i = 0; i < m; ++i, ++c) run.values.push_back(parse_double(fields[c], header[c], line_no));
        for (std::size_t p = 0; p < pair_count(m); ++p, ++c) {
            const int z = parse_int(fields[c], header[c], line_no);
            if (z < -1 || z > 1)
                throw Error(ErrorKind::SchemaError, "column '" + header[c] + "' line " +
                                                        std::to_string(line_no) + ": must be -1, 0 or 1");
            run.pwo.push_back(z);
        }
        run.block = parse_int(fields[c], header[c], line_no);
        ++c;
        if (has_total) run.amount = parse_double(fields[c], header[c], line_no);
        d.n_blocks = std::max(d.n_blocks, run.block);
        d.runs.push_back(std::move(run));
    }
    if (d.runs.empty()) throw Error(ErrorKind::EmptyDesign, "design has no runs");
    if (validate) require_valid(d);
    return d;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IOError, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IOError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::IOError, "write failed for " + path.string());
}

BlockedDesign read_design_file(const std::filesystem::path& path, bool validate) {
    return parse_design_csv(read_text_file(path), validate);
}

std::vector<double> parse_response_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw Error(ErrorKind::EmptyDesign, "response file is empty");
    std::size_t column = 0;
    std::size_t first = 0;
    const auto header = split_fields(lines.front());
    const auto y = std::find(header.begin(), header.end(), "y");
    if (y != header.end()) {
        column = static_cast<std::size_t>(y - header.begin());
        first = 1;
    } else if (header.size() != 1) {
        throw Error(ErrorKind::SchemaError, "response file needs a 'y' column");
    }
    std::vector<double> out;
    for (std::size_t li = first; li < lines.size(); ++li) {
        const auto fields = split_fields(lines[li]);
        if (column >= fields.size())
            throw Error(ErrorKind::SchemaError, "line " + std::to_string(li + 1) + " is missing y");
        out.push_back(parse_double(fields[column], "y", li + 1));
    }
    if (out.empty()) throw Error(ErrorKind::EmptyDesign, "response file has no values");
    return out;
}

std::string fds_csv(const evaluate::FdsCurve& curve) {
    std::ostringstream os;
    os << "fraction,variance\n";
    char buf[96];
    for (const auto& pt : curve.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pt.fraction, pt.variance);
        os << buf;
    }
    return os.str();
}

namespace {

double nice_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (raw <= f * mag) return f * mag;
    return 10.0 * mag;
}

}  // namespace

std::string fds_svg(const evaluate::FdsCurve& curve) {
    constexpr double width = 640, height = 420;
    constexpr double left = 70, right = 20, top = 30, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double vmax = 0.0;
    for (const auto& pt : curve.points) vmax = std::max(vmax, pt.variance);
    if (vmax <= 0.0) vmax = 1.0;
    const double step = nice_step(vmax, 5);
    const double ymax = std::ceil(vmax / step - 1e-9) * step;

    auto sx = [&](double f) { return left + f * plot_w; };
    auto sy = [&](double v) { return top + plot_h - v / ymax * plot_h; };
    char buf[160];

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, plot_w, plot_h);
    os << buf;

    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n",
                      sx(f), top + plot_h, sx(f), top + plot_h + 5, sx(f), top + plot_h + 20, f);
        os << buf;
    }
    for (int i = 0; i * step <= ymax + 1e-12; ++i) {
        const double v = i * step;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n",
                      left - 5, sy(v), left, sy(v), left - 8, sy(v) + 4, format_number(v).c_str());
        os << buf;
    }
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    // thin very long curves to at most ~2000 vertices, always keeping the last point
    const std::size_t n = curve.points.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    for (std::size_t i = 0; i < n; i += stride) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(curve.points[i].fraction), sy(curve.points[i].variance));
        os << buf;
    }
    if (n > 0 && (n - 1) % stride != 0) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", sx(curve.points.back().fraction),
                      sy(curve.points.back().variance));
        os << buf;
    }
    os << "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">Fraction of design space</text>\n",
                  left + plot_w / 2, height - 15);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text transform=\"translate(18,%.1f) rotate(-90)\" text-anchor=\"middle\">Prediction variance</text>\n",
                  top + plot_h / 2);
    os << buf;
    os << "</svg>\n";
    return os.str();
}

void write_fds_outputs(const evaluate::FdsCurve& curve, const std::filesystem::path& base) {
    if (curve.points.empty()) throw Error(ErrorKind::EmptyDesign, "FDS curve is empty");
    auto with_ext = [&](const char* ext) {
        auto p = base;
        p += ext;
        return p;
    };
    write_text_file(with_ext(".csv"), fds_csv(curve));
    write_text_file(with_ext(".svg"), fds_svg(curve));
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const evaluate::EvalReport& r) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : r.columns)
        cols.push_back({{"name", c.name},
                        {"se", c.se},
                        {"r_squared", optional_json(c.r_squared)},
                        {"power_2sd", optional_json(c.power)}});
    return {
        {"n", r.n},
        {"p", r.p},
        {"det_xtx", r.det_xtx},
        {"log_det_xtx", r.log_det_xtx},
        {"d_criterion", r.d_criterion},
        {"a_criterion", r.a_criterion},
        {"max_pv", r.max_pv},
        {"max_pv_run", r.max_pv_index + 1},
        {"avg_pv", r.avg_pv},
        {"g_efficiency", r.g_efficiency},
        {"power_options",
         {{"sigma", r.power_options.sigma},
          {"alpha", r.power_options.alpha},
          {"effect_sd", r.power_options.effect_sd}}},
        {"columns", cols},
        {"notes", r.notes},
    };
}

nlohmann::json to_json(const evaluate::BlockingReport& report) {
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : report.conditions)
        conds.push_back({{"family", c.family},
                         {"term", c.term},
                         {"block_sums", c.block_sums},
                         {"discrepancy", c.discrepancy},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
    return {{"pass", report.pass}, {"conditions", conds}};
}

nlohmann::json to_json(const std::vector<evaluate::PowerRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"name", r.name}, {"se", r.se}, {"noncentrality", r.noncentrality}, {"power", r.power}});
    return out;
}

nlohmann::json to_json(const fit::FitResult& fit) {
    nlohmann::json coefs = nlohmann::json::array();
    for (const auto& c : fit.coefficients)
        coefs.push_back({{"name", c.name}, {"estimate", c.estimate}, {"se", c.se}});
    return {{"coefficients", coefs},
            {"sigma_hat", fit.sigma_hat},
            {"df_residual", fit.df_residual},
            {"r_squared", fit.r_squared},
            {"residuals", fit.residuals}};
}

}  // namespace oamix::io
