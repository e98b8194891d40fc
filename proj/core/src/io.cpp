#include "critnet/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "critnet/errors.hpp"

namespace critnet {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    out.precision(12);
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open for reading: " + path.string());
    return in;
}

std::vector<double> parse_row(const std::string& line, std::size_t expect,
                              const std::filesystem::path& path) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    if (row.size() != expect)
        throw ConfigError("malformed CSV row in " + path.string() + ": " + line);
    return row;
}

} // namespace

void write_population_trace_csv(const std::filesystem::path& path, const PopulationTrace& trace) {
    auto out = open_out(path);
    out << "t,mean_e,mean_i\n";
    for (std::size_t i = 0; i < trace.t.size(); ++i)
        out << trace.t[i] << ',' << trace.mean_e[i] << ',' << trace.mean_i[i] << '\n';
}

PopulationTrace read_population_trace_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line); // header
    PopulationTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = parse_row(line, 3, path);
        trace.t.push_back(row[0]);
        trace.mean_e.push_back(row[1]);
        trace.mean_i.push_back(row[2]);
    }
    return trace;
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
    auto out = open_out(path);
    out << "t,s,sigma,s_bar,sigma_bar,w_ee,w_ie,h_e,h_i\n";
    for (const auto& x : trace.samples)
        out << x.t << ',' << x.s << ',' << x.sigma << ',' << x.s_bar << ',' << x.sigma_bar << ','
            << x.w_ee << ',' << x.w_ie << ',' << x.h_e << ',' << x.h_i << '\n';
}

Trace read_trace_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line);
    Trace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = parse_row(line, 9, path);
        ExtendedState x;
        x.t = row[0];
        x.s = row[1];
        x.sigma = row[2];
        x.s_bar = row[3];
        x.sigma_bar = row[4];
        x.w_ee = row[5];
        x.w_ie = row[6];
        x.h_e = row[7];
        x.h_i = row[8];
        trace.samples.push_back(x);
    }
    return trace;
}

void write_region_map_csv(const std::filesystem::path& path, const BifurcationMap& map) {
    auto out = open_out(path);
    out << map.x.param << ',' << map.y.param << ",label\n";
    for (int iy = 0; iy < map.y.n; ++iy)
        for (int ix = 0; ix < map.x.n; ++ix)
            out << map.x.value_at(ix) << ',' << map.y.value_at(iy) << ','
                << region_label_name(map.at(ix, iy)) << '\n';
}

void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfilePoint>& profile) {
    auto out = open_out(path);
    out << "w_ee,cov_mean\n";
    for (const auto& p : profile) out << p.w_ee << ',' << p.cov_mean << '\n';
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    auto out = open_out(path);
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
}

namespace {

struct AxisMap {
    double lo, hi;
    double pix_lo, pix_hi;
    double to_pix(double v) const {
        double f = (v - lo) / (hi - lo);
        return pix_lo + f * (pix_hi - pix_lo);
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

void svg_header(std::ostream& out, int w, int h) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ostream& out, const AxisMap& xm, const AxisMap& ym, const PlotSpec& spec) {
    out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
        << "<line x1=\"" << xm.pix_lo << "\" y1=\"" << ym.pix_lo << "\" x2=\"" << xm.pix_hi
        << "\" y2=\"" << ym.pix_lo << "\"/>\n"
        << "<line x1=\"" << xm.pix_lo << "\" y1=\"" << ym.pix_lo << "\" x2=\"" << xm.pix_lo
        << "\" y2=\"" << ym.pix_hi << "\"/>\n</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        double xv = xm.lo + (xm.hi - xm.lo) * i / n_ticks;
        double yv = ym.lo + (ym.hi - ym.lo) * i / n_ticks;
        out << "<text x=\"" << xm.to_pix(xv) << "\" y=\"" << ym.pix_lo + 16
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        out << "<text x=\"" << xm.pix_lo - 6 << "\" y=\"" << ym.to_pix(yv) + 4
            << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    double xc = 0.5 * (xm.pix_lo + xm.pix_hi);
    out << "<text x=\"" << xc << "\" y=\"" << ym.pix_lo + 34 << "\" text-anchor=\"middle\">"
        << spec.x_label << "</text>\n";
    out << "<text x=\"" << xc << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
        << spec.title << "</text>\n";
    out << "<text x=\"14\" y=\"" << 0.5 * (ym.pix_lo + ym.pix_hi)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << 0.5 * (ym.pix_lo + ym.pix_hi)
        << ")\">" << spec.y_label << "</text>\n</g>\n";
}

} // namespace

void write_line_plot_svg(const std::filesystem::path& path, const PlotSpec& spec,
                         const std::vector<Series>& series) {
    double x_lo = spec.x_lo, x_hi = spec.x_hi, y_lo = spec.y_lo, y_hi = spec.y_hi;
    if (x_lo >= x_hi || y_lo >= y_hi) {
        bool any = false;
        for (const auto& s : series)
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (!any) {
                    x_lo = x_hi = x;
                    y_lo = y_hi = y;
                    any = true;
                } else {
                    x_lo = std::min(x_lo, x);
                    x_hi = std::max(x_hi, x);
                    y_lo = std::min(y_lo, y);
                    y_hi = std::max(y_hi, y);
                }
            }
        if (!any) {
            x_lo = y_lo = 0.0;
            x_hi = y_hi = 1.0;
        }
        if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
        if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
        double mx = 0.05 * (x_hi - x_lo), my = 0.05 * (y_hi - y_lo);
        x_lo -= mx;
        x_hi += mx;
        y_lo -= my;
        y_hi += my;
    }

    AxisMap xm{x_lo, x_hi, 60.0, spec.width - 20.0};
    AxisMap ym{y_lo, y_hi, spec.height - 50.0, 30.0};

    auto out = open_out(path);
    svg_header(out, spec.width, spec.height);
    svg_axes(out, xm, ym, spec);
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out << fmt(xm.to_pix(x)) << ',' << fmt(ym.to_pix(y)) << ' ';
        }
        out << "\"/>\n";
    }
    // legend
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    double ly = 36.0;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        out << "<line x1=\"" << spec.width - 160 << "\" y1=\"" << ly << "\" x2=\""
            << spec.width - 140 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << spec.width - 134 << "\" y=\"" << ly + 4 << "\">" << s.label
            << "</text>\n";
        ly += 16.0;
    }
    out << "</g>\n</svg>\n";
}

void write_region_map_svg(const std::filesystem::path& path, const BifurcationMap& map,
                          const std::string& title) {
    static const std::map<RegionLabel, std::string> palette = {
        {RegionLabel::O, "#4878cf"},
        {RegionLabel::O_h, "#d65f5f"},
        {RegionLabel::O_m, "#6acc65"},
        {RegionLabel::O_l, "#956cb4"},
        {RegionLabel::P, "#eec24f"},
        {RegionLabel::T, "#8c613c"},
        {RegionLabel::ThreeAttractorStrip, "#222222"},
        {RegionLabel::Unclassified, "#cccccc"},
    };

    PlotSpec spec;
    spec.title = title;
    spec.x_label = map.x.param;
    spec.y_label = map.y.param;
    AxisMap xm{map.x.lo, map.x.hi, 60.0, spec.width - 20.0};
    AxisMap ym{map.y.lo, map.y.hi, spec.height - 50.0, 30.0};

    auto out = open_out(path);
    svg_header(out, spec.width, spec.height);
    double cw = (xm.pix_hi - xm.pix_lo) / map.x.n;
    double ch = (ym.pix_lo - ym.pix_hi) / map.y.n;
    for (int iy = 0; iy < map.y.n; ++iy) {
        for (int ix = 0; ix < map.x.n; ++ix) {
            double px = xm.pix_lo + ix * cw;
            double py = ym.pix_lo - (iy + 1) * ch;
            out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(cw + 0.5)
                << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\"" << palette.at(map.at(ix, iy))
                << "\"/>\n";
        }
    }
    svg_axes(out, xm, ym, spec);
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    double ly = 36.0;
    for (const auto& [label, color] : palette) {
        out << "<rect x=\"" << spec.width - 158 << "\" y=\"" << ly - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color
            << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
        out << "<text x=\"" << spec.width - 140 << "\" y=\"" << ly + 2 << "\">"
            << region_label_name(label) << "</text>\n";
        ly += 15.0;
    }
    out << "</g>\n</svg>\n";
}

} // namespace critnet
