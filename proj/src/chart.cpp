#include "dpsac/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dpsac/sweep.hpp"

namespace dpsac {

namespace {

const char* kPalette[] = {"#4878a8", "#e49444", "#5ba053", "#b8433e", "#8566a9", "#857356"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_grouped_bar_svg(const std::string& path, const std::string& title,
                           const std::vector<std::string>& categories,
                           const std::vector<std::string>& series,
                           const std::vector<std::vector<double>>& values) {
    if (values.size() != series.size())
        throw std::invalid_argument("one value row per series expected");
    for (const auto& row : values)
        if (row.size() != categories.size())
            throw std::invalid_argument("one value per category expected");

    const double width = 720, height = 360;
    const double left = 60, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double vmax = 0;
    for (const auto& row : values)
        for (double v : row) vmax = std::max(vmax, v);
    if (vmax <= 0) vmax = 1;
    vmax *= 1.1;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    for (int g = 0; g <= 5; ++g) {
        double v = vmax * g / 5.0;
        double y = top + plot_h - plot_h * g / 5.0;
        out << "<line x1=\"" << left << "\" y1=\"" << num(y) << "\" x2=\"" << left + plot_w
            << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(v)
            << "</text>\n";
    }

    const double group_w = plot_w / static_cast<double>(categories.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(series.size());
    for (std::size_t c = 0; c < categories.size(); ++c) {
        double gx = left + group_w * static_cast<double>(c) + group_w * 0.1;
        for (std::size_t s = 0; s < series.size(); ++s) {
            double v = values[s][c];
            double h = plot_h * v / vmax;
            double x = gx + bar_w * static_cast<double>(s);
            double y = top + plot_h - h;
            out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(bar_w)
                << "\" height=\"" << num(h) << "\" fill=\"" << kPalette[s % 6] << "\"/>\n";
        }
        out << "<text x=\"" << num(gx + group_w * 0.4) << "\" y=\"" << num(top + plot_h + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << categories[c] << "</text>\n";
    }

    double lx = left;
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<rect x=\"" << num(lx) << "\" y=\"" << height - 18 << "\" width=\"12\" "
            << "height=\"12\" fill=\"" << kPalette[s % 6] << "\"/>\n";
        out << "<text x=\"" << num(lx + 16) << "\" y=\"" << height - 8
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s] << "</text>\n";
        lx += 16 + 9.0 * static_cast<double>(series[s].size()) + 24;
    }
    out << "</svg>\n";
}

void emit_charts_from_csv(const std::string& csv_path, const std::string& out_dir,
                          const std::string& prefix, const std::string& series_column) {
    auto rows = read_csv(csv_path);
    std::vector<std::string> categories, series;
    for (const auto& r : rows) {
        if (r.seed != "mean") continue;
        if (std::find(categories.begin(), categories.end(), r.scenario) == categories.end())
            categories.push_back(r.scenario);
        const std::string& key = series_column == "updater" ? r.updater : r.scheduler;
        if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
    }
    if (categories.empty()) throw std::runtime_error("no aggregate rows in " + csv_path);

    std::vector<std::vector<double>> eff(series.size(),
                                         std::vector<double>(categories.size(), 0.0));
    std::vector<std::vector<double>> dil = eff;
    for (const auto& r : rows) {
        if (r.seed != "mean") continue;
        const std::string& key = series_column == "updater" ? r.updater : r.scheduler;
        auto ci = std::find(categories.begin(), categories.end(), r.scenario) -
                  categories.begin();
        auto si = std::find(series.begin(), series.end(), key) - series.begin();
        eff[static_cast<std::size_t>(si)][static_cast<std::size_t>(ci)] = r.syseff;
        dil[static_cast<std::size_t>(si)][static_cast<std::size_t>(ci)] = r.dilation;
    }
    write_grouped_bar_svg(out_dir + "/" + prefix + "_efficiency.svg", "Mean system efficiency",
                          categories, series, eff);
    write_grouped_bar_svg(out_dir + "/" + prefix + "_dilation.svg", "Mean dilation", categories,
                          series, dil);
}

}  // namespace dpsac
