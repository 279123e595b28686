#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "m3/harness.hpp"

namespace m3 {

namespace {

struct Series {
    std::string name;
    std::vector<double> score;
    std::vector<double> level;
    std::vector<double> coverage;
    std::vector<double> crashes;
};

std::string fmt(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1) << v;
    return out.str();
}

// Mean across logs per iteration; truncated episodes carry their last
// value forward so curves stay defined over the full x range.
Series summarize(const std::string& name, const std::vector<EpisodeLog>& logs) {
    Series s;
    s.name = name;
    size_t n = 0;
    for (const auto& log : logs)
        n = std::max(n, static_cast<size_t>(std::max<int>(log.iterations_configured,
                                                          static_cast<int>(log.records.size()))));
    s.score.assign(n, 0);
    s.level.assign(n, 0);
    s.coverage.assign(n, 0);
    s.crashes.assign(n, 0);
    for (const auto& log : logs) {
        double score = 0, level = 1, crashes = 0;
        for (size_t i = 0; i < n; ++i) {
            if (i < log.records.size()) {
                score = log.records[i].score;
                level = log.records[i].level;
                if (log.records[i].crash) crashes += 1;
            }
            s.score[i] += score;
            s.level[i] += level;
            s.coverage[i] += coverage(log, static_cast<int>(i) + 1);
            s.crashes[i] += crashes;
        }
    }
    double k = logs.empty() ? 1.0 : static_cast<double>(logs.size());
    for (auto* v : {&s.score, &s.level, &s.coverage, &s.crashes})
        for (auto& x : *v) x /= k;
    return s;
}

std::string svg_chart(const std::string& title, const std::vector<Series>& series,
                      std::vector<double> Series::*metric) {
    constexpr int kW = 640, kH = 360, kPad = 50;
    static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b"};
    double ymax = 1.0;
    size_t n = 1;
    for (const auto& s : series) {
        const auto& v = s.*metric;
        n = std::max(n, v.size());
        for (double x : v) ymax = std::max(ymax, x);
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\">\n";
    out << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
        << "</text>\n";
    out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\""
        << kH - kPad << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kPad
        << "\" y2=\"30\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kPad << "\" y=\"" << kH - kPad + 16
        << "\" font-size=\"10\">0</text>\n";
    out << "<text x=\"" << kW - kPad << "\" y=\"" << kH - kPad + 16
        << "\" text-anchor=\"end\" font-size=\"10\">" << n << "</text>\n";
    out << "<text x=\"" << kPad - 4 << "\" y=\"34\" text-anchor=\"end\" font-size=\"10\">"
        << fmt(ymax) << "</text>\n";
    int ci = 0;
    for (const auto& s : series) {
        const auto& v = s.*metric;
        out << "<polyline fill=\"none\" stroke=\"" << kColors[ci % 6] << "\" points=\"";
        for (size_t i = 0; i < v.size(); ++i) {
            double x = kPad + (kW - 2.0 * kPad) * (n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
            double y = (kH - kPad) - (kH - kPad - 30) * (v[i] / ymax);
            out << fmt(x) << ',' << fmt(y) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kW - kPad + 4 << "\" y=\"" << 40 + 14 * ci
            << "\" font-size=\"10\" fill=\"" << kColors[ci % 6] << "\">" << s.name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::vector<std::string> write_report(
    const std::vector<std::pair<std::string, std::vector<EpisodeLog>>>& input,
    const std::string& out_dir) {
    if (input.empty()) throw std::invalid_argument("write_report needs at least one log series");
    std::filesystem::create_directories(out_dir);

    std::vector<Series> series;
    for (const auto& [name, logs] : input) series.push_back(summarize(name, logs));

    std::vector<std::string> written;
    {
        std::filesystem::path csv_path = std::filesystem::path(out_dir) / "report.csv";
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
        csv << "series,iteration,score,level,coverage,crashes\n";
        for (const auto& s : series)
            for (size_t i = 0; i < s.score.size(); ++i)
                csv << s.name << ',' << i << ',' << fmt(s.score[i]) << ',' << fmt(s.level[i]) << ','
                    << fmt(s.coverage[i]) << ',' << fmt(s.crashes[i]) << '\n';
        written.push_back(csv_path.string());
    }

    struct Chart {
        const char* file;
        const char* title;
        std::vector<double> Series::*metric;
    };
    for (const auto& chart : {Chart{"score.svg", "Game Scores Across Iteration Rounds", &Series::score},
                              Chart{"level.svg", "Game Levels Across Iteration Rounds", &Series::level},
                              Chart{"coverage.svg", "Event Coverage Across Iteration Rounds",
                                    &Series::coverage}}) {
        std::filesystem::path p = std::filesystem::path(out_dir) / chart.file;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << svg_chart(chart.title, series, chart.metric);
        written.push_back(p.string());
    }
    return written;
}

}  // namespace m3
