#include "tents/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace tents {

std::optional<LinearFit> linear_fit(std::span<const FitPoint> points) {
    const int n = static_cast<int>(points.size());
    if (n < 2) return std::nullopt;

    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& p : points) {
        mean_x += p.size;
        mean_y += p.effort;
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        sxx += (p.size - mean_x) * (p.size - mean_x);
        sxy += (p.size - mean_x) * (p.effort - mean_y);
    }
    if (sxx == 0.0) return std::nullopt;  // all x equal: slope undefined

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.n = n;

    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& p : points) {
        const double predicted = fit.intercept + fit.slope * p.size;
        ss_res += (p.effort - predicted) * (p.effort - predicted);
        ss_tot += (p.effort - mean_y) * (p.effort - mean_y);
    }
    fit.r_squared = ss_res == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

EffortCurve effort_curve(std::span<const AttemptRecord> records,
                         bool successful_only) {
    EffortCurve curve;
    std::map<std::int64_t, std::vector<const AttemptRecord*>> by_size;
    for (const AttemptRecord& r : records) {
        if (curve.effort_kind.empty())
            curve.effort_kind = r.effort_kind;
        else if (curve.effort_kind != r.effort_kind)
            throw std::invalid_argument(
                "effort_curve: records mix effort kinds; filter to one kind first");
        if (successful_only && !r.success) continue;
        by_size[r.problem_size].push_back(&r);
    }
    for (const auto& [size, bucket] : by_size) {
        EffortBin bin;
        bin.size = size;
        bin.n = static_cast<int>(bucket.size());
        double sum = 0.0;
        for (const AttemptRecord* r : bucket) {
            sum += r->effort_value;
            if (r->success) ++bin.success_n;
        }
        bin.mean_effort = sum / bin.n;
        double sq = 0.0;
        for (const AttemptRecord* r : bucket)
            sq += (r->effort_value - bin.mean_effort) * (r->effort_value - bin.mean_effort);
        bin.sd_effort = std::sqrt(sq / bin.n);  // population convention
        curve.bins.push_back(bin);
    }
    return curve;
}

std::vector<SuccessRow> success_curve(std::span<const AttemptRecord> records) {
    std::map<std::int64_t, SuccessRow> by_size;
    for (const AttemptRecord& r : records) {
        SuccessRow& row = by_size[r.problem_size];
        row.size = r.problem_size;
        ++row.attempts;
        if (r.success) ++row.solved;
    }
    std::vector<SuccessRow> out;
    out.reserve(by_size.size());
    for (auto& [size, row] : by_size) {
        row.fraction = static_cast<double>(row.solved) / row.attempts;
        out.push_back(row);
    }
    return out;
}

PeakDiagnostics detect_peak(const EffortCurve& curve, int min_bins_after) {
    if (curve.bins.empty())
        throw std::invalid_argument("detect_peak: empty curve");
    std::size_t peak = 0;
    for (std::size_t i = 1; i < curve.bins.size(); ++i)
        if (curve.bins[i].mean_effort > curve.bins[peak].mean_effort) peak = i;

    PeakDiagnostics diag;
    diag.peak_size = curve.bins[peak].size;
    diag.peak_mean_effort = curve.bins[peak].mean_effort;
    diag.bins_after = static_cast<int>(curve.bins.size() - peak - 1);
    diag.post_peak_decline = diag.bins_after >= min_bins_after;
    for (std::size_t i = peak + 1; i < curve.bins.size(); ++i)
        if (curve.bins[i].mean_effort >= diag.peak_mean_effort)
            diag.post_peak_decline = false;
    return diag;
}

ScalingReport analyze(std::span<const AttemptRecord> records) {
    // Token- and latency-based efforts are incommensurable; a model that
    // reports both yields one report per kind.
    std::map<std::pair<std::string, std::string>, std::vector<AttemptRecord>> groups;
    std::map<std::string, std::set<std::string>> kinds_of_model;
    for (const AttemptRecord& r : records) {
        groups[{r.model, r.effort_kind}].push_back(r);
        kinds_of_model[r.model].insert(r.effort_kind);
    }

    ScalingReport report;
    for (auto& [key, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const AttemptRecord& a, const AttemptRecord& b) {
                      return std::tie(a.instance_id, a.attempt_index) <
                             std::tie(b.instance_id, b.attempt_index);
                  });
        ModelReport rep;
        rep.model = kinds_of_model[key.first].size() == 1
                        ? key.first
                        : key.first + "#" + key.second;
        rep.effort_kind = key.second;
        rep.effort_all = effort_curve(group, false);
        rep.effort_successful = effort_curve(group, true);
        rep.success = success_curve(group);
        for (const AttemptRecord& r : group)
            if (r.success)
                rep.successful_points.push_back(
                    {static_cast<double>(r.problem_size), r.effort_value});
        rep.fit = linear_fit(rep.successful_points);
        if (!rep.effort_successful.bins.empty())
            rep.peak = detect_peak(rep.effort_successful);
        report.models.push_back(std::move(rep));
    }
    std::sort(report.models.begin(), report.models.end(),
              [](const ModelReport& a, const ModelReport& b) { return a.model < b.model; });
    return report;
}

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string fmt_fixed(double v, int precision = 2) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::fixed, precision);
    return std::string(buf, p);
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.')
                   ? c
                   : '_';
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
    written.push_back(path);
}

std::string curve_csv(const EffortCurve& curve) {
    std::string csv = "size,n,success_n,mean_effort,sd_effort,effort_kind\n";
    for (const EffortBin& b : curve.bins) {
        csv += std::to_string(b.size) + "," + std::to_string(b.n) + "," +
               std::to_string(b.success_n) + "," + fmt(b.mean_effort) + "," +
               fmt(b.sd_effort) + "," + curve.effort_kind + "\n";
    }
    return csv;
}

// Minimal deterministic scatter plot. Fixed canvas, two labelled axes, the
// successful attempts as dots and the fitted line when defined.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label,
            double x_min, double x_max, double y_min, double y_max)
        : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
        if (x_max_ <= x_min_) x_max_ = x_min_ + 1.0;
        if (y_max_ <= y_min_) y_max_ = y_min_ + 1.0;
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
                 "height=\"480\" viewBox=\"0 0 640 480\">\n";
        body_ += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
        body_ += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" font-size=\"16\">" +
                 xml_escape(title) + "</text>\n";
        body_ += "<line x1=\"60\" y1=\"420\" x2=\"600\" y2=\"420\" stroke=\"black\"/>\n";
        body_ += "<line x1=\"60\" y1=\"40\" x2=\"60\" y2=\"420\" stroke=\"black\"/>\n";
        body_ += "<text x=\"330\" y=\"460\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" font-size=\"12\">" +
                 xml_escape(x_label) + "</text>\n";
        body_ += "<text x=\"16\" y=\"230\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" font-size=\"12\" "
                 "transform=\"rotate(-90 16 230)\">" +
                 xml_escape(y_label) + "</text>\n";
        axis_labels();
    }

    double px(double x) const {
        return 60.0 + (x - x_min_) / (x_max_ - x_min_) * 540.0;
    }
    double py(double y) const {
        return 420.0 - (y - y_min_) / (y_max_ - y_min_) * 380.0;
    }

    void point(double x, double y, const char* fill) {
        body_ += "<circle cx=\"" + fmt_fixed(px(x)) + "\" cy=\"" + fmt_fixed(py(y)) +
                 "\" r=\"3\" fill=\"" + fill + "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* stroke) {
        body_ += "<line x1=\"" + fmt_fixed(px(x1)) + "\" y1=\"" + fmt_fixed(py(y1)) +
                 "\" x2=\"" + fmt_fixed(px(x2)) + "\" y2=\"" + fmt_fixed(py(y2)) +
                 "\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
    }

    std::string finish() { return body_ + "</svg>\n"; }

  private:
    void axis_labels() {
        body_ += "<text x=\"60\" y=\"436\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" font-size=\"10\">" +
                 fmt_fixed(x_min_) + "</text>\n";
        body_ += "<text x=\"600\" y=\"436\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" font-size=\"10\">" +
                 fmt_fixed(x_max_) + "</text>\n";
        body_ += "<text x=\"54\" y=\"424\" text-anchor=\"end\" "
                 "font-family=\"sans-serif\" font-size=\"10\">" +
                 fmt_fixed(y_min_) + "</text>\n";
        body_ += "<text x=\"54\" y=\"44\" text-anchor=\"end\" "
                 "font-family=\"sans-serif\" font-size=\"10\">" +
                 fmt_fixed(y_max_) + "</text>\n";
    }

    std::string body_;
    double x_min_, x_max_, y_min_, y_max_;
};

std::string effort_svg(const ModelReport& rep) {
    double x_min = 0.0, x_max = 1.0, y_max = 1.0;
    if (!rep.successful_points.empty()) {
        x_min = x_max = rep.successful_points.front().size;
        y_max = rep.successful_points.front().effort;
        for (const FitPoint& p : rep.successful_points) {
            x_min = std::min(x_min, p.size);
            x_max = std::max(x_max, p.size);
            y_max = std::max(y_max, p.effort);
        }
    }
    SvgPlot plot("Effort vs problem size: " + rep.model, "problem size",
                 "effort (" + rep.effort_kind + ")", x_min, x_max, 0.0, y_max);
    for (const FitPoint& p : rep.successful_points)
        plot.point(p.size, p.effort, "steelblue");
    if (rep.fit) {
        auto clamp_y = [&](double y) { return std::max(0.0, std::min(y, y_max)); };
        plot.line(x_min, clamp_y(rep.fit->intercept + rep.fit->slope * x_min), x_max,
                  clamp_y(rep.fit->intercept + rep.fit->slope * x_max), "firebrick");
    }
    return plot.finish();
}

std::string success_svg(const ModelReport& rep) {
    double x_min = 0.0, x_max = 1.0;
    if (!rep.success.empty()) {
        x_min = static_cast<double>(rep.success.front().size);
        x_max = static_cast<double>(rep.success.back().size);
    }
    SvgPlot plot("Solved fraction vs problem size: " + rep.model, "problem size",
                 "solved fraction", x_min, x_max, 0.0, 1.0);
    for (std::size_t i = 0; i + 1 < rep.success.size(); ++i)
        plot.line(static_cast<double>(rep.success[i].size), rep.success[i].fraction,
                  static_cast<double>(rep.success[i + 1].size),
                  rep.success[i + 1].fraction, "gray");
    for (const SuccessRow& row : rep.success)
        plot.point(static_cast<double>(row.size), row.fraction, "seagreen");
    return plot.finish();
}

}  // namespace

std::string report_to_json(const ScalingReport& report) {
    json models = json::array();
    for (const ModelReport& rep : report.models) {
        json m;
        m["model"] = rep.model;
        m["effort_kind"] = rep.effort_kind;
        if (rep.fit) {
            m["fit"] = {{"slope", rep.fit->slope},
                        {"intercept", rep.fit->intercept},
                        {"r_squared", rep.fit->r_squared},
                        {"n", rep.fit->n}};
        } else {
            m["fit"] = nullptr;
        }
        if (rep.peak) {
            m["peak"] = {{"peak_size", rep.peak->peak_size},
                         {"peak_mean_effort", rep.peak->peak_mean_effort},
                         {"post_peak_decline", rep.peak->post_peak_decline},
                         {"bins_after", rep.peak->bins_after}};
        } else {
            m["peak"] = nullptr;
        }
        json success = json::array();
        for (const SuccessRow& row : rep.success)
            success.push_back({{"size", row.size},
                               {"attempts", row.attempts},
                               {"solved", row.solved},
                               {"fraction", row.fraction}});
        m["success"] = std::move(success);
        models.push_back(std::move(m));
    }
    json j;
    j["models"] = std::move(models);
    return j.dump(2) + "\n";
}

std::vector<std::string> export_report(const ScalingReport& report,
                                       const std::string& out_dir,
                                       ExportFormat formats) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir: " + out_dir);

    std::vector<std::string> written;
    const std::string base = out_dir + "/";

    if (has_format(formats, ExportFormat::Csv)) {
        std::string fits = "model,slope,intercept,r_squared,n\n";
        std::string peaks = "model,peak_size,peak_mean_effort,post_peak_decline,bins_after\n";
        for (const ModelReport& rep : report.models) {
            if (rep.fit)
                fits += rep.model + "," + fmt(rep.fit->slope) + "," +
                        fmt(rep.fit->intercept) + "," + fmt(rep.fit->r_squared) + "," +
                        std::to_string(rep.fit->n) + "\n";
            if (rep.peak)
                peaks += rep.model + "," + std::to_string(rep.peak->peak_size) + "," +
                         fmt(rep.peak->peak_mean_effort) + "," +
                         (rep.peak->post_peak_decline ? "true" : "false") + "," +
                         std::to_string(rep.peak->bins_after) + "\n";
        }
        write_file(base + "fits.csv", fits, written);
        write_file(base + "peaks.csv", peaks, written);

        for (const ModelReport& rep : report.models) {
            const std::string stem = base + sanitize(rep.model);
            write_file(stem + "_effort_all.csv", curve_csv(rep.effort_all), written);
            write_file(stem + "_effort_success.csv", curve_csv(rep.effort_successful),
                       written);
            std::string success = "size,attempts,solved,fraction\n";
            for (const SuccessRow& row : rep.success)
                success += std::to_string(row.size) + "," + std::to_string(row.attempts) +
                           "," + std::to_string(row.solved) + "," + fmt(row.fraction) +
                           "\n";
            write_file(stem + "_success.csv", success, written);
        }
    }

    if (has_format(formats, ExportFormat::Svg)) {
        for (const ModelReport& rep : report.models) {
            const std::string stem = base + sanitize(rep.model);
            write_file(stem + "_effort.svg", effort_svg(rep), written);
            write_file(stem + "_success.svg", success_svg(rep), written);
        }
    }
    return written;
}

}  // namespace tents
