#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tents/transcript.hpp"

namespace tents {

struct FitPoint {
    double size = 0.0;
    double effort = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n = 0;
};

/// Ordinary least squares over raw points. R^2 = 1 - SSres/SStot, with
/// R^2 = 1 exactly when SSres == 0. Fewer than two points or constant x
/// yield no fit.
std::optional<LinearFit> linear_fit(std::span<const FitPoint> points);

struct EffortBin {
    std::int64_t size = 0;
    int n = 0;          // attempts in the bin
    int success_n = 0;  // successful attempts in the bin
    double mean_effort = 0.0;
    double sd_effort = 0.0;  // population (divide by n) convention
};

struct EffortCurve {
    std::vector<EffortBin> bins;  // sorted by size
    std::string effort_kind;
};

/// Per-size mean and standard deviation of effort. All records must share
/// one effort kind (std::invalid_argument otherwise — filter first). With
/// successful_only, failed attempts are dropped from the bins entirely.
EffortCurve effort_curve(std::span<const AttemptRecord> records,
                         bool successful_only);

struct SuccessRow {
    std::int64_t size = 0;
    int attempts = 0;
    int solved = 0;
    double fraction = 0.0;
};

/// Solved fraction per exact problem size. Sizes without attempts are
/// absent, never imputed.
std::vector<SuccessRow> success_curve(std::span<const AttemptRecord> records);

struct PeakDiagnostics {
    std::int64_t peak_size = 0;
    double peak_mean_effort = 0.0;
    bool post_peak_decline = false;
    int bins_after = 0;
};

/// Peak = argmax of per-bin mean effort (smallest size on ties). The decline
/// flag is set iff at least min_bins_after bins lie beyond the peak and every
/// one of them stays below the peak mean.
PeakDiagnostics detect_peak(const EffortCurve& curve, int min_bins_after = 2);

struct ModelReport {
    std::string model;        // model name, suffixed "#kind" if a model mixes kinds
    std::string effort_kind;
    std::optional<LinearFit> fit;       // successful attempts only
    EffortCurve effort_all;
    EffortCurve effort_successful;
    std::vector<SuccessRow> success;
    std::optional<PeakDiagnostics> peak;  // over the successful-only curve
    std::vector<FitPoint> successful_points;  // raw points behind fit and scatter
};

struct ScalingReport {
    std::vector<ModelReport> models;  // sorted by report name
};

/// Pure function of the records: token- and latency-based records are never
/// pooled; a model reporting both kinds yields one report per kind.
ScalingReport analyze(std::span<const AttemptRecord> records);

std::string report_to_json(const ScalingReport& report);

enum class ExportFormat : unsigned {
    Csv = 1u << 0,
    Svg = 1u << 1,
};
constexpr ExportFormat operator|(ExportFormat a, ExportFormat b) {
    return static_cast<ExportFormat>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr bool has_format(ExportFormat set, ExportFormat f) {
    return (static_cast<unsigned>(set) & static_cast<unsigned>(f)) != 0;
}

/// Writes CSV tables and SVG plots under out_dir; byte-identical for
/// identical reports. CSV headers are fixed:
///   effort curves  size,n,success_n,mean_effort,sd_effort,effort_kind
///   fits           model,slope,intercept,r_squared,n
///   success        size,attempts,solved,fraction
/// Returns the paths written. Throws std::runtime_error on I/O failure.
std::vector<std::string> export_report(const ScalingReport& report,
                                       const std::string& out_dir,
                                       ExportFormat formats);

}  // namespace tents
