#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carve/results.hpp"

namespace carve::report {

/// Exact sums over a set of file results. Function totals sum the files that
/// have counts and stay absent when no file does.
struct Totals {
    long files = 0;
    long loc_before = 0;
    long loc_after = 0;
    long lines_removed = 0;
    long lines_inserted = 0;
    std::optional<long> functions_before;
    std::optional<long> functions_after;
    MappingCounts found;
    MappingCounts fired;
    long diagnostics = 0;

    bool operator==(const Totals&) const = default;
};

Totals compute_totals(const std::vector<FileResult>& files);

/// Monoid combine: compute_totals(a ++ b) == combine(compute_totals(a),
/// compute_totals(b)).
Totals combine(const Totals& a, const Totals& b);

// Derived metrics; absent when their denominator is empty.
std::optional<double> loc_reduction_pct(const Totals& t);
std::optional<double> function_reduction_pct(const Totals& t);
std::optional<double> mapping_density_per_kloc(const Totals& t);
std::optional<double> per_file_mean_loc_reduction_pct(const std::vector<FileResult>& files);

/// Human-readable report: totals block, one row per file (sorted by path),
/// and a closing diagnostics count.
std::string render_text_report(const DebloatReport& rep);

/// JSON report with stable key order. Contains per-file rows, totals,
/// derived metrics, and every diagnostic.
std::string render_machine_report(const DebloatReport& rep);

/// Inverse of render_machine_report for the file and diagnostic payload
/// (totals and derived metrics are recomputed, never trusted).
/// Throws std::exception subclasses on malformed input.
DebloatReport parse_machine_report(const std::string& json_text);

}  // namespace carve::report
