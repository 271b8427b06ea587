#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carve/diagnostics.hpp"

namespace carve {

/// Mappings broken down by kind.
struct MappingCounts {
    long file = 0;
    long segment = 0;
    long implicit = 0;

    long total() const { return file + segment + implicit; }

    MappingCounts& operator+=(const MappingCounts& o) {
        file += o.file;
        segment += o.segment;
        implicit += o.implicit;
        return *this;
    }

    bool operator==(const MappingCounts&) const = default;
};

/// Outcome of debloating one source file. Paths are relative to the source
/// root the file came from. Function counts are absent when the analyzer
/// could not parse the file well enough to count.
struct FileResult {
    std::string path;
    long loc_before = 0;
    long loc_after = 0;
    long lines_removed = 0;
    long lines_inserted = 0;
    std::optional<long> functions_before;
    std::optional<long> functions_after;
    MappingCounts found;
    MappingCounts fired;
    std::vector<Diagnostic> diagnostics;

    bool operator==(const FileResult&) const = default;
};

/// Everything a debloating run produced, before aggregation.
struct DebloatReport {
    std::vector<FileResult> files;
    std::vector<Diagnostic> global_diagnostics;

    bool operator==(const DebloatReport&) const = default;
};

}  // namespace carve
