#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carve/config.hpp"
#include "carve/feature_model.hpp"
#include "carve/lang_module.hpp"
#include "carve/results.hpp"
#include "carve/text.hpp"

namespace carve::engine {

struct FileOptions {
    std::string tag = "///";
    bool emit_markers = true;
};

/// One text replacement over the half-open character range [from, to).
/// Whole-line granularity is expressed as col 0 on both ends. Exactly one
/// of the two forms applies:
///   lines          replacement emitted as complete lines
///   inline_splice  text spliced between the kept head and tail of a line
struct Edit {
    TextPos from;
    TextPos to;
    std::vector<std::string> lines;
    std::optional<std::string> inline_splice;
};

/// Applies sorted, non-overlapping edits. `verbatim_lines`, when given,
/// receives the number of input lines no edit touched (they pass through
/// byte for byte, line terminators included).
SourceText apply_edits(const SourceText& src, std::vector<Edit> edits,
                       long* verbatim_lines = nullptr);

struct FileOutcome {
    SourceText output;
    FileResult result;
};

/// Debloats one file in memory. Never throws for content problems: any
/// structural or analysis error yields a diagnostic and the unmodified
/// input as output, so a broken file is copied rather than mangled.
FileOutcome debloat_file(const SourceText& input, const std::string& path,
                         const model::RemovalSet& removal,
                         const lang::LanguageModule& lang, const FileOptions& opts);

/// Checks one file without editing. Continues past errors, fires nothing,
/// and adds lint-only findings (suspicious tagged text, unknown features,
/// replacement blocks on non-segment mappings).
std::vector<Diagnostic> lint_file(const SourceText& input, const std::string& path,
                                  const config::DebloatConfig& config,
                                  const lang::LanguageModule& lang);

struct TreeOptions {
    bool dry_run = false;
    int jobs = 1;
};

/// Debloats every configured source root into the output root. Files whose
/// names match a configured extension are debloated; everything else is
/// copied byte for byte. Per-file IO problems become IoError diagnostics;
/// only an uncreatable output root throws.
DebloatReport debloat_tree(const config::DebloatConfig& config, const TreeOptions& opts);

/// Lints every matching file under the configured source roots.
std::vector<Diagnostic> lint_tree(const config::DebloatConfig& config);

}  // namespace carve::engine
