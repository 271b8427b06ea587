#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "carve/diagnostics.hpp"
#include "carve/feature_model.hpp"

namespace carve::config {

/// A parsed debloating configuration.
///
/// File grammar:
///   key = value lines first (source is repeatable, the rest are not),
///   then a [features] section listing the hierarchy with 4-space indents,
///   then a [debloat] section naming the features to remove.
///   Blank lines and lines whose first non-blank character is '#' are ignored.
struct DebloatConfig {
    std::vector<std::string> sources;
    std::string output_root = "debloated_out";
    std::string language = "c";
    std::string tag = "///";
    bool emit_markers = true;
    std::set<std::string> extensions;
    model::FeatureHierarchy hierarchy;
    std::set<std::string> debloat;

    bool operator==(const DebloatConfig&) const = default;
};

struct ConfigError : std::runtime_error {
    enum class Kind { Syntax, DuplicateFeature, DanglingIndent, MissingSection };

    ConfigError(Kind kind_, int line_, const std::string& what_)
        : std::runtime_error(what_), kind(kind_), line(line_) {}

    Kind kind;
    int line;  // 1-based; 0 means the file as a whole
};

std::string_view to_string(ConfigError::Kind kind);

/// Parses configuration text. Throws ConfigError. When no extensions key is
/// present the registered language's defaults are used.
DebloatConfig parse_config(std::string_view text);

/// Renders a configuration such that parse_config(render_config(c)) == c.
std::string render_config(const DebloatConfig& config);

/// Environment checks that need the filesystem or the language registry:
/// unregistered language, missing source roots, an output root that equals or
/// sits inside a source root, and debloat names absent from the hierarchy.
/// `config_path` is used as the diagnostic file name.
std::vector<Diagnostic> validate_config(const DebloatConfig& config,
                                        const std::string& config_path);

}  // namespace carve::config
