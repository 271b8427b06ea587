#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace carve {

enum class Severity { Warning, Error };

enum class DiagCode {
    // mapping structure
    MalformedMapping,
    UnterminatedSegment,
    StrayTerminator,
    StrayReplacementDelim,
    UnbalancedReplacementDelims,
    NestedSegment,
    ReplacementOnNonSegment,
    SuspiciousTaggedText,
    UnknownFeatureInMapping,
    ConstructCrossesSegment,
    // language analysis
    NothingToMap,
    UnterminatedLiteral,
    UnterminatedComment,
    UnbalancedBraces,
    UnterminatedConstruct,
    // configuration
    UnknownFeature,
    UnregisteredLanguage,
    MissingSourceRoot,
    OutputOverlapsSource,
    // filesystem
    IoError,
};

/// One reportable problem, addressed to a file and a 1-based line
/// (line 0 means the diagnostic concerns the file or config as a whole).
struct Diagnostic {
    Severity severity = Severity::Error;
    DiagCode code = DiagCode::IoError;
    std::string file;
    int line = 0;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

std::string_view to_string(Severity s);
std::string_view to_string(DiagCode c);
bool severity_from_string(std::string_view s, Severity& out);
bool diag_code_from_string(std::string_view s, DiagCode& out);

// "path:line: severity: Code: message"
std::string format_diagnostic(const Diagnostic& d);

}  // namespace carve
