#include "carve/diagnostics.hpp"

#include <array>
#include <utility>

namespace carve {

namespace {

constexpr std::array<std::pair<DiagCode, std::string_view>, 20> kCodeNames{{
    {DiagCode::MalformedMapping, "MalformedMapping"},
    {DiagCode::UnterminatedSegment, "UnterminatedSegment"},
    {DiagCode::StrayTerminator, "StrayTerminator"},
    {DiagCode::StrayReplacementDelim, "StrayReplacementDelim"},
    {DiagCode::UnbalancedReplacementDelims, "UnbalancedReplacementDelims"},
    {DiagCode::NestedSegment, "NestedSegment"},
    {DiagCode::ReplacementOnNonSegment, "ReplacementOnNonSegment"},
    {DiagCode::SuspiciousTaggedText, "SuspiciousTaggedText"},
    {DiagCode::UnknownFeatureInMapping, "UnknownFeatureInMapping"},
    {DiagCode::ConstructCrossesSegment, "ConstructCrossesSegment"},
    {DiagCode::NothingToMap, "NothingToMap"},
    {DiagCode::UnterminatedLiteral, "UnterminatedLiteral"},
    {DiagCode::UnterminatedComment, "UnterminatedComment"},
    {DiagCode::UnbalancedBraces, "UnbalancedBraces"},
    {DiagCode::UnterminatedConstruct, "UnterminatedConstruct"},
    {DiagCode::UnknownFeature, "UnknownFeature"},
    {DiagCode::UnregisteredLanguage, "UnregisteredLanguage"},
    {DiagCode::MissingSourceRoot, "MissingSourceRoot"},
    {DiagCode::OutputOverlapsSource, "OutputOverlapsSource"},
    {DiagCode::IoError, "IoError"},
}};

}  // namespace

std::string_view to_string(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

std::string_view to_string(DiagCode c) {
    for (const auto& [code, name] : kCodeNames)
        if (code == c) return name;
    return "Unknown";
}

bool severity_from_string(std::string_view s, Severity& out) {
    if (s == "error") { out = Severity::Error; return true; }
    if (s == "warning") { out = Severity::Warning; return true; }
    return false;
}

bool diag_code_from_string(std::string_view s, DiagCode& out) {
    for (const auto& [code, name] : kCodeNames)
        if (name == s) { out = code; return true; }
    return false;
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.file;
    if (d.line > 0) {
        out += ":";
        out += std::to_string(d.line);
    }
    out += ": ";
    out += to_string(d.severity);
    out += ": ";
    out += to_string(d.code);
    out += ": ";
    out += d.message;
    return out;
}

}  // namespace carve
