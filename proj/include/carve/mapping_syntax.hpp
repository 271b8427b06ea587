#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace carve::syntax {

/// How a fired mapping removes code.
///   FileExplicit    ([A]...[Z]!)  the whole file
///   SegmentExplicit ([A]...[Z]~)  every line to the next lone terminator
///   Implicit        ([A]...[Z])   the syntactic construct that follows
enum class MappingKind { FileExplicit, SegmentExplicit, Implicit };

enum class TokenKind {
    Plain,             // no tag prefix; ordinary source text
    Open,              // feature list plus optional operator
    Terminator,        // tag followed by a lone '~'
    ReplacementDelim,  // tag followed by a lone '^'
    TaggedText,        // tag followed by anything else (replacement content)
    Malformed,         // tag plus a feature list that does not parse
};

/// Classification of a single source line against the configured tag.
struct LineToken {
    TokenKind kind = TokenKind::Plain;
    MappingKind mapping = MappingKind::Implicit;  // meaningful when kind == Open
    std::vector<std::string> features;            // meaningful when kind == Open
    std::string text;                             // tag-stripped content for TaggedText
    std::string error;                            // reason when kind == Malformed
};

/// Feature names draw from [A-Za-z0-9_]+.
bool is_valid_feature_name(std::string_view name);

/// Total, strictly line-local classification. Never inspects neighbours.
LineToken classify_line(std::string_view line, std::string_view tag);

/// Removes the leading whitespace-plus-tag prefix exactly once; the rest of
/// the line is preserved byte for byte. Precondition: the line carries the tag.
std::string strip_tag(std::string_view line, std::string_view tag);

}  // namespace carve::syntax
