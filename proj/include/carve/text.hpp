#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace carve {

// Zero-based (line, byte column) position within a file.
struct TextPos {
    int line = 0;
    int col = 0;
    auto operator<=>(const TextPos&) const = default;
};

// Inclusive span of text between two positions.
struct Extent {
    TextPos start;
    TextPos end;
    bool operator==(const Extent&) const = default;
};

/// A file split into lines with each line's terminator preserved, so that
/// untouched content round-trips byte for byte (LF, CRLF, missing final
/// newline).
class SourceText {
public:
    SourceText() = default;

    static SourceText from_bytes(std::string_view bytes);
    std::string to_bytes() const;

    int line_count() const { return static_cast<int>(lines_.size()); }
    const std::string& line(int i) const { return lines_[static_cast<size_t>(i)]; }
    const std::string& ending(int i) const { return endings_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& lines() const { return lines_; }

    void push_line(std::string text, std::string ending = "\n");

    bool operator==(const SourceText&) const = default;

private:
    std::vector<std::string> lines_;
    std::vector<std::string> endings_;  // "\n", "\r\n", or "" on an unterminated final line
};

std::string_view leading_whitespace(std::string_view line);
std::string_view trim(std::string_view s);
bool is_blank(std::string_view s);

}  // namespace carve
