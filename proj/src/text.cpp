#include "carve/text.hpp"

namespace carve {

SourceText SourceText::from_bytes(std::string_view bytes) {
    SourceText out;
    size_t at = 0;
    while (at < bytes.size()) {
        size_t nl = bytes.find('\n', at);
        if (nl == std::string_view::npos) {
            out.push_line(std::string(bytes.substr(at)), "");
            break;
        }
        if (nl > at && bytes[nl - 1] == '\r')
            out.push_line(std::string(bytes.substr(at, nl - 1 - at)), "\r\n");
        else
            out.push_line(std::string(bytes.substr(at, nl - at)), "\n");
        at = nl + 1;
    }
    return out;
}

std::string SourceText::to_bytes() const {
    std::string out;
    for (size_t i = 0; i < lines_.size(); ++i) {
        out += lines_[i];
        out += endings_[i];
    }
    return out;
}

void SourceText::push_line(std::string text, std::string ending) {
    lines_.push_back(std::move(text));
    endings_.push_back(std::move(ending));
}

std::string_view leading_whitespace(std::string_view line) {
    size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return line.substr(0, i);
}

std::string_view trim(std::string_view s) {
    size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    size_t e = s.size();
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace carve
