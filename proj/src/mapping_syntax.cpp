#include "carve/mapping_syntax.hpp"

#include "carve/text.hpp"

namespace carve::syntax {

namespace {

bool is_name_char(char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
           (ch >= '0' && ch <= '9') || ch == '_';
}

LineToken malformed(std::string reason) {
    LineToken t;
    t.kind = TokenKind::Malformed;
    t.error = std::move(reason);
    return t;
}

// body starts with '[' and has no surrounding whitespace.
LineToken parse_feature_list(std::string_view body) {
    LineToken t;
    t.kind = TokenKind::Open;
    size_t at = 0;
    while (at < body.size() && body[at] == '[') {
        size_t close = body.find(']', at + 1);
        if (close == std::string_view::npos)
            return malformed("feature name is missing its closing ']'");
        std::string_view name = body.substr(at + 1, close - at - 1);
        if (name.empty())
            return malformed("empty feature name");
        if (!is_valid_feature_name(name))
            return malformed("feature name may only contain letters, digits and '_'");
        t.features.emplace_back(name);
        at = close + 1;
    }
    t.mapping = MappingKind::Implicit;
    if (at < body.size()) {
        char op = body[at];
        if (op == '!')
            t.mapping = MappingKind::FileExplicit;
        else if (op == '~')
            t.mapping = MappingKind::SegmentExplicit;
        else
            return malformed("unexpected character after feature list");
        ++at;
        if (at != body.size())
            return malformed("trailing content after mapping operator");
    }
    return t;
}

}  // namespace

bool is_valid_feature_name(std::string_view name) {
    if (name.empty()) return false;
    for (char ch : name)
        if (!is_name_char(ch)) return false;
    return true;
}

LineToken classify_line(std::string_view line, std::string_view tag) {
    std::string_view after_ws = line.substr(leading_whitespace(line).size());
    if (tag.empty() || after_ws.substr(0, tag.size()) != tag)
        return LineToken{};  // Plain

    std::string_view rest = after_ws.substr(tag.size());
    std::string_view body = trim(rest);
    if (body == "~") {
        LineToken t;
        t.kind = TokenKind::Terminator;
        return t;
    }
    if (body == "^") {
        LineToken t;
        t.kind = TokenKind::ReplacementDelim;
        return t;
    }
    if (!body.empty() && body.front() == '[')
        return parse_feature_list(body);

    LineToken t;
    t.kind = TokenKind::TaggedText;
    t.text = std::string(rest);
    return t;
}

std::string strip_tag(std::string_view line, std::string_view tag) {
    std::string_view after_ws = line.substr(leading_whitespace(line).size());
    if (after_ws.substr(0, tag.size()) != tag)
        return std::string(line);
    return std::string(after_ws.substr(tag.size()));
}

}  // namespace carve::syntax
