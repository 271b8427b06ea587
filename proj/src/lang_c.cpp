#include "carve/lang_c.hpp"

#include <array>
#include <cassert>

namespace carve::lang {

namespace {

bool is_word_char(char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
           (ch >= '0' && ch <= '9') || ch == '_';
}

size_t first_non_ws(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return i;
}

/// Character-level walk over significant code. State is assumed clean at the
/// starting position (callers never start inside a literal or block comment).
class CharScanner {
public:
    CharScanner(const SourceText& src, std::string_view tag, TextPos from)
        : src_(&src), tag_(tag), line_(from.line), col_(from.col) {}

    std::optional<SigChar> next() {
        for (;;) {
            if (line_ >= src_->line_count()) {
                if (literal_ != 0)
                    throw ScanError(DiagCode::UnterminatedLiteral, literal_start_,
                                    "literal is not terminated before end of file");
                if (in_block_comment_)
                    throw ScanError(DiagCode::UnterminatedComment, comment_start_,
                                    "block comment is not terminated before end of file");
                return std::nullopt;
            }
            const std::string& text = src_->line(line_);
            if (col_ == 0 && literal_ == 0 && !in_block_comment_) {
                size_t nw = first_non_ws(text);
                std::string_view rest = std::string_view(text).substr(nw);
                if (!rest.empty() && rest.front() == '#') {
                    skip_directive();
                    continue;
                }
                if (!tag_.empty() && rest.substr(0, tag_.size()) == tag_) {
                    ++line_;
                    continue;
                }
            }
            if (col_ >= static_cast<int>(text.size())) {
                ++line_;
                col_ = 0;
                escape_ = false;  // a dangling backslash splices the newline
                continue;
            }
            char ch = text[static_cast<size_t>(col_)];
            if (in_block_comment_) {
                if (ch == '*' && col_ + 1 < static_cast<int>(text.size()) &&
                    text[static_cast<size_t>(col_) + 1] == '/') {
                    in_block_comment_ = false;
                    col_ += 2;
                } else {
                    ++col_;
                }
                continue;
            }
            if (literal_ != 0) {
                if (escape_)
                    escape_ = false;
                else if (ch == '\\')
                    escape_ = true;
                else if (ch == literal_)
                    literal_ = 0;
                ++col_;
                continue;
            }
            if (ch == '/' && col_ + 1 < static_cast<int>(text.size())) {
                char nxt = text[static_cast<size_t>(col_) + 1];
                if (nxt == '/') {
                    ++line_;
                    col_ = 0;
                    continue;
                }
                if (nxt == '*') {
                    in_block_comment_ = true;
                    comment_start_ = {line_, col_};
                    col_ += 2;
                    continue;
                }
            }
            if (ch == '"' || ch == '\'') {
                literal_ = ch;
                literal_start_ = {line_, col_};
                ++col_;
                continue;
            }
            SigChar out{{line_, col_}, ch};
            ++col_;
            return out;
        }
    }

private:
    void skip_directive() {
        while (line_ < src_->line_count()) {
            const std::string& text = src_->line(line_);
            ++line_;
            if (text.empty() || text.back() != '\\') break;
        }
        col_ = 0;
    }

    const SourceText* src_;
    std::string_view tag_;
    int line_;
    int col_;
    bool in_block_comment_ = false;
    char literal_ = 0;
    bool escape_ = false;
    TextPos literal_start_;
    TextPos comment_start_;
};

struct Token {
    enum class Kind { Word, Sym, End };
    Kind kind = Kind::End;
    std::string text;
    char sym = 0;
    TextPos pos;
    TextPos end;

    bool is_word(std::string_view w) const { return kind == Kind::Word && text == w; }
    bool is_sym(char c) const { return kind == Kind::Sym && sym == c; }
    bool at_end() const { return kind == Kind::End; }
};

/// Token assembly over CharScanner. Copyable, which makes lookahead cheap.
class TokenStream {
public:
    TokenStream(const SourceText& src, std::string_view tag, TextPos from)
        : chars_(src, tag, from) {}

    Token next() {
        if (buffered_) {
            Token t = *buffered_;
            buffered_.reset();
            return t;
        }
        std::optional<SigChar> c = pending_ ? pending_ : chars_.next();
        pending_.reset();
        while (c && (c->ch == ' ' || c->ch == '\t' || c->ch == '\f' || c->ch == '\v' ||
                     c->ch == '\r')) {
            c = chars_.next();
        }
        if (!c) return Token{};
        Token t;
        t.pos = c->pos;
        t.end = c->pos;
        if (is_word_char(c->ch)) {
            t.kind = Token::Kind::Word;
            t.text.push_back(c->ch);
            for (;;) {
                std::optional<SigChar> n = chars_.next();
                if (n && is_word_char(n->ch) && n->pos.line == t.end.line &&
                    n->pos.col == t.end.col + 1) {
                    t.text.push_back(n->ch);
                    t.end = n->pos;
                } else {
                    pending_ = n;
                    break;
                }
            }
        } else {
            t.kind = Token::Kind::Sym;
            t.sym = c->ch;
        }
        return t;
    }

    const Token& peek() {
        if (!buffered_) buffered_ = next();
        return *buffered_;
    }

private:
    CharScanner chars_;
    std::optional<SigChar> pending_;
    std::optional<Token> buffered_;
};

bool is_opener(char c) { return c == '(' || c == '[' || c == '{'; }
bool is_closer(char c) { return c == ')' || c == ']' || c == '}'; }

/// Consumes tokens until the group opened by an already-consumed opener
/// closes. Returns the closer's position.
TextPos skip_group(TokenStream& lex, TextPos open_pos) {
    int depth = 1;
    for (;;) {
        Token t = lex.next();
        if (t.at_end())
            throw ScanError(DiagCode::UnbalancedBraces, open_pos,
                            "bracket group is not closed before end of file");
        if (t.kind != Token::Kind::Sym) continue;
        if (is_opener(t.sym)) ++depth;
        if (is_closer(t.sym) && --depth == 0) return t.pos;
    }
}

const std::array<std::string_view, 11> kControlWords{
    "while", "for", "do", "switch", "return", "goto",
    "break", "continue", "sizeof", "asm", "_Static_assert",
};

bool is_control_word(std::string_view w) {
    for (std::string_view k : kControlWords)
        if (k == w) return true;
    return false;
}

bool is_terminator_word(std::string_view w) {
    return w == "break" || w == "return" || w == "goto" || w == "continue";
}

/// Extent of a statement starting at the stream's current token.
/// Ends at the first ';' outside bracket groups; loop/selection statements
/// with a braced body end at that body's '}'.
Extent statement_extent(TokenStream lex, TextPos anchor) {
    Token first = lex.peek();
    if (first.is_sym('{')) {
        lex.next();
        TextPos close = skip_group(lex, first.pos);
        return {anchor, close};
    }
    bool brace_terminates =
        first.kind == Token::Kind::Word &&
        (first.text == "while" || first.text == "for" || first.text == "switch");
    int depth = 0;
    for (;;) {
        Token t = lex.next();
        if (t.at_end())
            throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                            "statement has no terminating ';'");
        if (t.kind != Token::Kind::Sym) continue;
        if (t.is_sym(';') && depth == 0) return {anchor, t.pos};
        if (is_opener(t.sym)) {
            ++depth;
        } else if (is_closer(t.sym)) {
            if (depth == 0)
                throw ScanError(DiagCode::UnterminatedConstruct, t.pos,
                                "statement runs into an enclosing close bracket");
            --depth;
            if (depth == 0 && t.sym == '}' && brace_terminates) return {anchor, t.pos};
        }
    }
}

/// Extent end of a conditional body whose first token is next in the stream.
/// Returns the body's end position, plus the brace positions when braced.
struct BodyShape {
    TextPos end;
    bool braced = false;
    TextPos open;   // valid when braced
};

BodyShape body_shape(TokenStream& lex, TextPos header_pos) {
    Token t = lex.peek();
    if (t.at_end())
        throw ScanError(DiagCode::UnterminatedConstruct, header_pos,
                        "conditional header has no body");
    if (t.is_sym('{')) {
        lex.next();
        TextPos close = skip_group(lex, t.pos);
        return {close, true, t.pos};
    }
    Extent e = statement_extent(lex, t.pos);
    return {e.end, false, {}};
}

class CLanguageModule final : public LanguageModule {
public:
    std::string_view id() const override { return "c"; }

    std::vector<std::string> default_extensions() const override {
        return {".c", ".h", ".cc", ".cpp", ".hpp"};
    }

    std::pair<ConstructKind, TextPos> classify_construct(const SourceText& src,
                                                         std::string_view tag,
                                                         int mapping_line) const override {
        TokenStream lex(src, tag, {mapping_line + 1, 0});
        Token first = lex.next();
        if (first.at_end())
            throw ScanError(DiagCode::NothingToMap, {mapping_line, 0},
                            "no code follows the mapping");
        TextPos anchor = first.pos;
        if (first.kind == Token::Kind::Sym && is_closer(first.sym))
            throw ScanError(DiagCode::NothingToMap, anchor,
                            "mapping is followed by a closing bracket, not a construct");
        if (first.kind == Token::Kind::Word) {
            const std::string& w = first.text;
            if (w == "case" || w == "default") return {ConstructKind::SwitchCase, anchor};
            if (w == "if") return {ConstructKind::IfBranch, anchor};
            if (w == "else") {
                return {lex.peek().is_word("if") ? ConstructKind::ElseIfBranch
                                                 : ConstructKind::ElseBranch,
                        anchor};
            }
            if (is_control_word(w)) return {ConstructKind::Statement, anchor};
            if (w == "struct" || w == "union" || w == "enum" || w == "typedef") {
                // Probe for a braced type body before any ';', '=' or
                // parameter list (the latter means a function declarator).
                TokenStream probe = lex;
                bool function_possible = false;
                for (;;) {
                    Token t = probe.next();
                    if (t.at_end() || t.is_sym(';') || t.is_sym('='))
                        return {ConstructKind::Statement, anchor};
                    if (t.is_sym('{')) return {ConstructKind::StructDef, anchor};
                    if (t.is_sym('(')) {
                        function_possible = true;
                        break;
                    }
                }
                if (!function_possible) return {ConstructKind::Statement, anchor};
            }
        }
        // Function definition heuristic: a parameter list whose next
        // significant token is '{'. Everything else is a statement.
        TokenStream scan(src, tag, {mapping_line + 1, 0});
        scan.next();  // re-anchor past the first token
        for (Token t = first;;) {
            if (t.at_end() || t.is_sym(';') || t.is_sym('=') || t.is_sym('{'))
                return {ConstructKind::Statement, anchor};
            if (t.is_sym('(')) {
                skip_group(scan, t.pos);
                if (scan.peek().is_sym('{')) return {ConstructKind::FunctionDef, anchor};
            }
            t = scan.next();
        }
    }

    Extent construct_extent(const SourceText& src, std::string_view tag,
                            ConstructKind kind, TextPos anchor) const override {
        TokenStream lex(src, tag, anchor);
        switch (kind) {
            case ConstructKind::Statement:
                return statement_extent(lex, anchor);
            case ConstructKind::FunctionDef: {
                TextPos open = seek_open_brace(lex, anchor);
                TokenStream body = lex;
                return {anchor, skip_group(body, open)};
            }
            case ConstructKind::StructDef: {
                TextPos open = seek_open_brace(lex, anchor);
                skip_group(lex, open);
                for (;;) {
                    Token t = lex.next();
                    if (t.at_end())
                        throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                                        "type definition has no trailing ';'");
                    if (t.is_sym(';')) return {anchor, t.pos};
                    if (t.kind == Token::Kind::Sym && is_opener(t.sym)) skip_group(lex, t.pos);
                }
            }
            case ConstructKind::IfBranch: {
                expect_word(lex, "if", anchor);
                skip_condition(lex, anchor);
                return {anchor, body_shape(lex, anchor).end};
            }
            case ConstructKind::ElseIfBranch: {
                expect_word(lex, "else", anchor);
                expect_word(lex, "if", anchor);
                skip_condition(lex, anchor);
                return {anchor, body_shape(lex, anchor).end};
            }
            case ConstructKind::ElseBranch: {
                expect_word(lex, "else", anchor);
                return {anchor, body_shape(lex, anchor).end};
            }
            case ConstructKind::SwitchCase: {
                TextPos colon = label_colon_from(lex, anchor);
                TextPos last = colon;
                int depth = 0;
                for (;;) {
                    const Token& t = lex.peek();
                    if (t.at_end())
                        throw ScanError(DiagCode::UnbalancedBraces, anchor,
                                        "switch body does not close before end of file");
                    if (depth == 0 &&
                        (t.is_word("case") || t.is_word("default") || t.is_sym('}')))
                        break;
                    Token got = lex.next();
                    if (got.is_sym('{')) ++depth;
                    if (got.is_sym('}')) --depth;
                    last = got.end;
                }
                return {anchor, last};
            }
        }
        throw ScanError(DiagCode::UnterminatedConstruct, anchor, "unreachable construct kind");
    }

    Extent enclosing_switch(const SourceText& src, std::string_view tag,
                            TextPos anchor) const override {
        TokenStream lex(src, tag, {0, 0});
        struct Frame {
            TextPos open;
            bool is_switch;
        };
        std::vector<Frame> stack;
        bool pending_switch = false;
        for (;;) {
            Token t = lex.next();
            if (t.at_end()) break;
            if (t.kind == Token::Kind::Word) {
                pending_switch = t.text == "switch";
                continue;
            }
            if (t.is_sym('(')) {
                skip_group(lex, t.pos);
                continue;
            }
            if (t.is_sym('{')) {
                stack.push_back({t.pos, pending_switch});
                pending_switch = false;
                continue;
            }
            if (t.is_sym('}')) {
                if (!stack.empty()) {
                    Frame f = stack.back();
                    stack.pop_back();
                    if (f.is_switch && f.open < anchor && anchor < t.pos)
                        return {f.open, t.pos};
                }
                continue;
            }
            pending_switch = false;
        }
        throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                        "mapped case label is not inside a switch");
    }

    RemovalPlan plan_switch_case(const SourceText& src, std::string_view tag,
                                 const Extent& case_extent, const Extent& sw,
                                 const std::set<int>& fired_label_lines) const override {
        // Depth-0 labels of the switch that sit above this case.
        std::vector<TextPos> above;
        {
            TokenStream lex(src, tag, pos_after(src, sw.start));
            int depth = 0;
            for (;;) {
                Token t = lex.next();
                if (t.at_end() || t.pos >= sw.end) break;
                if (t.is_sym('{')) ++depth;
                else if (t.is_sym('}')) --depth;
                else if (depth == 0 && (t.is_word("case") || t.is_word("default")) &&
                         t.pos < case_extent.start)
                    above.push_back(t.pos);
            }
        }
        for (TextPos label : above) {
            if (fired_label_lines.count(label.line)) continue;
            if (!region_has_terminator(src, tag, label, case_extent.start))
                return {RemovalPlan::Action::LabelOnly,
                        label_extent(src, tag, case_extent.start), true};
        }
        return {RemovalPlan::Action::WholeExtent, case_extent, true};
    }

    RemovalPlan plan_conditional(const SourceText& src, std::string_view tag,
                                 ConstructKind kind, const Extent& extent) const override {
        if (kind == ConstructKind::ElseBranch)
            return {RemovalPlan::Action::WholeExtent, extent, true};
        TokenStream after(src, tag, pos_after(src, extent.end));
        if (!after.next().is_word("else"))
            return {RemovalPlan::Action::WholeExtent, extent, true};

        TokenStream lex(src, tag, extent.start);
        if (kind == ConstructKind::ElseIfBranch) expect_word(lex, "else", extent.start);
        expect_word(lex, "if", extent.start);
        skip_condition(lex, extent.start);
        TextPos body_start = lex.peek().pos;
        BodyShape body = body_shape(lex, extent.start);
        if (body.braced)
            return {RemovalPlan::Action::EmptyBody, Extent{body.open, body.end}, true};
        return {RemovalPlan::Action::EmptyBody, Extent{body_start, body.end}, false};
    }

    long count_functions(const SourceText& src, std::string_view tag) const override {
        TokenStream lex(src, tag, {0, 0});
        long count = 0;
        std::string leading;
        bool after_rparen = false;
        bool after_equals = false;
        for (;;) {
            Token t = lex.next();
            if (t.at_end()) return count;
            if (t.kind == Token::Kind::Word) {
                if (leading.empty()) leading = t.text;
                after_rparen = false;
                continue;
            }
            switch (t.sym) {
                case '(':
                case '[':
                    skip_group(lex, t.pos);
                    after_rparen = t.sym == '(';
                    break;
                case '=':
                    after_equals = true;
                    after_rparen = false;
                    break;
                case ';':
                    leading.clear();
                    after_rparen = false;
                    after_equals = false;
                    break;
                case '{': {
                    bool descend = leading == "extern" || leading == "namespace";
                    bool is_function = after_rparen && !after_equals &&
                                       !is_control_word(leading) && leading != "if" &&
                                       leading != "else" && leading != "typedef" &&
                                       leading != "case" && leading != "default";
                    if (is_function) {
                        ++count;
                        skip_group(lex, t.pos);
                    } else if (!descend) {
                        skip_group(lex, t.pos);
                    }
                    leading.clear();
                    after_rparen = false;
                    after_equals = false;
                    break;
                }
                case '}':
                    // Close of a block we descended into.
                    leading.clear();
                    after_rparen = false;
                    after_equals = false;
                    break;
                default:
                    after_rparen = false;
                    break;
            }
        }
    }

private:
    static TextPos pos_after(const SourceText& src, TextPos p) {
        if (p.col + 1 < static_cast<int>(src.line(p.line).size())) return {p.line, p.col + 1};
        return {p.line + 1, 0};
    }

    static void expect_word(TokenStream& lex, std::string_view w, TextPos anchor) {
        Token t = lex.next();
        if (!t.is_word(w))
            throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                            "expected '" + std::string(w) + "' in conditional header");
    }

    static void skip_condition(TokenStream& lex, TextPos anchor) {
        Token t = lex.next();
        if (!t.is_sym('('))
            throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                            "conditional header is missing its '('");
        skip_group(lex, t.pos);
    }

    static TextPos seek_open_brace(TokenStream& lex, TextPos anchor) {
        for (;;) {
            Token t = lex.next();
            if (t.at_end())
                throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                                "definition has no '{'");
            if (t.is_sym('{')) return t.pos;
            if (t.is_sym('(') || t.is_sym('[')) skip_group(lex, t.pos);
        }
    }

    // Scans a case/default label starting at `anchor` up to its ':'.
    TextPos label_colon_from(TokenStream& lex, TextPos anchor) const {
        Token kw = lex.next();
        if (!kw.is_word("case") && !kw.is_word("default"))
            throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                            "expected a case or default label");
        int ternary = 0;
        for (;;) {
            Token t = lex.next();
            if (t.at_end())
                throw ScanError(DiagCode::UnterminatedConstruct, anchor,
                                "case label has no ':'");
            if (t.is_sym('?')) ++ternary;
            else if (t.is_sym(':')) {
                if (ternary == 0) return t.pos;
                --ternary;
            } else if (t.kind == Token::Kind::Sym && is_opener(t.sym)) {
                skip_group(lex, t.pos);
            }
        }
    }

    Extent label_extent(const SourceText& src, std::string_view tag, TextPos start) const {
        TokenStream lex(src, tag, start);
        return {start, label_colon_from(lex, start)};
    }

    // True when the statements between `from` (a label) and `until` contain an
    // unconditional break/return/goto/continue at case-body depth.
    bool region_has_terminator(const SourceText& src, std::string_view tag, TextPos from,
                               TextPos until) const {
        TokenStream lex(src, tag, from);
        int depth = 0;
        for (;;) {
            Token t = lex.next();
            if (t.at_end() || t.pos >= until) return false;
            if (t.is_sym('{')) ++depth;
            else if (t.is_sym('}')) --depth;
            else if (depth == 0 && t.kind == Token::Kind::Word && is_terminator_word(t.text))
                return true;
        }
    }

};

}  // namespace

std::string_view to_string(ConstructKind k) {
    switch (k) {
        case ConstructKind::Statement: return "Statement";
        case ConstructKind::FunctionDef: return "FunctionDef";
        case ConstructKind::StructDef: return "StructDef";
        case ConstructKind::SwitchCase: return "SwitchCase";
        case ConstructKind::IfBranch: return "IfBranch";
        case ConstructKind::ElseIfBranch: return "ElseIfBranch";
        case ConstructKind::ElseBranch: return "ElseBranch";
    }
    return "?";
}

std::vector<SigChar> scan_code(const SourceText& src, std::string_view tag, TextPos from) {
    CharScanner chars(src, tag, from);
    std::vector<SigChar> out;
    while (auto c = chars.next()) out.push_back(*c);
    return out;
}

TextPos match_brace(const SourceText& src, std::string_view tag, TextPos open) {
    CharScanner chars(src, tag, open);
    std::optional<SigChar> first = chars.next();
    if (!first || first->ch != '{' || first->pos != open)
        throw ScanError(DiagCode::UnbalancedBraces, open, "position is not an open brace");
    int depth = 1;
    while (auto c = chars.next()) {
        if (c->ch == '{') ++depth;
        if (c->ch == '}' && --depth == 0) return c->pos;
    }
    throw ScanError(DiagCode::UnbalancedBraces, open,
                    "brace is not closed before end of file");
}

const LanguageModule& c_language() {
    static const CLanguageModule module;
    return module;
}

const LanguageModule* find_language(std::string_view id) {
    if (id == c_language().id()) return &c_language();
    return nullptr;
}

std::vector<std::string_view> registered_languages() { return {c_language().id()}; }

}  // namespace carve::lang
