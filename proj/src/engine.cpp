#include "carve/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "carve/mapping_syntax.hpp"

namespace carve::engine {

namespace fs = std::filesystem;

namespace {

/// Internal control-flow escape for debloat_file: the file is broken, copy it.
struct Abort {
    DiagCode code;
    int line;  // 0-based
    std::string message;
};

const char* marker_word(lang::ConstructKind kind) {
    return kind == lang::ConstructKind::SwitchCase ? "Case Label" : "Code Block";
}

std::string marker_text(std::string_view indent, std::string_view tag, std::string_view word) {
    std::string out(indent);
    out += tag;
    out += " ";
    out += word;
    out += " Debloated.";
    return out;
}

/// Pushes a removal end past the line break when only whitespace follows it.
TextPos expand_end(const SourceText& src, TextPos last_inclusive) {
    const std::string& t = src.line(last_inclusive.line);
    size_t col = static_cast<size_t>(last_inclusive.col) + 1;
    if (col >= t.size() || is_blank(std::string_view(t).substr(col)))
        return {last_inclusive.line + 1, 0};
    return {last_inclusive.line, static_cast<int>(col)};
}

/// Pulls a removal start back to column 0 when only whitespace precedes it.
TextPos expand_start(const SourceText& src, TextPos first) {
    if (first.col == 0) return first;
    const std::string& t = src.line(first.line);
    if (is_blank(std::string_view(t).substr(0, static_cast<size_t>(first.col))))
        return {first.line, 0};
    return first;
}

bool interior_blank(const SourceText& src, TextPos open, TextPos close) {
    std::string_view first = src.line(open.line);
    if (open.line == close.line)
        return is_blank(first.substr(static_cast<size_t>(open.col) + 1,
                                     static_cast<size_t>(close.col - open.col - 1)));
    if (!is_blank(first.substr(static_cast<size_t>(open.col) + 1))) return false;
    for (int l = open.line + 1; l < close.line; ++l)
        if (!is_blank(src.line(l))) return false;
    return is_blank(std::string_view(src.line(close.line)).substr(0, static_cast<size_t>(close.col)));
}

/// A fired construct may not swallow half of a segment: every segment
/// delimiter line inside the removed region must pair up within it.
void check_extent_segments(const SourceText& src, std::string_view tag, int mapping_line,
                           const Extent& extent) {
    int pending = 0;
    int first_open = -1;
    for (int l = mapping_line + 1; l <= extent.end.line && l < src.line_count(); ++l) {
        syntax::LineToken tk = syntax::classify_line(src.line(l), tag);
        if (tk.kind == syntax::TokenKind::Open &&
            tk.mapping == syntax::MappingKind::SegmentExplicit) {
            if (pending == 0) first_open = l;
            ++pending;
        } else if (tk.kind == syntax::TokenKind::Terminator) {
            if (pending == 0)
                throw Abort{DiagCode::ConstructCrossesSegment, l,
                            "construct removal would cut a segment terminator from its open"};
            --pending;
        }
    }
    if (pending > 0)
        throw Abort{DiagCode::ConstructCrossesSegment, first_open,
                    "segment opens inside the removed construct but does not close there"};
}

bool read_file(const fs::path& p, std::string& out) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return in.good() || in.eof();
}

bool write_file(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    return out.good();
}

}  // namespace

SourceText apply_edits(const SourceText& src, std::vector<Edit> edits, long* verbatim_lines) {
    std::sort(edits.begin(), edits.end(),
              [](const Edit& a, const Edit& b) { return a.from < b.from; });
    const int n = src.line_count();

    if (verbatim_lines) {
        std::vector<char> touched(static_cast<size_t>(n), 0);
        for (const Edit& e : edits) {
            int last = e.to.col > 0 ? e.to.line : e.to.line - 1;
            for (int l = std::max(e.from.line, 0); l <= last && l < n; ++l)
                touched[static_cast<size_t>(l)] = 1;
        }
        *verbatim_lines = static_cast<long>(std::count(touched.begin(), touched.end(), 0));
    }

    std::string out;
    std::string partial;  // output line under construction, not yet terminated
    int line = 0, col = 0;

    auto flush_through = [&](TextPos stop) {
        while (line < stop.line && line < n) {
            const std::string& t = src.line(line);
            partial.append(t, static_cast<size_t>(col), std::string::npos);
            out += partial;
            out += src.ending(line);
            partial.clear();
            ++line;
            col = 0;
        }
        if (line == stop.line && line < n && col < stop.col) {
            const std::string& t = src.line(line);
            int upto = std::min(stop.col, static_cast<int>(t.size()));
            if (upto > col) partial.append(t, static_cast<size_t>(col), static_cast<size_t>(upto - col));
            col = stop.col;
        }
    };

    for (const Edit& e : edits) {
        assert(e.from <= e.to);
        flush_through(e.from);
        if (e.inline_splice) {
            partial += *e.inline_splice;
            line = e.to.line;
            col = e.to.col;
            continue;
        }
        if (e.lines.empty()) {
            // Pure deletion. Mid-line boundaries join the head and the tail.
            line = e.to.line;
            col = e.to.col;
            continue;
        }
        if (!partial.empty() && is_blank(partial)) partial.clear();
        if (!partial.empty()) {
            out += partial;
            out += "\n";
            partial.clear();
        }
        for (const std::string& rep : e.lines) {
            out += rep;
            out += "\n";
        }
        line = e.to.line;
        col = e.to.col;
        if (col > 0 && line < n) {
            // The replacement ends mid-line: restart the tail on a fresh line,
            // keeping the original indentation in front of its first content.
            const std::string& t = src.line(line);
            size_t p = static_cast<size_t>(col);
            while (p < t.size() && (t[p] == ' ' || t[p] == '\t')) ++p;
            if (p < t.size()) {
                partial.assign(leading_whitespace(t));
                col = static_cast<int>(p);
            } else {
                ++line;
                col = 0;
            }
        }
    }
    flush_through({n, 0});
    out += partial;
    return SourceText::from_bytes(out);
}

FileOutcome debloat_file(const SourceText& input, const std::string& path,
                         const model::RemovalSet& removal,
                         const lang::LanguageModule& lang, const FileOptions& opts) {
    FileOutcome oc;
    FileResult& r = oc.result;
    r.path = path;
    r.loc_before = input.line_count();
    try {
        r.functions_before = lang.count_functions(input, opts.tag);
    } catch (const lang::ScanError&) {
    }

    const std::string& tag = opts.tag;
    const int n = input.line_count();
    std::vector<Edit> edits;
    std::set<int> fired_labels;
    int open_segment = -1;  // line of the unfired segment being skipped, -1 when none
    bool file_fired = false;
    int file_fired_line = 0;

    auto classify = [&](int l) { return syntax::classify_line(input.line(l), tag); };
    auto ws_of = [&](int l) { return leading_whitespace(input.line(l)); };

    // Parses the optional replacement block directly under a segment open at
    // `open_line`. Returns the first body line and fills `repl` (tag-stripped)
    // when a block is present.
    auto parse_replacement_block = [&](int open_line, std::vector<std::string>& repl,
                                       bool& has_block) {
        int j = open_line + 1;
        has_block = false;
        if (j >= n || classify(j).kind != syntax::TokenKind::ReplacementDelim) return j;
        has_block = true;
        const int delim_line = j;
        for (++j;; ++j) {
            if (j >= n)
                throw Abort{DiagCode::UnbalancedReplacementDelims, delim_line,
                            "replacement block is never closed"};
            syntax::LineToken tk = classify(j);
            if (tk.kind == syntax::TokenKind::ReplacementDelim) return j + 1;
            if (tk.kind == syntax::TokenKind::Plain)
                throw Abort{DiagCode::UnbalancedReplacementDelims, delim_line,
                            "replacement block is interrupted by a code line"};
            repl.push_back(syntax::strip_tag(input.line(j), tag));
        }
    };

    try {
        int i = 0;
        while (i < n) {
            syntax::LineToken tk = classify(i);
            switch (tk.kind) {
                case syntax::TokenKind::Plain:
                case syntax::TokenKind::TaggedText:
                    ++i;
                    break;
                case syntax::TokenKind::Malformed:
                    throw Abort{DiagCode::MalformedMapping, i, tk.error};
                case syntax::TokenKind::Terminator:
                    if (open_segment < 0)
                        throw Abort{DiagCode::StrayTerminator, i,
                                    "terminator has no open segment"};
                    open_segment = -1;
                    ++i;
                    break;
                case syntax::TokenKind::ReplacementDelim:
                    throw Abort{DiagCode::StrayReplacementDelim, i,
                                "replacement delimiter outside a segment's replacement block"};
                case syntax::TokenKind::Open: {
                    const bool fires = model::mapping_fires(tk.features, removal);
                    if (tk.mapping == syntax::MappingKind::FileExplicit) {
                        ++r.found.file;
                        if (fires) {
                            ++r.fired.file;
                            file_fired = true;
                            file_fired_line = i;
                            i = n;
                        } else {
                            ++i;
                        }
                        break;
                    }
                    if (tk.mapping == syntax::MappingKind::SegmentExplicit) {
                        ++r.found.segment;
                        if (open_segment >= 0)
                            throw Abort{DiagCode::NestedSegment, i,
                                        "segment opens inside another segment"};
                        std::vector<std::string> repl;
                        bool has_block = false;
                        int body = parse_replacement_block(i, repl, has_block);
                        if (!fires) {
                            open_segment = i;
                            i = body;
                            break;
                        }
                        int k = body;
                        for (;; ++k) {
                            if (k >= n)
                                throw Abort{DiagCode::UnterminatedSegment, i,
                                            "segment is never terminated"};
                            syntax::LineToken bk = classify(k);
                            if (bk.kind == syntax::TokenKind::Terminator) break;
                            if (bk.kind == syntax::TokenKind::Open &&
                                bk.mapping == syntax::MappingKind::SegmentExplicit)
                                throw Abort{DiagCode::NestedSegment, k,
                                            "segment opens inside another segment"};
                        }
                        std::vector<std::string> lines;
                        if (has_block)
                            lines = std::move(repl);
                        else if (opts.emit_markers)
                            lines.push_back(marker_text(ws_of(i), tag, "Segment"));
                        edits.push_back({{i, 0}, {k + 1, 0}, std::move(lines), std::nullopt});
                        ++r.fired.segment;
                        i = k + 1;
                        break;
                    }
                    // Implicit mapping.
                    ++r.found.implicit;
                    if (!fires) {
                        ++i;
                        break;
                    }
                    auto [kind, anchor] = lang.classify_construct(input, tag, i);
                    Extent extent = lang.construct_extent(input, tag, kind, anchor);
                    check_extent_segments(input, tag, i, extent);
                    lang::RemovalPlan plan{lang::RemovalPlan::Action::WholeExtent, extent, true};
                    if (kind == lang::ConstructKind::SwitchCase) {
                        Extent sw = lang.enclosing_switch(input, tag, anchor);
                        plan = lang.plan_switch_case(input, tag, extent, sw, fired_labels);
                    } else if (kind == lang::ConstructKind::IfBranch ||
                               kind == lang::ConstructKind::ElseIfBranch ||
                               kind == lang::ConstructKind::ElseBranch) {
                        plan = lang.plan_conditional(input, tag, kind, extent);
                    }
                    ++r.fired.implicit;
                    switch (plan.action) {
                        case lang::RemovalPlan::Action::WholeExtent: {
                            TextPos to = expand_end(input, plan.extent.end);
                            std::vector<std::string> lines;
                            if (opts.emit_markers)
                                lines.push_back(
                                    marker_text(ws_of(i), tag, marker_word(kind)));
                            edits.push_back({{i, 0}, to, std::move(lines), std::nullopt});
                            if (kind == lang::ConstructKind::SwitchCase)
                                fired_labels.insert(plan.extent.start.line);
                            i = plan.extent.end.line + 1;
                            break;
                        }
                        case lang::RemovalPlan::Action::LabelOnly: {
                            edits.push_back({{i, 0}, {i + 1, 0}, {}, std::nullopt});
                            TextPos from = expand_start(input, plan.extent.start);
                            TextPos to = expand_end(input, plan.extent.end);
                            std::vector<std::string> lines;
                            if (opts.emit_markers)
                                lines.push_back(marker_text(ws_of(plan.extent.start.line), tag,
                                                            "Case Label"));
                            edits.push_back({from, to, std::move(lines), std::nullopt});
                            fired_labels.insert(plan.extent.start.line);
                            i = plan.extent.end.line + 1;
                            break;
                        }
                        case lang::RemovalPlan::Action::EmptyBody: {
                            edits.push_back({{i, 0}, {i + 1, 0}, {}, std::nullopt});
                            if (plan.braced) {
                                TextPos open = plan.extent.start;
                                TextPos close = plan.extent.end;
                                if (!interior_blank(input, open, close)) {
                                    if (opts.emit_markers) {
                                        std::string m = marker_text(
                                            std::string(ws_of(anchor.line)) + "    ", tag,
                                            "Code Block");
                                        edits.push_back({{open.line, open.col + 1},
                                                         {close.line, close.col},
                                                         {std::move(m)},
                                                         std::nullopt});
                                    } else {
                                        edits.push_back({{open.line, open.col + 1},
                                                         {close.line, close.col},
                                                         {},
                                                         std::string(" ")});
                                    }
                                }
                                i = close.line + 1;
                            } else {
                                TextPos bs = plan.extent.start;
                                TextPos be = plan.extent.end;
                                if (!(bs == be && input.line(bs.line)[static_cast<size_t>(bs.col)] == ';'))
                                    edits.push_back({bs,
                                                     {be.line, be.col + 1},
                                                     {},
                                                     std::string(";")});
                                i = be.line + 1;
                            }
                            break;
                        }
                    }
                    break;
                }
            }
        }
        if (!file_fired && open_segment >= 0)
            throw Abort{DiagCode::UnterminatedSegment, open_segment,
                        "segment is never terminated"};

        if (file_fired) {
            SourceText out;
            if (opts.emit_markers)
                out.push_line(marker_text(ws_of(file_fired_line), tag, "File"));
            oc.output = std::move(out);
            r.loc_after = oc.output.line_count();
            r.lines_removed = r.loc_before;
            r.lines_inserted = r.loc_after;
        } else {
            long verbatim = 0;
            oc.output = apply_edits(input, std::move(edits), &verbatim);
            r.loc_after = oc.output.line_count();
            r.lines_removed = r.loc_before - verbatim;
            r.lines_inserted = r.loc_after - verbatim;
        }
        if (r.functions_before) {
            try {
                r.functions_after = lang.count_functions(oc.output, tag);
            } catch (const lang::ScanError&) {
                r.functions_after = std::nullopt;
            }
        }
        return oc;
    } catch (const Abort& a) {
        r.diagnostics.push_back(
            {Severity::Error, a.code, path, a.line + 1, a.message});
    } catch (const lang::ScanError& e) {
        r.diagnostics.push_back(
            {Severity::Error, e.code, path, e.pos.line + 1, e.what()});
    }
    // Fail safe: any structural problem leaves the file untouched.
    oc.output = input;
    r.loc_after = r.loc_before;
    r.functions_after = r.functions_before;
    r.fired = {};
    r.lines_removed = 0;
    r.lines_inserted = 0;
    return oc;
}

std::vector<Diagnostic> lint_file(const SourceText& input, const std::string& path,
                                  const config::DebloatConfig& config,
                                  const lang::LanguageModule& lang) {
    std::vector<Diagnostic> out;
    const std::string& tag = config.tag;
    const int n = input.line_count();
    const model::RemovalSet nothing_fires;

    auto classify = [&](int l) { return syntax::classify_line(input.line(l), tag); };
    auto error = [&](DiagCode code, int line0, std::string msg) {
        out.push_back({Severity::Error, code, path, line0 + 1, std::move(msg)});
    };
    auto warning = [&](DiagCode code, int line0, std::string msg) {
        out.push_back({Severity::Warning, code, path, line0 + 1, std::move(msg)});
    };

    auto looks_like_marker = [](std::string_view text) {
        if (!text.empty() && text.front() == ' ') text.remove_prefix(1);
        for (std::string_view head : {"File ", "Segment ", "Code Block ", "Case Label "})
            if (text.substr(0, head.size()) == head &&
                text.substr(head.size()) == "Debloated.")
                return true;
        return false;
    };

    int open_segment = -1;
    int last_non_segment_open = -2;

    int i = 0;
    while (i < n) {
        syntax::LineToken tk = classify(i);
        switch (tk.kind) {
            case syntax::TokenKind::Plain:
                ++i;
                break;
            case syntax::TokenKind::TaggedText:
                if (!looks_like_marker(tk.text))
                    warning(DiagCode::SuspiciousTaggedText, i,
                            "tagged line outside a replacement block");
                ++i;
                break;
            case syntax::TokenKind::Malformed:
                error(DiagCode::MalformedMapping, i, tk.error);
                ++i;
                break;
            case syntax::TokenKind::Terminator:
                if (open_segment >= 0)
                    open_segment = -1;
                else
                    error(DiagCode::StrayTerminator, i, "terminator has no open segment");
                ++i;
                break;
            case syntax::TokenKind::ReplacementDelim:
                if (i == last_non_segment_open + 1)
                    error(DiagCode::ReplacementOnNonSegment, i,
                          "replacement block follows a mapping that is not a segment");
                else
                    error(DiagCode::StrayReplacementDelim, i,
                          "replacement delimiter outside a segment's replacement block");
                ++i;
                break;
            case syntax::TokenKind::Open: {
                for (const std::string& f : tk.features)
                    if (!config.hierarchy.contains(f))
                        warning(DiagCode::UnknownFeatureInMapping, i,
                                "mapping names unknown feature '" + f + "'");
                if (tk.mapping == syntax::MappingKind::SegmentExplicit) {
                    if (open_segment >= 0)
                        error(DiagCode::NestedSegment, i, "segment opens inside another segment");
                    open_segment = i;
                    // Replacement block, when present.
                    int j = i + 1;
                    if (j < n && classify(j).kind == syntax::TokenKind::ReplacementDelim) {
                        const int delim_line = j;
                        bool closed = false;
                        for (++j; j < n; ++j) {
                            syntax::TokenKind k = classify(j).kind;
                            if (k == syntax::TokenKind::ReplacementDelim) {
                                closed = true;
                                ++j;
                                break;
                            }
                            if (k == syntax::TokenKind::Plain) break;
                        }
                        if (!closed)
                            error(DiagCode::UnbalancedReplacementDelims, delim_line,
                                  j >= n ? "replacement block is never closed"
                                         : "replacement block is interrupted by a code line");
                        i = j;
                        break;
                    }
                    ++i;
                    break;
                }
                if (tk.mapping == syntax::MappingKind::FileExplicit) {
                    last_non_segment_open = i;
                    ++i;
                    break;
                }
                // Implicit: run the analysis to surface construct problems.
                last_non_segment_open = i;
                try {
                    auto [kind, anchor] = lang.classify_construct(input, tag, i);
                    Extent extent = lang.construct_extent(input, tag, kind, anchor);
                    check_extent_segments(input, tag, i, extent);
                    if (kind == lang::ConstructKind::SwitchCase) {
                        Extent sw = lang.enclosing_switch(input, tag, anchor);
                        lang.plan_switch_case(input, tag, extent, sw, {});
                    } else if (kind == lang::ConstructKind::IfBranch ||
                               kind == lang::ConstructKind::ElseIfBranch ||
                               kind == lang::ConstructKind::ElseBranch) {
                        lang.plan_conditional(input, tag, kind, extent);
                    }
                } catch (const Abort& a) {
                    error(a.code, a.line, a.message);
                } catch (const lang::ScanError& e) {
                    error(e.code, e.pos.line, e.what());
                }
                ++i;
                break;
            }
        }
    }
    if (open_segment >= 0)
        error(DiagCode::UnterminatedSegment, open_segment, "segment is never terminated");
    return out;
}

namespace {

struct WorkItem {
    fs::path abs;
    std::string rel;
    bool is_symlink = false;
    bool matches = false;
};

bool extension_matches(const std::string& filename, const std::set<std::string>& exts) {
    for (const std::string& e : exts)
        if (filename.size() >= e.size() &&
            filename.compare(filename.size() - e.size(), e.size(), e) == 0)
            return true;
    return false;
}

void collect_items(const fs::path& dir, const std::string& rel_prefix,
                   const std::set<std::string>& exts, std::vector<WorkItem>& items,
                   std::set<std::string>& seen, std::vector<Diagnostic>& diags) {
    std::vector<fs::directory_entry> entries;
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) {
        diags.push_back({Severity::Error, DiagCode::IoError, dir.string(), 0,
                         "cannot list directory: " + ec.message()});
        return;
    }
    for (fs::directory_iterator end; it != end; it.increment(ec)) {
        if (ec) {
            diags.push_back({Severity::Error, DiagCode::IoError, dir.string(), 0,
                             "cannot list directory: " + ec.message()});
            return;
        }
        entries.push_back(*it);
    }
    std::sort(entries.begin(), entries.end(),
              [](const fs::directory_entry& a, const fs::directory_entry& b) {
                  return a.path().filename() < b.path().filename();
              });
    for (const fs::directory_entry& entry : entries) {
        std::string name = entry.path().filename().string();
        std::string rel = rel_prefix.empty() ? name : rel_prefix + "/" + name;
        std::error_code tec;
        if (entry.is_symlink(tec)) {
            if (!seen.insert(rel).second) {
                diags.push_back({Severity::Error, DiagCode::IoError, rel, 0,
                                 "path appears in more than one source root; keeping the first"});
                continue;
            }
            items.push_back({entry.path(), rel, true, false});
        } else if (entry.is_directory(tec)) {
            collect_items(entry.path(), rel, exts, items, seen, diags);
        } else if (entry.is_regular_file(tec)) {
            if (!seen.insert(rel).second) {
                diags.push_back({Severity::Error, DiagCode::IoError, rel, 0,
                                 "path appears in more than one source root; keeping the first"});
                continue;
            }
            items.push_back({entry.path(), rel, false, extension_matches(name, exts)});
        }
        // Other entry kinds (sockets, devices) are skipped.
    }
}

}  // namespace

DebloatReport debloat_tree(const config::DebloatConfig& config, const TreeOptions& opts) {
    DebloatReport rep;
    const lang::LanguageModule* lm = lang::find_language(config.language);
    if (!lm) {
        rep.global_diagnostics.push_back(
            {Severity::Error, DiagCode::UnregisteredLanguage, config.language, 0,
             "no language module registered for '" + config.language + "'"});
        return rep;
    }
    model::RemovalSet removal = model::close_removal_set(config.hierarchy, config.debloat);

    std::vector<WorkItem> items;
    {
        std::set<std::string> seen;
        for (const std::string& root : config.sources)
            collect_items(root, "", config.extensions, items, seen, rep.global_diagnostics);
    }

    fs::path out_root(config.output_root);
    if (!opts.dry_run) {
        std::error_code ec;
        fs::create_directories(out_root, ec);
        if (ec)
            throw std::runtime_error("cannot create output root '" + config.output_root +
                                     "': " + ec.message());
    }

    FileOptions fopts{config.tag, config.emit_markers};
    std::vector<std::optional<FileResult>> results(items.size());
    std::vector<std::vector<Diagnostic>> extras(items.size());
    std::atomic<size_t> cursor{0};

    auto process = [&](size_t idx) {
        const WorkItem& item = items[idx];
        fs::path dst = out_root / fs::path(item.rel);
        std::error_code ec;
        auto io_error = [&](const std::string& msg) {
            extras[idx].push_back({Severity::Error, DiagCode::IoError, item.rel, 0, msg});
        };
        if (item.is_symlink) {
            if (!opts.dry_run) {
                fs::create_directories(dst.parent_path(), ec);
                std::error_code rec;
                fs::remove(dst, rec);
                fs::copy_symlink(item.abs, dst, ec);
                if (ec) io_error("cannot copy symlink: " + ec.message());
            }
            return;
        }
        if (!item.matches) {
            if (!opts.dry_run) {
                fs::create_directories(dst.parent_path(), ec);
                fs::copy_file(item.abs, dst, fs::copy_options::overwrite_existing, ec);
                if (ec) io_error("cannot copy file: " + ec.message());
            }
            return;
        }
        std::string bytes;
        if (!read_file(item.abs, bytes)) {
            io_error("cannot read file");
            return;
        }
        FileOutcome oc = debloat_file(SourceText::from_bytes(bytes), item.rel, removal, *lm, fopts);
        if (!opts.dry_run) {
            fs::create_directories(dst.parent_path(), ec);
            if (!write_file(dst, oc.output.to_bytes()))
                oc.result.diagnostics.push_back(
                    {Severity::Error, DiagCode::IoError, item.rel, 0, "cannot write output file"});
        }
        results[idx] = std::move(oc.result);
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || items.size() <= 1) {
        for (size_t idx = 0; idx < items.size(); ++idx) process(idx);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (;;) {
                    size_t idx = cursor.fetch_add(1);
                    if (idx >= items.size()) return;
                    process(idx);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    for (size_t idx = 0; idx < items.size(); ++idx) {
        if (results[idx]) rep.files.push_back(std::move(*results[idx]));
        for (Diagnostic& d : extras[idx]) rep.global_diagnostics.push_back(std::move(d));
    }
    return rep;
}

std::vector<Diagnostic> lint_tree(const config::DebloatConfig& config) {
    std::vector<Diagnostic> out;
    const lang::LanguageModule* lm = lang::find_language(config.language);
    if (!lm) {
        out.push_back({Severity::Error, DiagCode::UnregisteredLanguage, config.language, 0,
                       "no language module registered for '" + config.language + "'"});
        return out;
    }
    std::vector<WorkItem> items;
    {
        std::set<std::string> seen;
        for (const std::string& root : config.sources)
            collect_items(root, "", config.extensions, items, seen, out);
    }
    for (const WorkItem& item : items) {
        if (item.is_symlink || !item.matches) continue;
        std::string bytes;
        if (!read_file(item.abs, bytes)) {
            out.push_back({Severity::Error, DiagCode::IoError, item.rel, 0, "cannot read file"});
            continue;
        }
        std::vector<Diagnostic> d =
            lint_file(SourceText::from_bytes(bytes), item.rel, config, *lm);
        out.insert(out.end(), std::make_move_iterator(d.begin()),
                   std::make_move_iterator(d.end()));
    }
    return out;
}

}  // namespace carve::engine
