#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carve/diagnostics.hpp"
#include "carve/text.hpp"

namespace carve::lang {

/// Syntactic shapes an implicit mapping can attach to.
enum class ConstructKind {
    Statement,
    FunctionDef,
    StructDef,
    SwitchCase,
    IfBranch,
    ElseIfBranch,
    ElseBranch,
};

std::string_view to_string(ConstructKind k);

/// How a fired implicit mapping edits its construct.
struct RemovalPlan {
    enum class Action {
        WholeExtent,  // delete `extent` entirely
        LabelOnly,    // delete just the case label; the body keeps running
        EmptyBody,    // keep the header, delete the body content
    };
    Action action = Action::WholeExtent;
    Extent extent;        // WholeExtent: construct; LabelOnly: label text;
                          // EmptyBody: the body's braces (or the lone statement)
    bool braced = true;   // EmptyBody: whether `extent` spans '{' .. '}'
};

/// Analysis failure; position is 0-based and points at the offending text.
struct ScanError : std::runtime_error {
    ScanError(DiagCode code_, TextPos pos_, const std::string& what_)
        : std::runtime_error(what_), code(code_), pos(pos_) {}
    DiagCode code;
    TextPos pos;
};

class LanguageModule {
public:
    virtual ~LanguageModule() = default;

    virtual std::string_view id() const = 0;
    virtual std::vector<std::string> default_extensions() const = 0;

    /// Kind and anchor of the first construct after a mapping line.
    /// Throws ScanError (NothingToMap when nothing follows).
    virtual std::pair<ConstructKind, TextPos> classify_construct(
        const SourceText& src, std::string_view tag, int mapping_line) const = 0;

    /// Inclusive extent of the construct anchored at `anchor`.
    virtual Extent construct_extent(const SourceText& src, std::string_view tag,
                                    ConstructKind kind, TextPos anchor) const = 0;

    /// Braces extent of the innermost switch containing `anchor`.
    virtual Extent enclosing_switch(const SourceText& src, std::string_view tag,
                                    TextPos anchor) const = 0;

    /// Decides LabelOnly vs WholeExtent for a fired case. `fired_label_lines`
    /// holds the label lines of cases already fired in this pass.
    virtual RemovalPlan plan_switch_case(const SourceText& src, std::string_view tag,
                                         const Extent& case_extent,
                                         const Extent& enclosing_switch,
                                         const std::set<int>& fired_label_lines) const = 0;

    /// Decides EmptyBody vs WholeExtent for a fired if/else-if/else branch.
    virtual RemovalPlan plan_conditional(const SourceText& src, std::string_view tag,
                                         ConstructKind kind, const Extent& extent) const = 0;

    /// Number of function definitions recognized in the file. Throws ScanError.
    virtual long count_functions(const SourceText& src, std::string_view tag) const = 0;
};

/// Registry lookup by language id; nullptr when unregistered.
const LanguageModule* find_language(std::string_view id);
std::vector<std::string_view> registered_languages();

}  // namespace carve::lang
