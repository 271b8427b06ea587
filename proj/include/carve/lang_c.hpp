#pragma once

#include <optional>

#include "carve/lang_module.hpp"

namespace carve::lang {

/// One character of code that survives comment/literal/preprocessor skipping.
struct SigChar {
    TextPos pos;
    char ch = 0;
};

/// Significant characters of C-family source in [from, end of file), in
/// order. Skips string and character literal interiors (escape-aware),
/// `//` line comments, `/* */` block comments, whole lines starting with the
/// mapping tag, and preprocessor directives including their backslash
/// continuations. Throws ScanError{UnterminatedLiteral|UnterminatedComment}
/// at end of file.
std::vector<SigChar> scan_code(const SourceText& src, std::string_view tag, TextPos from);

/// Position of the '}' matching the '{' at `open`. Throws UnbalancedBraces.
TextPos match_brace(const SourceText& src, std::string_view tag, TextPos open);

/// The registered C/C++ analyzer (language id "c").
const LanguageModule& c_language();

}  // namespace carve::lang
