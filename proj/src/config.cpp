#include "carve/config.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <system_error>

#include "carve/lang_module.hpp"
#include "carve/mapping_syntax.hpp"
#include "carve/text.hpp"

namespace carve::config {

namespace {

using Kind = ConfigError::Kind;

[[noreturn]] void fail(Kind kind, int line, const std::string& msg) {
    throw ConfigError(kind, line, msg);
}

bool has_whitespace(std::string_view s) {
    return s.find(' ') != std::string_view::npos || s.find('\t') != std::string_view::npos;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

enum class Section { None, Features, Debloat };

}  // namespace

std::string_view to_string(ConfigError::Kind kind) {
    switch (kind) {
        case Kind::Syntax: return "syntax error";
        case Kind::DuplicateFeature: return "duplicate feature";
        case Kind::DanglingIndent: return "dangling indent";
        case Kind::MissingSection: return "missing section";
    }
    return "?";
}

DebloatConfig parse_config(std::string_view text) {
    DebloatConfig cfg;
    SourceText src = SourceText::from_bytes(std::string(text));

    Section section = Section::None;
    bool seen_output = false, seen_language = false, seen_tag = false;
    bool seen_markers = false, seen_extensions = false;
    bool seen_features = false, seen_debloat = false;
    std::vector<std::string> chain;  // feature names along the current indent path

    for (int i = 0; i < src.line_count(); ++i) {
        const int lineno = i + 1;
        const std::string& raw = src.line(i);
        const std::string indent{leading_whitespace(raw)};
        if (indent.size() == raw.size()) continue;
        if (raw[indent.size()] == '#') continue;

        if (raw[indent.size()] == '[' && raw.find('=') == std::string::npos) {
            if (!indent.empty())
                fail(Kind::Syntax, lineno, "section headers must start at column 0");
            std::string header{trim(raw)};
            if (header == "[features]") {
                if (seen_features) fail(Kind::Syntax, lineno, "duplicate [features] section");
                seen_features = true;
                section = Section::Features;
            } else if (header == "[debloat]") {
                if (seen_debloat) fail(Kind::Syntax, lineno, "duplicate [debloat] section");
                seen_debloat = true;
                section = Section::Debloat;
            } else {
                fail(Kind::Syntax, lineno, "unknown section header " + header);
            }
            continue;
        }

        if (section == Section::None) {
            size_t eq = raw.find('=');
            if (eq == std::string::npos)
                fail(Kind::Syntax, lineno, "expected a 'key = value' line");
            std::string key{trim(raw.substr(0, eq))};
            std::string value{trim(raw.substr(eq + 1))};
            if (key == "source") {
                if (value.empty()) fail(Kind::Syntax, lineno, "source needs a path");
                cfg.sources.push_back(value);
            } else if (key == "output") {
                if (seen_output) fail(Kind::Syntax, lineno, "duplicate key 'output'");
                if (value.empty()) fail(Kind::Syntax, lineno, "output needs a path");
                seen_output = true;
                cfg.output_root = value;
            } else if (key == "language") {
                if (seen_language) fail(Kind::Syntax, lineno, "duplicate key 'language'");
                if (value.empty()) fail(Kind::Syntax, lineno, "language needs a value");
                seen_language = true;
                cfg.language = value;
            } else if (key == "tag") {
                if (seen_tag) fail(Kind::Syntax, lineno, "duplicate key 'tag'");
                if (value.empty()) fail(Kind::Syntax, lineno, "tag must not be empty");
                if (has_whitespace(value))
                    fail(Kind::Syntax, lineno, "tag must not contain whitespace");
                seen_tag = true;
                cfg.tag = value;
            } else if (key == "markers") {
                if (seen_markers) fail(Kind::Syntax, lineno, "duplicate key 'markers'");
                if (value == "on") cfg.emit_markers = true;
                else if (value == "off") cfg.emit_markers = false;
                else fail(Kind::Syntax, lineno, "markers must be 'on' or 'off'");
                seen_markers = true;
            } else if (key == "extensions") {
                if (seen_extensions) fail(Kind::Syntax, lineno, "duplicate key 'extensions'");
                std::vector<std::string> words = split_words(value);
                if (words.empty())
                    fail(Kind::Syntax, lineno, "extensions needs at least one entry");
                for (const std::string& w : words) {
                    if (w.front() != '.')
                        fail(Kind::Syntax, lineno,
                             "extension '" + w + "' must start with '.'");
                    cfg.extensions.insert(w);
                }
                seen_extensions = true;
            } else {
                fail(Kind::Syntax, lineno, "unknown key '" + key + "'");
            }
            continue;
        }

        if (raw.find('=') != std::string::npos)
            fail(Kind::Syntax, lineno,
                 "key = value lines must appear before the first section");
        if (indent.find('\t') != std::string::npos)
            fail(Kind::Syntax, lineno, "indentation must use spaces, not tabs");
        std::string name{trim(raw)};
        if (!syntax::is_valid_feature_name(name))
            fail(Kind::Syntax, lineno, "invalid feature name '" + name + "'");

        if (section == Section::Debloat) {
            if (!indent.empty())
                fail(Kind::Syntax, lineno, "debloat entries must not be indented");
            cfg.debloat.insert(name);
            continue;
        }

        if (indent.size() % 4 != 0)
            fail(Kind::Syntax, lineno,
                 "feature indentation must be a multiple of 4 spaces");
        size_t depth = indent.size() / 4;
        if (depth > chain.size())
            fail(Kind::DanglingIndent, lineno,
                 "feature '" + name + "' is indented under no parent");
        std::string parent = depth == 0 ? std::string() : chain[depth - 1];
        if (!cfg.hierarchy.add(name, parent))
            fail(Kind::DuplicateFeature, lineno, "duplicate feature '" + name + "'");
        chain.resize(depth);
        chain.push_back(name);
    }

    if (cfg.sources.empty())
        fail(Kind::MissingSection, 0, "missing required 'source' key");
    if (!seen_features) fail(Kind::MissingSection, 0, "missing [features] section");
    if (!seen_debloat) fail(Kind::MissingSection, 0, "missing [debloat] section");

    if (!seen_extensions) {
        if (const lang::LanguageModule* lm = lang::find_language(cfg.language))
            for (const std::string& ext : lm->default_extensions()) cfg.extensions.insert(ext);
    }
    return cfg;
}

std::string render_config(const DebloatConfig& config) {
    std::string out;
    for (const std::string& s : config.sources) out += "source = " + s + "\n";
    out += "output = " + config.output_root + "\n";
    out += "language = " + config.language + "\n";
    out += "tag = " + config.tag + "\n";
    out += std::string("markers = ") + (config.emit_markers ? "on" : "off") + "\n";
    if (!config.extensions.empty()) {
        out += "extensions =";
        for (const std::string& ext : config.extensions) out += " " + ext;
        out += "\n";
    }
    out += "\n[features]\n";
    for (const auto& entry : config.hierarchy.entries())
        out += std::string(4 * static_cast<size_t>(entry.depth), ' ') + entry.name + "\n";
    out += "\n[debloat]\n";
    for (const std::string& name : config.debloat) out += name + "\n";
    return out;
}

std::vector<Diagnostic> validate_config(const DebloatConfig& config,
                                        const std::string& config_path) {
    namespace fs = std::filesystem;
    std::vector<Diagnostic> out;

    if (!lang::find_language(config.language))
        out.push_back({Severity::Error, DiagCode::UnregisteredLanguage, config_path, 0,
                       "no language module registered for '" + config.language + "'"});

    for (const std::string& root : config.sources) {
        std::error_code ec;
        if (!fs::is_directory(root, ec))
            out.push_back({Severity::Error, DiagCode::MissingSourceRoot, config_path, 0,
                           "source root '" + root + "' is not a directory"});
    }

    std::error_code ec;
    fs::path out_canon = fs::weakly_canonical(config.output_root, ec);
    if (!ec) {
        for (const std::string& root : config.sources) {
            std::error_code ec2;
            fs::path root_canon = fs::weakly_canonical(root, ec2);
            if (ec2 || root_canon.empty()) continue;
            auto miss = std::mismatch(root_canon.begin(), root_canon.end(),
                                      out_canon.begin(), out_canon.end());
            if (miss.first == root_canon.end())
                out.push_back({Severity::Error, DiagCode::OutputOverlapsSource, config_path, 0,
                               "output root '" + config.output_root +
                                   "' lies inside source root '" + root + "'"});
        }
    }

    for (const std::string& name : config.debloat)
        if (!config.hierarchy.contains(name))
            out.push_back({Severity::Error, DiagCode::UnknownFeature, config_path, 0,
                           "debloat list names unknown feature '" + name + "'"});
    return out;
}

}  // namespace carve::config
