#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carve/config.hpp"
#include "carve/engine.hpp"
#include "carve/report.hpp"

namespace {

// Exit codes: 0 clean, 1 usage or configuration problem, 2 content
// diagnostics, 3 filesystem trouble.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDiagnostics = 2;
constexpr int kExitIo = 3;

bool read_text_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

void print_diagnostics(const std::vector<carve::Diagnostic>& diags) {
    for (const carve::Diagnostic& d : diags) std::cerr << carve::format_diagnostic(d) << "\n";
}

bool emit_report(const std::string& text, const std::string& report_path) {
    if (report_path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.good()) {
        std::cerr << "error: cannot write report to '" << report_path << "'\n";
        return false;
    }
    return true;
}

void sort_diagnostics(std::vector<carve::Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const carve::Diagnostic& a, const carve::Diagnostic& b) {
                         if (a.file != b.file) return a.file < b.file;
                         return a.line < b.line;
                     });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carve: feature-based source debloater"};
    std::string config_path;
    bool lint = false;
    bool dry_run = false;
    std::string report_path;
    std::string format = "text";
    std::string markers;
    int jobs = 1;

    app.add_option("config", config_path, "configuration file")->required();
    CLI::Option* lint_opt = app.add_flag("--lint", lint, "check mappings without writing output");
    CLI::Option* dry_opt =
        app.add_flag("--dry-run", dry_run, "compute the full report without writing files");
    lint_opt->excludes(dry_opt);
    app.add_option("--report", report_path, "write the report to this file instead of stdout");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--markers", markers, "override marker emission from the config")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--jobs", jobs, "worker threads for the debloating pass")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::string config_text;
    if (!read_text_file(config_path, config_text)) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return kExitUsage;
    }

    carve::config::DebloatConfig cfg;
    try {
        cfg = carve::config::parse_config(config_text);
    } catch (const carve::config::ConfigError& e) {
        std::cerr << config_path;
        if (e.line > 0) std::cerr << ":" << e.line;
        std::cerr << ": error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!markers.empty()) cfg.emit_markers = markers == "on";

    std::vector<carve::Diagnostic> vdiags = carve::config::validate_config(cfg, config_path);

    if (lint) {
        // Linting reads only the sources, so output placement does not matter.
        std::erase_if(vdiags, [](const carve::Diagnostic& d) {
            return d.code == carve::DiagCode::OutputOverlapsSource;
        });
        if (!vdiags.empty()) {
            print_diagnostics(vdiags);
            return kExitUsage;
        }
        std::vector<carve::Diagnostic> diags = carve::engine::lint_tree(cfg);
        sort_diagnostics(diags);
        print_diagnostics(diags);
        bool errors = std::any_of(diags.begin(), diags.end(), [](const carve::Diagnostic& d) {
            return d.severity == carve::Severity::Error;
        });
        return errors ? kExitDiagnostics : kExitOk;
    }

    if (!vdiags.empty()) {
        print_diagnostics(vdiags);
        return kExitUsage;
    }

    carve::engine::TreeOptions topts;
    topts.dry_run = dry_run;
    topts.jobs = jobs;
    carve::DebloatReport rep;
    try {
        rep = carve::engine::debloat_tree(cfg, topts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    bool has_error = false;
    bool has_io_error = false;
    std::vector<carve::Diagnostic> all;
    for (const carve::FileResult& f : rep.files)
        all.insert(all.end(), f.diagnostics.begin(), f.diagnostics.end());
    all.insert(all.end(), rep.global_diagnostics.begin(), rep.global_diagnostics.end());
    sort_diagnostics(all);
    print_diagnostics(all);
    for (const carve::Diagnostic& d : all) {
        if (d.severity == carve::Severity::Error) has_error = true;
        if (d.code == carve::DiagCode::IoError) has_io_error = true;
    }

    std::string text = format == "json" ? carve::report::render_machine_report(rep)
                                        : carve::report::render_text_report(rep);
    if (!emit_report(text, report_path)) return kExitIo;

    if (has_io_error) return kExitIo;
    if (has_error) return kExitDiagnostics;
    return kExitOk;
}
