#include "carve/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace carve::report {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<long> add_opt(const std::optional<long>& a, const std::optional<long>& b) {
    if (a && b) return *a + *b;
    return a ? a : b;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string opt_pct(const std::optional<double>& v) {
    return v ? fmt2(*v) + "%" : std::string("n/a");
}

std::string opt_num(const std::optional<long>& v) {
    return v ? std::to_string(*v) : std::string("n/a");
}

std::string counts_str(const MappingCounts& c) {
    std::ostringstream o;
    o << c.total() << " (file " << c.file << ", segment " << c.segment << ", implicit "
      << c.implicit << ")";
    return o.str();
}

ordered_json counts_json(const MappingCounts& c) {
    return {{"file", c.file},
            {"segment", c.segment},
            {"implicit", c.implicit},
            {"total", c.total()}};
}

MappingCounts counts_from_json(const ordered_json& j) {
    MappingCounts c;
    c.file = j.at("file").get<long>();
    c.segment = j.at("segment").get<long>();
    c.implicit = j.at("implicit").get<long>();
    return c;
}

ordered_json opt_json(const std::optional<long>& v) {
    if (v) return *v;
    return nullptr;
}

ordered_json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

ordered_json diag_json(const Diagnostic& d) {
    return {{"severity", std::string(to_string(d.severity))},
            {"code", std::string(to_string(d.code))},
            {"file", d.file},
            {"line", d.line},
            {"message", d.message}};
}

Diagnostic diag_from_json(const ordered_json& j) {
    Diagnostic d;
    if (!severity_from_string(j.at("severity").get<std::string>(), d.severity))
        throw std::runtime_error("report names an unknown severity");
    if (!diag_code_from_string(j.at("code").get<std::string>(), d.code))
        throw std::runtime_error("report names an unknown diagnostic code");
    d.file = j.at("file").get<std::string>();
    d.line = j.at("line").get<int>();
    d.message = j.at("message").get<std::string>();
    return d;
}

std::vector<const FileResult*> sorted_by_path(const std::vector<FileResult>& files) {
    std::vector<const FileResult*> order;
    order.reserve(files.size());
    for (const FileResult& f : files) order.push_back(&f);
    std::sort(order.begin(), order.end(),
              [](const FileResult* a, const FileResult* b) { return a->path < b->path; });
    return order;
}

}  // namespace

Totals compute_totals(const std::vector<FileResult>& files) {
    Totals t;
    for (const FileResult& f : files) {
        ++t.files;
        t.loc_before += f.loc_before;
        t.loc_after += f.loc_after;
        t.lines_removed += f.lines_removed;
        t.lines_inserted += f.lines_inserted;
        t.functions_before = add_opt(t.functions_before, f.functions_before);
        t.functions_after = add_opt(t.functions_after, f.functions_after);
        t.found += f.found;
        t.fired += f.fired;
        t.diagnostics += static_cast<long>(f.diagnostics.size());
    }
    return t;
}

Totals combine(const Totals& a, const Totals& b) {
    Totals t = a;
    t.files += b.files;
    t.loc_before += b.loc_before;
    t.loc_after += b.loc_after;
    t.lines_removed += b.lines_removed;
    t.lines_inserted += b.lines_inserted;
    t.functions_before = add_opt(t.functions_before, b.functions_before);
    t.functions_after = add_opt(t.functions_after, b.functions_after);
    t.found += b.found;
    t.fired += b.fired;
    t.diagnostics += b.diagnostics;
    return t;
}

std::optional<double> loc_reduction_pct(const Totals& t) {
    if (t.loc_before <= 0) return std::nullopt;
    return 100.0 * static_cast<double>(t.loc_before - t.loc_after) /
           static_cast<double>(t.loc_before);
}

std::optional<double> function_reduction_pct(const Totals& t) {
    if (!t.functions_before || !t.functions_after || *t.functions_before <= 0)
        return std::nullopt;
    return 100.0 * static_cast<double>(*t.functions_before - *t.functions_after) /
           static_cast<double>(*t.functions_before);
}

std::optional<double> mapping_density_per_kloc(const Totals& t) {
    if (t.loc_before <= 0) return std::nullopt;
    return 1000.0 * static_cast<double>(t.found.total()) / static_cast<double>(t.loc_before);
}

std::optional<double> per_file_mean_loc_reduction_pct(const std::vector<FileResult>& files) {
    double sum = 0;
    long counted = 0;
    for (const FileResult& f : files) {
        if (f.loc_before <= 0) continue;
        sum += 100.0 * static_cast<double>(f.loc_before - f.loc_after) /
               static_cast<double>(f.loc_before);
        ++counted;
    }
    if (counted == 0) return std::nullopt;
    return sum / static_cast<double>(counted);
}

std::string render_text_report(const DebloatReport& rep) {
    Totals t = compute_totals(rep.files);
    long diag_total = t.diagnostics + static_cast<long>(rep.global_diagnostics.size());
    std::ostringstream o;
    auto row = [&](const char* label, const std::string& value) {
        char buf[192];
        std::snprintf(buf, sizeof buf, "%-22s%s\n", label, value.c_str());
        o << buf;
    };
    row("files", std::to_string(t.files));
    row("loc before", std::to_string(t.loc_before));
    row("loc after", std::to_string(t.loc_after));
    row("lines removed", std::to_string(t.lines_removed));
    row("lines inserted", std::to_string(t.lines_inserted));
    row("functions before", opt_num(t.functions_before));
    row("functions after", opt_num(t.functions_after));
    row("mappings found", counts_str(t.found));
    row("mappings fired", counts_str(t.fired));
    row("loc reduction", opt_pct(loc_reduction_pct(t)));
    row("function reduction", opt_pct(function_reduction_pct(t)));
    std::optional<double> density = mapping_density_per_kloc(t);
    row("mapping density", density ? fmt2(*density) + " per kloc" : std::string("n/a"));
    row("mean file reduction", opt_pct(per_file_mean_loc_reduction_pct(rep.files)));
    o << "\n";
    for (const FileResult* f : sorted_by_path(rep.files)) {
        o << f->path << ": loc " << f->loc_before << " -> " << f->loc_after << ", removed "
          << f->lines_removed << ", inserted " << f->lines_inserted << ", fired "
          << f->fired.total() << "/" << f->found.total();
        if (f->functions_before && f->functions_after)
            o << ", functions " << *f->functions_before << " -> " << *f->functions_after;
        o << "\n";
    }
    o << "\n" << diag_total << " diagnostics\n";
    return o.str();
}

std::string render_machine_report(const DebloatReport& rep) {
    Totals t = compute_totals(rep.files);
    ordered_json files = ordered_json::array();
    for (const FileResult* f : sorted_by_path(rep.files)) {
        ordered_json diags = ordered_json::array();
        for (const Diagnostic& d : f->diagnostics) diags.push_back(diag_json(d));
        files.push_back({{"path", f->path},
                         {"loc_before", f->loc_before},
                         {"loc_after", f->loc_after},
                         {"lines_removed", f->lines_removed},
                         {"lines_inserted", f->lines_inserted},
                         {"functions_before", opt_json(f->functions_before)},
                         {"functions_after", opt_json(f->functions_after)},
                         {"mappings_found", counts_json(f->found)},
                         {"mappings_fired", counts_json(f->fired)},
                         {"diagnostics", diags}});
    }
    ordered_json globals = ordered_json::array();
    for (const Diagnostic& d : rep.global_diagnostics) globals.push_back(diag_json(d));
    ordered_json j{
        {"files", files},
        {"totals",
         {{"files", t.files},
          {"loc_before", t.loc_before},
          {"loc_after", t.loc_after},
          {"lines_removed", t.lines_removed},
          {"lines_inserted", t.lines_inserted},
          {"functions_before", opt_json(t.functions_before)},
          {"functions_after", opt_json(t.functions_after)},
          {"mappings_found", counts_json(t.found)},
          {"mappings_fired", counts_json(t.fired)},
          {"diagnostics", t.diagnostics + static_cast<long>(rep.global_diagnostics.size())}}},
        {"derived",
         {{"loc_reduction_pct", opt_json(loc_reduction_pct(t))},
          {"function_reduction_pct", opt_json(function_reduction_pct(t))},
          {"mapping_density_per_kloc", opt_json(mapping_density_per_kloc(t))},
          {"per_file_mean_loc_reduction_pct",
           opt_json(per_file_mean_loc_reduction_pct(rep.files))},
          {"binary_size_reduction_pct", nullptr},
          {"eliminated_libraries", nullptr}}},
        {"diagnostics", globals}};
    return j.dump(2) + "\n";
}

DebloatReport parse_machine_report(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    DebloatReport rep;
    for (const ordered_json& jf : j.at("files")) {
        FileResult f;
        f.path = jf.at("path").get<std::string>();
        f.loc_before = jf.at("loc_before").get<long>();
        f.loc_after = jf.at("loc_after").get<long>();
        f.lines_removed = jf.at("lines_removed").get<long>();
        f.lines_inserted = jf.at("lines_inserted").get<long>();
        if (!jf.at("functions_before").is_null())
            f.functions_before = jf.at("functions_before").get<long>();
        if (!jf.at("functions_after").is_null())
            f.functions_after = jf.at("functions_after").get<long>();
        f.found = counts_from_json(jf.at("mappings_found"));
        f.fired = counts_from_json(jf.at("mappings_fired"));
        for (const ordered_json& jd : jf.at("diagnostics"))
            f.diagnostics.push_back(diag_from_json(jd));
        rep.files.push_back(std::move(f));
    }
    for (const ordered_json& jd : j.at("diagnostics"))
        rep.global_diagnostics.push_back(diag_from_json(jd));
    return rep;
}

}  // namespace carve::report
