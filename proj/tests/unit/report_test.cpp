#include <doctest.h>

#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "carve/report.hpp"

using namespace carve;
using namespace carve::report;

namespace {

FileResult make_file(std::string path, long before, long after, long removed, long inserted,
                     MappingCounts found, MappingCounts fired) {
    FileResult f;
    f.path = std::move(path);
    f.loc_before = before;
    f.loc_after = after;
    f.lines_removed = removed;
    f.lines_inserted = inserted;
    f.found = found;
    f.fired = fired;
    return f;
}

std::vector<FileResult> sample_files() {
    FileResult a = make_file("a.c", 100, 60, 50, 10, {1, 2, 3}, {0, 1, 2});
    a.functions_before = 10;
    a.functions_after = 6;
    a.diagnostics.push_back(
        {Severity::Warning, DiagCode::SuspiciousTaggedText, "a.c", 4, "odd tagged line"});
    FileResult b = make_file("b.c", 50, 50, 0, 0, {0, 0, 1}, {});
    return {a, b};
}

}  // namespace

TEST_CASE("compute_totals sums every field") {
    Totals t = compute_totals(sample_files());
    CHECK(t.files == 2);
    CHECK(t.loc_before == 150);
    CHECK(t.loc_after == 110);
    CHECK(t.lines_removed == 50);
    CHECK(t.lines_inserted == 10);
    CHECK(t.found == MappingCounts{1, 2, 4});
    CHECK(t.fired == MappingCounts{0, 1, 2});
    CHECK(t.diagnostics == 1);
    // files without function counts do not poison the sum
    CHECK(t.functions_before == 10);
    CHECK(t.functions_after == 6);
}

TEST_CASE("function totals stay absent when no file has them") {
    std::vector<FileResult> files = {make_file("x.c", 5, 5, 0, 0, {}, {})};
    Totals t = compute_totals(files);
    CHECK(!t.functions_before.has_value());
    CHECK(!t.functions_after.has_value());
}

TEST_CASE("combine agrees with computing totals over the concatenation") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<FileResult> all;
        int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            long before = static_cast<long>(rng() % 200);
            long after = before - static_cast<long>(rng() % (before + 1));
            FileResult f = make_file("f" + std::to_string(i) + ".c", before, after,
                                     before - after, 0,
                                     {static_cast<long>(rng() % 2),
                                      static_cast<long>(rng() % 3),
                                      static_cast<long>(rng() % 4)},
                                     {});
            if (rng() % 2) {
                f.functions_before = static_cast<long>(rng() % 9);
                f.functions_after = *f.functions_before / 2;
            }
            all.push_back(std::move(f));
        }
        size_t cut = rng() % (all.size() + 1);
        std::vector<FileResult> left(all.begin(), all.begin() + cut);
        std::vector<FileResult> right(all.begin() + cut, all.end());
        CHECK(combine(compute_totals(left), compute_totals(right)) == compute_totals(all));

        // associativity over a three-way split
        size_t cut2 = cut + rng() % (all.size() - cut + 1);
        std::vector<FileResult> mid(all.begin() + cut, all.begin() + cut2);
        std::vector<FileResult> tail(all.begin() + cut2, all.end());
        Totals l = compute_totals(left), m = compute_totals(mid), r = compute_totals(tail);
        CHECK(combine(combine(l, m), r) == combine(l, combine(m, r)));
    }
}

TEST_CASE("combine with empty totals is the identity") {
    Totals t = compute_totals(sample_files());
    CHECK(combine(t, Totals{}) == t);
    CHECK(combine(Totals{}, t) == t);
}

TEST_CASE("derived metrics") {
    Totals t = compute_totals(sample_files());
    CHECK(*loc_reduction_pct(t) == doctest::Approx(100.0 * 40 / 150));
    CHECK(*function_reduction_pct(t) == doctest::Approx(40.0));
    CHECK(*mapping_density_per_kloc(t) == doctest::Approx(1000.0 * 7 / 150));
    // pooled and per-file means differ by design: 40% and 0% average to 20
    CHECK(*per_file_mean_loc_reduction_pct(sample_files()) == doctest::Approx(20.0));

    Totals density_probe;
    density_probe.loc_before = 10000;
    density_probe.found = {15, 100, 500};
    CHECK(*mapping_density_per_kloc(density_probe) == doctest::Approx(61.5));
}

TEST_CASE("derived metrics are absent on empty denominators") {
    Totals empty;
    CHECK(!loc_reduction_pct(empty).has_value());
    CHECK(!function_reduction_pct(empty).has_value());
    CHECK(!mapping_density_per_kloc(empty).has_value());
    CHECK(!per_file_mean_loc_reduction_pct({}).has_value());
    // a file with zero lines cannot contribute to the mean
    std::vector<FileResult> zero = {make_file("z.c", 0, 0, 0, 0, {}, {})};
    CHECK(!per_file_mean_loc_reduction_pct(zero).has_value());
    // functions present but zero
    Totals fz;
    fz.functions_before = 0;
    fz.functions_after = 0;
    CHECK(!function_reduction_pct(fz).has_value());
}

TEST_CASE("machine report round-trips files and global diagnostics") {
    DebloatReport rep;
    rep.files = sample_files();
    rep.global_diagnostics.push_back(
        {Severity::Error, DiagCode::IoError, "c.c", 0, "cannot read file"});
    DebloatReport parsed = parse_machine_report(render_machine_report(rep));
    CHECK(parsed == rep);
}

TEST_CASE("machine report shape") {
    DebloatReport rep;
    rep.files = sample_files();
    rep.global_diagnostics.push_back(
        {Severity::Error, DiagCode::IoError, "c.c", 0, "cannot read file"});
    nlohmann::json j = nlohmann::json::parse(render_machine_report(rep));

    CHECK(j["files"].size() == 2);
    CHECK(j["files"][0]["path"] == "a.c");
    CHECK(j["files"][0]["mappings_found"]["total"] == 6);
    CHECK(j["files"][1]["functions_before"].is_null());
    CHECK(j["files"][1]["functions_after"].is_null());
    CHECK(j["totals"]["loc_before"] == 150);
    // the totals row counts file plus global diagnostics
    CHECK(j["totals"]["diagnostics"] == 2);
    CHECK(j["derived"]["binary_size_reduction_pct"].is_null());
    CHECK(j["derived"]["eliminated_libraries"].is_null());
    CHECK(j["derived"]["loc_reduction_pct"].get<double>() ==
          doctest::Approx(100.0 * 40 / 150));
    CHECK(j["diagnostics"].size() == 1);
    CHECK(j["diagnostics"][0]["code"] == "IoError");
    CHECK(j["diagnostics"][0]["severity"] == "error");
}

TEST_CASE("text report lists totals, files and diagnostics") {
    DebloatReport rep;
    rep.files = {sample_files()[1], sample_files()[0]};  // unsorted on purpose
    rep.global_diagnostics.push_back(
        {Severity::Error, DiagCode::IoError, "c.c", 0, "cannot read file"});
    std::string text = render_text_report(rep);

    CHECK(text.find("files                 2\n") != std::string::npos);
    CHECK(text.find("loc before            150\n") != std::string::npos);
    CHECK(text.find("mappings found        7 (file 1, segment 2, implicit 4)\n") !=
          std::string::npos);
    CHECK(text.find("loc reduction         26.67%\n") != std::string::npos);
    CHECK(text.find("mean file reduction   20.00%\n") != std::string::npos);
    CHECK(text.find("a.c: loc 100 -> 60, removed 50, inserted 10, fired 3/6, functions 10 "
                    "-> 6\n") != std::string::npos);
    CHECK(text.find("b.c: loc 50 -> 50, removed 0, inserted 0, fired 0/1\n") !=
          std::string::npos);
    // files come out sorted by path
    CHECK(text.find("a.c:") < text.find("b.c:"));
    CHECK(text.find("2 diagnostics\n") != std::string::npos);
}

TEST_CASE("text report shows n/a when functions are unknown") {
    DebloatReport rep;
    rep.files = {make_file("x.c", 5, 5, 0, 0, {}, {})};
    std::string text = render_text_report(rep);
    CHECK(text.find("functions before      n/a\n") != std::string::npos);
    CHECK(text.find("function reduction    n/a\n") != std::string::npos);
    CHECK(text.find("0 diagnostics\n") != std::string::npos);
}

TEST_CASE("parse_machine_report rejects malformed input") {
    CHECK_THROWS(parse_machine_report("not json"));
    CHECK_THROWS(parse_machine_report("{}"));

    DebloatReport rep;
    rep.files = sample_files();
    std::string good = render_machine_report(rep);

    std::string bad_sev = good;
    bad_sev.replace(bad_sev.find("\"warning\""), 9, "\"scream\"");
    CHECK_THROWS_WITH(parse_machine_report(bad_sev), "report names an unknown severity");

    std::string bad_code = good;
    bad_code.replace(bad_code.find("\"SuspiciousTaggedText\""), 22, "\"NoSuchCode\"");
    CHECK_THROWS_WITH(parse_machine_report(bad_code), "report names an unknown diagnostic code");
}
