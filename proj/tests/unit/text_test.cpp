#include <doctest.h>

#include <random>
#include <string>

#include "carve/text.hpp"

using carve::SourceText;

TEST_CASE("from_bytes splits lines and keeps terminators") {
    auto src = SourceText::from_bytes("a\nbb\r\nccc");
    REQUIRE(src.line_count() == 3);
    CHECK(src.line(0) == "a");
    CHECK(src.ending(0) == "\n");
    CHECK(src.line(1) == "bb");
    CHECK(src.ending(1) == "\r\n");
    CHECK(src.line(2) == "ccc");
    CHECK(src.ending(2) == "");
}

TEST_CASE("empty input has no lines") {
    auto src = SourceText::from_bytes("");
    CHECK(src.line_count() == 0);
    CHECK(src.to_bytes() == "");
}

TEST_CASE("lone newline is one empty line") {
    auto src = SourceText::from_bytes("\n");
    REQUIRE(src.line_count() == 1);
    CHECK(src.line(0) == "");
    CHECK(src.ending(0) == "\n");
}

TEST_CASE("round trip preserves bytes exactly") {
    const char* cases[] = {
        "",           "\n",       "\r\n",          "x",       "x\n",
        "x\r\ny\r\n", "a\n\n\nb", "mixed\r\nlf\n", "trail\r", "\r\r\n",
    };
    for (const char* c : cases) {
        CAPTURE(c);
        CHECK(SourceText::from_bytes(c).to_bytes() == c);
    }
}

TEST_CASE("bare carriage return stays inside the line") {
    // Only \n and \r\n are terminators; a lone \r is content.
    auto src = SourceText::from_bytes("a\rb\n");
    REQUIRE(src.line_count() == 1);
    CHECK(src.line(0) == "a\rb");
}

TEST_CASE("round trip fuzz") {
    std::mt19937 rng(7);
    const char alphabet[] = {'a', 'b', '\n', '\r', ' ', '\t', 'z'};
    for (int iter = 0; iter < 200; ++iter) {
        std::string s;
        int len = static_cast<int>(rng() % 60);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % sizeof(alphabet)];
        CAPTURE(iter);
        auto src = SourceText::from_bytes(s);
        CHECK(src.to_bytes() == s);
        for (int i = 0; i < src.line_count(); ++i) {
            CHECK(src.line(i).find('\n') == std::string::npos);
        }
    }
}

TEST_CASE("push_line appends") {
    SourceText src;
    src.push_line("one");
    src.push_line("two", "");
    CHECK(src.to_bytes() == "one\ntwo");
}

TEST_CASE("whitespace helpers") {
    CHECK(carve::leading_whitespace("   x") == "   ");
    CHECK(carve::leading_whitespace("\t x") == "\t ");
    CHECK(carve::leading_whitespace("x") == "");
    CHECK(carve::leading_whitespace("   ") == "   ");
    CHECK(carve::trim("  a b  ") == "a b");
    CHECK(carve::trim("") == "");
    CHECK(carve::trim(" \t ") == "");
    CHECK(carve::is_blank(""));
    CHECK(carve::is_blank(" \t "));
    CHECK(!carve::is_blank(" x "));
}
