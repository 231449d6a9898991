#include <doctest.h>

#include <string>

#include "dravnmt/errors.hpp"
#include "dravnmt/script.hpp"
#include "dravnmt/utf8.hpp"

using namespace dravnmt;

TEST_CASE("block bases") {
    CHECK(script_base(Script::Devanagari) == 0x0900);
    CHECK(script_base(Script::Tamil) == 0x0B80);
    CHECK(script_base(Script::Telugu) == 0x0C00);
    CHECK(script_base(Script::Kannada) == 0x0C80);
    CHECK(script_base(Script::Malayalam) == 0x0D00);
    // Pairwise disjoint 128-codepoint blocks.
    for (Script a : all_scripts()) {
        for (Script b : all_scripts()) {
            if (a == b) continue;
            const char32_t lo = script_base(a);
            const char32_t hi = script_base(a) + kBlockLen;
            CHECK((script_base(b) + kBlockLen <= lo || script_base(b) >= hi));
        }
    }
}

TEST_CASE("detect_script") {
    CHECK(detect_script("ಕನ್ನಡ").kind == ScriptDetection::Kind::Single);
    CHECK(detect_script("ಕನ್ನಡ").script == Script::Kannada);
    CHECK(detect_script("abc 123.").kind == ScriptDetection::Kind::NonIndic);
    CHECK(detect_script("क ಕ").kind == ScriptDetection::Kind::Mixed);
    // Digits, dandas and Latin are ignored for the decision.
    CHECK(detect_script("ಕನ್ನಡ 2021 ।").script == Script::Kannada);
    CHECK(detect_script("।").kind == ScriptDetection::Kind::NonIndic);
    CHECK_THROWS_AS(detect_script("   "), EmptyInput);
    CHECK_THROWS_AS(detect_script(""), EmptyInput);
}

TEST_CASE("transliterate examples") {
    // U+0D15 -> U+0915
    CHECK(transliterate("ക", Script::Malayalam, Script::Devanagari) ==
          "क");
    // U+0C15 -> U+0C95
    CHECK(transliterate("క", Script::Telugu, Script::Kannada) ==
          "ಕ");
    CHECK(transliterate("ಕನ್ನಡ", Script::Kannada, Script::Kannada) == "ಕನ್ನಡ");
    for (Script a : all_scripts()) {
        for (Script b : all_scripts()) {
            CHECK(transliterate("2021.", a, b) == "2021.");
        }
    }
}

TEST_CASE("round trip on mapped offsets, all 20 ordered pairs") {
    for (Script a : all_scripts()) {
        for (Script b : all_scripts()) {
            if (a == b) continue;
            const auto offsets = mapped_offsets(a, b);
            CHECK(!offsets.empty());
            std::u32string text;
            for (int o : offsets) text.push_back(script_base(a) + o);
            const auto there = transliterate(text, a, b);
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                CHECK(there[i] == script_base(b) + offsets[i]);
            }
            CHECK(transliterate(there, b, a) == text);
        }
    }
}

TEST_CASE("unassigned target offsets pass through") {
    // Kannada KHA has no Tamil counterpart at the same offset.
    REQUIRE(offset_assigned(Script::Kannada, 0x16));
    REQUIRE_FALSE(offset_assigned(Script::Tamil, 0x16));
    const std::u32string kha = {static_cast<char32_t>(0x0C80 + 0x16)};
    CHECK(transliterate(kha, Script::Kannada, Script::Tamil) == kha);
}

TEST_CASE("length preservation and passthrough outside the blocks") {
    const std::string mixed = "ಕ β 42 ” க x";
    for (Script a : all_scripts()) {
        for (Script b : all_scripts()) {
            const auto out = transliterate(mixed, a, b);
            CHECK(utf8::length(out) == utf8::length(mixed));
        }
    }
    // Codepoints below U+0900 and above U+0D7F are never altered.
    const std::u32string outside = {0x20, 0x41, 0x8FF, 0xD80, 0x2581, 0x1F600};
    for (Script a : all_scripts()) {
        for (Script b : all_scripts()) {
            CHECK(transliterate(outside, a, b) == outside);
        }
    }
}

TEST_CASE("mapped_offsets is symmetric and bijective") {
    for (Script a : all_scripts()) {
        for (Script b : all_scripts()) {
            CHECK(mapped_offsets(a, b) == mapped_offsets(b, a));
        }
    }
    // Devanagari block is fully assigned in the bundled snapshot.
    CHECK(mapped_offsets(Script::Devanagari, Script::Devanagari).size() ==
          128);
}

TEST_CASE("script names parse") {
    for (Script s : all_scripts()) {
        CHECK(script_from_name(script_name(s)) == s);
    }
    CHECK(script_from_name("devanagari") == Script::Devanagari);
    CHECK_FALSE(script_from_name("xx").has_value());
}
