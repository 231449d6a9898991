#include <doctest.h>

#include "dravnmt/errors.hpp"
#include "dravnmt/utf8.hpp"

using namespace dravnmt;

TEST_CASE("ascii round trip") {
    const std::string s = "hello, 123.";
    CHECK(utf8::encode(utf8::decode(s)) == s);
    CHECK(utf8::length(s) == s.size());
}

TEST_CASE("multibyte decode") {
    const std::string kn = "\xE0\xB2\x95";  // U+0C95
    const auto cps = utf8::decode(kn);
    REQUIRE(cps.size() == 1);
    CHECK(cps[0] == 0x0C95);
    CHECK(utf8::encode_one(0x0C95) == kn);
}

TEST_CASE("invalid input throws") {
    CHECK_THROWS_AS(utf8::decode("\xE0\xB2"), EncodingError);   // truncated
    CHECK_THROWS_AS(utf8::decode("\x80"), EncodingError);       // lone cont.
    CHECK_THROWS_AS(utf8::decode("\xC0\xAF"), EncodingError);   // overlong
    CHECK_THROWS_AS(utf8::decode("\xED\xA0\x80"), EncodingError);  // surrogate
    CHECK_FALSE(utf8::is_valid("\xFF"));
    CHECK(utf8::is_valid("ok"));
}

TEST_CASE("round trip across planes") {
    std::u32string cps = {0x41, 0x0964, 0x2581, 0x0C95, 0x1F600};
    CHECK(utf8::decode(utf8::encode(cps)) == cps);
}
