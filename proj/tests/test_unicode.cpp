#include <catch2/catch_amalgamated.hpp>

#include "norma/unicode.hpp"

using namespace norma;

TEST_CASE("utf8 round trip") {
    const std::string samples[] = {"", "abc", "caffè", "rondaniña", "sciô ▁", "한국어", "𝄞 clef"};
    for (const auto& s : samples) {
        CHECK(utf8_encode(utf8_decode(s)) == s);
    }
}

TEST_CASE("utf8 rejects malformed input") {
    CHECK_THROWS_AS(utf8_decode("\xC3"), DataError);          // truncated
    CHECK_THROWS_AS(utf8_decode("\x80"), DataError);          // stray continuation
    CHECK_THROWS_AS(utf8_decode("\xC0\xAF"), DataError);      // overlong
    CHECK_THROWS_AS(utf8_decode("\xED\xA0\x80"), DataError);  // surrogate
    CHECK_THROWS_AS(utf8_decode("\xF5\x80\x80\x80"), DataError);
}

// Expected sequences frozen from an independent NFC implementation.
TEST_CASE("nfc composes canonical sequences") {
    CHECK(nfc(U"é") == U"é");
    CHECK(nfc(U"á̖") == U"á̖");
    CHECK(nfc(U"Å") == U"Å");
    CHECK(nfc(U"가") == U"가");
    CHECK(nfc(U"각") == U"각");
    CHECK(nfc(U"rondaniña") == U"rondaniña");
    CHECK(nfc(U"pösâ") == U"pösâ");
    CHECK(nfc(U"Ǻ") == U"Ǻ");
    CHECK(nfc(U"q̣̇") == U"q̣̇"); // canonical reordering
    CHECK(nfc(U"́ͅ") == U"́ͅ");
}

TEST_CASE("nfc leaves composed text unchanged") {
    const std::string samples[] = {"rondaniña affammâ", "sciô é pösâ", "plain ascii", "Ûnn-a"};
    for (const auto& s : samples) {
        CHECK(nfc_utf8(s) == s);
    }
}

TEST_CASE("nfc is idempotent on random combining sequences") {
    norma::Rng rng(42);
    const char32_t pool[] = {U'a', U'e', U'o', U'n', U' ',  0x301, 0x300, 0x302,
                             0x303, 0x308, 0x316, 0x30A, 0x327, 0x1100, 0x1161, 0x11A8};
    for (int trial = 0; trial < 500; ++trial) {
        u32string s;
        const int len = 1 + static_cast<int>(rng.below(12));
        for (int i = 0; i < len; ++i) s.push_back(pool[rng.below(std::size(pool))]);
        const u32string once = nfc(s);
        CHECK(nfc(once) == once);
    }
}
