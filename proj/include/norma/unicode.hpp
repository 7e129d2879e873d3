#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "norma/common.hpp"
#include "norma/unicode_data.hpp"

namespace norma {

using u32string = std::u32string;

// ---------------------------------------------------------------------------
// UTF-8 codec
// ---------------------------------------------------------------------------

// Decodes UTF-8, rejecting overlong forms, surrogates and truncated input.
inline u32string utf8_decode(std::string_view s) {
    u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        int extra = 0;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            extra = 1;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            extra = 2;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            extra = 3;
        } else {
            throw DataError("invalid UTF-8 byte at offset " + std::to_string(i));
        }
        if (extra > 0 && i + static_cast<std::size_t>(extra) >= s.size())
            throw DataError("truncated UTF-8 sequence at offset " + std::to_string(i));
        for (int k = 1; k <= extra; ++k) {
            const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
            if ((b & 0xC0) != 0x80)
                throw DataError("invalid UTF-8 continuation at offset " +
                                std::to_string(i + static_cast<std::size_t>(k)));
            cp = (cp << 6) | (b & 0x3F);
        }
        const char32_t min_cp[4] = {0, 0x80, 0x800, 0x10000};
        if (cp < min_cp[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw DataError("invalid UTF-8 scalar at offset " + std::to_string(i));
        out.push_back(cp);
        i += static_cast<std::size_t>(extra) + 1;
    }
    return out;
}

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string utf8_encode(const u32string& s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) utf8_append(out, cp);
    return out;
}

// ---------------------------------------------------------------------------
// NFC normalization (UAX #15: full canonical decomposition, canonical
// ordering, canonical composition; Hangul handled algorithmically)
// ---------------------------------------------------------------------------

namespace detail {

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = 11172;

inline int combining_class(char32_t cp) {
    const auto* begin = std::begin(ucd::kCcc);
    const auto* end = std::end(ucd::kCcc);
    const auto* it = std::lower_bound(begin, end, cp,
        [](const ucd::CccEntry& e, char32_t c) { return e.cp < c; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

inline void decompose_to(char32_t cp, u32string& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        const int s = static_cast<int>(cp - kHangulSBase);
        out.push_back(kHangulLBase + static_cast<char32_t>(s / kHangulNCount));
        out.push_back(kHangulVBase + static_cast<char32_t>((s % kHangulNCount) / kHangulTCount));
        const int t = s % kHangulTCount;
        if (t > 0) out.push_back(kHangulTBase + static_cast<char32_t>(t));
        return;
    }
    const auto* begin = std::begin(ucd::kDecomp);
    const auto* end = std::end(ucd::kDecomp);
    const auto* it = std::lower_bound(begin, end, cp,
        [](const ucd::DecompEntry& e, char32_t c) { return e.cp < c; });
    if (it != end && it->cp == cp) {
        for (std::uint32_t k = 0; k < it->len; ++k)
            out.push_back(ucd::kDecompData[it->offset + k]);
    } else {
        out.push_back(cp);
    }
}

inline bool compose_pair(char32_t a, char32_t b, char32_t& out) {
    if (a >= kHangulLBase && a < kHangulLBase + 19 &&
        b >= kHangulVBase && b < kHangulVBase + kHangulVCount) {
        out = kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) *
                                 static_cast<char32_t>(kHangulTCount);
        return true;
    }
    if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
        (a - kHangulSBase) % kHangulTCount == 0 &&
        b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
        out = a + (b - kHangulTBase);
        return true;
    }
    const auto* begin = std::begin(ucd::kCompose);
    const auto* end = std::end(ucd::kCompose);
    const auto* it = std::lower_bound(begin, end, std::pair<char32_t, char32_t>{a, b},
        [](const ucd::ComposePair& e, const std::pair<char32_t, char32_t>& key) {
            return e.first != key.first ? e.first < key.first : e.second < key.second;
        });
    if (it != end && it->first == a && it->second == b) {
        out = it->composed;
        return true;
    }
    return false;
}

} // namespace detail

inline u32string nfc(const u32string& in) {
    // Decompose.
    u32string d;
    d.reserve(in.size());
    for (char32_t cp : in) detail::decompose_to(cp, d);

    // Canonical ordering: stable bubble of combining marks by ccc.
    for (std::size_t i = 1; i < d.size(); ++i) {
        const int cc = detail::combining_class(d[i]);
        if (cc == 0) continue;
        std::size_t j = i;
        while (j > 0 && detail::combining_class(d[j - 1]) > cc) {
            std::swap(d[j - 1], d[j]);
            --j;
        }
    }

    // Compose.
    u32string out;
    out.reserve(d.size());
    std::ptrdiff_t starter = -1;
    int last_ccc = 0;
    for (char32_t cp : d) {
        const int cc = detail::combining_class(cp);
        if (starter >= 0) {
            const bool adjacent = last_ccc == 0 &&
                                  static_cast<std::size_t>(starter) + 1 == out.size();
            if (adjacent || last_ccc < cc) {
                char32_t composed;
                if (detail::compose_pair(out[static_cast<std::size_t>(starter)], cp, composed)) {
                    out[static_cast<std::size_t>(starter)] = composed;
                    continue;
                }
            }
        }
        out.push_back(cp);
        if (cc == 0) {
            starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
            last_ccc = 0;
        } else {
            last_ccc = cc;
        }
    }
    return out;
}

inline std::string nfc_utf8(std::string_view s) { return utf8_encode(nfc(utf8_decode(s))); }

} // namespace norma
