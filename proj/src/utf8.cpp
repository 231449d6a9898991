#include "dravnmt/utf8.hpp"

#include "dravnmt/errors.hpp"

namespace dravnmt::utf8 {

namespace {

// Decodes one codepoint starting at text[i]. Returns false on malformed
// input; advances i past the sequence on success.
bool decode_one(std::string_view text, std::size_t& i, char32_t& out) {
    const auto byte = [&](std::size_t k) {
        return static_cast<unsigned char>(text[k]);
    };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        out = b0;
        i += 1;
        return true;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return false;
    }
    if (i + len > text.size()) return false;
    for (int k = 1; k < len; ++k) {
        const unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) return false;
        cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) return false;                  // overlong
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;    // surrogate
    if (cp > 0x10FFFF) return false;
    out = cp;
    i += len;
    return true;
}

}  // namespace

std::u32string decode(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    char32_t cp = 0;
    while (i < text.size()) {
        if (!decode_one(text, i, cp)) {
            throw EncodingError("invalid UTF-8 at byte offset " +
                                std::to_string(i));
        }
        out.push_back(cp);
    }
    return out;
}

std::string encode_one(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

std::string encode(std::u32string_view codepoints) {
    std::string out;
    out.reserve(codepoints.size() * 3);
    for (char32_t cp : codepoints) out += encode_one(cp);
    return out;
}

bool is_valid(std::string_view text) {
    std::size_t i = 0;
    char32_t cp = 0;
    while (i < text.size()) {
        if (!decode_one(text, i, cp)) return false;
    }
    return true;
}

std::size_t length(std::string_view text) {
    return decode(text).size();
}

}  // namespace dravnmt::utf8
