#include "dravnmt/script.hpp"

#include <algorithm>
#include <array>

#include "dravnmt/errors.hpp"
#include "dravnmt/utf8.hpp"

namespace dravnmt {

namespace {

constexpr std::array<char32_t, kScriptCount> kBases = {
    0x0900,  // Devanagari
    0x0B80,  // Tamil
    0x0C00,  // Telugu
    0x0C80,  // Kannada
    0x0D00,  // Malayalam
};

constexpr std::array<std::string_view, kScriptCount> kNames = {
    "deva", "ta", "te", "kn", "ml"};

// Assignment snapshot, one row of 128 flags per script in enum order.
constexpr bool kAssigned[kScriptCount][kBlockLen] = {
#include "script_table.inc"
};

constexpr char32_t kDanda = 0x0964;
constexpr char32_t kDoubleDanda = 0x0965;

// Offsets ignored when deciding a text's script: dandas (shared punctuation
// that happens to live in the Devanagari block) and the per-block digits.
bool detection_neutral_offset(int offset) {
    return offset == 0x64 || offset == 0x65 ||
           (offset >= 0x66 && offset <= 0x6F);
}

}  // namespace

char32_t script_base(Script s) { return kBases[static_cast<int>(s)]; }

std::string_view script_name(Script s) { return kNames[static_cast<int>(s)]; }

std::optional<Script> script_from_name(std::string_view name) {
    for (int i = 0; i < kScriptCount; ++i) {
        if (kNames[i] == name) return static_cast<Script>(i);
    }
    if (name == "devanagari") return Script::Devanagari;
    if (name == "tamil") return Script::Tamil;
    if (name == "telugu") return Script::Telugu;
    if (name == "kannada") return Script::Kannada;
    if (name == "malayalam") return Script::Malayalam;
    return std::nullopt;
}

const std::vector<Script>& all_scripts() {
    static const std::vector<Script> kAll = {
        Script::Devanagari, Script::Tamil, Script::Telugu, Script::Kannada,
        Script::Malayalam};
    return kAll;
}

bool offset_assigned(Script s, int offset) {
    return offset >= 0 && offset < kBlockLen &&
           kAssigned[static_cast<int>(s)][offset];
}

std::vector<int> mapped_offsets(Script src, Script tgt) {
    std::vector<int> out;
    for (int o = 0; o < kBlockLen; ++o) {
        if (offset_assigned(src, o) && offset_assigned(tgt, o)) {
            out.push_back(o);
        }
    }
    return out;
}

std::optional<Script> script_of(char32_t cp) {
    for (int i = 0; i < kScriptCount; ++i) {
        if (cp >= kBases[i] && cp < kBases[i] + kBlockLen) {
            return static_cast<Script>(i);
        }
    }
    return std::nullopt;
}

ScriptDetection detect_script(std::string_view text) {
    const std::u32string cps = utf8::decode(text);
    bool any_content = false;
    bool found = false;
    bool mixed = false;
    Script script = Script::Devanagari;
    for (char32_t cp : cps) {
        if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r') continue;
        any_content = true;
        const auto s = script_of(cp);
        if (!s) continue;
        if (detection_neutral_offset(static_cast<int>(cp - script_base(*s)))) {
            continue;
        }
        if (!found) {
            found = true;
            script = *s;
        } else if (*s != script) {
            mixed = true;
        }
    }
    if (!any_content) throw EmptyInput("detect_script: empty text");
    if (mixed) return {ScriptDetection::Kind::Mixed, script};
    if (!found) return {ScriptDetection::Kind::NonIndic, script};
    return {ScriptDetection::Kind::Single, script};
}

std::u32string transliterate(std::u32string_view text, Script src,
                             Script tgt) {
    if (src == tgt) return std::u32string(text);
    const char32_t sbase = script_base(src);
    const char32_t tbase = script_base(tgt);
    std::u32string out(text);
    for (char32_t& cp : out) {
        if (cp < sbase || cp >= sbase + kBlockLen) continue;
        const int offset = static_cast<int>(cp - sbase);
        if (offset_assigned(src, offset) && offset_assigned(tgt, offset)) {
            cp = tbase + offset;
        }
    }
    return out;
}

std::string transliterate(std::string_view text, Script src, Script tgt) {
    return utf8::encode(transliterate(utf8::decode(text), src, tgt));
}

bool is_danda(char32_t cp) { return cp == kDanda || cp == kDoubleDanda; }

}  // namespace dravnmt
