#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dravnmt {

// The five supported scripts. Each occupies one 128-codepoint Unicode block.
enum class Script { Devanagari, Tamil, Telugu, Kannada, Malayalam };

inline constexpr int kScriptCount = 5;
inline constexpr int kBlockLen = 128;

char32_t script_base(Script s);
std::string_view script_name(Script s);   // "deva", "ta", "te", "kn", "ml"
std::optional<Script> script_from_name(std::string_view name);
const std::vector<Script>& all_scripts();

// True when base+offset is an assigned codepoint in the bundled Unicode
// snapshot (see src/script_table.inc).
bool offset_assigned(Script s, int offset);

// Offsets assigned in both scripts; the bijective domain of transliteration.
std::vector<int> mapped_offsets(Script src, Script tgt);

// Script whose block contains cp, if any.
std::optional<Script> script_of(char32_t cp);

struct ScriptDetection {
    enum class Kind { Single, Mixed, NonIndic };
    Kind kind;
    Script script;  // valid when kind == Single
};

// Decides the script of a text: the unique block containing every Indic
// codepoint, Mixed if two or more blocks occur, NonIndic otherwise. Digits,
// dandas, and anything outside the five blocks are ignored for the decision.
// Throws EmptyInput on whitespace-only text.
ScriptDetection detect_script(std::string_view text);

// Offset-preserving transliteration. A codepoint in src's block whose offset
// is assigned in both scripts moves to tgt's block; everything else passes
// through unchanged. Total and codepoint-length preserving.
std::string transliterate(std::string_view text, Script src, Script tgt);
std::u32string transliterate(std::u32string_view text, Script src, Script tgt);

// Danda / double danda, shared sentence punctuation across the scripts.
bool is_danda(char32_t cp);

}  // namespace dravnmt
