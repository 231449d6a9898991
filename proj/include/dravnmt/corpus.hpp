#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dravnmt/script.hpp"

namespace dravnmt {

class BpeModel;

// The four languages the pipeline translates between.
enum class LanguageId { kn, ml, te, ta };

inline constexpr int kLanguageCount = 4;

std::string_view lang_code(LanguageId lang);
std::optional<LanguageId> lang_from_code(std::string_view code);
const std::vector<LanguageId>& all_languages();
Script native_script(LanguageId lang);

struct Direction {
    LanguageId src;
    LanguageId tgt;

    std::string key() const;  // "kn-ml"
    static std::optional<Direction> parse(std::string_view key);

    friend bool operator==(const Direction&, const Direction&) = default;
    friend auto operator<=>(const Direction&, const Direction&) = default;
};

// All ordered pairs over the given languages, |L|*(|L|-1) of them.
std::vector<Direction> enumerate_directions(std::span<const LanguageId> langs);

// Reserved atomic symbols. Tags mark the translation direction, kEndToken
// closes every training sentence.
std::string src_tag(LanguageId lang);
std::string tgt_tag(LanguageId lang);
inline constexpr std::string_view kEndToken = "[END]";

// Removes tokens containing codepoints foreign to the expected language's
// script (Latin letters and other scripts' letters; ASCII digits,
// punctuation, and dandas are neutral). Returns nullopt when the input is
// empty or more than half of the tokens were foreign.
std::optional<std::string> clean_sentence(std::string_view raw,
                                          LanguageId expected);

// Whitespace tokenization with terminal punctuation ({. ? ! danda}) split
// off. A period stays attached after a single-letter abbreviation.
std::vector<std::string> tokenize(std::string_view sentence);

struct IngestReport {
    std::size_t read = 0;
    std::size_t kept = 0;
    std::size_t rejected_src = 0;
    std::size_t rejected_tgt = 0;
};

struct ParallelCorpus {
    Direction direction;
    std::vector<std::pair<std::string, std::string>> pairs;
    // 1-based input line number each kept pair came from.
    std::vector<std::size_t> source_lines;
    IngestReport report;
    std::string src_path;
    std::string tgt_path;
};

// Reads two line-aligned files, cleans both sides, drops pairs with a
// rejected side. Throws LineCountMismatch / IoError / EncodingError.
ParallelCorpus ingest_parallel(const std::filesystem::path& src_file,
                               const std::filesystem::path& tgt_file,
                               Direction direction);

struct PreparedPair {
    std::string source_line;  // "__src__x1__ __tgt__x2__ <pieces> [END]"
    std::string target_line;  // "<pieces> [END]"
};

// Transliterates both sides to the shared script, tokenizes, subword-encodes
// and renders the tagged training lines. The pair must already be clean.
PreparedPair prepare_pair(const std::pair<std::string, std::string>& pair,
                          Direction direction, Script translit_target,
                          const BpeModel& subword);

}  // namespace dravnmt
