#include "dravnmt/corpus.hpp"

#include <fstream>
#include <sstream>

#include "dravnmt/bpe.hpp"
#include "dravnmt/errors.hpp"
#include "dravnmt/utf8.hpp"

namespace dravnmt {

namespace {

constexpr std::array<std::string_view, kLanguageCount> kCodes = {"kn", "ml",
                                                                 "te", "ta"};

constexpr std::array<Script, kLanguageCount> kNativeScripts = {
    Script::Kannada, Script::Malayalam, Script::Telugu, Script::Tamil};

bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
           cp == U'\f' || cp == U'\v';
}

bool is_ascii_letter(char32_t cp) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

// Codepoints that may appear in any sentence regardless of script: ASCII
// digits and punctuation, dandas, and general punctuation/currency.
bool is_neutral(char32_t cp) {
    if (cp < 0x80) return !is_ascii_letter(cp);
    if (is_danda(cp)) return true;
    if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation
    if (cp == 0x20B9) return true;                  // rupee sign
    return false;
}

enum class TokenClass { Native, Neutral, Foreign };

TokenClass classify_token(std::u32string_view token, Script expected) {
    bool any_native = false;
    for (char32_t cp : token) {
        if (is_neutral(cp)) continue;
        const auto s = script_of(cp);
        if (s && *s == expected) {
            any_native = true;
            continue;
        }
        return TokenClass::Foreign;
    }
    return any_native ? TokenClass::Native : TokenClass::Neutral;
}

std::vector<std::u32string> split_whitespace(std::u32string_view text) {
    std::vector<std::u32string> out;
    std::u32string cur;
    for (char32_t cp : text) {
        if (is_space_cp(cp)) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool is_terminal_punct(char32_t cp) {
    return cp == U'.' || cp == U'?' || cp == U'!' || is_danda(cp);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!utf8::is_valid(line)) {
            throw EncodingError(path.string() + ":" +
                                std::to_string(lines.size() + 1) +
                                ": invalid UTF-8");
        }
        lines.push_back(std::move(line));
    }
    if (in.bad()) throw IoError("read failure on " + path.string());
    return lines;
}

}  // namespace

std::string_view lang_code(LanguageId lang) {
    return kCodes[static_cast<int>(lang)];
}

std::optional<LanguageId> lang_from_code(std::string_view code) {
    for (int i = 0; i < kLanguageCount; ++i) {
        if (kCodes[i] == code) return static_cast<LanguageId>(i);
    }
    return std::nullopt;
}

const std::vector<LanguageId>& all_languages() {
    static const std::vector<LanguageId> kAll = {
        LanguageId::kn, LanguageId::ml, LanguageId::te, LanguageId::ta};
    return kAll;
}

Script native_script(LanguageId lang) {
    return kNativeScripts[static_cast<int>(lang)];
}

std::string Direction::key() const {
    return std::string(lang_code(src)) + "-" + std::string(lang_code(tgt));
}

std::optional<Direction> Direction::parse(std::string_view key) {
    const auto dash = key.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    const auto s = lang_from_code(key.substr(0, dash));
    const auto t = lang_from_code(key.substr(dash + 1));
    if (!s || !t || *s == *t) return std::nullopt;
    return Direction{*s, *t};
}

std::vector<Direction> enumerate_directions(
    std::span<const LanguageId> langs) {
    std::vector<Direction> out;
    for (LanguageId a : langs) {
        for (LanguageId b : langs) {
            if (a != b) out.push_back({a, b});
        }
    }
    return out;
}

std::string src_tag(LanguageId lang) {
    return "__src__" + std::string(lang_code(lang)) + "__";
}

std::string tgt_tag(LanguageId lang) {
    return "__tgt__" + std::string(lang_code(lang)) + "__";
}

std::optional<std::string> clean_sentence(std::string_view raw,
                                          LanguageId expected) {
    const auto tokens = split_whitespace(utf8::decode(raw));
    if (tokens.empty()) return std::nullopt;
    const Script script = native_script(expected);
    std::u32string cleaned;
    std::size_t kept = 0;
    for (const auto& tok : tokens) {
        if (classify_token(tok, script) == TokenClass::Foreign) continue;
        if (kept > 0) cleaned.push_back(U' ');
        cleaned += tok;
        ++kept;
    }
    const std::size_t removed = tokens.size() - kept;
    if (kept == 0 || removed * 2 > tokens.size()) return std::nullopt;
    return utf8::encode(cleaned);
}

std::vector<std::string> tokenize(std::string_view sentence) {
    const auto words = split_whitespace(utf8::decode(sentence));
    if (words.empty()) throw EmptyInput("tokenize: empty sentence");
    std::vector<std::string> out;
    for (const auto& word : words) {
        std::u32string stem = word;
        std::vector<char32_t> trailing;
        while (stem.size() > 1 && is_terminal_punct(stem.back())) {
            // A period after a single letter marks an abbreviation and is
            // kept attached; dandas and ?/! always split.
            if (stem.back() == U'.' && stem.size() == 2 &&
                !is_terminal_punct(stem.front())) {
                break;
            }
            trailing.push_back(stem.back());
            stem.pop_back();
        }
        if (!stem.empty()) out.push_back(utf8::encode(stem));
        for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
            out.push_back(utf8::encode_one(*it));
        }
    }
    return out;
}

ParallelCorpus ingest_parallel(const std::filesystem::path& src_file,
                               const std::filesystem::path& tgt_file,
                               Direction direction) {
    auto src_lines = read_lines(src_file);
    auto tgt_lines = read_lines(tgt_file);
    if (src_lines.size() != tgt_lines.size()) {
        throw LineCountMismatch(src_file.string() + " has " +
                                std::to_string(src_lines.size()) +
                                " lines, " + tgt_file.string() + " has " +
                                std::to_string(tgt_lines.size()));
    }
    ParallelCorpus corpus;
    corpus.direction = direction;
    corpus.src_path = src_file.string();
    corpus.tgt_path = tgt_file.string();
    corpus.report.read = src_lines.size();

    const std::size_t n = src_lines.size();
    std::vector<std::optional<std::string>> src_clean(n), tgt_clean(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        src_clean[i] = clean_sentence(src_lines[i], direction.src);
        tgt_clean[i] = clean_sentence(tgt_lines[i], direction.tgt);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!src_clean[i]) ++corpus.report.rejected_src;
        if (!tgt_clean[i]) ++corpus.report.rejected_tgt;
        if (src_clean[i] && tgt_clean[i]) {
            corpus.pairs.emplace_back(std::move(*src_clean[i]),
                                      std::move(*tgt_clean[i]));
            corpus.source_lines.push_back(i + 1);
        }
    }
    corpus.report.kept = corpus.pairs.size();
    return corpus;
}

PreparedPair prepare_pair(const std::pair<std::string, std::string>& pair,
                          Direction direction, Script translit_target,
                          const BpeModel& subword) {
    if (!subword.trained()) {
        throw UntrainedModel("prepare_pair: subword model is not trained");
    }
    const auto render = [&](const std::string& side, LanguageId lang) {
        const std::string shared =
            transliterate(side, native_script(lang), translit_target);
        const auto pieces = subword.encode(tokenize(shared));
        std::string out;
        for (const auto& piece : pieces) {
            out += piece;
            out += ' ';
        }
        out += kEndToken;
        return out;
    };
    PreparedPair prepared;
    prepared.source_line = src_tag(direction.src) + " " +
                           tgt_tag(direction.tgt) + " " +
                           render(pair.first, direction.src);
    prepared.target_line = render(pair.second, direction.tgt);
    return prepared;
}

}  // namespace dravnmt
