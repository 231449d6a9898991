#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include "dravnmt/bpe.hpp"
#include "dravnmt/corpus.hpp"
#include "dravnmt/errors.hpp"

using namespace dravnmt;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name,
                    const std::vector<std::string>& lines) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    for (const auto& l : lines) out << l << "\n";
    return p;
}

}  // namespace

TEST_CASE("language codes and native scripts") {
    CHECK(lang_code(LanguageId::kn) == "kn");
    CHECK(lang_from_code("ta") == LanguageId::ta);
    CHECK_FALSE(lang_from_code("en").has_value());
    CHECK(native_script(LanguageId::kn) == Script::Kannada);
    CHECK(native_script(LanguageId::ml) == Script::Malayalam);
    CHECK(native_script(LanguageId::te) == Script::Telugu);
    CHECK(native_script(LanguageId::ta) == Script::Tamil);
}

TEST_CASE("direction enumeration: n*(n-1), no duplicates") {
    const auto dirs = enumerate_directions(all_languages());
    CHECK(dirs.size() == 12);
    std::set<std::string> keys;
    for (const auto& d : dirs) {
        CHECK(d.src != d.tgt);
        keys.insert(d.key());
    }
    CHECK(keys.size() == 12);
    const auto two = std::vector<LanguageId>{LanguageId::kn, LanguageId::ta};
    CHECK(enumerate_directions(two).size() == 2);
}

TEST_CASE("direction parse") {
    const auto d = Direction::parse("kn-ml");
    REQUIRE(d.has_value());
    CHECK(d->src == LanguageId::kn);
    CHECK(d->tgt == LanguageId::ml);
    CHECK(d->key() == "kn-ml");
    CHECK_FALSE(Direction::parse("kn-kn").has_value());
    CHECK_FALSE(Direction::parse("kn").has_value());
    CHECK_FALSE(Direction::parse("xx-ml").has_value());
}

TEST_CASE("clean_sentence drops foreign tokens") {
    CHECK(clean_sentence("ಕನ್ನಡ hello ಪದ", LanguageId::kn) == "ಕನ್ನಡ ಪದ");
    CHECK(clean_sentence("ಕನ್ನಡ 2021.", LanguageId::kn) == "ಕನ್ನಡ 2021.");
    CHECK_FALSE(clean_sentence("", LanguageId::kn).has_value());
    CHECK_FALSE(clean_sentence("   ", LanguageId::kn).has_value());
    // More than half foreign -> rejected.
    CHECK_FALSE(clean_sentence("one two ಪದ", LanguageId::kn).has_value());
    // Exactly half removed is kept.
    CHECK(clean_sentence("one ಪದ", LanguageId::kn) == "ಪದ");
    // Other Indic scripts are foreign too.
    CHECK(clean_sentence("ಪದ ക", LanguageId::kn) == "ಪದ");
    // Dandas are neutral.
    CHECK(clean_sentence("ಪದ ।", LanguageId::kn) == "ಪದ ।");
    // Whitespace normalization.
    CHECK(clean_sentence("ಪದ\t ಕನ್ನಡ ", LanguageId::kn) == "ಪದ ಕನ್ನಡ");
}

TEST_CASE("tokenize splits terminal punctuation") {
    CHECK(tokenize("ನಮಸ್ಕಾರ.") == std::vector<std::string>{"ನಮಸ್ಕಾರ", "."});
    CHECK(tokenize("क। ख") == std::vector<std::string>{"क", "।", "ख"});
    // Single-letter abbreviation keeps its period.
    CHECK(tokenize("ಎ. ಪದ") == std::vector<std::string>{"ಎ.", "ಪದ"});
    CHECK(tokenize("ಪದ!?") == std::vector<std::string>{"ಪದ", "!", "?"});
    CHECK(tokenize("2021.") == std::vector<std::string>{"2021", "."});
    CHECK_THROWS_AS(tokenize("  "), EmptyInput);
}

TEST_CASE("ingest_parallel keeps aligned pairs and reports counts") {
    std::vector<std::string> src(100, "ಕನ್ನಡ ಪದ"), tgt(100, "മലയാളം വാക്ക്");
    src[10] = "only latin here";
    src[55] = "";
    tgt[70] = "entirely foreign line";
    const auto fs1 = write_temp("dravnmt_src.txt", src);
    const auto fs2 = write_temp("dravnmt_tgt.txt", tgt);
    const auto corpus = ingest_parallel(
        fs1, fs2, Direction{LanguageId::kn, LanguageId::ml});
    CHECK(corpus.report.read == 100);
    CHECK(corpus.report.kept == 97);
    CHECK(corpus.report.rejected_src == 2);
    CHECK(corpus.report.rejected_tgt == 1);
    CHECK(corpus.pairs.size() == 97);
    REQUIRE(corpus.source_lines.size() == 97);
    // Alignment: kept pair i comes from the same input line on both sides.
    CHECK(corpus.source_lines[10] == 12);  // line 11 dropped, 1-based
    for (std::size_t i = 1; i < corpus.source_lines.size(); ++i) {
        CHECK(corpus.source_lines[i] > corpus.source_lines[i - 1]);
    }
}

TEST_CASE("ingest_parallel errors") {
    const auto f10 = write_temp("dravnmt_10.txt",
                                std::vector<std::string>(10, "ಪದ"));
    const auto f11 = write_temp("dravnmt_11.txt",
                                std::vector<std::string>(11, "ಪദ"));
    CHECK_THROWS_AS(ingest_parallel(f10, f11,
                                    Direction{LanguageId::kn, LanguageId::ml}),
                    LineCountMismatch);
    CHECK_THROWS_AS(ingest_parallel("/nonexistent/file.txt", f10,
                                    Direction{LanguageId::kn, LanguageId::ml}),
                    IoError);

    const auto empty1 = write_temp("dravnmt_e1.txt", {});
    const auto empty2 = write_temp("dravnmt_e2.txt", {});
    const auto corpus = ingest_parallel(
        empty1, empty2, Direction{LanguageId::kn, LanguageId::ml});
    CHECK(corpus.report.read == 0);
    CHECK(corpus.pairs.empty());

    const fs::path bad = fs::temp_directory_path() / "dravnmt_bad.txt";
    {
        std::ofstream out(bad, std::ios::binary);
        out << "\xFF\xFE broken\n";
    }
    CHECK_THROWS_AS(ingest_parallel(bad, bad,
                                    Direction{LanguageId::kn, LanguageId::ml}),
                    EncodingError);
}

TEST_CASE("prepare_pair renders tags and [END]") {
    std::vector<std::vector<std::string>> corpus;
    for (int i = 0; i < 4; ++i) {
        corpus.push_back(tokenize(
            transliterate("ಕನ್ನಡ ಪದ", Script::Kannada, Script::Devanagari)));
        corpus.push_back(tokenize(transliterate(
            "മലയാളം വാക്ക്", Script::Malayalam, Script::Devanagari)));
    }
    const auto model = train_bpe(corpus, {.target_size = 200});

    const std::pair<std::string, std::string> pair = {"ಕನ್ನಡ ಪದ",
                                                      "മലയാളം വാക്ക്"};
    const Direction dir{LanguageId::kn, LanguageId::ml};
    const auto prepared = prepare_pair(pair, dir, Script::Devanagari, model);

    const std::regex pattern(
        R"(__src__(kn|ml|te|ta)__ __tgt__(kn|ml|te|ta)__ .* \[END\])");
    CHECK(std::regex_match(prepared.source_line, pattern));
    CHECK(prepared.source_line.starts_with("__src__kn__ __tgt__ml__ "));
    CHECK(prepared.source_line.ends_with(" [END]"));
    CHECK(prepared.target_line.ends_with(" [END]"));
    CHECK_FALSE(prepared.target_line.starts_with("__src__"));

    // Determinism: byte-identical on repetition.
    const auto again = prepare_pair(pair, dir, Script::Devanagari, model);
    CHECK(again.source_line == prepared.source_line);
    CHECK(again.target_line == prepared.target_line);

    // Untrained model is an error.
    BpeModel untrained;
    CHECK_THROWS_AS(prepare_pair(pair, dir, Script::Devanagari, untrained),
                    UntrainedModel);
}
