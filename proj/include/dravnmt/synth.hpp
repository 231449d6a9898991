#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dravnmt/corpus.hpp"
#include "dravnmt/script.hpp"

namespace dravnmt {

// A family of four artificial languages with a shared root lexicon rendered
// in four scripts, plus per-language suffix markers. Shared roots are
// transliteration-equivalent across the family, so the corpora exercise the
// script-unification pipeline with known ground truth.
struct FamilySpec {
    std::uint64_t seed = 7;
    int lexicon_size = 200;
    double shared_root_fraction = 0.8;
    // Per LanguageId (kn, ml, te, ta); must be pairwise distinct.
    std::array<Script, kLanguageCount> scripts = {
        Script::Kannada, Script::Malayalam, Script::Telugu, Script::Tamil};
    int min_sentence_len = 3;
    int max_sentence_len = 7;
};

struct Lexicon {
    // Abstract forms are block offsets; rendered words append the
    // language's suffix syllable and map offsets into its script.
    std::vector<std::array<std::vector<int>, kLanguageCount>> roots;
    std::array<std::vector<int>, kLanguageCount> suffixes;
    std::array<std::map<std::string, int>, kLanguageCount> word_to_root;
    std::vector<std::array<std::string, kLanguageCount>> rendered;
    std::array<Script, kLanguageCount> scripts;

    const std::string& word(int root, LanguageId lang) const {
        return rendered[root][static_cast<int>(lang)];
    }
};

struct Family {
    FamilySpec spec;
    Lexicon lexicon;
    // Monolingual corpora, one sentence per line.
    std::array<std::vector<std::string>, kLanguageCount> monolingual;
};

// Deterministic generation: same spec -> byte-identical family.
// Throws InvalidSpec (lexicon < 20, bad fraction, repeated scripts...).
Family generate_family(const FamilySpec& spec, int sentences_per_language);

// Parallel sentences for one direction. `stream` decouples train/dev/test
// draws (pass distinct values).
std::vector<std::pair<std::string, std::string>> render_parallel(
    const Family& family, Direction direction, int count,
    std::uint64_t stream);

// Word-by-word ground-truth translation. Throws UnknownRoot.
std::string reference_translation(const std::string& sentence,
                                  Direction direction,
                                  const Lexicon& lexicon);

// Suffix-marker language classifier (majority vote over words); works on
// any of the family's scripts, so back-transliterated output classifies
// correctly. nullopt when no word carries a known marker or votes tie.
std::optional<LanguageId> classify_synthetic(const std::string& sentence,
                                             const Lexicon& lexicon);

}  // namespace dravnmt
