#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "dravnmt/corpus.hpp"

namespace dravnmt {

struct BleuReport {
    double score = 0.0;                     // [0, 100]
    std::array<double, 4> precisions{};     // clipped n-gram precisions
    double brevity_penalty = 1.0;
    std::size_t hyp_len = 0;
    std::size_t ref_len = 0;
    std::string smoothing = "exp";
};

// Case-insensitive corpus BLEU: lowercases, whitespace-tokenizes,
// accumulates clipped n-gram matches corpus-wide for n=1..4, applies
// exponential smoothing (1 / (2^k * total_n)) to zero match counts and
// bp = min(1, exp(1 - ref_len/hyp_len)).
// Throws LengthMismatch / EmptyInput.
BleuReport corpus_bleu(std::span<const std::string> hypotheses,
                       std::span<const std::string> references);

using LanguageClassifier =
    std::function<std::optional<LanguageId>(const std::string&)>;

struct OffTargetReport {
    double rate = 0.0;            // wrong / total, unclassifiable excluded
    std::size_t wrong = 0;
    std::size_t unclassifiable = 0;
    std::size_t total = 0;
};

// Fraction of hypotheses whose detected language differs from `expected`.
// Sentences the classifier cannot decide are counted separately.
OffTargetReport off_target_rate(std::span<const std::string> hypotheses,
                                LanguageId expected,
                                const LanguageClassifier& classifier);

// Classifier for real text in native scripts, built on script detection.
std::optional<LanguageId> classify_by_script(const std::string& sentence);

}  // namespace dravnmt
