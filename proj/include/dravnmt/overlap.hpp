#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dravnmt/corpus.hpp"
#include "dravnmt/script.hpp"

namespace dravnmt {

struct OverlapMatrix {
    std::vector<LanguageId> languages;
    // values[i][j] for i <= j; percentage in [0, 100], diagonal 100.00.
    std::vector<std::vector<double>> values;
    std::string condition;  // "raw" or the transliteration script name
    int vocab_size_per_language = 0;

    double at(std::size_t i, std::size_t j) const {
        return i <= j ? values[i][j] : values[j][i];
    }
};

// Trains an independent BPE vocabulary of the given size on one language's
// corpus (optionally transliterated from its native script first) and
// returns the token set without reserved symbols. A volt_threshold reduces
// the vocabulary with the transport-based search before returning it.
std::set<std::string> per_language_vocab(
    const std::vector<std::string>& corpus_lines, LanguageId lang, int size,
    std::optional<Script> translit_to,
    std::optional<int> volt_threshold = std::nullopt);

// Pairwise overlap percentages: 100 * |A ∩ B| / min(|A|, |B|), two decimals.
OverlapMatrix overlap_matrix(
    const std::map<LanguageId, std::set<std::string>>& vocabs);

// Upper-triangular TSV with dashes below the diagonal.
std::string overlap_tsv(const OverlapMatrix& matrix);

}  // namespace dravnmt
