#include "dravnmt/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dravnmt/bpe.hpp"
#include "dravnmt/errors.hpp"
#include "dravnmt/volt.hpp"

namespace dravnmt {

std::set<std::string> per_language_vocab(
    const std::vector<std::string>& corpus_lines, LanguageId lang, int size,
    std::optional<Script> translit_to, std::optional<int> volt_threshold) {
    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(corpus_lines.size());
    for (const auto& line : corpus_lines) {
        std::string text = line;
        if (translit_to) {
            text = transliterate(text, native_script(lang), *translit_to);
        }
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        corpus.push_back(tokenize(text));
    }
    if (corpus.empty()) throw EmptyCorpus("per_language_vocab: no sentences");

    const auto model = train_bpe(corpus, {.target_size = size});

    std::set<std::string> vocab;
    if (volt_threshold) {
        const auto report = volt_search(corpus, model, *volt_threshold);
        vocab.insert(report.recommended_tokens.begin(),
                     report.recommended_tokens.end());
    } else {
        for (const auto& tok : model.tokens()) {
            if (!BpeModel::is_reserved(tok)) vocab.insert(tok);
        }
    }
    return vocab;
}

OverlapMatrix overlap_matrix(
    const std::map<LanguageId, std::set<std::string>>& vocabs) {
    if (vocabs.size() < 2) {
        throw InvalidConfig("overlap_matrix: need at least two vocabularies");
    }
    OverlapMatrix out;
    for (const auto& [lang, vocab] : vocabs) out.languages.push_back(lang);
    const std::size_t n = out.languages.size();
    out.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i][i] = 100.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = vocabs.at(out.languages[i]);
            const auto& b = vocabs.at(out.languages[j]);
            std::size_t inter = 0;
            const auto& small = a.size() <= b.size() ? a : b;
            const auto& large = a.size() <= b.size() ? b : a;
            for (const auto& tok : small) inter += large.count(tok);
            const std::size_t denom = std::min(a.size(), b.size());
            const double pct =
                denom == 0 ? 0.0
                           : 100.0 * static_cast<double>(inter) /
                                 static_cast<double>(denom);
            out.values[i][j] = std::round(pct * 100.0) / 100.0;
        }
    }
    return out;
}

std::string overlap_tsv(const OverlapMatrix& matrix) {
    std::string out;
    for (const auto lang : matrix.languages) {
        out += '\t';
        out += lang_code(lang);
    }
    out += '\n';
    char buf[32];
    const std::size_t n = matrix.languages.size();
    for (std::size_t i = 0; i < n; ++i) {
        out += lang_code(matrix.languages[i]);
        for (std::size_t j = 0; j < n; ++j) {
            out += '\t';
            if (j < i) {
                out += '-';
            } else {
                std::snprintf(buf, sizeof buf, "%.2f", matrix.values[i][j]);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace dravnmt
