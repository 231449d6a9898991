#include "dravnmt/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "dravnmt/errors.hpp"

namespace dravnmt {

namespace {

std::vector<std::string> fold_and_split(const std::string& text) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    std::istringstream ss(lower);
    std::vector<std::string> tokens;
    std::string t;
    while (ss >> t) tokens.push_back(std::move(t));
    return tokens;
}

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
    NgramCounts counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < n; ++k) {
            key += '\x1f';
            key += tokens[i + k];
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace

BleuReport corpus_bleu(std::span<const std::string> hypotheses,
                       std::span<const std::string> references) {
    if (hypotheses.size() != references.size()) {
        throw LengthMismatch("corpus_bleu: " +
                             std::to_string(hypotheses.size()) +
                             " hypotheses vs " +
                             std::to_string(references.size()) +
                             " references");
    }
    if (hypotheses.empty()) throw EmptyInput("corpus_bleu: no sentences");

    std::array<std::size_t, 4> correct{}, total{};
    std::size_t hyp_len = 0, ref_len = 0;

    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        const auto hyp = fold_and_split(hypotheses[i]);
        const auto ref = fold_and_split(references[i]);
        hyp_len += hyp.size();
        ref_len += ref.size();
        for (int n = 1; n <= 4; ++n) {
            const auto hyp_counts = count_ngrams(hyp, n);
            const auto ref_counts = count_ngrams(ref, n);
            for (const auto& [gram, count] : hyp_counts) {
                total[n - 1] += count;
                const auto it = ref_counts.find(gram);
                if (it != ref_counts.end()) {
                    correct[n - 1] += std::min(count, it->second);
                }
            }
        }
    }

    BleuReport report;
    report.hyp_len = hyp_len;
    report.ref_len = ref_len;
    report.brevity_penalty =
        hyp_len == 0
            ? 0.0
            : std::min(1.0, std::exp(1.0 - static_cast<double>(ref_len) /
                                               static_cast<double>(hyp_len)));

    double log_sum = 0.0;
    int orders = 0;
    double smooth = 1.0;
    for (int n = 0; n < 4; ++n) {
        if (total[n] == 0) {
            // No n-grams of this order exist at all (every sentence shorter
            // than n tokens); the order drops out of the geometric mean.
            report.precisions[n] = 0.0;
            continue;
        }
        double p;
        if (correct[n] == 0) {
            smooth *= 2.0;
            p = 1.0 / (smooth * static_cast<double>(total[n]));
        } else {
            p = static_cast<double>(correct[n]) /
                static_cast<double>(total[n]);
        }
        report.precisions[n] = p;
        log_sum += std::log(p);
        ++orders;
    }
    report.score = orders == 0 ? 0.0
                               : report.brevity_penalty *
                                     std::exp(log_sum / orders) * 100.0;
    return report;
}

OffTargetReport off_target_rate(std::span<const std::string> hypotheses,
                                LanguageId expected,
                                const LanguageClassifier& classifier) {
    OffTargetReport report;
    report.total = hypotheses.size();
    for (const auto& hyp : hypotheses) {
        const auto detected = classifier(hyp);
        if (!detected) {
            ++report.unclassifiable;
        } else if (*detected != expected) {
            ++report.wrong;
        }
    }
    const std::size_t classifiable = report.total - report.unclassifiable;
    report.rate = classifiable == 0
                      ? 0.0
                      : static_cast<double>(report.wrong) /
                            static_cast<double>(classifiable);
    return report;
}

std::optional<LanguageId> classify_by_script(const std::string& sentence) {
    try {
        const auto detection = detect_script(sentence);
        if (detection.kind != ScriptDetection::Kind::Single) {
            return std::nullopt;
        }
        for (const LanguageId lang : all_languages()) {
            if (native_script(lang) == detection.script) return lang;
        }
        return std::nullopt;  // Devanagari or another unmapped script
    } catch (const EmptyInput&) {
        return std::nullopt;
    }
}

}  // namespace dravnmt
