#include "dravnmt/volt.hpp"

#include <algorithm>
#include <cmath>

#include "dravnmt/errors.hpp"
#include "dravnmt/utf8.hpp"

namespace dravnmt {

namespace {

const std::string kMarker = "\xE2\x96\x81";

bool single_symbol(const std::string& token) {
    auto cps = utf8::decode(token);
    if (cps.size() == 1 && cps[0] != BpeModel::kMarkerChar) return true;
    return cps.size() == 2 && cps[0] == BpeModel::kMarkerChar;
}

// Number of base symbols composing a token (the word-boundary marker glues
// to the first character).
int symbol_length(const std::string& token) {
    const auto cps = utf8::decode(token);
    const bool marked = !cps.empty() && cps[0] == BpeModel::kMarkerChar;
    return static_cast<int>(cps.size()) - (marked ? 1 : 0);
}

// Token -> its base symbols ("▁ab" -> {"▁a", "b"}).
std::vector<std::string> decompose(const std::string& token) {
    const auto cps = utf8::decode(token);
    std::vector<std::string> syms;
    std::size_t i = 0;
    if (!cps.empty() && cps[0] == BpeModel::kMarkerChar && cps.size() > 1) {
        syms.push_back(kMarker + utf8::encode_one(cps[1]));
        i = 2;
    }
    for (; i < cps.size(); ++i) syms.push_back(utf8::encode_one(cps[i]));
    return syms;
}

double mean_symbol_length(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return 0.0;
    double total = 0.0;
    for (const auto& t : tokens) total += symbol_length(t);
    return total / static_cast<double>(tokens.size());
}

}  // namespace

std::vector<VoltCandidate> enumerate_candidates(const BpeModel& model,
                                                int step, int threshold) {
    if (!model.trained()) {
        throw UntrainedModel("enumerate_candidates: untrained model");
    }
    if (model.merges().empty()) {
        throw EmptyMergeList("enumerate_candidates: model has no merges");
    }
    if (step < 1) throw InvalidConfig("enumerate_candidates: step must be >= 1");

    std::vector<std::string> base;
    for (const auto& tok : model.tokens()) {
        if (!BpeModel::is_reserved(tok) && single_symbol(tok)) {
            base.push_back(tok);
        }
    }
    const std::size_t reserved = BpeModel::reserved_tokens().size();

    std::vector<VoltCandidate> out;
    std::unordered_set<std::string> seen(base.begin(), base.end());
    std::vector<std::string> tokens = base;

    for (int t = 0;; ++t) {
        const std::size_t upto = static_cast<std::size_t>(t) * step;
        if (upto > model.merges().size()) break;
        if (t > 0) {
            for (std::size_t m = upto - step; m < upto; ++m) {
                const auto& [l, r] = model.merges()[m];
                std::string product = l + r;
                if (seen.insert(product).second) {
                    tokens.push_back(std::move(product));
                }
            }
            if (!out.empty() &&
                out.back().size == reserved + tokens.size()) {
                continue;  // all products were duplicates
            }
        }
        VoltCandidate cand;
        cand.timestep = t;
        cand.tokens = tokens;
        cand.size = reserved + tokens.size();
        cand.mean_token_len = mean_symbol_length(tokens);
        if (cand.size > static_cast<std::size_t>(threshold)) break;
        out.push_back(std::move(cand));
    }
    return out;
}

std::unordered_map<std::string, std::int64_t> segment_greedy(
    const std::vector<std::vector<std::string>>& corpus,
    const std::unordered_set<std::string>& tokens) {
    int max_len = 1;
    for (const auto& t : tokens) max_len = std::max(max_len, symbol_length(t));

    // Segment distinct words once, weighted by frequency.
    std::unordered_map<std::string, std::int64_t> word_freq;
    for (const auto& sentence : corpus) {
        for (const auto& word : sentence) {
            if (word.empty() || BpeModel::is_reserved(word)) continue;
            ++word_freq[word];
        }
    }

    std::unordered_map<std::string, std::int64_t> freq;
    for (const auto& [word, count] : word_freq) {
        const auto cps = utf8::decode(word);
        std::vector<std::string> syms;
        std::vector<bool> known;
        syms.reserve(cps.size());
        for (std::size_t i = 0; i < cps.size(); ++i) {
            std::string s = utf8::encode_one(cps[i]);
            if (i == 0) s = kMarker + s;
            known.push_back(tokens.count(s) > 0);
            syms.push_back(std::move(s));
        }
        for (std::size_t i = 0; i < syms.size();) {
            if (!known[i]) {
                ++i;  // out-of-alphabet character, carries no mass
                continue;
            }
            std::size_t best = 1;
            std::string piece = syms[i];
            std::string probe = syms[i];
            for (std::size_t j = 1;
                 j < static_cast<std::size_t>(max_len) && i + j < syms.size();
                 ++j) {
                if (!known[i + j]) break;
                probe += syms[i + j];
                if (tokens.count(probe)) {
                    best = j + 1;
                    piece = probe;
                }
            }
            freq[piece] += count;
            i += best;
        }
    }
    return freq;
}

double candidate_entropy(
    const VoltCandidate& candidate,
    const std::unordered_map<std::string, std::int64_t>& token_freq,
    const SinkhornOptions* options, bool* converged, double* raw_entropy) {
    if (converged) *converged = true;

    std::vector<std::pair<std::string, std::int64_t>> realized;
    std::int64_t total = 0;
    for (const auto& tok : candidate.tokens) {
        const auto it = token_freq.find(tok);
        if (it != token_freq.end() && it->second > 0) {
            realized.emplace_back(tok, it->second);
            total += it->second;
        }
    }
    std::sort(realized.begin(), realized.end());
    if (raw_entropy) *raw_entropy = 0.0;
    if (realized.empty() || total == 0) return 0.0;

    double raw = 0.0;
    for (const auto& [tok, f] : realized) {
        const double p = static_cast<double>(f) / static_cast<double>(total);
        raw -= p * std::log(p);
    }
    if (raw_entropy) *raw_entropy = raw;

    std::vector<double> occupancy;  // refined occurrence mass per token
    occupancy.reserve(realized.size());
    if (!options) {
        for (const auto& [tok, f] : realized) {
            occupancy.push_back(static_cast<double>(f));
        }
    } else {
        // Transport problem: base-symbol mass flows into the tokens whose
        // spelling contains the symbol; the cost favors the token's own
        // composition profile.
        std::vector<std::string> sym_names;
        std::unordered_map<std::string, int> sym_index;
        std::vector<std::vector<std::pair<int, int>>> composition;  // (sym,n)
        std::vector<int> lengths;
        for (const auto& [tok, f] : realized) {
            std::unordered_map<std::string, int> counts;
            const auto syms = decompose(tok);
            for (const auto& s : syms) ++counts[s];
            std::vector<std::pair<int, int>> comp;
            for (const auto& s : syms) {
                const auto it = counts.find(s);
                if (it == counts.end()) continue;
                if (!sym_index.count(s)) {
                    sym_index.emplace(s, static_cast<int>(sym_names.size()));
                    sym_names.push_back(s);
                }
                comp.emplace_back(sym_index[s], it->second);
                counts.erase(it);
            }
            composition.push_back(std::move(comp));
            lengths.push_back(static_cast<int>(syms.size()));
        }

        const int R = static_cast<int>(sym_names.size());
        const int C = static_cast<int>(realized.size());
        Mat cost(R, C, kForbidden);
        std::vector<double> row(R, 0.0), col(C, 0.0);
        for (int j = 0; j < C; ++j) {
            const double f = static_cast<double>(realized[j].second);
            col[j] = f * lengths[j];
            for (const auto& [s, n] : composition[j]) {
                row[s] += f * n;
                cost.at(s, j) = -std::log(static_cast<double>(n) / lengths[j]);
            }
        }
        const auto result = sinkhorn(cost, row, col, *options);
        if (converged) *converged = result.converged;
        for (int j = 0; j < C; ++j) {
            double mass = 0.0;
            for (int s = 0; s < R; ++s) mass += result.plan.at(s, j);
            occupancy.push_back(mass / lengths[j]);
        }
    }

    double osum = 0.0;
    for (double o : occupancy) osum += o;
    if (osum <= 0.0) return 0.0;
    double h = 0.0;
    for (double o : occupancy) {
        if (o <= 0.0) continue;
        const double p = o / osum;
        h -= p * std::log(p);
    }
    const double lv = candidate.mean_token_len;
    return lv > 0.0 ? h / lv : h;
}

VoltReport volt_search(const std::vector<std::vector<std::string>>& corpus,
                       const BpeModel& model, int threshold, int step,
                       const SinkhornOptions& options) {
    std::size_t base_count = BpeModel::reserved_tokens().size();
    for (const auto& tok : model.tokens()) {
        if (!BpeModel::is_reserved(tok) && single_symbol(tok)) ++base_count;
    }
    if (static_cast<std::size_t>(threshold) <= base_count) {
        throw ThresholdTooSmall(
            "volt threshold " + std::to_string(threshold) +
            " does not exceed the base vocabulary of " +
            std::to_string(base_count));
    }

    VoltReport report;
    report.candidates = enumerate_candidates(model, step, threshold);
    auto& cands = report.candidates;

#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(cands.size()); ++i) {
        auto& cand = cands[i];
        const std::unordered_set<std::string> tokset(cand.tokens.begin(),
                                                     cand.tokens.end());
        const auto freq = segment_greedy(corpus, tokset);
        cand.entropy = candidate_entropy(cand, freq, &options,
                                         &cand.converged, &cand.raw_entropy);
    }

    for (std::size_t t = 0; t < cands.size(); ++t) {
        if (!cands[t].converged) {
            report.warnings.push_back(
                "sinkhorn did not converge for timestep " +
                std::to_string(cands[t].timestep));
        }
        if (t + 1 < cands.size()) {
            cands[t].muv = -(cands[t + 1].entropy - cands[t].entropy) /
                           static_cast<double>(cands[t + 1].size -
                                               cands[t].size);
        } else {
            cands[t].muv = std::nan("");
        }
        if (t > 0 && cands[t].raw_entropy >
                         cands[t - 1].raw_entropy + 1e-12) {
            report.entropy_monotone = false;
        }
    }
    if (!report.entropy_monotone) {
        report.warnings.push_back(
            "raw corpus token entropy increased between candidates");
    }

    std::size_t best = 0;
    for (std::size_t t = 1; t + 1 < cands.size(); ++t) {
        if (cands[t].muv > cands[best].muv) best = t;
    }
    report.recommended_timestep = cands[best].timestep;
    report.recommended_size = cands[best].size;
    report.recommended_tokens = cands[best].tokens;
    return report;
}

}  // namespace dravnmt
