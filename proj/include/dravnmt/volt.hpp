#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dravnmt/bpe.hpp"
#include "dravnmt/sinkhorn.hpp"

namespace dravnmt {

// One vocabulary candidate: the BPE base alphabet plus the first
// timestep*step merge products. Reserved symbols are excluded from tokens
// and entropy but counted in size.
struct VoltCandidate {
    int timestep = 0;
    std::size_t size = 0;            // reserved + |tokens|
    std::vector<std::string> tokens;
    double mean_token_len = 0.0;     // symbols per token, over the whole set
    double entropy = 0.0;            // length-normalized, nats
    double raw_entropy = 0.0;        // -sum p ln p of the segmentation
    double muv = 0.0;                // forward difference; NaN for the last
    bool converged = true;
};

struct VoltReport {
    std::vector<VoltCandidate> candidates;
    int recommended_timestep = 0;
    std::size_t recommended_size = 0;
    std::vector<std::string> recommended_tokens;  // without reserved
    bool entropy_monotone = true;  // raw entropy non-increasing over steps
    std::vector<std::string> warnings;
};

// Candidate ladder from a trained model's merge list. Stops at the size
// threshold and never emits a partial merge step.
// Throws EmptyMergeList when the model has no merges.
std::vector<VoltCandidate> enumerate_candidates(const BpeModel& model,
                                                int step, int threshold);

// Greedy longest-match segmentation of the corpus with the candidate token
// set; returns token -> occurrence count. Out-of-alphabet characters are
// skipped. Also used by the exhaustive test oracle.
std::unordered_map<std::string, std::int64_t> segment_greedy(
    const std::vector<std::vector<std::string>>& corpus,
    const std::unordered_set<std::string>& tokens);

// Entropy of one candidate from already-counted token frequencies,
// refined through the transport plan when options != nullptr.
// Exposed for the oracle tests.
double candidate_entropy(const VoltCandidate& candidate,
                         const std::unordered_map<std::string, std::int64_t>&
                             token_freq,
                         const SinkhornOptions* options, bool* converged,
                         double* raw_entropy);

// Scans the candidate ladder, scores each vocabulary by Sinkhorn-refined
// length-normalized entropy and recommends the timestep with the highest
// marginal utility (ties: earliest). Throws ThresholdTooSmall when the
// threshold cannot even hold the base alphabet plus reserved symbols.
VoltReport volt_search(const std::vector<std::vector<std::string>>& corpus,
                       const BpeModel& model, int threshold = 10000,
                       int step = 1000,
                       const SinkhornOptions& options = {});

}  // namespace dravnmt
