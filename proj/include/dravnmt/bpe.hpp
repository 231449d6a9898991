#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dravnmt {

struct BpeConfig {
    int target_size = 32000;
    double character_coverage = 0.9995;
};

// Byte-pair-encoding subword model over whitespace-pre-tokenized words.
// Word-initial pieces carry the U+2581 marker; reserved symbols (direction
// tags, [END], <pad>/<s>/</s>/<unk>) are atomic and own the lowest ids.
class BpeModel {
public:
    static constexpr char32_t kMarkerChar = 0x2581;  // ▁
    static const std::vector<std::string>& reserved_tokens();
    static bool is_reserved(std::string_view token);

    bool trained() const { return trained_; }
    int vocab_size() const { return static_cast<int>(id_to_token_.size()); }
    const std::vector<std::string>& tokens() const { return id_to_token_; }
    const std::vector<std::pair<std::string, std::string>>& merges() const {
        return merges_;
    }
    // -1 when the token is not in the vocabulary.
    int token_id(std::string_view token) const;
    const std::string& token(int id) const { return id_to_token_.at(id); }
    int unk_id() const { return unk_id_; }
    int pad_id() const { return pad_id_; }
    int bos_id() const { return bos_id_; }
    int end_id() const { return end_id_; }

    // Splits each word into subword pieces; reserved words pass through
    // atomically, out-of-coverage characters become <unk>.
    std::vector<std::string> encode(
        const std::vector<std::string>& words) const;
    std::vector<int> encode_ids(const std::vector<std::string>& words) const;

    // Inverse of encode: rebuilds the space-separated sentence.
    std::string decode(std::span<const std::string> pieces) const;
    std::string decode_ids(std::span<const int> ids) const;

    void save(const std::filesystem::path& path) const;
    static BpeModel load(const std::filesystem::path& path);

    // Trainer-facing constructor pieces.
    struct Builder {
        std::vector<std::string> tokens;  // reserved first, dense ids
        std::vector<std::pair<std::string, std::string>> merges;
        BpeModel finish() const;
    };

private:
    friend struct Builder;
    void index_vocab();

    std::vector<std::string> id_to_token_;
    std::unordered_map<std::string, int> token_to_id_;
    std::vector<std::pair<std::string, std::string>> merges_;
    std::unordered_map<std::string, int> merge_rank_;  // key: left + \x1f + right
    std::unordered_set<char32_t> alphabet_;
    int unk_id_ = -1, pad_id_ = -1, bos_id_ = -1, end_id_ = -1;
    bool trained_ = false;
};

// Trains a BPE model by greedy highest-frequency pair merging until the
// vocabulary reaches config.target_size or no pair occurs twice. Ties break
// lexicographically on the merged string. Corpus sentences are sequences of
// whitespace-free words. Throws EmptyCorpus / TargetTooSmall.
BpeModel train_bpe(const std::vector<std::vector<std::string>>& corpus,
                   const BpeConfig& config);

// Convenience overload: whitespace-splits raw lines first.
BpeModel train_bpe_lines(const std::vector<std::string>& lines,
                         const BpeConfig& config);

}  // namespace dravnmt
