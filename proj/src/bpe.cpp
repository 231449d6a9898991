#include "dravnmt/bpe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "dravnmt/errors.hpp"
#include "dravnmt/utf8.hpp"

namespace dravnmt {

namespace {

const std::string kMarker = "\xE2\x96\x81";  // U+2581 in UTF-8

std::string merge_key(const std::string& left, const std::string& right) {
    return left + '\x1f' + right;
}

bool contains_reserved(const std::string& s) {
    for (const auto& r : BpeModel::reserved_tokens()) {
        if (s.size() >= r.size() && s.find(r) != std::string::npos) {
            return true;
        }
    }
    return false;
}

}  // namespace

const std::vector<std::string>& BpeModel::reserved_tokens() {
    static const std::vector<std::string> kReserved = {
        "<pad>",      "<unk>",      "<s>",        "</s>",       "[END]",
        "__src__kn__", "__src__ml__", "__src__te__", "__src__ta__",
        "__tgt__kn__", "__tgt__ml__", "__tgt__te__", "__tgt__ta__"};
    return kReserved;
}

bool BpeModel::is_reserved(std::string_view token) {
    const auto& res = reserved_tokens();
    return std::find(res.begin(), res.end(), token) != res.end();
}

int BpeModel::token_id(std::string_view token) const {
    const auto it = token_to_id_.find(std::string(token));
    return it == token_to_id_.end() ? -1 : it->second;
}

void BpeModel::index_vocab() {
    token_to_id_.clear();
    token_to_id_.reserve(id_to_token_.size() * 2);
    for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
        token_to_id_.emplace(id_to_token_[i], static_cast<int>(i));
    }
    merge_rank_.clear();
    merge_rank_.reserve(merges_.size() * 2);
    for (std::size_t i = 0; i < merges_.size(); ++i) {
        merge_rank_.emplace(merge_key(merges_[i].first, merges_[i].second),
                            static_cast<int>(i));
    }
    alphabet_.clear();
    for (const auto& tok : id_to_token_) {
        if (is_reserved(tok)) continue;
        const auto cps = utf8::decode(tok);
        if (cps.size() == 1 && cps[0] != kMarkerChar) {
            alphabet_.insert(cps[0]);
        }
    }
    unk_id_ = token_id("<unk>");
    pad_id_ = token_id("<pad>");
    bos_id_ = token_id("<s>");
    end_id_ = token_id("[END]");
    trained_ = true;
}

BpeModel BpeModel::Builder::finish() const {
    BpeModel model;
    model.id_to_token_ = tokens;
    model.merges_ = merges;
    model.index_vocab();
    return model;
}

std::vector<std::string> BpeModel::encode(
    const std::vector<std::string>& words) const {
    if (!trained_) throw UntrainedModel("encode: model is not trained");

    // Per-thread memo; word types repeat heavily across a corpus.
    struct Memo {
        const BpeModel* owner = nullptr;
        std::unordered_map<std::string, std::vector<std::string>> pieces;
    };
    thread_local Memo memo;
    if (memo.owner != this) {
        memo.owner = this;
        memo.pieces.clear();
    }

    std::vector<std::string> out;
    out.reserve(words.size() * 2);
    for (const auto& word : words) {
        if (word.empty()) continue;
        if (is_reserved(word)) {
            out.push_back(word);
            continue;
        }
        const auto hit = memo.pieces.find(word);
        if (hit != memo.pieces.end()) {
            out.insert(out.end(), hit->second.begin(), hit->second.end());
            continue;
        }

        const auto cps = utf8::decode(word);
        std::vector<std::string> syms;
        syms.reserve(cps.size());
        for (std::size_t i = 0; i < cps.size(); ++i) {
            const bool covered =
                cps[i] != kMarkerChar && alphabet_.count(cps[i]) > 0;
            std::string s = covered ? utf8::encode_one(cps[i])
                                    : std::string("<unk>");
            if (i == 0 && covered) s = kMarker + s;
            syms.push_back(std::move(s));
        }
        // Merge the lowest-ranked adjacent pair until none applies. <unk>
        // never participates (reserved substring rule blocks it in training).
        while (syms.size() > 1) {
            int best_rank = -1;
            std::size_t best_pos = 0;
            for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
                const auto it =
                    merge_rank_.find(merge_key(syms[i], syms[i + 1]));
                if (it == merge_rank_.end()) continue;
                if (best_rank < 0 || it->second < best_rank) {
                    best_rank = it->second;
                    best_pos = i;
                }
            }
            if (best_rank < 0) break;
            const std::string& left = merges_[best_rank].first;
            const std::string& right = merges_[best_rank].second;
            std::vector<std::string> next;
            next.reserve(syms.size());
            for (std::size_t i = 0; i < syms.size();) {
                if (i + 1 < syms.size() && syms[i] == left &&
                    syms[i + 1] == right) {
                    next.push_back(left + right);
                    i += 2;
                } else {
                    next.push_back(syms[i]);
                    i += 1;
                }
            }
            syms = std::move(next);
        }
        out.insert(out.end(), syms.begin(), syms.end());
        memo.pieces.emplace(word, std::move(syms));
    }
    return out;
}

std::vector<int> BpeModel::encode_ids(
    const std::vector<std::string>& words) const {
    const auto pieces = encode(words);
    std::vector<int> ids;
    ids.reserve(pieces.size());
    for (const auto& piece : pieces) {
        const int id = token_id(piece);
        ids.push_back(id >= 0 ? id : unk_id_);
    }
    return ids;
}

std::string BpeModel::decode(std::span<const std::string> pieces) const {
    if (!trained_) throw UntrainedModel("decode: model is not trained");
    std::string out;
    bool at_word_start = true;
    for (const auto& piece : pieces) {
        // <unk> stands in for a character, so it glues like any other piece;
        // the remaining reserved symbols are standalone words.
        if (piece != "<unk>" && is_reserved(piece)) {
            if (!out.empty()) out += ' ';
            out += piece;
            at_word_start = true;
            continue;
        }
        std::string_view body = piece;
        const bool marked = body.starts_with(kMarker);
        if (marked) body.remove_prefix(kMarker.size());
        if ((marked || at_word_start) && !out.empty()) out += ' ';
        out += body;
        at_word_start = false;
    }
    return out;
}

std::string BpeModel::decode_ids(std::span<const int> ids) const {
    std::vector<std::string> pieces;
    pieces.reserve(ids.size());
    for (int id : ids) pieces.push_back(token(id));
    return decode(pieces);
}

void BpeModel::save(const std::filesystem::path& path) const {
    if (!trained_) throw UntrainedModel("save: model is not trained");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "bpe-model v1\n";
    out << "reserved " << reserved_tokens().size() << "\n";
    for (const auto& r : reserved_tokens()) out << r << "\n";
    out << "vocab " << id_to_token_.size() << "\n";
    for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
        out << id_to_token_[i] << '\t' << i << "\n";
    }
    out << "merges " << merges_.size() << "\n";
    for (const auto& [l, r] : merges_) out << l << ' ' << r << "\n";
    if (!out) throw IoError("write failure on " + path.string());
}

BpeModel BpeModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    auto next_line = [&]() {
        if (!std::getline(in, line)) {
            throw IoError(path.string() + ": truncated model file");
        }
        return line;
    };
    if (next_line() != "bpe-model v1") {
        throw IoError(path.string() + ": not a bpe-model v1 file");
    }
    std::size_t n_reserved = 0, n_vocab = 0, n_merges = 0;
    {
        std::istringstream hdr(next_line());
        std::string word;
        hdr >> word >> n_reserved;
        if (word != "reserved") throw IoError("bad reserved header");
    }
    for (std::size_t i = 0; i < n_reserved; ++i) next_line();
    {
        std::istringstream hdr(next_line());
        std::string word;
        hdr >> word >> n_vocab;
        if (word != "vocab") throw IoError("bad vocab header");
    }
    Builder builder;
    builder.tokens.reserve(n_vocab);
    for (std::size_t i = 0; i < n_vocab; ++i) {
        next_line();
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoError("bad vocab line");
        builder.tokens.push_back(line.substr(0, tab));
    }
    {
        std::istringstream hdr(next_line());
        std::string word;
        hdr >> word >> n_merges;
        if (word != "merges") throw IoError("bad merges header");
    }
    for (std::size_t i = 0; i < n_merges; ++i) {
        next_line();
        const auto space = line.find(' ');
        if (space == std::string::npos) throw IoError("bad merge line");
        builder.merges.emplace_back(line.substr(0, space),
                                    line.substr(space + 1));
    }
    return builder.finish();
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

namespace {

using SymId = std::int32_t;

struct SymbolTable {
    std::vector<std::string> strings;
    std::unordered_map<std::string, SymId> ids;

    SymId intern(const std::string& s) {
        const auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        const SymId id = static_cast<SymId>(strings.size());
        strings.push_back(s);
        ids.emplace(s, id);
        return id;
    }
};

struct TrainWord {
    std::vector<SymId> syms;
    std::int64_t freq = 0;
};

std::uint64_t pair_key(SymId a, SymId b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

struct HeapEntry {
    std::int64_t count;
    std::string merged;
    SymId a, b;
};

struct HeapLess {
    bool operator()(const HeapEntry& x, const HeapEntry& y) const {
        if (x.count != y.count) return x.count < y.count;
        if (x.merged != y.merged) return x.merged > y.merged;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

}  // namespace

BpeModel train_bpe(const std::vector<std::vector<std::string>>& corpus,
                   const BpeConfig& config) {
    if (config.character_coverage <= 0.0 || config.character_coverage > 1.0) {
        throw InvalidConfig("character_coverage must be in (0, 1]");
    }

    // Word frequency table; reserved words do not train.
    std::unordered_map<std::string, std::int64_t> word_freq;
    for (const auto& sentence : corpus) {
        for (const auto& word : sentence) {
            if (word.empty() || BpeModel::is_reserved(word)) continue;
            ++word_freq[word];
        }
    }
    if (word_freq.empty()) throw EmptyCorpus("train_bpe: no trainable words");

    std::vector<std::pair<std::string, std::int64_t>> word_list(
        word_freq.begin(), word_freq.end());
    std::sort(word_list.begin(), word_list.end());

    // Character coverage: keep the most frequent characters until the
    // configured share of the character mass is covered.
    std::unordered_map<char32_t, std::int64_t> char_freq;
    std::int64_t char_total = 0;
    for (const auto& [word, freq] : word_list) {
        for (char32_t cp : utf8::decode(word)) {
            if (cp == BpeModel::kMarkerChar) continue;
            char_freq[cp] += freq;
            char_total += freq;
        }
    }
    std::vector<std::pair<char32_t, std::int64_t>> chars(char_freq.begin(),
                                                         char_freq.end());
    std::sort(chars.begin(), chars.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    std::unordered_set<char32_t> covered;
    std::int64_t cum = 0;
    for (const auto& [cp, freq] : chars) {
        if (cum >= static_cast<std::int64_t>(
                       std::ceil(config.character_coverage * char_total))) {
            break;
        }
        covered.insert(cp);
        cum += freq;
    }

    const auto& reserved = BpeModel::reserved_tokens();
    const int base_size =
        static_cast<int>(reserved.size() + 2 * covered.size());
    if (config.target_size < base_size) {
        throw TargetTooSmall(
            "target_size " + std::to_string(config.target_size) +
            " is below the baseline vocabulary of " +
            std::to_string(base_size) + " (reserved + character symbols)");
    }

    // Intern base symbols: a marked and a bare form per covered character.
    SymbolTable table;
    const SymId unk_sym = table.intern("<unk>");
    for (const auto& [cp, freq] : chars) {
        if (!covered.count(cp)) continue;
        table.intern(kMarker + utf8::encode_one(cp));
        table.intern(utf8::encode_one(cp));
    }

    std::vector<TrainWord> words(word_list.size());
#pragma omp parallel for schedule(static)
    for (long long w = 0; w < static_cast<long long>(word_list.size()); ++w) {
        const auto cps = utf8::decode(word_list[w].first);
        auto& tw = words[w];
        tw.freq = word_list[w].second;
        tw.syms.reserve(cps.size());
        for (std::size_t i = 0; i < cps.size(); ++i) {
            if (cps[i] == BpeModel::kMarkerChar || !covered.count(cps[i])) {
                tw.syms.push_back(unk_sym);
                continue;
            }
            std::string s = utf8::encode_one(cps[i]);
            if (i == 0) s = kMarker + s;
            // Base symbols are pre-interned; lookup only.
            tw.syms.push_back(table.ids.at(s));
        }
    }

    // Initial pair statistics, sharded then summed (order-independent).
    std::unordered_map<std::uint64_t, std::int64_t> pair_count;
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> pair_words;
    {
        const int shards =
#ifdef _OPENMP
            std::max(1, std::min(8, static_cast<int>(words.size() / 4096) + 1));
#else
            1;
#endif
        std::vector<std::unordered_map<std::uint64_t, std::int64_t>> parts(
            shards);
#pragma omp parallel for schedule(static) num_threads(shards)
        for (int s = 0; s < shards; ++s) {
            auto& local = parts[s];
            for (std::size_t w = s; w < words.size();
                 w += static_cast<std::size_t>(shards)) {
                const auto& tw = words[w];
                for (std::size_t i = 0; i + 1 < tw.syms.size(); ++i) {
                    local[pair_key(tw.syms[i], tw.syms[i + 1])] += tw.freq;
                }
            }
        }
        for (const auto& part : parts) {
            for (const auto& [k, v] : part) pair_count[k] += v;
        }
        for (std::size_t w = 0; w < words.size(); ++w) {
            const auto& tw = words[w];
            for (std::size_t i = 0; i + 1 < tw.syms.size(); ++i) {
                auto& list = pair_words[pair_key(tw.syms[i], tw.syms[i + 1])];
                if (list.empty() || list.back() != static_cast<int>(w)) {
                    list.push_back(static_cast<int>(w));
                }
            }
        }
    }

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
    const auto push_pair = [&](SymId a, SymId b, std::int64_t count) {
        if (count < 2 || a == unk_sym || b == unk_sym) return;
        heap.push({count, table.strings[a] + table.strings[b], a, b});
    };
    for (const auto& [key, count] : pair_count) {
        push_pair(static_cast<SymId>(key >> 32),
                  static_cast<SymId>(key & 0xffffffffu), count);
    }

    BpeModel::Builder builder;
    builder.tokens = reserved;
    std::unordered_set<std::string> vocab_set(reserved.begin(),
                                              reserved.end());
    for (const auto& [cp, freq] : chars) {
        if (!covered.count(cp)) continue;
        for (const std::string& form :
             {kMarker + utf8::encode_one(cp), utf8::encode_one(cp)}) {
            if (vocab_set.insert(form).second) builder.tokens.push_back(form);
        }
    }

    std::unordered_set<std::uint64_t> banned;
    std::vector<std::int32_t> stamp(words.size(), -1);
    int merge_no = -1;

    while (static_cast<int>(builder.tokens.size()) < config.target_size &&
           !heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        const std::uint64_t key = pair_key(top.a, top.b);
        if (banned.count(key)) continue;
        const auto it = pair_count.find(key);
        const std::int64_t current = it == pair_count.end() ? 0 : it->second;
        if (current < 2) continue;
        if (current != top.count) {
            // Stale entry; re-queue at the true count.
            push_pair(top.a, top.b, current);
            continue;
        }
        if (contains_reserved(top.merged)) {
            banned.insert(key);
            continue;
        }

        ++merge_no;
        const SymId merged_sym = table.intern(top.merged);
        builder.merges.emplace_back(table.strings[top.a],
                                    table.strings[top.b]);
        if (vocab_set.insert(top.merged).second) {
            builder.tokens.push_back(top.merged);
        }

        // Rewrite every word containing the pair; resync its pair counts.
        auto word_ids = std::move(pair_words[key]);
        pair_words.erase(key);
        for (const std::int32_t w : word_ids) {
            if (stamp[w] == merge_no) continue;
            stamp[w] = merge_no;
            auto& tw = words[w];
            bool has = false;
            for (std::size_t i = 0; i + 1 < tw.syms.size(); ++i) {
                if (tw.syms[i] == top.a && tw.syms[i + 1] == top.b) {
                    has = true;
                    break;
                }
            }
            if (!has) continue;
            for (std::size_t i = 0; i + 1 < tw.syms.size(); ++i) {
                pair_count[pair_key(tw.syms[i], tw.syms[i + 1])] -= tw.freq;
            }
            std::vector<SymId> next;
            next.reserve(tw.syms.size());
            for (std::size_t i = 0; i < tw.syms.size();) {
                if (i + 1 < tw.syms.size() && tw.syms[i] == top.a &&
                    tw.syms[i + 1] == top.b) {
                    next.push_back(merged_sym);
                    i += 2;
                } else {
                    next.push_back(tw.syms[i]);
                    i += 1;
                }
            }
            tw.syms = std::move(next);
            for (std::size_t i = 0; i + 1 < tw.syms.size(); ++i) {
                const std::uint64_t k2 =
                    pair_key(tw.syms[i], tw.syms[i + 1]);
                const std::int64_t after = (pair_count[k2] += tw.freq);
                auto& list = pair_words[k2];
                if (list.empty() || list.back() != w) list.push_back(w);
                push_pair(tw.syms[i], tw.syms[i + 1], after);
            }
        }
        pair_count.erase(key);
    }

    return builder.finish();
}

BpeModel train_bpe_lines(const std::vector<std::string>& lines,
                         const BpeConfig& config) {
    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(lines.size());
    for (const auto& line : lines) {
        std::istringstream ss(line);
        std::vector<std::string> words;
        std::string w;
        while (ss >> w) words.push_back(std::move(w));
        corpus.push_back(std::move(words));
    }
    return train_bpe(corpus, config);
}

}  // namespace dravnmt
