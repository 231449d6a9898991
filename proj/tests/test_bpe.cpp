#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dravnmt/bpe.hpp"
#include "dravnmt/errors.hpp"

using namespace dravnmt;
namespace fs = std::filesystem;

namespace {

const std::string kM = "\xE2\x96\x81";  // marker

std::vector<std::vector<std::string>> sentences(
    std::initializer_list<std::string> lines) {
    std::vector<std::vector<std::string>> out;
    for (const auto& line : lines) {
        std::istringstream ss(line);
        std::vector<std::string> words;
        std::string w;
        while (ss >> w) words.push_back(w);
        out.push_back(std::move(words));
    }
    return out;
}

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("highest-frequency pair merges first") {
    const auto model = train_bpe(sentences({"ab ab ab ac"}),
                                 {.target_size = 40});
    REQUIRE(!model.merges().empty());
    CHECK(model.merges()[0] == std::pair<std::string, std::string>(kM + "a",
                                                                   "b"));
    // No merge involving 'c' may precede the (a, b) merge.
    const auto& first = model.merges()[0];
    CHECK(first.first.find('c') == std::string::npos);
    CHECK(first.second.find('c') == std::string::npos);
    // Words fully captured by the merge encode as a single piece.
    CHECK(model.encode({"ab"}) == std::vector<std::string>{kM + "ab"});
}

TEST_CASE("target too small") {
    CHECK_THROWS_AS(train_bpe(sentences({"ab ab ab ac"}), {.target_size = 10}),
                    TargetTooSmall);
}

TEST_CASE("empty corpus") {
    CHECK_THROWS_AS(train_bpe({}, {.target_size = 100}), EmptyCorpus);
    CHECK_THROWS_AS(train_bpe(sentences({""}), {.target_size = 100}),
                    EmptyCorpus);
}

TEST_CASE("single-character corpus yields no merges") {
    const auto model = train_bpe(sentences({"a a a"}), {.target_size = 100});
    CHECK(model.merges().empty());
    const auto& reserved = BpeModel::reserved_tokens();
    CHECK(model.vocab_size() == static_cast<int>(reserved.size()) + 2);
    CHECK(model.token_id(kM + "a") >= 0);
    CHECK(model.token_id("a") >= 0);
}

TEST_CASE("reserved symbols stay atomic and sit at the lowest ids") {
    const auto model = train_bpe(sentences({"ab ab"}), {.target_size = 40});
    const auto& reserved = BpeModel::reserved_tokens();
    for (std::size_t i = 0; i < reserved.size(); ++i) {
        CHECK(model.token_id(reserved[i]) == static_cast<int>(i));
    }
    CHECK(model.encode({"__src__kn__"}) ==
          std::vector<std::string>{"__src__kn__"});
    CHECK(model.encode({"[END]"}) == std::vector<std::string>{"[END]"});
}

TEST_CASE("out-of-coverage characters become <unk>") {
    std::vector<std::vector<std::string>> corpus;
    for (int i = 0; i < 10; ++i) corpus.push_back({"aaaa"});
    corpus.push_back({"z"});
    const auto model =
        train_bpe(corpus, {.target_size = 100, .character_coverage = 0.9});
    CHECK(model.token_id("z") == -1);
    const auto pieces = model.encode({"za"});
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0] == "<unk>");
    CHECK(pieces[1] == "a");
    // Decoding renders the literal placeholder.
    CHECK(model.decode(pieces) == "<unk>a");
}

TEST_CASE("decode inverts encode") {
    const auto model = train_bpe(
        sentences({"abc abd cab", "ab abc abcd", "d c b a"}),
        {.target_size = 60});
    for (const std::string s :
         {"abc abd", "a", "cab abcd c", "d d d", "ab abc"}) {
        std::istringstream ss(s);
        std::vector<std::string> words;
        std::string w;
        while (ss >> w) words.push_back(w);
        CHECK(model.decode(model.encode(words)) == s);
    }
    CHECK(model.decode(std::vector<std::string>{}) == "");
}

TEST_CASE("monotone segmentation: never more pieces than characters") {
    const auto model = train_bpe(sentences({"abc abd cab dddd"}),
                                 {.target_size = 60});
    for (const std::string w : {"abc", "abcd", "dddd", "a"}) {
        CHECK(model.encode({w}).size() <= w.size());
    }
}

TEST_CASE("deterministic model bytes across runs") {
    const auto corpus = sentences(
        {"ab ab ab ac", "bc bc ab", "abc bca cab", "a b c ab bc"});
    const auto m1 = train_bpe(corpus, {.target_size = 50});
    const auto m2 = train_bpe(corpus, {.target_size = 50});
    const auto p1 = fs::temp_directory_path() / "dravnmt_bpe1.model";
    const auto p2 = fs::temp_directory_path() / "dravnmt_bpe2.model";
    m1.save(p1);
    m2.save(p2);
    CHECK(file_bytes(p1) == file_bytes(p2));
}

TEST_CASE("save/load round trip preserves behavior") {
    const auto model = train_bpe(sentences({"abc abd cab", "ab abc abcd"}),
                                 {.target_size = 60});
    const auto p = fs::temp_directory_path() / "dravnmt_bpe_rt.model";
    model.save(p);
    const auto loaded = BpeModel::load(p);
    CHECK(loaded.vocab_size() == model.vocab_size());
    CHECK(loaded.merges() == model.merges());
    for (const std::string w : {"abc", "abd", "cab", "abcd", "dcba"}) {
        CHECK(loaded.encode({w}) == model.encode({w}));
    }
}

TEST_CASE("tie-break is lexicographic on the merged string") {
    // Both candidate pairs occur twice; ties resolve by merged string.
    const auto model = train_bpe(sentences({"xy xy zw zw"}),
                                 {.target_size = 24});
    REQUIRE(!model.merges().empty());
    const auto& first = model.merges()[0];
    CHECK(first.first + first.second == kM + "xy");  // "▁xy" < "▁zw"
}

TEST_CASE("random corpus round trips, reserved never embedded") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> len(1, 6), nchars(0, 4), nwords(1, 8);
    const std::string alphabet = "abcde";
    std::vector<std::vector<std::string>> corpus;
    for (int s = 0; s < 200; ++s) {
        std::vector<std::string> sent;
        for (int w = 0, n = nwords(rng); w < n; ++w) {
            std::string word;
            for (int c = 0, m = len(rng); c < m; ++c) {
                word += alphabet[static_cast<std::size_t>(nchars(rng))];
            }
            sent.push_back(word);
        }
        corpus.push_back(std::move(sent));
    }
    const auto model = train_bpe(corpus, {.target_size = 80});
    for (const auto& sent : corpus) {
        std::string joined;
        for (const auto& w : sent) {
            if (!joined.empty()) joined += ' ';
            joined += w;
        }
        CHECK(model.decode(model.encode(sent)) == joined);
        CHECK(model.encode(sent).size() >= sent.size());
    }
    for (const auto& tok : model.tokens()) {
        if (BpeModel::is_reserved(tok)) continue;
        for (const auto& r : BpeModel::reserved_tokens()) {
            CHECK(tok.find(r) == std::string::npos);
        }
    }
    // Vocabulary ids are dense and unique.
    for (int i = 0; i < model.vocab_size(); ++i) {
        CHECK(model.token_id(model.token(i)) == i);
    }
}

TEST_CASE("untrained model operations throw") {
    BpeModel model;
    CHECK_THROWS_AS(model.encode({"a"}), UntrainedModel);
    CHECK_THROWS_AS(model.decode(std::vector<std::string>{"a"}),
                    UntrainedModel);
    CHECK_THROWS_AS(model.save("/tmp/never.model"), UntrainedModel);
}
