#include "dravnmt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dravnmt/errors.hpp"
#include "dravnmt/rng.hpp"
#include "dravnmt/utf8.hpp"

namespace dravnmt {

namespace {

// Offsets assigned in every supported script (Devanagari included, so any
// transliteration target is hole-free for the family).
std::vector<int> offsets_assigned_everywhere(int lo, int hi) {
    std::vector<int> out;
    for (int o = lo; o <= hi; ++o) {
        bool all = true;
        for (Script s : all_scripts()) {
            if (!offset_assigned(s, o)) {
                all = false;
                break;
            }
        }
        if (all) out.push_back(o);
    }
    return out;
}

struct Alphabet {
    std::vector<int> consonants;      // root-eligible
    std::vector<int> suffix_marks;    // reserved for language suffixes
    std::vector<int> vowel_signs;
};

Alphabet family_alphabet() {
    Alphabet a;
    auto consonants = offsets_assigned_everywhere(0x15, 0x39);
    a.vowel_signs = offsets_assigned_everywhere(0x3E, 0x4C);
    if (consonants.size() < kLanguageCount + 4 || a.vowel_signs.empty()) {
        throw InvalidSpec("script table lacks a shared alphabet");
    }
    // The last four shared consonants mark the four languages and never
    // appear inside roots, so the marker is unambiguous.
    a.suffix_marks.assign(consonants.end() - kLanguageCount,
                          consonants.end());
    consonants.resize(consonants.size() - kLanguageCount);
    a.consonants = std::move(consonants);
    return a;
}

std::string render(const std::vector<int>& offsets, Script script) {
    std::u32string cps;
    cps.reserve(offsets.size());
    for (int o : offsets) cps.push_back(script_base(script) + o);
    return utf8::encode(cps);
}

std::vector<int> random_root(const Alphabet& a, Rng& rng) {
    std::vector<int> offsets;
    const int syllables = rng.range(2, 3);
    for (int s = 0; s < syllables; ++s) {
        offsets.push_back(
            a.consonants[rng.below(a.consonants.size())]);
        if (rng.bernoulli(0.6)) {
            offsets.push_back(
                a.vowel_signs[rng.below(a.vowel_signs.size())]);
        }
    }
    return offsets;
}

// Zipf-weighted root sampler (weight 1/(rank+1)).
struct RootSampler {
    std::vector<double> cum;

    explicit RootSampler(int n) {
        cum.reserve(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            total += 1.0 / static_cast<double>(i + 1);
            cum.push_back(total);
        }
        for (auto& c : cum) c /= total;
    }

    int draw(Rng& rng) const {
        const double u = rng.uniform();
        return static_cast<int>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    }
};

std::vector<int> sentence_roots(const FamilySpec& spec,
                                const RootSampler& sampler, Rng& rng) {
    const int len = rng.range(spec.min_sentence_len, spec.max_sentence_len);
    std::vector<int> roots(len);
    for (auto& r : roots) r = sampler.draw(rng);
    return roots;
}

void validate(const FamilySpec& spec) {
    if (spec.lexicon_size < 20) {
        throw InvalidSpec("lexicon_size must be at least 20");
    }
    if (spec.shared_root_fraction < 0.0 || spec.shared_root_fraction > 1.0) {
        throw InvalidSpec("shared_root_fraction must lie in [0, 1]");
    }
    std::set<Script> distinct(spec.scripts.begin(), spec.scripts.end());
    if (distinct.size() != spec.scripts.size()) {
        throw InvalidSpec("family scripts must be pairwise distinct");
    }
    if (spec.min_sentence_len < 1 ||
        spec.min_sentence_len > spec.max_sentence_len) {
        throw InvalidSpec("bad sentence length range");
    }
}

}  // namespace

Family generate_family(const FamilySpec& spec, int sentences_per_language) {
    validate(spec);
    const Alphabet alphabet = family_alphabet();
    Rng rng(spec.seed);

    Family family;
    family.spec = spec;
    auto& lex = family.lexicon;
    lex.scripts = spec.scripts;
    for (int lang = 0; lang < kLanguageCount; ++lang) {
        lex.suffixes[lang] = {alphabet.suffix_marks[lang],
                              alphabet.vowel_signs[0]};
    }

    // Root forms. A shared root uses one abstract form family-wide; an
    // unshared root draws an independent form per language. Forms must be
    // unique per language so word -> root lookup is unambiguous.
    std::array<std::set<std::vector<int>>, kLanguageCount> used;
    const auto fresh_root = [&](int lang, Rng& r) {
        for (;;) {
            auto form = random_root(alphabet, r);
            if (used[lang].insert(form).second) return form;
        }
    };
    lex.roots.resize(spec.lexicon_size);
    lex.rendered.resize(spec.lexicon_size);
    for (int i = 0; i < spec.lexicon_size; ++i) {
        const bool shared = rng.bernoulli(spec.shared_root_fraction);
        if (shared) {
            for (;;) {
                auto form = random_root(alphabet, rng);
                bool ok = true;
                for (int l = 0; l < kLanguageCount && ok; ++l) {
                    ok = !used[l].count(form);
                }
                if (!ok) continue;
                for (int l = 0; l < kLanguageCount; ++l) {
                    used[l].insert(form);
                    lex.roots[i][l] = form;
                }
                break;
            }
        } else {
            for (int l = 0; l < kLanguageCount; ++l) {
                lex.roots[i][l] = fresh_root(l, rng);
            }
        }
        for (int l = 0; l < kLanguageCount; ++l) {
            auto offsets = lex.roots[i][l];
            offsets.insert(offsets.end(), lex.suffixes[l].begin(),
                           lex.suffixes[l].end());
            lex.rendered[i][l] = render(offsets, spec.scripts[l]);
            lex.word_to_root[l].emplace(lex.rendered[i][l], i);
        }
    }

    const RootSampler sampler(spec.lexicon_size);
    for (int l = 0; l < kLanguageCount; ++l) {
        Rng stream = rng.fork(0x10 + l);
        auto& mono = family.monolingual[l];
        mono.reserve(sentences_per_language);
        for (int s = 0; s < sentences_per_language; ++s) {
            const auto roots = sentence_roots(spec, sampler, stream);
            std::string line;
            for (int r : roots) {
                if (!line.empty()) line += ' ';
                line += lex.rendered[r][l];
            }
            mono.push_back(std::move(line));
        }
    }
    return family;
}

std::vector<std::pair<std::string, std::string>> render_parallel(
    const Family& family, Direction direction, int count,
    std::uint64_t stream) {
    const auto& lex = family.lexicon;
    const int s = static_cast<int>(direction.src);
    const int t = static_cast<int>(direction.tgt);
    Rng rng = Rng(family.spec.seed)
                  .fork(0x100 + stream * 64 +
                        static_cast<std::uint64_t>(s) * 8 +
                        static_cast<std::uint64_t>(t));
    const RootSampler sampler(family.spec.lexicon_size);
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(count);
    for (int i = 0; i < count; ++i) {
        const auto roots = sentence_roots(family.spec, sampler, rng);
        std::string src, tgt;
        for (int r : roots) {
            if (!src.empty()) {
                src += ' ';
                tgt += ' ';
            }
            src += lex.rendered[r][s];
            tgt += lex.rendered[r][t];
        }
        pairs.emplace_back(std::move(src), std::move(tgt));
    }
    return pairs;
}

std::string reference_translation(const std::string& sentence,
                                  Direction direction,
                                  const Lexicon& lexicon) {
    const auto& lookup = lexicon.word_to_root[static_cast<int>(direction.src)];
    std::string out;
    std::size_t pos = 0;
    while (pos < sentence.size()) {
        const auto space = sentence.find(' ', pos);
        const std::string word =
            sentence.substr(pos, space == std::string::npos ? std::string::npos
                                                            : space - pos);
        pos = space == std::string::npos ? sentence.size() : space + 1;
        if (word.empty()) continue;
        const auto it = lookup.find(word);
        if (it == lookup.end()) {
            throw UnknownRoot("reference_translation: unknown word '" + word +
                              "'");
        }
        if (!out.empty()) out += ' ';
        out += lexicon.word(it->second, direction.tgt);
    }
    return out;
}

std::optional<LanguageId> classify_synthetic(const std::string& sentence,
                                             const Lexicon& lexicon) {
    std::array<int, kLanguageCount> votes{};
    std::u32string word;
    const auto cps = utf8::decode(sentence);
    const auto vote_word = [&](const std::u32string& w) {
        if (w.size() < 2) return;
        const auto script = script_of(w[0]);
        if (!script) return;
        const char32_t base = script_base(*script);
        for (int l = 0; l < kLanguageCount; ++l) {
            const auto& suffix = lexicon.suffixes[l];
            if (w.size() < suffix.size()) continue;
            bool match = true;
            for (std::size_t k = 0; k < suffix.size(); ++k) {
                const char32_t cp = w[w.size() - suffix.size() + k];
                if (cp < base || cp >= base + kBlockLen ||
                    static_cast<int>(cp - base) != suffix[k]) {
                    match = false;
                    break;
                }
            }
            if (match) ++votes[l];
        }
    };
    for (char32_t cp : cps) {
        if (cp == U' ' || cp == U'\t') {
            vote_word(word);
            word.clear();
        } else {
            word.push_back(cp);
        }
    }
    vote_word(word);

    int best = -1, best_votes = 0;
    bool tie = false;
    for (int l = 0; l < kLanguageCount; ++l) {
        if (votes[l] > best_votes) {
            best = l;
            best_votes = votes[l];
            tie = false;
        } else if (votes[l] == best_votes && votes[l] > 0) {
            tie = true;
        }
    }
    if (best < 0 || tie) return std::nullopt;
    return static_cast<LanguageId>(best);
}

}  // namespace dravnmt
