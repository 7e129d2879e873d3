#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "norma/common.hpp"
#include "norma/corpus.hpp"

namespace testutil {

// Scratch directory under the test working directory, wiped on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name) : path_("tmp_" + name) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Small Ligurian-flavored lexicon; rich in the graphemes the bundled noise
// profiles rewrite (ñ, ô, é, â, nn, mm, ll, ei, o, u).
inline const std::vector<std::string>& lexicon() {
    static const std::vector<std::string> words = {
        "unna",  "rondaniña", "affammâ", "pösâ",  "sciô",   "teito", "coppi", "inta",
        "cà",    "séia",      "anno",    "donna", "panni",  "mâ",    "çitæ",  "zêna",
        "lalla", "ommo",      "neive",   "figeu", "belin",  "manniman", "öchi", "pin",
        "grande", "picciñe",  "stradda", "végi",  "feugo",  "bellissimo", "sô", "lunn-a",
        "mei",   "tei",       "sei",     "mondo", "monte",  "togno", "cammin", "ciæo"};
    return words;
}

inline norma::MonoCorpus synthetic_mono(std::size_t n_sentences, std::uint64_t seed,
                                        int min_words = 3, int max_words = 6) {
    const auto& words = lexicon();
    norma::MonoCorpus mono;
    mono.name = "synthetic";
    norma::Rng rng(seed);
    for (std::size_t i = 0; i < n_sentences; ++i) {
        const int n = min_words + static_cast<int>(rng.below(
                                      static_cast<std::uint64_t>(max_words - min_words + 1)));
        std::string s;
        for (int w = 0; w < n; ++w) {
            if (w) s += ' ';
            s += words[rng.below(words.size())];
        }
        mono.sentences.push_back(std::move(s));
    }
    return mono;
}

inline norma::ParallelCorpus identity_corpus(std::size_t n, std::uint64_t seed,
                                             const std::string& tag = "SYN") {
    const auto mono = synthetic_mono(n, seed);
    norma::ParallelCorpus corpus;
    corpus.name = tag;
    for (const auto& s : mono.sentences) corpus.pairs.push_back({s, s, tag});
    return corpus;
}

} // namespace testutil
