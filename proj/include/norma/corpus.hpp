#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "norma/common.hpp"
#include "norma/unicode.hpp"

namespace norma {

// One aligned pair: unnormalized source, normalized target, dataset tag.
struct SentencePair {
    std::string source;
    std::string target;
    std::string tag;

    bool operator==(const SentencePair&) const = default;
};

struct ParallelCorpus {
    std::vector<SentencePair> pairs;
    std::string name;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
};

struct MonoCorpus {
    std::vector<std::string> sentences;
    std::string name;

    std::size_t size() const { return sentences.size(); }
};

struct SplitSpec {
    double train_frac = 0.7;
    double test_frac = 0.2;
    double val_frac = 0.1;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

} // namespace detail

inline void validate_pair(const SentencePair& p, std::size_t line_no = 0) {
    const std::string where = line_no ? " at line " + std::to_string(line_no) : "";
    if (p.tag.empty()) throw DataError("empty dataset tag" + where);
    if (p.source.empty() || p.target.empty())
        throw DataError("empty source or target side" + where);
    for (const auto* side : {&p.source, &p.target})
        if (side->find('\t') != std::string::npos || side->find('\n') != std::string::npos)
            throw DataError("TAB or newline inside sentence" + where);
}

// Reads a TSV pair file (`source<TAB>target`, one pair per line, UTF-8, LF).
// Sides are trimmed and NFC-normalized so character counts are stable.
inline ParallelCorpus load_parallel(const std::string& path, const std::string& tag) {
    if (tag.empty()) throw DataError("dataset tag must be non-empty");
    const std::string text = detail::read_file(path);
    ParallelCorpus corpus;
    corpus.name = tag;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (detail::trim(line).empty() && i + 1 == lines.size()) break;
        const std::size_t line_no = i + 1;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(path + ": line " + std::to_string(line_no) + ": expected one TAB");
        if (line.find('\t', tab + 1) != std::string::npos)
            throw DataError(path + ": line " + std::to_string(line_no) + ": more than one TAB");
        SentencePair p;
        try {
            p.source = nfc_utf8(detail::trim(line.substr(0, tab)));
            p.target = nfc_utf8(detail::trim(line.substr(tab + 1)));
        } catch (const DataError& e) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
        p.tag = tag;
        if (p.source.empty() || p.target.empty())
            throw DataError(path + ": line " + std::to_string(line_no) + ": empty side");
        corpus.pairs.push_back(std::move(p));
    }
    if (corpus.pairs.empty()) throw DataError(path + ": empty corpus");
    return corpus;
}

inline void save_parallel(const ParallelCorpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    for (const auto& p : corpus.pairs) out << p.source << '\t' << p.target << '\n';
    if (!out) throw DataError("write failed: " + path);
}

// One sentence per line; blank lines are skipped.
inline MonoCorpus load_mono(const std::string& path, const std::string& name) {
    const std::string text = detail::read_file(path);
    MonoCorpus corpus;
    corpus.name = name;
    std::size_t line_no = 0;
    for (const auto& line : detail::split_lines(text)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        try {
            corpus.sentences.push_back(nfc_utf8(t));
        } catch (const DataError& e) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return corpus;
}

inline void save_mono(const MonoCorpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    for (const auto& s : corpus.sentences) out << s << '\n';
}

struct CorpusSplit {
    ParallelCorpus train;
    ParallelCorpus test;
    ParallelCorpus val;
};

// Seeded shuffle, then round-half-up cuts on train and test; the remainder
// goes to validation so the three parts always partition the corpus.
inline CorpusSplit split(const ParallelCorpus& corpus, const SplitSpec& spec) {
    if (corpus.size() < 10)
        throw DataError("corpus too small to split: " + std::to_string(corpus.size()) + " pairs");
    for (double f : {spec.train_frac, spec.test_frac, spec.val_frac})
        if (!(f > 0.0 && f < 1.0)) throw DataError("split fractions must lie in (0,1)");
    if (std::abs(spec.train_frac + spec.test_frac + spec.val_frac - 1.0) > 1e-9)
        throw DataError("fractions must sum to 1");

    std::vector<SentencePair> shuffled = corpus.pairs;
    Rng rng(spec.seed);
    rng.shuffle(shuffled);

    const double n = static_cast<double>(shuffled.size());
    const auto n_train = static_cast<std::size_t>(std::floor(spec.train_frac * n + 0.5));
    const auto n_test = static_cast<std::size_t>(std::floor(spec.test_frac * n + 0.5));

    CorpusSplit out;
    out.train.name = corpus.name + "-train";
    out.test.name = corpus.name + "-test";
    out.val.name = corpus.name + "-val";
    out.train.pairs.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.pairs.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train),
                          shuffled.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));
    out.val.pairs.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train + n_test),
                         shuffled.end());
    return out;
}

inline ParallelCorpus merge(const std::vector<ParallelCorpus>& corpora, const std::string& name) {
    if (corpora.empty()) throw DataError("merge of empty corpus list");
    ParallelCorpus out;
    out.name = name;
    for (const auto& c : corpora)
        out.pairs.insert(out.pairs.end(), c.pairs.begin(), c.pairs.end());
    return out;
}

inline ParallelCorpus upsample(const ParallelCorpus& corpus, std::size_t factor) {
    if (factor < 1) throw DataError("upsample factor must be >= 1");
    ParallelCorpus out;
    out.name = corpus.name;
    out.pairs.reserve(corpus.size() * factor);
    for (const auto& p : corpus.pairs)
        for (std::size_t k = 0; k < factor; ++k) out.pairs.push_back(p);
    return out;
}

// max(1, floor(n_back / n_orig)). Clamped so that scarce monolingual data
// never multiplies the human-annotated corpus by zero.
inline std::size_t upsample_factor(std::size_t n_back_tokens, std::size_t n_orig_tokens) {
    if (n_orig_tokens == 0) throw DataError("original corpus has zero tokens");
    const std::size_t f = n_back_tokens / n_orig_tokens;
    return f < 1 ? 1 : f;
}

enum class Side { source, target, mono };

// Total encoded token count over one side; BOS/EOS are not counted because
// the tokenizer does not add them.
template <typename Tokenizer>
std::size_t token_count(const ParallelCorpus& corpus, const Tokenizer& tok, Side side) {
    if (side == Side::mono) throw DataError("side=mono is only valid for monolingual corpora");
    std::size_t total = 0;
    for (const auto& p : corpus.pairs)
        total += tok.encode(side == Side::source ? p.source : p.target).ids.size();
    return total;
}

template <typename Tokenizer>
std::size_t token_count(const MonoCorpus& corpus, const Tokenizer& tok, Side side = Side::mono) {
    if (side != Side::mono) throw DataError("parallel sides are not valid for monolingual corpora");
    std::size_t total = 0;
    for (const auto& s : corpus.sentences) total += tok.encode(s).ids.size();
    return total;
}

template <typename Tokenizer>
std::size_t token_count_both_sides(const ParallelCorpus& corpus, const Tokenizer& tok) {
    return token_count(corpus, tok, Side::source) + token_count(corpus, tok, Side::target);
}

// ---------------------------------------------------------------------------
// Dataset manifest: JSON array of {path, tag, role: parallel|mono}.
// Relative paths are resolved against the manifest's directory.
// ---------------------------------------------------------------------------

struct ManifestEntry {
    std::string path;
    std::string tag;
    std::string role; // "parallel" | "mono"
};

inline std::vector<ManifestEntry> load_manifest(const std::string& path) {
    const std::string text = detail::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
    const nlohmann::json* list = &j;
    if (j.is_object() && j.contains("datasets")) list = &j["datasets"];
    if (!list->is_array()) throw DataError(path + ": manifest must be a JSON array of datasets");

    const auto base = std::filesystem::path(path).parent_path();
    std::vector<ManifestEntry> entries;
    for (const auto& item : *list) {
        ManifestEntry e;
        if (!item.contains("path")) throw DataError(path + ": manifest entry without \"path\"");
        e.path = item["path"].get<std::string>();
        if (std::filesystem::path(e.path).is_relative())
            e.path = (base / e.path).string();
        e.role = item.value("role", std::string("parallel"));
        if (e.role != "parallel" && e.role != "mono")
            throw DataError(path + ": manifest role must be \"parallel\" or \"mono\"");
        e.tag = item.value("tag", std::string());
        if (e.role == "parallel" && e.tag.empty())
            throw DataError(path + ": parallel manifest entry without \"tag\"");
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw DataError(path + ": empty manifest");
    return entries;
}

} // namespace norma
