#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "norma/common.hpp"
#include "norma/corpus.hpp"
#include "norma/metrics.hpp"
#include "norma/unicode.hpp"

namespace norma {

enum class RuleScope { anywhere, word_initial, word_final };

struct NoiseRule {
    std::string pattern;     // literal character sequence, non-empty
    std::string replacement; // literal, may be empty (deletion)
    double probability = 1.0;
    RuleScope scope = RuleScope::anywhere;
};

struct NoiseProfile {
    std::string name;
    std::vector<NoiseRule> rules; // applied in order, leftmost-longest match
    std::uint64_t salt = 0;
};

namespace detail {

struct CompiledRule {
    u32string pattern;
    u32string replacement;
    double probability;
    RuleScope scope;
    std::size_t order;
    std::size_t edit_cost; // levenshtein(pattern, replacement), for accounting
};

inline std::vector<CompiledRule> compile_profile(const NoiseProfile& profile) {
    std::vector<CompiledRule> out;
    for (std::size_t i = 0; i < profile.rules.size(); ++i) {
        const auto& r = profile.rules[i];
        if (r.pattern.empty())
            throw DataError("noise profile `" + profile.name + "`: rule " + std::to_string(i) +
                            " has an empty pattern");
        if (r.probability < 0.0 || r.probability > 1.0)
            throw DataError("noise profile `" + profile.name + "`: rule " + std::to_string(i) +
                            " probability out of [0,1]");
        out.push_back({utf8_decode(r.pattern), utf8_decode(r.replacement), r.probability, r.scope,
                       i, levenshtein(r.pattern, r.replacement)});
    }
    return out;
}

inline bool matches_at(const u32string& text, std::size_t pos, const CompiledRule& rule) {
    if (pos + rule.pattern.size() > text.size()) return false;
    for (std::size_t k = 0; k < rule.pattern.size(); ++k)
        if (text[pos + k] != rule.pattern[k]) return false;
    if (rule.scope == RuleScope::word_initial && pos != 0 && text[pos - 1] != U' ') return false;
    if (rule.scope == RuleScope::word_final) {
        const std::size_t end = pos + rule.pattern.size();
        if (end != text.size() && text[end] != U' ') return false;
    }
    return true;
}

} // namespace detail

struct NoiseOutcome {
    std::string text;
    std::size_t firings = 0;
    std::size_t edit_estimate = 0; // sum of per-firing levenshtein(pattern, replacement)
    std::size_t edit_bound = 0;    // sum of per-firing max(|pattern|, |replacement|)
};

// Left-to-right scan. At each position the highest-priority matching rule
// (longest pattern, then profile order) fires with its probability; replaced
// spans are never rescanned.
inline NoiseOutcome apply_noise_detailed(const std::string& text, const NoiseProfile& profile,
                                         std::uint64_t seed) {
    const auto rules = detail::compile_profile(profile);
    const u32string in = utf8_decode(text);
    Rng rng = Rng::derive(profile.salt, seed);

    u32string out;
    NoiseOutcome result;
    std::size_t pos = 0;
    while (pos < in.size()) {
        const detail::CompiledRule* chosen = nullptr;
        for (const auto& r : rules) {
            if (!detail::matches_at(in, pos, r)) continue;
            if (!chosen || r.pattern.size() > chosen->pattern.size() ||
                (r.pattern.size() == chosen->pattern.size() && r.order < chosen->order))
                chosen = &r;
        }
        if (chosen && rng.uniform() < chosen->probability) {
            out += chosen->replacement;
            pos += chosen->pattern.size();
            result.firings += 1;
            result.edit_estimate += chosen->edit_cost;
            result.edit_bound += std::max(chosen->pattern.size(), chosen->replacement.size());
        } else {
            out.push_back(in[pos]);
            ++pos;
        }
    }
    result.text = utf8_encode(out);
    return result;
}

inline std::string apply_noise(const std::string& text, const NoiseProfile& profile,
                               std::uint64_t seed) {
    return apply_noise_detailed(text, profile, seed).text;
}

struct GeneratedCorpus {
    ParallelCorpus corpus;
    std::vector<std::size_t> edit_estimates; // per sentence
    std::size_t total_firings = 0;
    std::size_t total_edit_estimate = 0;
    std::size_t total_edit_bound = 0;
};

// source = noised sentence, target = clean sentence. Each sentence draws its
// own PRNG stream from (seed, index) so generation parallelizes stably.
inline GeneratedCorpus generate_corpus(const MonoCorpus& mono, const NoiseProfile& profile,
                                       std::uint64_t seed, const std::string& tag) {
    GeneratedCorpus gen;
    gen.corpus.name = tag;
    gen.edit_estimates.reserve(mono.size());
    for (std::size_t i = 0; i < mono.sentences.size(); ++i) {
        const auto outcome =
            apply_noise_detailed(mono.sentences[i], profile, seed * 0x9E3779B97F4A7C15ULL + i);
        SentencePair p{outcome.text, mono.sentences[i], tag};
        if (p.source.empty()) p.source = p.target; // deletion-only rules could empty a sentence
        gen.corpus.pairs.push_back(std::move(p));
        gen.edit_estimates.push_back(outcome.edit_estimate);
        gen.total_firings += outcome.firings;
        gen.total_edit_estimate += outcome.edit_estimate;
        gen.total_edit_bound += outcome.edit_bound;
    }
    return gen;
}

// ---------------------------------------------------------------------------
// Profile files: {"name": ..., "salt": ..., "rules": [{pattern, replacement,
// probability, scope}]}
// ---------------------------------------------------------------------------

inline RuleScope scope_from_string(const std::string& s) {
    if (s == "anywhere") return RuleScope::anywhere;
    if (s == "word-initial") return RuleScope::word_initial;
    if (s == "word-final") return RuleScope::word_final;
    throw DataError("unknown rule scope: " + s);
}

inline std::string scope_to_string(RuleScope s) {
    switch (s) {
        case RuleScope::anywhere: return "anywhere";
        case RuleScope::word_initial: return "word-initial";
        case RuleScope::word_final: return "word-final";
    }
    return "anywhere";
}

inline NoiseProfile profile_from_json(const nlohmann::json& j) {
    NoiseProfile p;
    p.name = j.value("name", std::string("unnamed"));
    p.salt = j.value("salt", std::uint64_t{0});
    if (!j.contains("rules") || !j["rules"].is_array())
        throw DataError("noise profile `" + p.name + "`: missing rules array");
    for (const auto& rj : j["rules"]) {
        NoiseRule r;
        r.pattern = rj.at("pattern").get<std::string>();
        r.replacement = rj.value("replacement", std::string());
        r.probability = rj.value("probability", 1.0);
        r.scope = scope_from_string(rj.value("scope", std::string("anywhere")));
        p.rules.push_back(std::move(r));
    }
    return p;
}

inline nlohmann::json profile_to_json(const NoiseProfile& p) {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : p.rules)
        rules.push_back({{"pattern", r.pattern},
                         {"replacement", r.replacement},
                         {"probability", r.probability},
                         {"scope", scope_to_string(r.scope)}});
    return {{"name", p.name}, {"salt", p.salt}, {"rules", rules}};
}

inline NoiseProfile load_profile(const std::string& path) {
    const std::string text = detail::read_file(path);
    try {
        return profile_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": invalid profile JSON: " + e.what());
    }
}

// Four bundled spelling-variation profiles with increasing divergence from
// the normalized orthography; G-like is deliberately the strongest outlier
// (vowel shifts and digraph inversions rather than accent swaps).
inline std::vector<NoiseProfile> builtin_profiles() {
    auto mk = [](std::string name, std::uint64_t salt,
                 std::vector<NoiseRule> rules) {
        NoiseProfile p;
        p.name = std::move(name);
        p.salt = salt;
        p.rules = std::move(rules);
        return p;
    };
    std::vector<NoiseProfile> out;
    out.push_back(mk("C-like", 11,
                     {{"ñ", "nn-", 0.9, RuleScope::anywhere},
                      {"nn", "nn-", 0.5, RuleScope::anywhere},
                      {"ô", "ö", 0.9, RuleScope::anywhere},
                      {"o", "ō", 0.2, RuleScope::anywhere},
                      {"u", "û", 0.35, RuleScope::word_initial}}));
    out.push_back(mk("P-like", 13,
                     {{"ñ", "nn-", 0.9, RuleScope::anywhere},
                      {"nn", "nn-", 0.5, RuleScope::anywhere},
                      {"é", "è", 0.9, RuleScope::anywhere},
                      {"ô", "ö", 0.9, RuleScope::anywhere},
                      {"u", "û", 0.35, RuleScope::word_initial}}));
    out.push_back(mk("B-like", 17,
                     {{"ñ", "nn-", 0.9, RuleScope::anywhere},
                      {"é", "è", 0.9, RuleScope::anywhere},
                      {"sciô", "sce-o", 0.8, RuleScope::anywhere},
                      {"mm", "m", 0.6, RuleScope::anywhere},
                      {"ll", "l", 0.5, RuleScope::anywhere},
                      {"u", "û", 0.3, RuleScope::word_initial}}));
    out.push_back(mk("G-like", 19,
                     {{"sciô", "sce o", 0.8, RuleScope::anywhere},
                      {"nn", "ñ", 0.8, RuleScope::anywhere},
                      {"â", "ä", 0.8, RuleScope::anywhere},
                      {"ei", "éy", 0.7, RuleScope::anywhere},
                      {"o", "u", 0.45, RuleScope::anywhere},
                      {"é", "è", 0.5, RuleScope::anywhere},
                      {"u", "û", 0.35, RuleScope::word_initial}}));
    return out;
}

inline NoiseProfile builtin_profile(const std::string& name) {
    for (auto& p : builtin_profiles())
        if (p.name == name) return p;
    throw DataError("unknown builtin noise profile: " + name);
}

} // namespace norma
