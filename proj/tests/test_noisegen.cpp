#include <catch2/catch_amalgamated.hpp>

#include "norma/metrics.hpp"
#include "norma/noisegen.hpp"
#include "testutil.hpp"

using namespace norma;

TEST_CASE("apply_noise rewrites patterns") {
    NoiseProfile p;
    p.name = "test";
    p.rules = {{"ñ", "nn-", 1.0, RuleScope::anywhere}};
    CHECK(apply_noise("rondaniña", p, 1) == "rondaninn-a");
}

TEST_CASE("empty profile is the identity") {
    NoiseProfile p;
    p.name = "empty";
    CHECK(apply_noise("unna séia", p, 3) == "unna séia");
}

TEST_CASE("zero probability rules are the identity") {
    NoiseProfile p;
    p.rules = {{"a", "b", 0.0, RuleScope::anywhere}, {"n", "m", 0.0, RuleScope::anywhere}};
    CHECK(apply_noise("banana", p, 9) == "banana");
}

TEST_CASE("deterministic under equal seeds") {
    NoiseProfile p;
    p.rules = {{"o", "u", 0.5, RuleScope::anywhere}, {"nn", "ñ", 0.5, RuleScope::anywhere}};
    p.salt = 5;
    const std::string text = "unna rondaniña in sciô monte";
    CHECK(apply_noise(text, p, 77) == apply_noise(text, p, 77));

    bool differs = false;
    for (std::uint64_t seed = 0; seed < 32 && !differs; ++seed)
        differs = apply_noise(text, p, seed) != apply_noise(text, p, seed + 100);
    CHECK(differs);
}

TEST_CASE("p=1 rules are a deterministic function of the input") {
    NoiseProfile p;
    p.rules = {{"é", "è", 1.0, RuleScope::anywhere}};
    for (std::uint64_t seed : {1ULL, 2ULL, 999ULL})
        CHECK(apply_noise("séia vé", p, seed) == "sèia vè");
}

TEST_CASE("longest pattern wins at a position") {
    NoiseProfile p;
    p.rules = {{"s", "z", 1.0, RuleScope::anywhere}, {"sciô", "sce-o", 1.0, RuleScope::anywhere}};
    CHECK(apply_noise("sciô", p, 1) == "sce-o");
}

TEST_CASE("replaced spans are not rescanned") {
    NoiseProfile p;
    p.rules = {{"a", "aa", 1.0, RuleScope::anywhere}};
    CHECK(apply_noise("aba", p, 1) == "aabaa"); // each input `a` fires once
}

TEST_CASE("scopes restrict match positions") {
    NoiseProfile initial;
    initial.rules = {{"u", "û", 1.0, RuleScope::word_initial}};
    CHECK(apply_noise("unna punta u", initial, 1) == "ûnna punta û");

    NoiseProfile final_;
    final_.rules = {{"o", "u", 1.0, RuleScope::word_final}};
    CHECK(apply_noise("occo do", final_, 1) == "occu du");
}

TEST_CASE("generate_corpus pairs noised source with clean target") {
    const auto mono = testutil::synthetic_mono(40, 17);
    const auto profile = builtin_profile("G-like");
    const auto gen = generate_corpus(mono, profile, 23, "G");

    REQUIRE(gen.corpus.size() == mono.size());
    for (std::size_t i = 0; i < mono.size(); ++i) {
        CHECK(gen.corpus.pairs[i].target == mono.sentences[i]);
        CHECK(gen.corpus.pairs[i].tag == "G");
    }

    SECTION("identity profile gives source == target") {
        NoiseProfile ident;
        ident.name = "identity";
        const auto same = generate_corpus(mono, ident, 23, "I");
        for (const auto& pr : same.corpus.pairs) CHECK(pr.source == pr.target);
    }

    SECTION("determinism: same (mono, profile, seed) gives identical bytes") {
        const auto again = generate_corpus(mono, profile, 23, "G");
        for (std::size_t i = 0; i < mono.size(); ++i)
            CHECK(again.corpus.pairs[i].source == gen.corpus.pairs[i].source);
        const auto other = generate_corpus(mono, profile, 24, "G");
        bool differs = false;
        for (std::size_t i = 0; i < mono.size(); ++i)
            differs |= other.corpus.pairs[i].source != gen.corpus.pairs[i].source;
        CHECK(differs);
    }
}

TEST_CASE("per-pair edit bound holds") {
    const auto mono = testutil::synthetic_mono(60, 29);
    for (const auto& profile : builtin_profiles()) {
        const auto gen = generate_corpus(mono, profile, 31, profile.name);
        std::size_t total_lev = 0;
        for (std::size_t i = 0; i < gen.corpus.size(); ++i)
            total_lev += levenshtein(gen.corpus.pairs[i].source, gen.corpus.pairs[i].target);
        CHECK(total_lev <= gen.total_edit_bound);
    }
}

// The generator's own edit accounting (sum of per-firing pattern-replacement
// distances) must predict the measured copy baseline within the agreement
// band; rule edits can overlap, so exact equality is not expected.
TEST_CASE("copy baseline agrees with generator edit accounting") {
    const auto mono = testutil::synthetic_mono(300, 37);
    for (const auto& profile : builtin_profiles()) {
        const auto gen = generate_corpus(mono, profile, 41, profile.name);
        std::size_t ref_chars = 0;
        for (const auto& pr : gen.corpus.pairs) ref_chars += ref_char_count(pr.target);
        const double predicted =
            100.0 * static_cast<double>(gen.total_edit_estimate) / static_cast<double>(ref_chars);
        const double measured = copy_baseline_cer(gen.corpus);
        INFO(profile.name << ": predicted " << predicted << " measured " << measured);
        CHECK(measured >= 0.8 * predicted);
        CHECK(measured <= 1.2 * predicted);
        CHECK(measured > 0.0);
    }
}

TEST_CASE("profile files round trip") {
    testutil::TempDir dir("profiles");
    const auto profile = builtin_profile("B-like");
    testutil::write_file(dir.file("b.json"), profile_to_json(profile).dump(2));
    const auto loaded = load_profile(dir.file("b.json"));
    CHECK(loaded.name == profile.name);
    CHECK(loaded.salt == profile.salt);
    REQUIRE(loaded.rules.size() == profile.rules.size());
    for (std::size_t i = 0; i < loaded.rules.size(); ++i) {
        CHECK(loaded.rules[i].pattern == profile.rules[i].pattern);
        CHECK(loaded.rules[i].replacement == profile.rules[i].replacement);
        CHECK(loaded.rules[i].probability == profile.rules[i].probability);
    }

    testutil::write_file(dir.file("bad.json"), "{\"name\": 3, \"rules\": 7}");
    CHECK_THROWS_AS(load_profile(dir.file("bad.json")), DataError);

    CHECK_THROWS_AS(builtin_profile("no-such"), DataError);
}
