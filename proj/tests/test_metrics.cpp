#include <catch2/catch_amalgamated.hpp>

#include "norma/metrics.hpp"
#include "testutil.hpp"

using namespace norma;

// Exhaustive-recursion oracle, independent of the DP implementation.
static std::size_t lev_oracle(const u32string& a, const u32string& b, std::size_t i = 0,
                              std::size_t j = 0) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (a[i] == b[j]) return lev_oracle(a, b, i + 1, j + 1);
    const std::size_t del = lev_oracle(a, b, i + 1, j);
    const std::size_t ins = lev_oracle(a, b, i, j + 1);
    const std::size_t sub = lev_oracle(a, b, i + 1, j + 1);
    return 1 + std::min({del, ins, sub});
}

static u32string random_word(Rng& rng, std::size_t max_len) {
    static const char32_t alphabet[] = {U'a', U'b', U'c', U'é'};
    u32string s;
    const std::size_t len = rng.below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(4)]);
    return s;
}

TEST_CASE("levenshtein basics") {
    CHECK(levenshtein("abc", "abc") == 0);
    CHECK(levenshtein("", "ab") == 2);
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("", "") == 0);
}

TEST_CASE("levenshtein counts NFC-composed characters once") {
    CHECK(levenshtein("séia", "séia") == 0);
    CHECK(levenshtein("séia", "seia") == 1);
}

TEST_CASE("levenshtein agrees with exhaustive recursion") {
    Rng rng(20240201);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = random_word(rng, 8);
        const auto b = random_word(rng, 8);
        CHECK(levenshtein(utf8_encode(a), utf8_encode(b)) == lev_oracle(a, b));
    }
}

TEST_CASE("levenshtein is a metric") {
    Rng rng(555);
    for (int trial = 0; trial < 400; ++trial) {
        const auto a = utf8_encode(random_word(rng, 7));
        const auto b = utf8_encode(random_word(rng, 7));
        const auto c = utf8_encode(random_word(rng, 7));
        CHECK(levenshtein(a, b) == levenshtein(b, a));
        CHECK((levenshtein(a, b) == 0) == (nfc_utf8(a) == nfc_utf8(b)));
        CHECK(levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c));
    }
}

TEST_CASE("corpus_cer micro-averages") {
    CHECK(corpus_cer({"ab"}, {"ab"}) == 0.0);
    CHECK(corpus_cer({"ab"}, {"ac"}) == 50.0);

    // micro 100*1/4 = 25 equals macro here...
    CHECK(corpus_cer({"a", "cd"}, {"ab", "cd"}) == 25.0);
    // ...and the distinguishing case: micro 100*1/5 = 20, macro would be 25.
    CHECK(corpus_cer({"a", "ccc"}, {"ab", "ccc"}) == 20.0);

    CHECK_THROWS_AS(corpus_cer({"a"}, {"a", "b"}), DataError);
    CHECK_THROWS_AS(corpus_cer({}, {}), DataError);
}

TEST_CASE("corpus_cer is permutation invariant") {
    std::vector<std::string> hyps = {"unna", "seia", "ma", "zena", "oo"};
    std::vector<std::string> refs = {"ûnna", "séia", "mâ", "zêna", "o"};
    const double base = corpus_cer(hyps, refs);
    Rng rng(7);
    std::vector<std::size_t> idx = {0, 1, 2, 3, 4};
    for (int trial = 0; trial < 20; ++trial) {
        rng.shuffle(idx);
        std::vector<std::string> h, r;
        for (auto i : idx) {
            h.push_back(hyps[i]);
            r.push_back(refs[i]);
        }
        CHECK(corpus_cer(h, r) == Catch::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("copy baseline") {
    ParallelCorpus clean;
    clean.pairs = {{"a b", "a b", "X"}, {"cd", "cd", "X"}};
    CHECK(copy_baseline_cer(clean) == 0.0);

    // Spelling-variant rows versus their normalized form show positive CER.
    ParallelCorpus fig;
    const std::string norm = "Unna rondaniña affammâ a s’ é pösâ in sciô teito de coppi";
    fig.pairs = {
        {"Ûnn-a rōndaninn-a affammâ a s’ é pösâ in sciö teito de cōppi", norm, "C"},
        {"Ûnn-a rondaninn-a affammâ a s’ è pösâ in sciö teito de coppi", norm, "P"},
        {"Ûnn-a rondaninn-a affamâ a s’ è pösâ in sce-o teito de coppi", norm, "B"},
        {"Ûña rundaniña affammä’ a s’ é pösä in sce o téyto de cuppi", norm, "G"},
    };
    CHECK(copy_baseline_cer(fig) > 0.0);
}

TEST_CASE("evaluate groups by tag") {
    ParallelCorpus test;
    test.pairs = {{"aa", "aa", "P"}, {"bb", "bb", "P"}, {"cc", "cc", "B"}};

    SECTION("identity model on identity pairs gives all zeros") {
        const auto report = evaluate_with([](const std::string& s) { return s; }, test);
        CHECK(report.joint.cer() == 0.0);
        CHECK(report.tags.at("P").cer() == 0.0);
        CHECK(report.tags.at("B").cer() == 0.0);
        CHECK(report.copy_baseline == 0.0);
    }

    SECTION("single tag: per-tag equals joint") {
        ParallelCorpus one;
        one.pairs = {{"ax", "ab", "C"}, {"cd", "cd", "C"}};
        const auto report = evaluate_with([](const std::string& s) { return s; }, one);
        CHECK(report.tags.at("C").cer() == report.joint.cer());
        CHECK(report.joint.cer() == Catch::Approx(25.0));
    }

    SECTION("joint totals equal per-tag sums") {
        ParallelCorpus mixed;
        mixed.pairs = {{"ax", "ab", "P"}, {"by", "bb", "B"}, {"cc", "cc", "G"}};
        const auto report = evaluate_with([](const std::string& s) { return s; }, mixed);
        std::size_t edits = 0, chars = 0;
        for (const auto& [_, st] : report.tags) {
            edits += st.edits;
            chars += st.ref_chars;
        }
        CHECK(edits == report.joint.edits);
        CHECK(chars == report.joint.ref_chars);
    }
}

TEST_CASE("report serialization and table shape") {
    ParallelCorpus test;
    test.pairs = {{"a", "a", "P"}, {"b", "b", "B"}, {"c", "c", "C"},
                  {"d", "d", "G"}, {"e", "e", "Z"}};
    const auto report = evaluate_with([](const std::string& s) { return s; }, test);

    const auto cols = report_columns(report);
    CHECK(cols == std::vector<std::string>{"P", "B", "C", "G", "Z"});

    const auto j = report_to_json(report);
    CHECK(j["tags"].contains("P"));
    CHECK(j["joint"]["pairs"] == 5);
    CHECK(j["aggregation"] == "micro");
    CHECK(j.contains("copy_baseline_cer"));
    CHECK(j.contains("per_tag_mean_cer"));

    const auto table = format_report_table(report, "Joint");
    CHECK(table.find("P") != std::string::npos);
    CHECK(table.find("Joint") != std::string::npos);
    CHECK(table.find("Copy baseline") != std::string::npos);
}
