#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "norma/corpus.hpp"
#include "norma/tokenizer.hpp"
#include "testutil.hpp"

using namespace norma;
using testutil::TempDir;
using testutil::write_file;

static std::vector<std::string> pair_keys(const ParallelCorpus& c) {
    std::vector<std::string> keys;
    for (const auto& p : c.pairs) keys.push_back(p.source + "\t" + p.target + "\t" + p.tag);
    return keys;
}

TEST_CASE("load_parallel reads TSV pairs in order") {
    TempDir dir("corpus_load");
    write_file(dir.file("c.tsv"), "a\tb\nc\td\n");
    const auto corpus = load_parallel(dir.file("c.tsv"), "C");
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.pairs[0] == SentencePair{"a", "b", "C"});
    CHECK(corpus.pairs[1] == SentencePair{"c", "d", "C"});
}

TEST_CASE("load_parallel error paths") {
    TempDir dir("corpus_errors");

    write_file(dir.file("empty.tsv"), "");
    CHECK_THROWS_WITH(load_parallel(dir.file("empty.tsv"), "C"),
                      Catch::Matchers::ContainsSubstring("empty corpus"));

    write_file(dir.file("notab.tsv"), "a b\n");
    CHECK_THROWS_WITH(load_parallel(dir.file("notab.tsv"), "C"),
                      Catch::Matchers::ContainsSubstring("line 1"));

    write_file(dir.file("twotabs.tsv"), "a\tb\tc\n");
    CHECK_THROWS_AS(load_parallel(dir.file("twotabs.tsv"), "C"), DataError);

    write_file(dir.file("emptyside.tsv"), "a\tb\n\tx\n");
    CHECK_THROWS_WITH(load_parallel(dir.file("emptyside.tsv"), "C"),
                      Catch::Matchers::ContainsSubstring("line 2"));

    CHECK_THROWS_AS(load_parallel(dir.file("missing.tsv"), "C"), DataError);

    write_file(dir.file("badutf8.tsv"), "a\xFF\tb\n");
    CHECK_THROWS_AS(load_parallel(dir.file("badutf8.tsv"), "C"), DataError);
}

TEST_CASE("load_parallel applies NFC") {
    TempDir dir("corpus_nfc");
    write_file(dir.file("c.tsv"), "séia\tséia\n");
    const auto corpus = load_parallel(dir.file("c.tsv"), "C");
    CHECK(corpus.pairs[0].source == "séia");
    CHECK(corpus.pairs[0].source == corpus.pairs[0].target);
}

TEST_CASE("load then save round-trips well-formed files") {
    TempDir dir("corpus_roundtrip");
    const std::string body = "unna séia\tunna séia\nmâ de zêna\tmâ de zena\n";
    write_file(dir.file("a.tsv"), body);
    const auto corpus = load_parallel(dir.file("a.tsv"), "X");
    save_parallel(corpus, dir.file("b.tsv"));
    CHECK(detail::read_file(dir.file("b.tsv")) == body);
}

TEST_CASE("split sizes follow round-half-up rule") {
    const auto corpus = testutil::identity_corpus(100, 7);
    const auto parts = split(corpus, SplitSpec{0.7, 0.2, 0.1, 123});
    CHECK(parts.train.size() == 70);
    CHECK(parts.test.size() == 20);
    CHECK(parts.val.size() == 10);
}

TEST_CASE("split partitions the corpus and is deterministic") {
    const auto corpus = testutil::identity_corpus(53, 11);
    const SplitSpec spec{0.7, 0.2, 0.1, 99};
    const auto a = split(corpus, spec);
    const auto b = split(corpus, spec);

    CHECK(pair_keys(a.train) == pair_keys(b.train));
    CHECK(pair_keys(a.test) == pair_keys(b.test));
    CHECK(pair_keys(a.val) == pair_keys(b.val));

    auto all = pair_keys(a.train);
    auto t = pair_keys(a.test), v = pair_keys(a.val);
    all.insert(all.end(), t.begin(), t.end());
    all.insert(all.end(), v.begin(), v.end());
    auto orig = pair_keys(corpus);
    std::sort(all.begin(), all.end());
    std::sort(orig.begin(), orig.end());
    CHECK(all == orig);

    const auto c = split(corpus, SplitSpec{0.7, 0.2, 0.1, 100});
    CHECK(pair_keys(c.train) != pair_keys(a.train)); // different seed reshuffles
}

TEST_CASE("split rejects bad input") {
    const auto small = testutil::identity_corpus(9, 3);
    CHECK_THROWS_AS(split(small, SplitSpec{0.7, 0.2, 0.1, 1}), DataError);

    const auto corpus = testutil::identity_corpus(20, 3);
    CHECK_THROWS_WITH(split(corpus, SplitSpec{0.7, 0.2, 0.2, 1}),
                      Catch::Matchers::ContainsSubstring("sum to 1"));
}

TEST_CASE("merge concatenates and preserves tags") {
    auto a = testutil::identity_corpus(3, 1, "A");
    auto b = testutil::identity_corpus(2, 2, "B");
    const auto m = merge({a, b}, "joint");
    REQUIRE(m.size() == 5);
    CHECK(m.name == "joint");
    CHECK(m.pairs[0].tag == "A");
    CHECK(m.pairs[4].tag == "B");

    const auto one = merge({a}, "renamed");
    CHECK(pair_keys(one) == pair_keys(a));
    CHECK(one.name == "renamed");

    CHECK_THROWS_AS(merge({}, "x"), DataError);
}

TEST_CASE("upsample repeats each pair") {
    const auto corpus = testutil::identity_corpus(3, 5);
    const auto same = upsample(corpus, 1);
    CHECK(pair_keys(same) == pair_keys(corpus));

    const auto twice = upsample(corpus, 2);
    REQUIRE(twice.size() == 6);
    auto doubled = pair_keys(corpus);
    auto expect = doubled;
    expect.insert(expect.end(), doubled.begin(), doubled.end());
    auto got = pair_keys(twice);
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expect);

    CHECK_THROWS_AS(upsample(corpus, 0), DataError);
}

TEST_CASE("upsample_factor floors and clamps") {
    CHECK(upsample_factor(100, 50) == 2);
    CHECK(upsample_factor(99, 50) == 1);
    CHECK(upsample_factor(10, 50) == 1);
    CHECK_THROWS_AS(upsample_factor(10, 0), DataError);
}

TEST_CASE("token_count sums encoded lengths") {
    ParallelCorpus corpus;
    corpus.name = "t";
    corpus.pairs = {{"abc", "abcd", "T"}, {"ab", "a", "T"}};
    const auto model = train_bpe(corpus, 1.0); // factor 1: pure character level
    CHECK(token_count(corpus, model, Side::source) == 5);
    CHECK(token_count(corpus, model, Side::target) == 5);

    MonoCorpus empty;
    CHECK(token_count(empty, model) == 0);
}

// Factor 1 means zero merges, so token counts equal character counts with
// spaces replaced by the boundary symbol: a brute-force character count is
// an exact oracle.
TEST_CASE("token_count equals character count oracle at factor 1") {
    const auto mono = testutil::synthetic_mono(5, 77);
    ParallelCorpus corpus;
    corpus.name = "oracle";
    for (const auto& s : mono.sentences) corpus.pairs.push_back({s, s, "O"});
    const auto model = train_bpe(corpus, 1.0);

    std::size_t chars = 0;
    for (const auto& s : mono.sentences) chars += utf8_decode(s).size();
    CHECK(token_count(corpus, model, Side::source) == chars);
    CHECK(token_count_both_sides(corpus, model) == 2 * chars);
}

TEST_CASE("upsample scales token_count exactly") {
    const auto corpus = testutil::identity_corpus(12, 9);
    const auto model = train_bpe(corpus, 1.5);
    const std::size_t base = token_count_both_sides(corpus, model);
    for (std::size_t f : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
        CHECK(token_count_both_sides(upsample(corpus, f), model) == f * base);
    }
}

TEST_CASE("manifest loads datasets with roles") {
    TempDir dir("manifest");
    write_file(dir.file("c.tsv"), "a\tb\n");
    write_file(dir.file("mono.txt"), "hello\n");
    write_file(dir.file("m.json"), R"([
        {"path": "c.tsv", "tag": "C", "role": "parallel"},
        {"path": "mono.txt", "role": "mono"}
    ])");
    const auto entries = load_manifest(dir.file("m.json"));
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].tag == "C");
    CHECK(entries[1].role == "mono");
    const auto corpus = load_parallel(entries[0].path, entries[0].tag);
    CHECK(corpus.size() == 1);

    write_file(dir.file("bad.json"), R"([{"path": "c.tsv", "role": "parallel"}])");
    CHECK_THROWS_AS(load_manifest(dir.file("bad.json")), DataError);
}
