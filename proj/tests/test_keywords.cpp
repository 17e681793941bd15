#include "meso/keywords.hpp"

#include "meso/io.hpp"

#include <cmath>
#include <doctest.h>
#include <random>

using namespace meso;

namespace {

const std::set<int> all_levels = {1, 2, 3};
const std::set<std::string> no_stopwords;

EmbeddingVector random_vector(std::mt19937_64& rng, size_t d) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    EmbeddingVector v(d);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : v) {
            x = dist(rng);
            norm += x * x;
        }
    } while (norm == 0.0);
    return v;
}

} // namespace

TEST_CASE("ngram_candidates basics") {
    CHECK(ngram_candidates("a b c", {1, 2}, no_stopwords) ==
          std::vector<std::string>{"a", "b", "c", "a b", "b c"});
    CHECK(ngram_candidates("the stress", {1}, {"the"}) == std::vector<std::string>{"stress"});
    CHECK(ngram_candidates("stress at work", {3}, no_stopwords) ==
          std::vector<std::string>{"stress at work"});
    CHECK(ngram_candidates("", all_levels, no_stopwords).empty());
}

TEST_CASE("ngram_candidates drops all-stopword grams only") {
    auto grams = ngram_candidates("the a stress", {2}, {"the", "a"});
    CHECK(grams == std::vector<std::string>{"a stress"});
}

TEST_CASE("ngram_candidates deduplicates preserving first occurrence") {
    CHECK(ngram_candidates("x y x y", {1, 2}, no_stopwords) ==
          std::vector<std::string>{"x", "y", "x y", "y x"});
}

TEST_CASE("ngram count is bounded by max(t-n+1, 0) per level") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> words(0, 8);
    for (int iter = 0; iter < 50; ++iter) {
        int t = words(rng);
        std::string doc;
        for (int i = 0; i < t; ++i) doc += "w" + std::to_string(i) + " ";
        for (int n : all_levels) {
            auto grams = ngram_candidates(doc, {n}, no_stopwords);
            CHECK(grams.size() <= static_cast<size_t>(std::max(t - n + 1, 0)));
        }
    }
}

TEST_CASE("cosine_similarity examples") {
    CHECK(cosine_similarity({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity({1, 0}, {0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cosine_similarity({1, 1}, {1, 0}) ==
          doctest::Approx(0.7071067811865475).epsilon(1e-12));
    CHECK_THROWS_AS(cosine_similarity({1, 0}, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(cosine_similarity({0, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("cosine properties on random pairs") {
    std::mt19937_64 rng(2025);
    std::uniform_real_distribution<double> scale_dist(0.1, 50.0);
    for (int iter = 0; iter < 1000; ++iter) {
        size_t d = 2 + iter % 255;
        EmbeddingVector a = random_vector(rng, d);
        EmbeddingVector b = random_vector(rng, d);
        double ab = cosine_similarity(a, b);
        double ba = cosine_similarity(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(std::abs(ab) <= 1.0 + 1e-12);
        double s = scale_dist(rng);
        EmbeddingVector scaled = a;
        for (auto& x : scaled) x *= s;
        CHECK(cosine_similarity(scaled, b) == doctest::Approx(ab).epsilon(1e-9));
    }
}

TEST_CASE("hash embedder is deterministic with unit norm") {
    HashEmbedder e;
    EmbeddingVector a = e.embed("stress at work");
    EmbeddingVector b = e.embed("stress at work");
    CHECK(a == b);
    CHECK(a.size() == HashEmbedder::dimension);
    double norm = 0.0;
    for (double x : a) norm += x * x;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("top_keywords per-level contract") {
    HashEmbedder e;
    // 12 distinct words: 12 unigrams, 11 bigrams, 10 trigrams.
    std::string doc = "alpha beta gamma delta epsilon zeta eta theta iota kappa lambda mu";

    SUBCASE("k=10 over three levels yields 30 keywords") {
        auto keywords = top_keywords(e, doc, 10, all_levels, no_stopwords);
        CHECK(keywords.size() == 30);
        int seen_n = 0;
        for (const auto& kw : keywords) {
            CHECK(kw.n >= seen_n);
            seen_n = kw.n;
        }
    }
    SUBCASE("scarce candidates shrink the result") {
        auto keywords = top_keywords(e, "one two three", 10, {1}, no_stopwords);
        CHECK(keywords.size() == 3);
    }
    SUBCASE("scores are non-increasing within each level") {
        auto keywords = top_keywords(e, doc, 10, all_levels, no_stopwords);
        for (size_t i = 1; i < keywords.size(); ++i)
            if (keywords[i].n == keywords[i - 1].n)
                CHECK(keywords[i].score <= keywords[i - 1].score);
    }
    SUBCASE("deterministic across calls") {
        auto a = top_keywords(e, doc, 10, all_levels, no_stopwords);
        auto b = top_keywords(e, doc, 10, all_levels, no_stopwords);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].text == b[i].text);
            CHECK(a[i].score == b[i].score);
        }
    }
    SUBCASE("score ties break lexicographically") {
        // The bag-of-tokens embedding makes "aa bb" and "bb aa" identical,
        // so their cosine scores tie exactly.
        auto keywords = top_keywords(e, "aa bb cc bb aa", 10, {2}, no_stopwords);
        size_t first = keywords.size(), second = keywords.size();
        for (size_t i = 0; i < keywords.size(); ++i) {
            if (keywords[i].text == "aa bb") first = i;
            if (keywords[i].text == "bb aa") second = i;
        }
        REQUIRE(first < keywords.size());
        REQUIRE(second < keywords.size());
        CHECK(keywords[first].score == keywords[second].score);
        CHECK(first < second);
    }
}

TEST_CASE("coverage_report") {
    HashEmbedder e;
    Ontology seed = seed_meso();

    SUBCASE("single doc, single candidate matching a label") {
        CoverageReport report = coverage_report(seed, {"anxiety"}, e, 10, {1}, no_stopwords);
        CHECK(report.total_keywords == 1);
        CHECK(report.distribution.count(MatchCategory::Exact) == 1);
        CHECK(report.distribution.percent_text(MatchCategory::Exact) == "100.0");
    }
    SUBCASE("plural and singular surface forms deduplicate") {
        CoverageReport report =
            coverage_report(seed, {"burnout burnout", "burnouts"}, e, 10, {1}, no_stopwords);
        CHECK(report.total_keywords == 1);
        CHECK(report.results[0].term == "burnout");
    }
    SUBCASE("empty doc list is an error") {
        CHECK_THROWS_AS(coverage_report(seed, {}, e, 10, {1}, no_stopwords),
                        std::invalid_argument);
    }
    SUBCASE("parallel runs match the sequential report") {
        std::vector<std::string> docs = {
            "work stress piles up every day",
            "sleep deprivation and fatigue", "meditation and exercise help",
            "anxiety worry and sadness", "family conflict at home"};
        CoverageReport seq = coverage_report(seed, docs, e, 5, all_levels, default_stopwords(), 1);
        CoverageReport par = coverage_report(seed, docs, e, 5, all_levels, default_stopwords(), 4);
        REQUIRE(seq.results.size() == par.results.size());
        for (size_t i = 0; i < seq.results.size(); ++i) CHECK(seq.results[i] == par.results[i]);
        CHECK(seq.distribution.counts == par.distribution.counts);
    }
}

TEST_CASE("bundled stopword file matches the built-in list") {
    std::set<std::string> from_file;
    for (const auto& line :
         read_lines(std::filesystem::path(MESO_DATA_DIR) / "stopwords_en.txt"))
        if (!line.empty()) from_file.insert(line);
    CHECK(from_file == default_stopwords());
}
