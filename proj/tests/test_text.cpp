#include "meso/text.hpp"

#include <doctest.h>

using namespace meso;

TEST_CASE("normalize_term splits CamelCase") {
    CHECK(normalize_term("StressResponse") == std::vector<std::string>{"stress", "response"});
    CHECK(normalize_term("CBTSession") == std::vector<std::string>{"cbt", "session"});
    CHECK(normalize_term("CBT") == std::vector<std::string>{"cbt"});
}

TEST_CASE("normalize_term applies the singularization rule table") {
    CHECK(normalize_term("worries") == std::vector<std::string>{"worry"});
    CHECK(normalize_term("stressors ") == std::vector<std::string>{"stressor"});
    CHECK(singularize("classes") == "class");
    CHECK(singularize("boxes") == "box");
    CHECK(singularize("coaches") == "coach");
    CHECK(singularize("wishes") == "wish");
    CHECK(singularize("stress") == "stress"); // ss kept
    CHECK(singularize("ties") == "ty"); // rule table, not a lemmatizer
    CHECK(singularize("illnesses") == "illness");
}

TEST_CASE("normalize_term strips punctuation and collapses whitespace") {
    CHECK(normalize_term("self-efficacy") == std::vector<std::string>{"self", "efficacy"});
    CHECK(normalize_term("  work   stress!! ") == std::vector<std::string>{"work", "stress"});
    CHECK(normalize_term("") == std::vector<std::string>{});
    CHECK(normalize_term("...") == std::vector<std::string>{});
}

TEST_CASE("tokenize_words lowercases without singularizing") {
    CHECK(tokenize_words("The Cats, sat!") == std::vector<std::string>{"the", "cats", "sat"});
    CHECK(tokenize_words("") == std::vector<std::string>{});
}

TEST_CASE("fold_whitespace collapses runs and case-folds") {
    CHECK(fold_whitespace("  A   B\n\tC  ") == "a b c");
    CHECK(fold_whitespace("already folded") == "already folded");
}

TEST_CASE("is_upper_camel_case") {
    CHECK(is_upper_camel_case("StressResponse"));
    CHECK(is_upper_camel_case("Stressor"));
    CHECK_FALSE(is_upper_camel_case("stress_response"));
    CHECK_FALSE(is_upper_camel_case("Stress Response"));
    CHECK_FALSE(is_upper_camel_case("stressResponse"));
    CHECK_FALSE(is_upper_camel_case(""));
}

TEST_CASE("normalized_key joins normalized tokens") {
    CHECK(normalized_key("Career Failures") == "career failure");
    CHECK(normalized_key("career failure") == "career failure");
}
