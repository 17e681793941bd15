#include "meso/extraction.hpp"

#include "meso/hash.hpp"
#include "meso/io.hpp"
#include "meso/text.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace meso;

namespace {

std::filesystem::path data_dir() { return MESO_DATA_DIR; }

// Replays a fixed sequence of raw outputs regardless of prompt.
class ScriptedClient : public CompletionClient {
  public:
    explicit ScriptedClient(std::vector<std::string> outputs) : outputs_(std::move(outputs)) {}
    std::string complete(const std::string&) override {
        if (calls_ >= outputs_.size()) throw ClientError("script exhausted");
        return outputs_[calls_++];
    }
    std::string model_id() const override { return "scripted"; }
    size_t calls() const { return calls_; }

  private:
    std::vector<std::string> outputs_;
    size_t calls_ = 0;
};

const char* valid_output = R"({
    "stressors": [{"phrase": "work stress", "evidence": "work is crushing me"}],
    "stress_responses": [{"phrase": "restlessness", "evidence": "I cannot sit still"}],
    "coping_strategies": [],
    "durations": [{"value_text": "two years", "evidence": "for two years now"}],
    "onset": null,
    "temporal_profile": {"value": "Chronic", "evidence": "it never lets up"}
})";

const char* matching_post = "Work is crushing me. I cannot sit still. "
                            "It has been like this for two years now and it never lets up.";

} // namespace

TEST_CASE("build_prompt contract") {
    Ontology seed = seed_meso();
    std::string prompt = build_prompt(seed, "I am stressed.");

    SUBCASE("all six category names appear exactly once in the definitions block") {
        size_t begin = prompt.find("## Information categories");
        size_t end = prompt.find("## Allowed values");
        REQUIRE(begin != std::string::npos);
        REQUIRE(end != std::string::npos);
        std::string block = prompt.substr(begin, end - begin);
        for (InfoCategory c : all_info_categories) {
            std::string name = to_string(c);
            size_t first = block.find(name + ":");
            CHECK(first != std::string::npos);
            CHECK(block.find(name + ":", first + 1) == std::string::npos);
        }
    }
    SUBCASE("category descriptions are carried verbatim") {
        CHECK(prompt.find("Source or causes of stress") != std::string::npos);
        CHECK(prompt.find("Mental, emotional, physical, or behavioral reaction to stress") !=
              std::string::npos);
        CHECK(prompt.find("The methods used to manage stress") != std::string::npos);
        CHECK(prompt.find("How long the stress lasts") != std::string::npos);
        CHECK(prompt.find("The manner in which stress begins – sudden or gradual") !=
              std::string::npos);
        CHECK(prompt.find("The overall pattern of stress - acute or chronic") !=
              std::string::npos);
    }
    SUBCASE("the concept inventory lists every concept as id TAB label") {
        size_t lines = 0;
        for (const auto& [id, c] : seed.concepts) {
            CHECK(prompt.find(id.value + "\t" + c.label + "\n") != std::string::npos);
            ++lines;
        }
        CHECK(lines == seed.concepts.size());
    }
    SUBCASE("enumerations and the evidence instruction are present") {
        CHECK(prompt.find("Sudden or Gradual") != std::string::npos);
        CHECK(prompt.find("Acute or Chronic") != std::string::npos);
        CHECK(prompt.find("verbatim") != std::string::npos);
        CHECK(prompt.find("never invent an item") != std::string::npos);
        CHECK(prompt.find("explicit request for advice") != std::string::npos);
    }
    SUBCASE("deterministic and ends with the post") {
        CHECK(prompt == build_prompt(seed, "I am stressed."));
        CHECK(prompt.find("I am stressed.") != std::string::npos);
    }
    SUBCASE("empty post is rejected") {
        CHECK_THROWS_AS(build_prompt(seed, ""), std::invalid_argument);
    }
}

TEST_CASE("parse_llm_output accepts the happy path") {
    ParsedOutput out = parse_llm_output(valid_output, matching_post);
    CHECK(out.guard_violations.empty());
    REQUIRE(out.items.size() == 4);
    CHECK(out.items[0].category == InfoCategory::Stressor);
    CHECK(out.items[1].category == InfoCategory::StressResponse);
    CHECK(out.items[2].category == InfoCategory::StressDuration);
    CHECK(out.items[2].phrase == "two years");
    CHECK(out.items[3].category == InfoCategory::StressTemporalProfile);
    CHECK(out.items[3].enum_value == "Chronic");
    CHECK(out.items[3].phrase == "Chronic");
}

TEST_CASE("parse_llm_output error taxonomy") {
    auto kind_of = [](const std::string& raw, const std::string& post) {
        try {
            parse_llm_output(raw, post);
        } catch (const ParseError& e) {
            return e.kind();
        }
        throw std::logic_error("expected a ParseError");
    };

    CHECK(kind_of("not json", "post") == ParseErrorKind::NotJson);
    CHECK(kind_of("[1,2,3]", "post") == ParseErrorKind::NotJson);
    CHECK(kind_of(std::string(valid_output) + " trailing", matching_post) ==
          ParseErrorKind::NotJson);

    // missing key
    CHECK(kind_of(R"({"stressors": []})", "post") == ParseErrorKind::SchemaViolation);
    // wrong type
    CHECK(kind_of(R"({"stressors": {}, "stress_responses": [], "coping_strategies": [],
                     "durations": [], "onset": null, "temporal_profile": null})",
                  "post") == ParseErrorKind::SchemaViolation);
    // stray field inside an item
    CHECK(kind_of(R"({"stressors": [{"phrase": "x", "evidence": "post", "extra": 1}],
                     "stress_responses": [], "coping_strategies": [], "durations": [],
                     "onset": null, "temporal_profile": null})",
                  "post") == ParseErrorKind::SchemaViolation);
    // unknown top-level category
    CHECK(kind_of(R"({"stressors": [], "stress_responses": [], "coping_strategies": [],
                     "durations": [], "onset": null, "temporal_profile": null,
                     "moods": []})",
                  "post") == ParseErrorKind::UnknownCategory);
    // onset outside {Sudden, Gradual}
    CHECK(kind_of(R"({"stressors": [], "stress_responses": [], "coping_strategies": [],
                     "durations": [], "onset": {"value": "immediately", "evidence": "post"},
                     "temporal_profile": null})",
                  "post") == ParseErrorKind::BadEnumValue);
}

TEST_CASE("evidence guard") {
    SUBCASE("fabricated span is rejected individually") {
        const char* raw = R"({"stressors": [
            {"phrase": "a", "evidence": "this sentence is present"},
            {"phrase": "b", "evidence": "this sentence is absent"}],
            "stress_responses": [], "coping_strategies": [], "durations": [],
            "onset": null, "temporal_profile": null})";
        ParsedOutput out = parse_llm_output(raw, "Well, this sentence is present.");
        CHECK(out.items.size() == 1);
        REQUIRE(out.guard_violations.size() == 1);
        CHECK(out.guard_violations[0].item_index == 1);
        CHECK(out.guard_violations[0].category == InfoCategory::Stressor);
    }
    SUBCASE("case and whitespace folding") {
        const char* raw = R"({"stressors": [
            {"phrase": "a", "evidence": "WORK IS  CRUSHING   me"}],
            "stress_responses": [], "coping_strategies": [], "durations": [],
            "onset": null, "temporal_profile": null})";
        ParsedOutput out = parse_llm_output(raw, "work is crushing me, honestly");
        CHECK(out.items.size() == 1);
        CHECK(out.guard_violations.empty());
    }
    SUBCASE("empty evidence counts as unsupported") {
        const char* raw = R"({"stressors": [{"phrase": "a", "evidence": "  "}],
            "stress_responses": [], "coping_strategies": [], "durations": [],
            "onset": null, "temporal_profile": null})";
        ParsedOutput out = parse_llm_output(raw, "anything");
        CHECK(out.items.empty());
        CHECK(out.guard_violations.size() == 1);
    }
}

TEST_CASE("the bundled guard fixture rejects exactly the fabricated spans") {
    auto lines = read_lines(data_dir() / "fixtures" / "guard_cases.jsonl");
    REQUIRE(lines.size() == 20);
    int total_violations = 0;
    for (const auto& line : lines) {
        auto doc = nlohmann::json::parse(line);
        ParsedOutput out =
            parse_llm_output(doc["raw"].get<std::string>(), doc["post"].get<std::string>());
        CHECK(static_cast<int>(out.guard_violations.size()) ==
              doc["expected_violations"].get<int>());
        total_violations += static_cast<int>(out.guard_violations.size());
    }
    CHECK(total_violations == 3);
}

TEST_CASE("extract_post") {
    Ontology seed = seed_meso();

    SUBCASE("maps surviving items; durations stay unmapped") {
        ScriptedClient client({valid_output});
        ExtractionRecord record = extract_post(client, seed, "p1", matching_post, 2);
        CHECK(record.post_id == "p1");
        CHECK(record.post_hash == fnv1a64_hex(matching_post));
        CHECK(record.model_id == "scripted");
        CHECK(record.prompt_version == prompt_version);
        CHECK(record.diagnostics.attempts == 1);
        REQUIRE(record.items.size() == 4);
        CHECK(record.items[0].match_category == MatchCategory::Exact); // work stress
        CHECK(record.items[0].mapped_concept == ConceptId::parse("STRONG:000010"));
        CHECK(record.items[1].mapped_concept == ConceptId::parse("STRONG:000050"));
        CHECK(record.items[2].category == InfoCategory::StressDuration);
        CHECK_FALSE(record.items[2].mapped_concept.has_value());
        CHECK(record.items[2].match_category == MatchCategory::None);
    }
    SUBCASE("retries on malformed output, then succeeds") {
        ScriptedClient client({"garbage", "{\"still\": \"broken\"", valid_output});
        ExtractionRecord record = extract_post(client, seed, "p1", matching_post, 2);
        CHECK(record.diagnostics.attempts == 3);
        CHECK(client.calls() == 3);
        CHECK(record.items.size() == 4);
    }
    SUBCASE("exhausted retries propagate the parse error") {
        ScriptedClient client({"garbage", "garbage", "garbage"});
        CHECK_THROWS_AS(extract_post(client, seed, "p1", matching_post, 2), ParseError);
        CHECK(client.calls() == 3);
    }
    SUBCASE("enum-value errors are not retried") {
        const char* bad_enum = R"({"stressors": [], "stress_responses": [],
            "coping_strategies": [], "durations": [],
            "onset": {"value": "immediately", "evidence": "x"}, "temporal_profile": null})";
        ScriptedClient client({bad_enum, valid_output});
        CHECK_THROWS_AS(extract_post(client, seed, "p1", matching_post, 2), ParseError);
        CHECK(client.calls() == 1);
    }
    SUBCASE("guard-violating items are dropped into diagnostics") {
        const char* with_fabrication = R"({"stressors": [
            {"phrase": "work stress", "evidence": "work is crushing me"},
            {"phrase": "ghost", "evidence": "never said this"}],
            "stress_responses": [], "coping_strategies": [], "durations": [],
            "onset": null, "temporal_profile": null})";
        ScriptedClient client({with_fabrication});
        ExtractionRecord record = extract_post(client, seed, "p1", matching_post, 0);
        CHECK(record.items.size() == 1);
        REQUIRE(record.diagnostics.guard_violations.size() == 1);
        CHECK(record.diagnostics.guard_violations[0].evidence_span == "never said this");
    }
}

TEST_CASE("extract_batch over the bundled 35-post corpus") {
    Ontology seed = seed_meso();
    MockCompletionClient client(data_dir() / "fixtures" / "mock_responses");
    auto posts = posts_from_jsonl_file(data_dir() / "fixtures" / "posts_35.jsonl");
    REQUIRE(posts.size() == 35);

    std::vector<ExtractionRecord> records = extract_batch(client, seed, posts, 1);
    REQUIRE(records.size() == 35);

    SUBCASE("order matches the input and everything parses") {
        for (size_t i = 0; i < posts.size(); ++i) {
            CHECK(records[i].post_id == posts[i].id);
            CHECK_FALSE(records[i].diagnostics.error.has_value());
        }
    }
    SUBCASE("matches the committed records fixture byte for byte") {
        CHECK(records_to_jsonl(records) ==
              read_file(data_dir() / "fixtures" / "records_35.jsonl"));
    }
    SUBCASE("parallelism does not change the serialized output") {
        std::vector<ExtractionRecord> par = extract_batch(client, seed, posts, 4);
        CHECK(records_to_jsonl(par) == records_to_jsonl(records));
    }
    SUBCASE("evidence soundness holds for every returned item") {
        for (size_t i = 0; i < records.size(); ++i) {
            std::string folded_post = fold_whitespace(posts[i].text);
            for (const auto& item : records[i].items) {
                std::string folded = fold_whitespace(item.evidence_span);
                CHECK_FALSE(folded.empty());
                CHECK(folded_post.find(folded) != std::string::npos);
            }
        }
    }
    SUBCASE("mapping consistency: stored mappings equal a fresh map_term") {
        for (const auto& record : records)
            for (const auto& item : record.items) {
                if (item.category == InfoCategory::StressDuration) {
                    CHECK(item.match_category == MatchCategory::None);
                    CHECK_FALSE(item.mapped_concept.has_value());
                    continue;
                }
                MatchResult fresh = map_term(seed, item.phrase);
                CHECK(item.match_category == fresh.category);
                if (fresh.category == MatchCategory::None)
                    CHECK_FALSE(item.mapped_concept.has_value());
                else
                    CHECK(item.mapped_concept == fresh.matched_ids.front());
            }
    }
    SUBCASE("per-post failures are recorded, not fatal") {
        std::vector<Post> with_unknown = posts;
        with_unknown.push_back({"post-unknown", "a post the fixture does not know"});
        std::vector<ExtractionRecord> mixed = extract_batch(client, seed, with_unknown, 2);
        REQUIRE(mixed.size() == 36);
        CHECK_FALSE(mixed[34].diagnostics.error.has_value());
        REQUIRE(mixed[35].diagnostics.error.has_value());
        CHECK(mixed[35].items.empty());
        CHECK(mixed[35].post_id == "post-unknown");
    }
    SUBCASE("empty batch") {
        CHECK(extract_batch(client, seed, {}, 1).empty());
    }
}

TEST_CASE("record JSONL round trip and invariants") {
    Ontology seed = seed_meso();
    MockCompletionClient client(data_dir() / "fixtures" / "mock_responses");
    auto posts = posts_from_jsonl_file(data_dir() / "fixtures" / "posts_35.jsonl");
    auto records = extract_batch(client, seed, posts, 1);
    for (const auto& record : records)
        CHECK(record_from_json_line(record_to_json_line(record)) == record);

    SUBCASE("a mapped duration item is rejected on read") {
        std::string line = record_to_json_line(records[0]);
        auto doc = nlohmann::ordered_json::parse(line);
        doc["items"].push_back({{"category", "StressDuration"},
                                {"phrase", "two years"},
                                {"evidence_span", "x"},
                                {"enum_value", nullptr},
                                {"mapped_concept", "STRONG:000001"},
                                {"match_category", "Exact"}});
        CHECK_THROWS_AS(record_from_json_line(doc.dump()), std::invalid_argument);
    }
    SUBCASE("two onset items are rejected on read") {
        auto doc = nlohmann::ordered_json::parse(record_to_json_line(records[0]));
        for (int i = 0; i < 2; ++i)
            doc["items"].push_back({{"category", "StressOnset"},
                                    {"phrase", "Sudden"},
                                    {"evidence_span", "x"},
                                    {"enum_value", "Sudden"},
                                    {"mapped_concept", nullptr},
                                    {"match_category", "None"}});
        CHECK_THROWS_AS(record_from_json_line(doc.dump()), std::invalid_argument);
    }
}

TEST_CASE("posts JSONL parsing is strict") {
    auto tmp = std::filesystem::temp_directory_path() / "meso_posts_test.jsonl";
    atomic_write_file(tmp, "{\"id\":\"p\",\"text\":\"t\",\"extra\":1}\n");
    CHECK_THROWS_AS(posts_from_jsonl_file(tmp), std::invalid_argument);
    atomic_write_file(tmp, "{\"id\":\"p\"}\n");
    CHECK_THROWS_AS(posts_from_jsonl_file(tmp), std::invalid_argument);
    atomic_write_file(tmp, "{\"id\":\"p\",\"text\":\"t\"}\n\n{\"id\":\"q\",\"text\":\"u\"}\n");
    auto posts = posts_from_jsonl_file(tmp);
    REQUIRE(posts.size() == 2);
    CHECK(posts[1].id == "q");
    std::filesystem::remove(tmp);
}
