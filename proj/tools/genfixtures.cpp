// Regenerates the bundled fixtures under data/. The tables below are the
// single source of truth for the fixture corpus; the tool rebuilds every
// derived artifact (posts, canned responses, records, review sheet) and
// verifies the expected tallies before writing anything.

#include "meso/evaluation.hpp"
#include "meso/extraction.hpp"
#include "meso/hash.hpp"
#include "meso/io.hpp"
#include "meso/keywords.hpp"
#include "meso/matcher.hpp"
#include "meso/ontology.hpp"

#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <map>

using namespace meso;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure("fixture consistency check failed: " + what);
}

// ---------------------------------------------------------------------------
// 35-post extraction corpus
// ---------------------------------------------------------------------------

struct PostSpec {
    std::vector<std::string> stressors;
    std::vector<std::string> responses;
    std::vector<std::string> coping;
    std::string duration; // empty = none
    std::string onset; // "", "Sudden", "Gradual"
    std::string temporal; // "", "Acute", "Chronic"
};

// Stressor phrases that do not resolve to any seed concept (the corpus
// yields 20 such items, 16 unique after normalization), plus mapped fillers.
const std::vector<PostSpec> post_specs = {
    /* post-01 */ {{"political difference", "work stress"},
                   {"anxiety", "insomnia"},
                   {"venting"},
                   "three years",
                   "Sudden",
                   "Acute"},
    /* post-02 */ {{"career failure"},
                   {"lack of motivation", "fatigue"},
                   {"meditation"},
                   "six months",
                   "Sudden",
                   "Chronic"},
    /* post-03 */ {{"visa uncertainty"},
                   {"headache", "worry"},
                   {"impulse shopping"},
                   "two weeks",
                   "Sudden",
                   "Acute"},
    /* post-04 */ {{"housing eviction"},
                   {"irritability", "sadness"},
                   {"exercise"},
                   "about a year",
                   "Sudden",
                   "Chronic"},
    /* post-05 */ {{"noisy neighbors", "financial hardship"},
                   {"restlessness", "muscle tension"},
                   {"help seeking"},
                   "four months",
                   "Sudden",
                   "Acute"},
    /* post-06 */ {{"college rejection"},
                   {"doomscrolling", "anger"},
                   {"problem solving"},
                   "ten days",
                   "Sudden",
                   "Chronic"},
    /* post-07 */ {{"identity theft"},
                   {"impatience", "appetite change"},
                   {"planning"},
                   "two months",
                   "Sudden",
                   "Acute"},
    /* post-08 */ {{},
                   {"frustration", "social withdrawal"},
                   {"distraction"},
                   "five years",
                   "Sudden",
                   "Chronic"},
    /* post-09 */ {{"car accident"},
                   {"emotional exhaustion", "worry"},
                   {"cold plunges"},
                   "three weeks",
                   "Sudden",
                   "Acute"},
    /* post-10 */ {{"roommate drama", "family conflict"},
                   {"crippling anxiety", "insomnia"},
                   {"acceptance"},
                   "eight months",
                   "Gradual",
                   "Chronic"},
    /* post-11 */ {{"exam retake"},
                   {"numbness", "fatigue"},
                   {"positive reframing"},
                   "one semester",
                   "Gradual",
                   "Acute"},
    /* post-12 */ {{"moving abroad"},
                   {"sadness", "headache"},
                   {"religious coping"},
                   "seven weeks",
                   "Gradual",
                   "Chronic"},
    /* post-13 */ {{"custody battle"},
                   {"anger", "restlessness"},
                   {"substance use"},
                   "two years",
                   "Gradual",
                   "Acute"},
    /* post-14 */ {{"debt collectors"},
                   {"worry", "muscle tension"},
                   {"venting"},
                   "nine months",
                   "Gradual",
                   "Chronic"},
    /* post-15 */ {{"deployment overseas", "academic pressure"},
                   {"insomnia", "irritability"},
                   {"exercise"},
                   "six weeks",
                   "",
                   "Acute"},
    /* post-16 */ {{"misdiagnosis scare"},
                   {"jaw clenching", "anxiety"},
                   {"meditation"},
                   "one month",
                   "",
                   "Chronic"},
    /* post-17 */ {{"layoff rumors"},
                   {"impatience", "appetite change"},
                   {"tarot reading"},
                   "three months",
                   "",
                   "Acute"},
    /* post-18 */ {{"Political differences"},
                   {"Lack of Motivation", "fatigue"},
                   {"problem solving"},
                   "a year and a half",
                   "",
                   "Chronic"},
    /* post-19 */ {{"Career Failures"},
                   {"sadness", "frustration"},
                   {"help seeking"},
                   "two seasons",
                   "",
                   "Acute"},
    /* post-20 */ {{"Car Accidents", "chronic illness"},
                   {"emotional exhaustion", "worry"},
                   {"planning"},
                   "eleven months",
                   "",
                   "Chronic"},
    /* post-21 */ {{},
                   {"anxiety", "social withdrawal"},
                   {"distraction"},
                   "four weeks",
                   "",
                   "Acute"},
    /* post-22 */ {{"debt collector"},
                   {"insomnia", "anger"},
                   {"venting"},
                   "two and a half years",
                   "",
                   "Chronic"},
    /* post-23 */ {{"job insecurity"},
                   {"worry", "restlessness"},
                   {"exercise"},
                   "",
                   "",
                   "Acute"},
    /* post-24 */ {{"sleep deprivation"},
                   {"Doomscrolling", "fatigue"},
                   {"meditation"},
                   "",
                   "",
                   "Chronic"},
    /* post-25 */ {{"relationship breakup", "bereavement"},
                   {"sadness", "crippling anxiety"},
                   {"acceptance"},
                   "",
                   "",
                   "Acute"},
    /* post-26 */ {{"social isolation"},
                   {"frustration", "headache"},
                   {"lucid dreaming"},
                   "",
                   "",
                   "Chronic"},
    /* post-27 */ {{"discrimination"},
                   {"anger", "muscle tension"},
                   {"help seeking"},
                   "",
                   "",
                   "Acute"},
    /* post-28 */ {{"work overload"},
                   {"burnout", "insomnia"},
                   {"problem solving"},
                   "",
                   "",
                   "Chronic"},
    /* post-29 */ {{"health problems"}, {"worry"}, {"planning"}, "", "", "Acute"},
    /* post-30 */ {{"legal trouble"}, {"anxiety"}, {"distraction"}, "", "", ""},
    /* post-31 */ {{"money trouble"}, {"irritability"}, {"exercise"}, "", "", ""},
    /* post-32 */ {{"severe work stress"}, {"fatigue"}, {"venting"}, "", "", ""},
    /* post-33 */ {{"illness"}, {"restlessness"}, {}, "", "", ""},
    /* post-34 */ {{"school pressure"}, {"sadness"}, {}, "", "", ""},
    /* post-35 */ {{"job strain"}, {"worry"}, {}, "", "", ""},
};

const char* stressor_templates[5] = {
    "The %s has been eating at me for weeks now.",
    "Honestly it all comes back to the %s.",
    "Everything started with the %s.",
    "On top of that there is the %s hanging over me.",
    "My biggest problem right now is the %s.",
};

const char* response_templates[4] = {
    "Lately the %s has been constant.",
    "I notice the %s getting worse every week.",
    "The %s keeps me from functioning during the day.",
    "Some days the %s is all I can think about.",
};

const char* coping_templates[3] = {
    "The only thing that helps at all is %s.",
    "I have been trying %s to take the edge off.",
    "A friend suggested %s and I keep at it.",
};

std::string fill(const char* tmpl, const std::string& value) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), tmpl, value.c_str());
    return buf;
}

std::string post_id_for(size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "post-%02zu", index + 1);
    return buf;
}

struct BuiltPost {
    Post post;
    ordered_json response;
};

BuiltPost build_post(size_t index, const PostSpec& spec) {
    int counter = static_cast<int>(index);
    std::vector<std::string> sentences;
    sentences.push_back("I just need to write this down somewhere.");

    ordered_json response;
    response["stressors"] = ordered_json::array();
    response["stress_responses"] = ordered_json::array();
    response["coping_strategies"] = ordered_json::array();
    response["durations"] = ordered_json::array();
    response["onset"] = nullptr;
    response["temporal_profile"] = nullptr;

    for (const auto& phrase : spec.stressors) {
        std::string evidence = fill(stressor_templates[counter++ % 5], phrase);
        sentences.push_back(evidence);
        response["stressors"].push_back({{"phrase", phrase}, {"evidence", evidence}});
    }
    for (const auto& phrase : spec.responses) {
        std::string evidence = fill(response_templates[counter++ % 4], phrase);
        sentences.push_back(evidence);
        response["stress_responses"].push_back({{"phrase", phrase}, {"evidence", evidence}});
    }
    for (const auto& phrase : spec.coping) {
        std::string evidence = fill(coping_templates[counter++ % 3], phrase);
        sentences.push_back(evidence);
        response["coping_strategies"].push_back({{"phrase", phrase}, {"evidence", evidence}});
    }
    if (!spec.duration.empty()) {
        std::string evidence = "This has been going on for " + spec.duration + " at this point.";
        sentences.push_back(evidence);
        response["durations"].push_back({{"value_text", spec.duration}, {"evidence", evidence}});
    }
    if (!spec.onset.empty()) {
        std::string evidence = spec.onset == "Sudden"
                                   ? "It hit me out of nowhere, basically overnight."
                                   : "It crept up on me slowly over many months.";
        sentences.push_back(evidence);
        response["onset"] = {{"value", spec.onset}, {"evidence", evidence}};
    }
    if (!spec.temporal.empty()) {
        std::string evidence =
            spec.temporal == "Acute"
                ? "Right now it feels like a short sharp burst rather than a pattern."
                : "It has settled into something that just never goes away.";
        sentences.push_back(evidence);
        response["temporal_profile"] = {{"value", spec.temporal}, {"evidence", evidence}};
    }

    BuiltPost built;
    built.post.id = post_id_for(index);
    for (size_t i = 0; i < sentences.size(); ++i) {
        if (i) built.post.text += " ";
        built.post.text += sentences[i];
    }
    built.response = std::move(response);
    return built;
}

// ---------------------------------------------------------------------------
// Adjudicated review sheet (per-category correct counts; the rest of the
// extracted items are labeled Incorrect, then Missed rows are appended)
// ---------------------------------------------------------------------------

const std::map<InfoCategory, int> correct_counts = {
    {InfoCategory::Stressor, 39},        {InfoCategory::StressResponse, 55},
    {InfoCategory::StressCopingStrategy, 21}, {InfoCategory::StressDuration, 19},
    {InfoCategory::StressOnset, 9},      {InfoCategory::StressTemporalProfile, 29},
};

struct MissedSpec {
    const char* post_id;
    InfoCategory category;
    const char* phrase;
};

const std::vector<MissedSpec> missed_rows = {
    {"post-02", InfoCategory::Stressor, "existing illness"},
    {"post-03", InfoCategory::Stressor, "existing illness"},
    {"post-04", InfoCategory::Stressor, "existing illness"},
    {"post-06", InfoCategory::Stressor, "existing illness"},
    {"post-07", InfoCategory::Stressor, "work overload"},
    {"post-08", InfoCategory::Stressor, "existing illness"},
    {"post-09", InfoCategory::Stressor, "loneliness"},
    {"post-11", InfoCategory::Stressor, "deadline pressure"},
    {"post-21", InfoCategory::Stressor, "existing illness"},
    {"post-12", InfoCategory::StressResponse, "panic attacks"},
    {"post-13", InfoCategory::StressResponse, "crying spells"},
    {"post-14", InfoCategory::StressResponse, "chest tightness"},
    {"post-16", InfoCategory::StressResponse, "nail biting"},
    {"post-17", InfoCategory::StressResponse, "overthinking"},
    {"post-19", InfoCategory::StressResponse, "trouble focusing"},
    {"post-22", InfoCategory::StressResponse, "low mood"},
    {"post-23", InfoCategory::StressResponse, "grinding teeth"},
    {"post-24", InfoCategory::StressCopingStrategy, "journaling"},
    {"post-26", InfoCategory::StressCopingStrategy, "deep breathing"},
    {"post-27", InfoCategory::StressCopingStrategy, "walking"},
    {"post-30", InfoCategory::StressTemporalProfile, "chronic"},
};

ReviewSheet build_adjudicated_sheet(const std::vector<ExtractionRecord>& records) {
    ReviewSheet sheet = init_review_sheet(records);

    std::map<InfoCategory, int> seen, incorrect_seen, incorrect_total;
    for (const auto& row : sheet) incorrect_total[row.category] += 1;
    for (auto& [cat, total] : incorrect_total) total -= correct_counts.at(cat);

    for (auto& row : sheet) {
        int index = seen[row.category]++;
        if (index < correct_counts.at(row.category)) {
            row.label = ReviewLabel::Correct;
        } else {
            row.label = ReviewLabel::Incorrect;
            int k = ++incorrect_seen[row.category];
            // Footnoted hallucinations: the last incorrect coping row, the
            // last two incorrect onset rows.
            if (row.category == InfoCategory::StressCopingStrategy &&
                k == incorrect_total[row.category]) {
                row.hallucination = true;
                row.note = "no supporting text in the post";
            }
            if (row.category == InfoCategory::StressOnset &&
                k >= incorrect_total[row.category] - 1) {
                row.hallucination = true;
                row.note = "unsupported inference";
            }
        }
    }

    std::map<std::pair<std::string, InfoCategory>, int> missed_counter;
    for (const auto& spec : missed_rows) {
        ReviewRow row;
        row.post_id = spec.post_id;
        row.category = spec.category;
        row.item_index = "M" + std::to_string(missed_counter[{spec.post_id, spec.category}]++);
        row.phrase = spec.phrase;
        row.label = ReviewLabel::Missed;
        sheet.push_back(std::move(row));
    }
    return sheet;
}

// ---------------------------------------------------------------------------
// Keyword coverage fixture (82 terms: 42 exact, 34 broader, 2 narrower,
// 4 no-match)
// ---------------------------------------------------------------------------

const std::vector<std::string> keyword_fixture = {
    // exact matches (labels and synonyms, with case/plural variation)
    "stressor", "stress response", "work stress", "financial hardships", "health problems",
    "family conflicts", "academic pressure", "relationship breakup", "grief", "social isolation",
    "legal troubles", "discrimination", "work overload", "job insecurity", "chronic illnesses",
    "sleep deprivation", "social support", "resilience", "self efficacy", "prior experiences",
    "personality traits", "optimism", "threat appraisal", "challenge appraisals",
    "perceived control", "restlessness", "impatience", "anxiety", "irritability", "insomnia",
    "fatigue", "headache", "emotional exhaustion", "worries", "anger", "sadness",
    "muscle tension", "CBT", "relaxation training", "meditation", "venting", "burnout",
    // broader matches (keyword more specific than the concept)
    "severe work stress", "extreme financial hardship", "serious health problem",
    "ongoing family conflict", "intense academic pressure", "painful relationship breakup",
    "profound social isolation", "mounting legal trouble", "workplace discrimination",
    "crushing work overload", "constant job insecurity", "debilitating chronic illness",
    "prolonged sleep deprivation", "strong social support", "remarkable resilience",
    "low self efficacy", "difficult prior experience", "anxious personality trait",
    "cautious optimism", "exaggerated threat appraisal", "diminished perceived control",
    "nighttime restlessness", "crippling anxiety", "morning irritability", "recurring insomnia",
    "unrelenting fatigue", "pounding headache", "endless worry", "simmering anger",
    "painful muscle tension", "guided meditation", "vigorous exercise", "late night venting",
    "total burnout",
    // narrower matches (keyword more general than the concepts)
    "appraisal", "mediator",
    // no matches
    "photosynthesis", "volcanic eruption", "quantum physics", "medieval castle"};

// ---------------------------------------------------------------------------
// Evidence-guard fixture: 20 canned outputs, 3 fabricated spans
// ---------------------------------------------------------------------------

struct GuardItem {
    const char* list; // stressors / stress_responses / coping_strategies / durations
    const char* phrase;
    const char* evidence;
};

struct GuardCase {
    const char* id;
    const char* post;
    std::vector<GuardItem> items;
    const char* onset_value; // nullptr = null
    const char* onset_evidence;
    int expected_violations;
};

const std::vector<GuardCase> guard_cases = {
    {"guard-01",
     "Work has been brutal since the reorg. I cannot sleep at night. I vent to my sister.",
     {{"stressors", "work stress", "Work has been brutal since the reorg."},
      {"stress_responses", "insomnia", "I cannot sleep at night."},
      {"coping_strategies", "venting", "I vent to my sister."}},
     nullptr, nullptr, 0},
    {"guard-02",
     "My landlord raised the rent again. My chest feels tight all day.",
     {{"stressors", "financial hardship", "My landlord raised the rent again."},
      {"stress_responses", "muscle tension", "My chest feels tight all day."}},
     nullptr, nullptr, 0},
    {"guard-03",
     "Exams are three weeks away and I am behind. I keep biting my nails.",
     {{"stressors", "academic pressure", "Exams are three weeks away and I am behind."},
      {"stress_responses", "restlessness", "I keep biting my nails."}},
     nullptr, nullptr, 0},
    {"guard-04",
     "Ever since the diagnosis everything changed. It started suddenly last spring.",
     {{"stressors", "health problems", "Ever since the diagnosis everything changed."}},
     "Sudden", "It started suddenly last spring.", 0},
    {"guard-05", // fabricated stressor evidence
     "I argue with my brother every week. Running in the evening clears my head.",
     {{"stressors", "family conflict", "I argue with my brother every week."},
      {"stressors", "job loss", "I was laid off from the plant in March."},
      {"coping_strategies", "exercise", "Running in the evening clears my head."}},
     nullptr, nullptr, 1},
    {"guard-06",
     "The divorce paperwork never ends. I cry most evenings. Meditation helps a little.",
     {{"stressors", "relationship breakup", "The divorce paperwork never ends."},
      {"stress_responses", "sadness", "I cry most evenings."},
      {"coping_strategies", "meditation", "Meditation helps a little."}},
     nullptr, nullptr, 0},
    {"guard-07", // case-folded evidence must pass
     "MY BOSS PILES ON MORE WORK EVERY SINGLE DAY. i feel completely drained.",
     {{"stressors", "work overload", "my boss piles on more work every single day."},
      {"stress_responses", "emotional exhaustion", "I FEEL COMPLETELY DRAINED."}},
     nullptr, nullptr, 0},
    {"guard-08", // whitespace-collapsed evidence must pass
     "Money is tight    after the move.\nI lie awake doing sums in my head.",
     {{"stressors", "financial hardship", "Money is tight after the move."},
      {"stress_responses", "insomnia", "I lie awake doing sums   in my head."}},
     nullptr, nullptr, 0},
    {"guard-09",
     "Caring for my mother takes every free hour. I have headaches most afternoons.",
     {{"stressors", "family conflict", "Caring for my mother takes every free hour."},
      {"stress_responses", "headache", "I have headaches most afternoons."}},
     nullptr, nullptr, 0},
    {"guard-10",
     "The lawsuit drags into its second year. This has lasted two years already.",
     {{"stressors", "legal trouble", "The lawsuit drags into its second year."},
      {"durations", "two years", "This has lasted two years already."}},
     nullptr, nullptr, 0},
    {"guard-11", // fabricated onset evidence
     "The pressure built gradually over the semester. I talk to my advisor when it gets bad.",
     {{"stressors", "academic pressure", "The pressure built gradually over the semester."},
      {"coping_strategies", "help seeking", "I talk to my advisor when it gets bad."}},
     "Sudden", "It hit me all at once during finals week.", 1},
    {"guard-12",
     "Nobody at the new office talks to me. I just stare at my phone all evening.",
     {{"stressors", "social isolation", "Nobody at the new office talks to me."},
      {"stress_responses", "social withdrawal", "I just stare at my phone all evening."}},
     nullptr, nullptr, 0},
    {"guard-13",
     "My shifts keep getting cut without warning. I snap at everyone over nothing.",
     {{"stressors", "job insecurity", "My shifts keep getting cut without warning."},
      {"stress_responses", "irritability", "I snap at everyone over nothing."}},
     nullptr, nullptr, 0},
    {"guard-14",
     "Grandpa passed away last month. I write in a journal before bed.",
     {{"stressors", "bereavement", "Grandpa passed away last month."},
      {"coping_strategies", "journaling", "I write in a journal before bed."}},
     nullptr, nullptr, 0},
    {"guard-15",
     "The mortgage payments swallow my whole paycheck. I worry about it constantly.",
     {{"stressors", "financial hardship", "The mortgage payments swallow my whole paycheck."},
      {"stress_responses", "worry", "I worry about it constantly."}},
     nullptr, nullptr, 0},
    {"guard-16",
     "Commuting three hours a day is wearing me down. I doze off in meetings.",
     {{"stressors", "work stress", "Commuting three hours a day is wearing me down."},
      {"stress_responses", "fatigue", "I doze off in meetings."}},
     nullptr, nullptr, 0},
    {"guard-17", // evidence lifted from a different post
     "My thesis defense is next month and nothing is ready.",
     {{"stressors", "academic pressure", "My thesis defense is next month and nothing is ready."},
      {"coping_strategies", "exercise", "Running in the evening clears my head."}},
     nullptr, nullptr, 1},
    {"guard-18",
     "The neighbors renovate at midnight every night. I grind my teeth in my sleep.",
     {{"stressors", "sleep deprivation", "The neighbors renovate at midnight every night."},
      {"stress_responses", "muscle tension", "I grind my teeth in my sleep."}},
     nullptr, nullptr, 0},
    {"guard-19",
     "Two jobs and night classes leave no time to breathe. It began slowly last autumn.",
     {{"stressors", "work overload", "Two jobs and night classes leave no time to breathe."}},
     "Gradual", "It began slowly last autumn.", 0},
    {"guard-20",
     "My best friend stopped replying to my messages. I go for long walks to clear my head.",
     {{"stressors", "social isolation", "My best friend stopped replying to my messages."},
      {"coping_strategies", "walking", "I go for long walks to clear my head."}},
     nullptr, nullptr, 0},
};

ordered_json guard_case_response(const GuardCase& gc) {
    ordered_json response;
    response["stressors"] = ordered_json::array();
    response["stress_responses"] = ordered_json::array();
    response["coping_strategies"] = ordered_json::array();
    response["durations"] = ordered_json::array();
    response["onset"] = nullptr;
    response["temporal_profile"] = nullptr;
    for (const auto& item : gc.items) {
        const char* phrase_key = std::string(item.list) == "durations" ? "value_text" : "phrase";
        response[item.list].push_back({{phrase_key, item.phrase}, {"evidence", item.evidence}});
    }
    if (gc.onset_value)
        response["onset"] = {{"value", gc.onset_value}, {"evidence", gc.onset_evidence}};
    return response;
}

// ---------------------------------------------------------------------------

int run(const std::filesystem::path& out_root) {
    Ontology seed = seed_meso();
    require(validate_ontology(seed, ValidationProfile::MeSO).empty(),
            "seed ontology must be pitfall-free");

    save_ontology(seed, out_root / "seed_meso.json");

    std::string stopwords_text;
    for (const auto& w : default_stopwords()) stopwords_text += w + "\n";
    atomic_write_file(out_root / "stopwords_en.txt", stopwords_text);

    // Keyword fixture and its expected distribution.
    {
        KeywordMapping mapping = map_keywords(seed, keyword_fixture);
        require(mapping.distribution.total == 82, "keyword fixture must hold 82 terms");
        require(mapping.distribution.count(MatchCategory::Exact) == 42, "exact count");
        require(mapping.distribution.count(MatchCategory::Broader) == 34, "broader count");
        require(mapping.distribution.count(MatchCategory::Narrower) == 2, "narrower count");
        require(mapping.distribution.count(MatchCategory::Partial) == 0, "partial count");
        require(mapping.distribution.count(MatchCategory::None) == 4, "none count");
        std::string keywords_text;
        for (const auto& term : keyword_fixture) keywords_text += term + "\n";
        atomic_write_file(out_root / "fixtures" / "keywords_82.txt", keywords_text);
    }

    // Posts, canned responses, records.
    std::vector<Post> posts;
    auto responses_dir = out_root / "fixtures" / "mock_responses";
    std::filesystem::create_directories(responses_dir);
    for (size_t i = 0; i < post_specs.size(); ++i) {
        BuiltPost built = build_post(i, post_specs[i]);
        std::string prompt = build_prompt(seed, built.post.text);
        atomic_write_file(responses_dir / MockCompletionClient::response_filename(prompt),
                          built.response.dump() + "\n");
        posts.push_back(std::move(built.post));
    }
    require(posts.size() == 35, "exactly 35 posts");
    atomic_write_file(out_root / "fixtures" / "posts_35.jsonl", posts_to_jsonl(posts));

    MockCompletionClient client(responses_dir);
    std::vector<ExtractionRecord> records = extract_batch(client, seed, posts, 1);

    std::map<InfoCategory, int> item_counts;
    int none_items = 0;
    for (const auto& record : records) {
        require(!record.diagnostics.error.has_value(), "no post may fail");
        require(record.diagnostics.guard_violations.empty(), "no guard violations in corpus");
        for (const auto& item : record.items) {
            item_counts[item.category] += 1;
            if (item.match_category == MatchCategory::None) ++none_items;
        }
    }
    require(item_counts[InfoCategory::Stressor] == 39, "39 stressor items");
    require(item_counts[InfoCategory::StressResponse] == 63, "63 response items");
    require(item_counts[InfoCategory::StressCopingStrategy] == 32, "32 coping items");
    require(item_counts[InfoCategory::StressDuration] == 22, "22 duration items");
    require(item_counts[InfoCategory::StressOnset] == 14, "14 onset items");
    require(item_counts[InfoCategory::StressTemporalProfile] == 29, "29 temporal items");
    require(none_items == 52, "52 unmapped items in total");

    UnmappedReport unmapped = unmapped_report(records);
    require(unmapped.total_unmapped == 52, "unmapped total");
    require(unmapped.duration_excluded == 22, "duration exclusions");
    auto category_of = [&](InfoCategory c) -> const UnmappedCategory& {
        for (const auto& entry : unmapped.categories)
            if (entry.category == c) return entry;
        throw Failure("category missing from unmapped report");
    };
    require(category_of(InfoCategory::Stressor).count == 20, "20 unmapped stressors");
    require(category_of(InfoCategory::Stressor).unique_phrases.size() == 16,
            "16 unique unmapped stressors");
    require(category_of(InfoCategory::StressResponse).count == 6, "6 unmapped responses");
    require(category_of(InfoCategory::StressResponse).unique_phrases.size() == 4,
            "4 unique unmapped responses");
    require(category_of(InfoCategory::StressCopingStrategy).count == 4, "4 unmapped coping");
    require(category_of(InfoCategory::StressCopingStrategy).unique_phrases.size() == 4,
            "4 unique unmapped coping");
    require(unmapped.unique_total() == 24, "24 unique unmapped concepts");

    atomic_write_file(out_root / "fixtures" / "records_35.jsonl", records_to_jsonl(records));

    // Adjudicated review sheet reproducing the reference tallies.
    ReviewSheet sheet = build_adjudicated_sheet(records);
    require(sheet.size() == 220, "220 adjudicated rows");
    MetricsReport metrics = score_reviews(sheet);
    struct Expect {
        InfoCategory cat;
        int correct, incorrect, missed;
    };
    const Expect expectations[6] = {
        {InfoCategory::Stressor, 39, 0, 9},
        {InfoCategory::StressResponse, 55, 8, 8},
        {InfoCategory::StressCopingStrategy, 21, 11, 3},
        {InfoCategory::StressDuration, 19, 3, 0},
        {InfoCategory::StressOnset, 9, 5, 0},
        {InfoCategory::StressTemporalProfile, 29, 0, 1},
    };
    for (const auto& e : expectations)
        for (const auto& m : metrics.categories)
            if (m.category == e.cat)
                require(m.correct == e.correct && m.incorrect == e.incorrect &&
                            m.missed == e.missed,
                        "review tallies for " + to_string(e.cat));
    require(metrics.overall.correct == 172 && metrics.overall.incorrect == 27 &&
                metrics.overall.missed == 21,
            "overall tallies 172/27/21");
    require(metrics.overall.hallucinations == 3, "3 hallucination rows");
    atomic_write_file(out_root / "fixtures" / "review_adjudicated.csv",
                      review_sheet_to_csv(sheet));

    // Guard cases.
    {
        int fabricated = 0;
        std::string jsonl;
        for (const auto& gc : guard_cases) {
            ordered_json response = guard_case_response(gc);
            ParsedOutput parsed = parse_llm_output(response.dump(), gc.post);
            require(static_cast<int>(parsed.guard_violations.size()) == gc.expected_violations,
                    std::string("guard expectations for ") + gc.id);
            fabricated += gc.expected_violations;
            ordered_json line;
            line["id"] = gc.id;
            line["post"] = gc.post;
            line["raw"] = response.dump();
            line["expected_violations"] = gc.expected_violations;
            jsonl += line.dump() + "\n";
        }
        require(fabricated == 3, "exactly 3 fabricated spans in the guard fixture");
        require(guard_cases.size() == 20, "exactly 20 guard cases");
        atomic_write_file(out_root / "fixtures" / "guard_cases.jsonl", jsonl);
    }

    std::cout << "fixtures written under " << out_root.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path out_root = argc > 1 ? argv[1] : "data";
    try {
        return run(out_root);
    } catch (const std::exception& e) {
        std::cerr << "genfixtures: " << e.what() << "\n";
        return 1;
    }
}
