#include "meso/extraction.hpp"

#include "meso/hash.hpp"
#include "meso/io.hpp"
#include "meso/text.hpp"

#include <json.hpp>

namespace meso {

using ordered_json = nlohmann::ordered_json;

const std::string prompt_version = "meso-extract/1";

std::string to_string(InfoCategory c) {
    switch (c) {
    case InfoCategory::Stressor: return "Stressor";
    case InfoCategory::StressResponse: return "StressResponse";
    case InfoCategory::StressCopingStrategy: return "StressCopingStrategy";
    case InfoCategory::StressDuration: return "StressDuration";
    case InfoCategory::StressOnset: return "StressOnset";
    case InfoCategory::StressTemporalProfile: return "StressTemporalProfile";
    }
    return "?";
}

InfoCategory info_category_from_string(const std::string& s) {
    for (InfoCategory c : all_info_categories)
        if (to_string(c) == s) return c;
    throw std::invalid_argument("unknown information category: '" + s + "'");
}

std::string description(InfoCategory c) {
    switch (c) {
    case InfoCategory::Stressor: return "Source or causes of stress";
    case InfoCategory::StressResponse:
        return "Mental, emotional, physical, or behavioral reaction to stress";
    case InfoCategory::StressCopingStrategy: return "The methods used to manage stress";
    case InfoCategory::StressDuration: return "How long the stress lasts";
    case InfoCategory::StressOnset:
        return "The manner in which stress begins – sudden or gradual";
    case InfoCategory::StressTemporalProfile:
        return "The overall pattern of stress - acute or chronic";
    }
    return "?";
}

std::string build_prompt(const Ontology& o, const std::string& post_text) {
    if (post_text.empty()) throw std::invalid_argument("post text is empty");
    std::string p;
    p += "Extract stress-related information from the post at the end of this message.\n";
    p += "\n## Information categories\n";
    for (InfoCategory c : all_info_categories)
        p += to_string(c) + ": " + description(c) + "\n";
    p += "\n## Allowed values\n";
    p += "Onset value: Sudden or Gradual.\n";
    p += "Temporal profile value: Acute or Chronic.\n";
    p += "Treat help-seeking as a coping strategy only when the post makes an explicit request "
         "for advice or assistance; venting alone does not count.\n";
    p += "\n## Ontology concepts\n";
    for (const auto& [id, c] : o.concepts) p += id.value + "\t" + c.label + "\n";
    p += "\n## Output format\n";
    p += "Return one JSON object and nothing else, with exactly these keys:\n";
    p += "{\"stressors\": [{\"phrase\": str, \"evidence\": str}],\n";
    p += " \"stress_responses\": [{\"phrase\": str, \"evidence\": str}],\n";
    p += " \"coping_strategies\": [{\"phrase\": str, \"evidence\": str}],\n";
    p += " \"durations\": [{\"value_text\": str, \"evidence\": str}],\n";
    p += " \"onset\": {\"value\": \"Sudden\"|\"Gradual\", \"evidence\": str} | null,\n";
    p += " \"temporal_profile\": {\"value\": \"Acute\"|\"Chronic\", \"evidence\": str} | null}\n";
    p += "\nEvery \"evidence\" value must be a span copied verbatim from the post. If the post "
         "does not state a category, return an empty list for it (null for onset and "
         "temporal_profile); never invent an item.\n";
    p += "\n## Post\n";
    p += post_text;
    p += "\n";
    return p;
}

namespace {

const char* const output_keys[6] = {"stressors",  "stress_responses", "coping_strategies",
                                    "durations",  "onset",            "temporal_profile"};

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ParseError(ParseErrorKind::SchemaViolation,
                         "missing field '" + std::string(key) + "' in " + where);
    if (!obj.at(key).is_string())
        throw ParseError(ParseErrorKind::SchemaViolation,
                         "field '" + std::string(key) + "' in " + where + " must be a string");
    return obj.at(key).get<std::string>();
}

void check_item_keys(const ordered_json& obj, const char* phrase_key, const std::string& where) {
    if (!obj.is_object())
        throw ParseError(ParseErrorKind::SchemaViolation, where + " entries must be objects");
    for (const auto& [key, value] : obj.items())
        if (key != phrase_key && key != "evidence")
            throw ParseError(ParseErrorKind::SchemaViolation,
                             "unexpected field '" + key + "' in " + where);
}

bool evidence_supported(const std::string& evidence, const std::string& folded_post) {
    std::string folded = fold_whitespace(evidence);
    if (folded.empty()) return false;
    return folded_post.find(folded) != std::string::npos;
}

} // namespace

ParsedOutput parse_llm_output(const std::string& raw, const std::string& post_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ParseErrorKind::NotJson,
                         std::string("model output is not a JSON document: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError(ParseErrorKind::NotJson, "model output is not a JSON object");

    for (const auto& [key, value] : doc.items()) {
        bool known = false;
        for (const char* k : output_keys) known = known || key == k;
        if (!known)
            throw ParseError(ParseErrorKind::UnknownCategory,
                             "unknown output category '" + key + "'");
    }
    for (const char* k : output_keys)
        if (!doc.contains(k))
            throw ParseError(ParseErrorKind::SchemaViolation,
                             "missing field '" + std::string(k) + "'");

    struct RawItem {
        InfoCategory category;
        std::string phrase;
        std::string evidence;
        std::optional<std::string> enum_value;
    };
    std::vector<RawItem> raw_items;

    struct ListSpec {
        const char* key;
        InfoCategory category;
        const char* phrase_key;
    };
    static const ListSpec lists[4] = {
        {"stressors", InfoCategory::Stressor, "phrase"},
        {"stress_responses", InfoCategory::StressResponse, "phrase"},
        {"coping_strategies", InfoCategory::StressCopingStrategy, "phrase"},
        {"durations", InfoCategory::StressDuration, "value_text"},
    };
    for (const auto& spec : lists) {
        const auto& arr = doc.at(spec.key);
        if (!arr.is_array())
            throw ParseError(ParseErrorKind::SchemaViolation,
                             "field '" + std::string(spec.key) + "' must be an array");
        for (const auto& entry : arr) {
            check_item_keys(entry, spec.phrase_key, spec.key);
            RawItem item;
            item.category = spec.category;
            item.phrase = require_string(entry, spec.phrase_key, spec.key);
            item.evidence = require_string(entry, "evidence", spec.key);
            raw_items.push_back(std::move(item));
        }
    }

    struct SingleSpec {
        const char* key;
        InfoCategory category;
        const char* allowed[2];
    };
    static const SingleSpec singles[2] = {
        {"onset", InfoCategory::StressOnset, {"Sudden", "Gradual"}},
        {"temporal_profile", InfoCategory::StressTemporalProfile, {"Acute", "Chronic"}},
    };
    for (const auto& spec : singles) {
        const auto& entry = doc.at(spec.key);
        if (entry.is_null()) continue;
        check_item_keys(entry, "value", spec.key);
        RawItem item;
        item.category = spec.category;
        std::string value = require_string(entry, "value", spec.key);
        if (value != spec.allowed[0] && value != spec.allowed[1])
            throw ParseError(ParseErrorKind::BadEnumValue,
                             "value '" + value + "' for '" + spec.key + "' must be " +
                                 spec.allowed[0] + " or " + spec.allowed[1]);
        item.phrase = value;
        item.enum_value = value;
        item.evidence = require_string(entry, "evidence", spec.key);
        raw_items.push_back(std::move(item));
    }

    ParsedOutput out;
    std::string folded_post = fold_whitespace(post_text);
    for (size_t i = 0; i < raw_items.size(); ++i) {
        const RawItem& item = raw_items[i];
        if (!evidence_supported(item.evidence, folded_post)) {
            out.guard_violations.push_back(
                {static_cast<int>(i), item.category, item.evidence});
            continue;
        }
        ExtractedItem kept;
        kept.category = item.category;
        kept.evidence_span = item.evidence;
        kept.phrase = item.phrase;
        kept.enum_value = item.enum_value;
        out.items.push_back(std::move(kept));
    }
    return out;
}

ExtractionRecord extract_post(CompletionClient& client, const Ontology& o,
                              const std::string& post_id, const std::string& post_text,
                              int retries) {
    if (retries < 0) throw std::invalid_argument("retries must be >= 0");
    std::string prompt = build_prompt(o, post_text);

    ExtractionRecord record;
    record.post_id = post_id;
    record.post_hash = fnv1a64_hex(post_text);
    record.model_id = client.model_id();
    record.prompt_version = prompt_version;

    ParsedOutput parsed;
    int attempts = 0;
    for (;;) {
        ++attempts;
        std::string raw = client.complete(prompt);
        try {
            parsed = parse_llm_output(raw, post_text);
            break;
        } catch (const ParseError& e) {
            bool retryable = e.kind() == ParseErrorKind::NotJson ||
                             e.kind() == ParseErrorKind::SchemaViolation;
            if (!retryable || attempts > retries) throw;
        }
    }
    record.diagnostics.attempts = attempts;
    record.diagnostics.guard_violations = std::move(parsed.guard_violations);

    for (auto& item : parsed.items) {
        if (item.category != InfoCategory::StressDuration) {
            MatchResult m = map_term(o, item.phrase);
            item.match_category = m.category;
            if (m.category != MatchCategory::None) item.mapped_concept = m.matched_ids.front();
        }
        record.items.push_back(std::move(item));
    }
    return record;
}

std::vector<ExtractionRecord> extract_batch(CompletionClient& client, const Ontology& o,
                                            const std::vector<Post>& posts, unsigned parallelism,
                                            int retries) {
    std::vector<ExtractionRecord> records(posts.size());
    parallel_for_indexed(posts.size(), parallelism, [&](std::size_t i) {
        try {
            records[i] = extract_post(client, o, posts[i].id, posts[i].text, retries);
        } catch (const std::exception& e) {
            ExtractionRecord failed;
            failed.post_id = posts[i].id;
            failed.post_hash = fnv1a64_hex(posts[i].text);
            failed.model_id = client.model_id();
            failed.prompt_version = prompt_version;
            failed.diagnostics.attempts = retries + 1;
            failed.diagnostics.error = e.what();
            records[i] = std::move(failed);
        }
    });
    return records;
}

namespace {

ordered_json opt_to_json(const std::optional<std::string>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

std::string record_to_json_line(const ExtractionRecord& record) {
    ordered_json doc;
    doc["post_id"] = record.post_id;
    doc["post_hash"] = record.post_hash;
    doc["model_id"] = record.model_id;
    doc["prompt_version"] = record.prompt_version;
    doc["items"] = ordered_json::array();
    for (const auto& item : record.items) {
        ordered_json entry;
        entry["category"] = to_string(item.category);
        entry["phrase"] = item.phrase;
        entry["evidence_span"] = item.evidence_span;
        entry["enum_value"] = opt_to_json(item.enum_value);
        entry["mapped_concept"] =
            item.mapped_concept ? ordered_json(item.mapped_concept->value) : ordered_json(nullptr);
        entry["match_category"] = to_string(item.match_category);
        doc["items"].push_back(std::move(entry));
    }
    ordered_json diag;
    diag["attempts"] = record.diagnostics.attempts;
    diag["guard_violations"] = ordered_json::array();
    for (const auto& gv : record.diagnostics.guard_violations) {
        ordered_json entry;
        entry["item_index"] = gv.item_index;
        entry["category"] = to_string(gv.category);
        entry["evidence_span"] = gv.evidence_span;
        diag["guard_violations"].push_back(std::move(entry));
    }
    diag["error"] = opt_to_json(record.diagnostics.error);
    doc["diagnostics"] = std::move(diag);
    return doc.dump();
}

namespace {

std::optional<std::string> opt_from_json(const ordered_json& v, const char* key,
                                         const std::string& where) {
    if (!v.contains(key))
        throw std::invalid_argument("missing field '" + std::string(key) + "' in " + where);
    if (v.at(key).is_null()) return std::nullopt;
    if (!v.at(key).is_string())
        throw std::invalid_argument("field '" + std::string(key) + "' in " + where +
                                    " must be a string or null");
    return v.at(key).get<std::string>();
}

std::string req_string(const ordered_json& v, const char* key, const std::string& where) {
    if (!v.contains(key) || !v.at(key).is_string())
        throw std::invalid_argument("missing string field '" + std::string(key) + "' in " + where);
    return v.at(key).get<std::string>();
}

} // namespace

ExtractionRecord record_from_json_line(const std::string& line) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed record line: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("record line must be a JSON object");
    ExtractionRecord record;
    record.post_id = req_string(doc, "post_id", "record");
    record.post_hash = req_string(doc, "post_hash", "record");
    record.model_id = req_string(doc, "model_id", "record");
    record.prompt_version = req_string(doc, "prompt_version", "record");
    if (!doc.contains("items") || !doc.at("items").is_array())
        throw std::invalid_argument("record is missing the 'items' array");
    int onset_count = 0, profile_count = 0;
    for (const auto& entry : doc.at("items")) {
        ExtractedItem item;
        item.category = info_category_from_string(req_string(entry, "category", "item"));
        item.phrase = req_string(entry, "phrase", "item");
        item.evidence_span = req_string(entry, "evidence_span", "item");
        item.enum_value = opt_from_json(entry, "enum_value", "item");
        auto mapped = opt_from_json(entry, "mapped_concept", "item");
        if (mapped) item.mapped_concept = ConceptId::parse(*mapped);
        item.match_category = match_category_from_string(req_string(entry, "match_category", "item"));
        bool enum_category = item.category == InfoCategory::StressOnset ||
                             item.category == InfoCategory::StressTemporalProfile;
        if (enum_category != item.enum_value.has_value())
            throw std::invalid_argument("enum_value presence does not match category");
        if (item.category == InfoCategory::StressDuration &&
            (item.mapped_concept || item.match_category != MatchCategory::None))
            throw std::invalid_argument("duration items must not carry ontology mappings");
        if (item.category == InfoCategory::StressOnset) ++onset_count;
        if (item.category == InfoCategory::StressTemporalProfile) ++profile_count;
        record.items.push_back(std::move(item));
    }
    if (onset_count > 1 || profile_count > 1)
        throw std::invalid_argument("at most one onset and one temporal-profile item per record");
    if (!doc.contains("diagnostics") || !doc.at("diagnostics").is_object())
        throw std::invalid_argument("record is missing the 'diagnostics' object");
    const auto& diag = doc.at("diagnostics");
    if (!diag.contains("attempts") || !diag.at("attempts").is_number_integer())
        throw std::invalid_argument("diagnostics.attempts must be an integer");
    record.diagnostics.attempts = diag.at("attempts").get<int>();
    if (!diag.contains("guard_violations") || !diag.at("guard_violations").is_array())
        throw std::invalid_argument("diagnostics.guard_violations must be an array");
    for (const auto& entry : diag.at("guard_violations")) {
        GuardViolation gv;
        if (!entry.contains("item_index") || !entry.at("item_index").is_number_integer())
            throw std::invalid_argument("guard violation item_index must be an integer");
        gv.item_index = entry.at("item_index").get<int>();
        gv.category = info_category_from_string(req_string(entry, "category", "guard violation"));
        gv.evidence_span = req_string(entry, "evidence_span", "guard violation");
        record.diagnostics.guard_violations.push_back(std::move(gv));
    }
    record.diagnostics.error = opt_from_json(diag, "error", "diagnostics");
    return record;
}

std::string records_to_jsonl(const std::vector<ExtractionRecord>& records) {
    std::string out;
    for (const auto& r : records) out += record_to_json_line(r) + "\n";
    return out;
}

std::vector<ExtractionRecord> records_from_jsonl_file(const std::filesystem::path& path) {
    std::vector<ExtractionRecord> records;
    for (const auto& line : read_lines(path)) {
        if (line.empty()) continue;
        records.push_back(record_from_json_line(line));
    }
    return records;
}

std::vector<Post> posts_from_jsonl_file(const std::filesystem::path& path) {
    std::vector<Post> posts;
    int lineno = 0;
    for (const auto& line : read_lines(path)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json doc;
        try {
            doc = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument("malformed post on line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
        if (!doc.is_object()) throw std::invalid_argument("post lines must be JSON objects");
        for (const auto& [key, value] : doc.items())
            if (key != "id" && key != "text")
                throw std::invalid_argument("unknown post field '" + key + "' on line " +
                                            std::to_string(lineno));
        Post p;
        p.id = req_string(doc, "id", "post");
        p.text = req_string(doc, "text", "post");
        posts.push_back(std::move(p));
    }
    return posts;
}

std::string posts_to_jsonl(const std::vector<Post>& posts) {
    std::string out;
    for (const auto& p : posts) {
        ordered_json doc;
        doc["id"] = p.id;
        doc["text"] = p.text;
        out += doc.dump() + "\n";
    }
    return out;
}

} // namespace meso
