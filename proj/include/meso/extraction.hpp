#pragma once

#include "meso/clients.hpp"
#include "meso/matcher.hpp"
#include "meso/ontology.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace meso {

enum class InfoCategory {
    Stressor,
    StressResponse,
    StressCopingStrategy,
    StressDuration,
    StressOnset,
    StressTemporalProfile,
};

constexpr std::array<InfoCategory, 6> all_info_categories = {
    InfoCategory::Stressor,       InfoCategory::StressResponse,
    InfoCategory::StressCopingStrategy, InfoCategory::StressDuration,
    InfoCategory::StressOnset,    InfoCategory::StressTemporalProfile,
};

std::string to_string(InfoCategory c);
InfoCategory info_category_from_string(const std::string& s);
// The fixed description each category carries.
std::string description(InfoCategory c);

struct ExtractedItem {
    InfoCategory category = InfoCategory::Stressor;
    std::string evidence_span; // verbatim quote from the post
    std::string phrase; // concept phrase; the enum value for onset/profile
    std::optional<std::string> enum_value; // Sudden/Gradual or Acute/Chronic
    std::optional<ConceptId> mapped_concept;
    MatchCategory match_category = MatchCategory::None;

    bool operator==(const ExtractedItem&) const = default;
};

struct GuardViolation {
    int item_index = 0; // position in the parsed item sequence
    InfoCategory category = InfoCategory::Stressor;
    std::string evidence_span;

    bool operator==(const GuardViolation&) const = default;
};

struct RecordDiagnostics {
    int attempts = 0;
    std::vector<GuardViolation> guard_violations;
    std::optional<std::string> error; // set when the post failed outright

    bool operator==(const RecordDiagnostics&) const = default;
};

struct ExtractionRecord {
    std::string post_id;
    std::string post_hash; // fnv1a64 hex of the source text
    std::string model_id;
    std::string prompt_version;
    std::vector<ExtractedItem> items;
    RecordDiagnostics diagnostics;

    bool operator==(const ExtractionRecord&) const = default;
};

struct Post {
    std::string id;
    std::string text;
};

// Structured-output parse failure kinds; the evidence guard is reported
// in-band (items are rejected individually), not as an exception.
enum class ParseErrorKind { NotJson, SchemaViolation, UnknownCategory, BadEnumValue };

class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ParseErrorKind kind() const { return kind_; }

  private:
    ParseErrorKind kind_;
};

struct ParsedOutput {
    std::vector<ExtractedItem> items; // guard-passing items, schema order
    std::vector<GuardViolation> guard_violations;
};

extern const std::string prompt_version;

// Deterministic zero-shot prompt: task statement, the six category
// definitions, the onset/profile enumerations, the full concept inventory
// (id<TAB>label, ascending by id), the output contract, and the post.
// Throws std::invalid_argument on an empty post.
std::string build_prompt(const Ontology& o, const std::string& post_text);

// Strict parse of the model's JSON output. Evidence spans must be verbatim
// substrings of the post after whitespace-collapse and case-fold; offending
// items are dropped and reported. Throws ParseError otherwise.
ParsedOutput parse_llm_output(const std::string& raw, const std::string& post_text);

// Prompt -> complete -> parse, retrying NotJson/SchemaViolation up to
// `retries` times with the identical prompt, then attaches ontology mappings
// to every surviving non-duration item. Throws on transport failure or when
// retries are exhausted.
ExtractionRecord extract_post(CompletionClient& client, const Ontology& o,
                              const std::string& post_id, const std::string& post_text,
                              int retries = 2);

// Order-preserving batch extraction; per-post failures become records with
// an error diagnostic rather than failing the batch.
std::vector<ExtractionRecord> extract_batch(CompletionClient& client, const Ontology& o,
                                            const std::vector<Post>& posts,
                                            unsigned parallelism = 1, int retries = 2);

std::string record_to_json_line(const ExtractionRecord& record);
ExtractionRecord record_from_json_line(const std::string& line);
std::string records_to_jsonl(const std::vector<ExtractionRecord>& records);
std::vector<ExtractionRecord> records_from_jsonl_file(const std::filesystem::path& path);

std::vector<Post> posts_from_jsonl_file(const std::filesystem::path& path);
std::string posts_to_jsonl(const std::vector<Post>& posts);

} // namespace meso
