#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace meso {

// Concept identifier, "STRONG:" followed by six digits (e.g. "STRONG:000042").
struct ConceptId {
    std::string value;

    ConceptId() = default;
    explicit ConceptId(std::string v) : value(std::move(v)) {}

    static bool is_valid(const std::string& v);
    // Throws std::invalid_argument unless the pattern matches exactly.
    static ConceptId parse(const std::string& v);

    auto operator<=>(const ConceptId&) const = default;
};

struct Concept {
    ConceptId id;
    std::string label; // UpperCamelCase class name
    std::vector<ConceptId> parent_ids; // empty <=> top-level class
    std::vector<std::string> synonyms;
    std::optional<std::string> definition;
    std::optional<std::string> umls_cui; // "C" + 7 digits
    std::optional<std::string> umls_preferred_name;
    std::optional<std::string> umls_semantic_type;
    std::optional<std::string> translation_ko;
    std::optional<std::string> source_language;

    bool operator==(const Concept&) const = default;
};

struct Ontology {
    std::string name;
    std::string version;
    std::map<ConceptId, Concept> concepts;

    bool contains(const ConceptId& id) const { return concepts.count(id) > 0; }
    const Concept& get(const ConceptId& id) const;
    // Throws std::invalid_argument on duplicate id.
    void add_concept(Concept c);
    std::vector<ConceptId> root_ids() const;

    bool operator==(const Ontology&) const = default;
};

enum class PitfallCode {
    CYCLE,
    DANGLING_PARENT,
    DUP_ID,
    DUP_LABEL,
    BAD_NAMING,
    MISSING_ANNOTATION,
    POSSIBLE_EQUIVALENCE,
    PROFILE_ROOT_MISMATCH,
};

enum class Severity { Error, Warning, Suggestion };

Severity severity_of(PitfallCode code);
std::string to_string(PitfallCode code);
std::string to_string(Severity severity);

struct Pitfall {
    PitfallCode code;
    Severity severity;
    std::vector<ConceptId> subjects;
    std::string message;

    bool operator==(const Pitfall&) const = default;
};

Pitfall make_pitfall(PitfallCode code, std::vector<ConceptId> subjects, std::string message);

enum class ValidationProfile { Generic, MeSO };

// Thrown when a document cannot be loaded: I/O trouble, malformed JSON, or
// Error-severity pitfalls (CYCLE, DANGLING_PARENT, DUP_ID).
class OntologyLoadError : public std::runtime_error {
  public:
    OntologyLoadError(std::string what, std::vector<Pitfall> pitfalls = {})
        : std::runtime_error(std::move(what)), pitfalls_(std::move(pitfalls)) {}
    const std::vector<Pitfall>& pitfalls() const { return pitfalls_; }

  private:
    std::vector<Pitfall> pitfalls_;
};

// Strict parse of the canonical JSON document; refuses files with any
// Error-severity structural pitfall, reporting the full pitfall list.
Ontology load_ontology(const std::filesystem::path& path);
Ontology parse_ontology_json(const std::string& text);

// Canonical serialization: fixed field order, concepts ascending by id,
// two-space indent, trailing newline. save(load(x)) is byte-identical.
std::string ontology_to_json(const Ontology& o);
void save_ontology(const Ontology& o, const std::filesystem::path& path);

// All pitfalls, ordered by (code, subjects, message). Never throws.
std::vector<Pitfall> validate_ontology(const Ontology& o,
                                       ValidationProfile profile = ValidationProfile::Generic);

// Transitive closure over parent_ids, excluding id itself.
// Throws std::invalid_argument for an unknown id.
std::set<ConceptId> ancestors(const Ontology& o, const ConceptId& id);

// Longest parent-path length per concept (roots are 0). Concepts caught in a
// parent cycle get depth 0; callers are expected to validate first.
std::map<ConceptId, int> concept_depths(const Ontology& o);

// The expected root labels for the MeSO validation profile.
const std::vector<std::string>& meso_root_labels();

// Bundled desk-scale stress ontology: the eight top-level classes plus a
// curated set of descendants. Clean under the MeSO validation profile.
Ontology seed_meso();

} // namespace meso
