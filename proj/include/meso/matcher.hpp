#pragma once

#include "meso/ontology.hpp"

#include <array>
#include <string>
#include <vector>

namespace meso {

// Semantic equivalence of a free-text term against the ontology, in
// decreasing order of preference.
enum class MatchCategory { Exact, Broader, Narrower, Partial, None };

constexpr std::array<MatchCategory, 5> all_match_categories = {
    MatchCategory::Exact, MatchCategory::Broader, MatchCategory::Narrower, MatchCategory::Partial,
    MatchCategory::None};

std::string to_string(MatchCategory c);
MatchCategory match_category_from_string(const std::string& s);

struct MatchResult {
    std::string term;
    MatchCategory category = MatchCategory::None;
    std::vector<ConceptId> matched_ids;
    double score = 0.0; // token Jaccard of the best match; 0 when None

    bool operator==(const MatchResult&) const = default;
};

// Maps one term to the ontology. Categories, in priority order, with T the
// stop-filtered token set of the term and L(c) that of a concept label:
//   Exact:    T equals L(c) or a synonym's token set (single best concept)
//   Broader:  L(c) strictly contained in T (term more specific; best-overlap set)
//   Narrower: T strictly contained in L(c) (all such concepts)
//   Partial:  T and L(c) overlap (best-overlap set)
//   None:     no overlap with any concept
// Ties break by highest Jaccard, then greatest hierarchy depth, then lowest id.
MatchResult map_term(const Ontology& o, const std::string& term);

struct CategoryDistribution {
    std::array<int, 5> counts{}; // indexed by MatchCategory order
    int total = 0;

    int count(MatchCategory c) const { return counts[static_cast<size_t>(c)]; }
    // Percentage in tenths (round half up), e.g. 512 for 51.2%.
    int percent_tenths(MatchCategory c) const;
    // "51.2"
    std::string percent_text(MatchCategory c) const;
};

struct KeywordMapping {
    std::vector<MatchResult> results;
    CategoryDistribution distribution;
};

// Maps a deduplicated term list. Throws std::invalid_argument on an empty
// list or when two terms normalize identically.
KeywordMapping map_keywords(const Ontology& o, const std::vector<std::string>& terms);

} // namespace meso
