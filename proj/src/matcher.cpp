#include "meso/matcher.hpp"

#include "meso/text.hpp"

#include <algorithm>
#include <map>

namespace meso {

std::string to_string(MatchCategory c) {
    switch (c) {
    case MatchCategory::Exact: return "Exact";
    case MatchCategory::Broader: return "Broader";
    case MatchCategory::Narrower: return "Narrower";
    case MatchCategory::Partial: return "Partial";
    case MatchCategory::None: return "None";
    }
    return "?";
}

MatchCategory match_category_from_string(const std::string& s) {
    for (MatchCategory c : all_match_categories)
        if (to_string(c) == s) return c;
    throw std::invalid_argument("unknown match category: '" + s + "'");
}

namespace {

std::set<std::string> term_token_set(const std::string& text) {
    std::set<std::string> out;
    const auto& stops = matcher_stop_tokens();
    for (auto& t : normalize_term(text))
        if (!stops.count(t)) out.insert(std::move(t));
    return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

bool strict_subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool overlaps(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& t : a)
        if (b.count(t)) return true;
    return false;
}

struct Candidate {
    ConceptId id;
    double jaccard_to_label;
    int depth;
};

// Jaccard desc, depth desc, id asc.
bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.jaccard_to_label != b.jaccard_to_label) return a.jaccard_to_label > b.jaccard_to_label;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.id < b.id;
}

} // namespace

MatchResult map_term(const Ontology& o, const std::string& term) {
    MatchResult result;
    result.term = term;

    std::set<std::string> term_set = term_token_set(term);
    if (term_set.empty()) return result; // None

    std::map<ConceptId, int> depths = concept_depths(o);

    std::vector<Candidate> exact, broader, narrower, partial;
    for (const auto& [id, c] : o.concepts) {
        std::set<std::string> label_set = term_token_set(c.label);
        if (label_set.empty()) continue;
        double j = jaccard(term_set, label_set);
        int depth = depths[id];

        bool exact_match = term_set == label_set;
        if (!exact_match)
            for (const auto& syn : c.synonyms)
                if (term_token_set(syn) == term_set) {
                    exact_match = true;
                    break;
                }
        if (exact_match) {
            exact.push_back({id, j, depth});
            continue;
        }
        if (strict_subset(label_set, term_set))
            broader.push_back({id, j, depth});
        else if (strict_subset(term_set, label_set))
            narrower.push_back({id, j, depth});
        else if (overlaps(term_set, label_set))
            partial.push_back({id, j, depth});
    }

    auto finish = [&](MatchCategory category, std::vector<Candidate> candidates,
                      bool best_overlap_only) {
        std::sort(candidates.begin(), candidates.end(), candidate_less);
        result.category = category;
        double best = candidates.front().jaccard_to_label;
        for (const auto& cand : candidates) {
            if (best_overlap_only && cand.jaccard_to_label < best) break;
            result.matched_ids.push_back(cand.id);
        }
        result.score = category == MatchCategory::Exact ? 1.0 : best;
    };

    if (!exact.empty()) {
        std::sort(exact.begin(), exact.end(), candidate_less);
        result.category = MatchCategory::Exact;
        result.matched_ids = {exact.front().id};
        result.score = 1.0;
    } else if (!broader.empty()) {
        finish(MatchCategory::Broader, std::move(broader), true);
    } else if (!narrower.empty()) {
        finish(MatchCategory::Narrower, std::move(narrower), false);
    } else if (!partial.empty()) {
        finish(MatchCategory::Partial, std::move(partial), true);
    }
    return result;
}

int CategoryDistribution::percent_tenths(MatchCategory c) const {
    if (total == 0) return 0;
    long long a = 1000LL * count(c);
    long long b = total;
    return static_cast<int>((2 * a + b) / (2 * b)); // round half up
}

std::string CategoryDistribution::percent_text(MatchCategory c) const {
    int tenths = percent_tenths(c);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

KeywordMapping map_keywords(const Ontology& o, const std::vector<std::string>& terms) {
    if (terms.empty()) throw std::invalid_argument("no terms to map");
    std::map<std::string, std::string> seen; // normalized key -> first surface form
    for (const auto& term : terms) {
        std::string key = normalized_key(term);
        auto [it, inserted] = seen.emplace(key, term);
        if (!inserted)
            throw std::invalid_argument("terms '" + it->second + "' and '" + term +
                                        "' normalize identically ('" + key + "')");
    }
    KeywordMapping mapping;
    mapping.results.reserve(terms.size());
    for (const auto& term : terms) {
        MatchResult r = map_term(o, term);
        mapping.distribution.counts[static_cast<size_t>(r.category)] += 1;
        mapping.distribution.total += 1;
        mapping.results.push_back(std::move(r));
    }
    return mapping;
}

} // namespace meso
