#pragma once

#include <set>
#include <string>
#include <vector>

namespace meso {

// Term normalization used by the matcher and for keyword deduplication.
// Pipeline: split CamelCase at case boundaries, lowercase, strip punctuation,
// collapse whitespace, singularize each token by the suffix rules, drop
// empty tokens. ASCII only; non-alphanumeric bytes are treated as separators.
std::vector<std::string> normalize_term(const std::string& text);

// Singularization suffix rules, applied in order:
//   ...ies -> ...y | ...sses -> ...ss | ...xes/...ches/...shes -> drop "es"
//   ...ss  -> keep | ...s    -> drop "s"
std::string singularize(const std::string& token);

// Lowercased word tokens split on whitespace/punctuation. No CamelCase split,
// no singularization; this is the n-gram/embedding tokenizer.
std::vector<std::string> tokenize_words(const std::string& text);

// Space-joined normalize_term output; the canonical dedup key for terms.
std::string normalized_key(const std::string& text);

// Tokens ignored when the matcher computes subset/overlap relations.
const std::set<std::string>& matcher_stop_tokens();

// Case-folds (ASCII) and collapses every whitespace run to a single space,
// trimming the ends. Both sides of the evidence-span check go through this.
std::string fold_whitespace(const std::string& text);

bool is_upper_camel_case(const std::string& label);

} // namespace meso
