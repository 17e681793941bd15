#pragma once

#include "meso/embedding.hpp"
#include "meso/matcher.hpp"
#include "meso/ontology.hpp"

#include <set>
#include <string>
#include <vector>

namespace meso {

struct Keyword {
    std::string text;
    int n = 1; // n-gram length
    double score = 0.0; // cosine similarity to the source document
};

struct CoverageReport {
    std::string embedder_id;
    int total_keywords = 0;
    CategoryDistribution distribution;
    std::vector<MatchResult> results;
};

// The frozen default English stopword list used for candidate filtering.
const std::set<std::string>& default_stopwords();

// Contiguous n-grams over the lowercased word tokens of doc, for each n in
// n_set (ascending). Stopword unigrams are dropped; longer n-grams are
// dropped only when every token is a stopword. First occurrence wins.
std::vector<std::string> ngram_candidates(const std::string& doc, const std::set<int>& n_set,
                                          const std::set<std::string>& stopwords);

// dot(a,b) / (|a| |b|). Throws std::invalid_argument on dimension mismatch
// or a zero vector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// Top k candidates per n-gram level, ranked by cosine similarity to the
// document embedding (ties broken lexicographically). Grouped by n, then rank.
std::vector<Keyword> top_keywords(Embedder& embedder, const std::string& doc, int k,
                                  const std::set<int>& n_set,
                                  const std::set<std::string>& stopwords);

// Pools top keywords from every document (input order), deduplicates by
// normalized term (first surface form wins), and maps the pool against the
// ontology. Per-document extraction may run on `parallelism` threads.
CoverageReport coverage_report(const Ontology& o, const std::vector<std::string>& docs,
                               Embedder& embedder, int k, const std::set<int>& n_set,
                               const std::set<std::string>& stopwords, unsigned parallelism = 1);

} // namespace meso
