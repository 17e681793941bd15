#include "meso/keywords.hpp"

#include "meso/io.hpp"
#include "meso/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace meso {

const std::set<std::string>& default_stopwords() {
    // Frozen copy of data/stopwords_en.txt.
    static const std::set<std::string> words = {
        "a",    "about", "above", "after", "again", "against", "all",   "am",    "an",
        "and",  "any",   "are",   "as",    "at",    "be",      "been",  "being", "below",
        "between", "both", "but", "by",    "can",   "did",     "do",    "does",  "doing",
        "down", "during", "each", "few",   "for",   "from",    "further", "had", "has",
        "have", "having", "he",   "her",   "here",  "hers",    "him",   "his",   "how",
        "i",    "if",    "in",    "into",  "is",    "it",      "its",   "just",  "me",
        "more", "most",  "my",    "no",    "nor",   "not",     "now",   "of",    "off",
        "on",   "once",  "only",  "or",    "other", "our",     "ours",  "out",   "over",
        "own",  "s",     "same",  "she",   "should", "so",     "some",  "such",  "t",
        "than", "that",  "the",   "their", "theirs", "them",   "then",  "there", "these",
        "they", "this",  "those", "through", "too",  "under",  "until", "up",    "very",
        "was",  "we",    "were",  "what",  "when",  "where",   "which", "while", "who",
        "whom", "why",   "will",  "with",  "you",   "your",    "yours"};
    return words;
}

std::vector<std::string> ngram_candidates(const std::string& doc, const std::set<int>& n_set,
                                          const std::set<std::string>& stopwords) {
    std::vector<std::string> tokens = tokenize_words(doc);
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (int n : n_set) {
        if (n < 1 || tokens.size() < static_cast<size_t>(n)) continue;
        for (size_t i = 0; i + n <= tokens.size(); ++i) {
            bool all_stop = true;
            for (int j = 0; j < n; ++j)
                if (!stopwords.count(tokens[i + j])) {
                    all_stop = false;
                    break;
                }
            if (all_stop) continue; // covers the unigram case too
            std::string gram = tokens[i];
            for (int j = 1; j < n; ++j) gram += " " + tokens[i + j];
            if (seen.insert(gram).second) out.push_back(std::move(gram));
        }
    }
    return out;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("embedding dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine of a zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<Keyword> top_keywords(Embedder& embedder, const std::string& doc, int k,
                                  const std::set<int>& n_set,
                                  const std::set<std::string>& stopwords) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<std::string> candidates = ngram_candidates(doc, n_set, stopwords);
    if (candidates.empty()) return {};
    EmbeddingVector doc_vec = embedder.embed(doc);

    std::vector<Keyword> out;
    for (int n : n_set) {
        std::vector<Keyword> level;
        for (const auto& cand : candidates) {
            int grams = 1 + static_cast<int>(std::count(cand.begin(), cand.end(), ' '));
            if (grams != n) continue;
            level.push_back({cand, n, cosine_similarity(embedder.embed(cand), doc_vec)});
        }
        std::sort(level.begin(), level.end(), [](const Keyword& a, const Keyword& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.text < b.text;
        });
        if (level.size() > static_cast<size_t>(k)) level.resize(k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

CoverageReport coverage_report(const Ontology& o, const std::vector<std::string>& docs,
                               Embedder& embedder, int k, const std::set<int>& n_set,
                               const std::set<std::string>& stopwords, unsigned parallelism) {
    if (docs.empty()) throw std::invalid_argument("no documents");
    std::vector<std::vector<Keyword>> per_doc(docs.size());
    parallel_for_indexed(docs.size(), parallelism, [&](std::size_t i) {
        per_doc[i] = top_keywords(embedder, docs[i], k, n_set, stopwords);
    });

    // Pool in document order, dedup by normalized term, first surface wins.
    std::vector<std::string> pool;
    std::set<std::string> seen_keys;
    for (const auto& keywords : per_doc)
        for (const auto& kw : keywords) {
            std::string key = normalized_key(kw.text);
            if (key.empty()) continue;
            if (seen_keys.insert(std::move(key)).second) pool.push_back(kw.text);
        }

    CoverageReport report;
    report.embedder_id = embedder.embedder_id();
    if (pool.empty()) return report;
    KeywordMapping mapping = map_keywords(o, pool);
    report.total_keywords = mapping.distribution.total;
    report.distribution = mapping.distribution;
    report.results = std::move(mapping.results);
    return report;
}

} // namespace meso
