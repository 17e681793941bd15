// Brute-force reference implementations used only by tests. These are kept
// independent of the library's algorithms: they re-derive the same contracts
// from the definitions so the two routes can be compared.
#pragma once

#include "meso/matcher.hpp"
#include "meso/ontology.hpp"
#include "meso/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::set<std::string> token_set(const std::string& text) {
    std::set<std::string> out;
    for (const auto& t : meso::normalize_term(text))
        if (!meso::matcher_stop_tokens().count(t)) out.insert(t);
    return out;
}

inline double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::vector<std::string> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    if (uni.empty()) return 0.0;
    return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

// Longest path to a root, recomputed by naive recursion (valid DAGs only).
inline int depth_of(const meso::Ontology& o, const meso::ConceptId& id,
                    std::map<meso::ConceptId, int>& memo) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    int best = 0;
    for (const auto& p : o.get(id).parent_ids)
        if (o.contains(p)) best = std::max(best, depth_of(o, p, memo) + 1);
    memo[id] = best;
    return best;
}

// Five-definition matcher oracle: evaluates each category definition over
// every concept, in priority order, with the documented tie-breaks.
inline meso::MatchResult map_term_oracle(const meso::Ontology& o, const std::string& term) {
    using meso::MatchCategory;
    meso::MatchResult result;
    result.term = term;
    std::set<std::string> T = token_set(term);
    if (T.empty()) return result;

    std::map<meso::ConceptId, int> depth_memo;
    struct Entry {
        meso::ConceptId id;
        double j;
        int depth;
    };
    auto order = [](const Entry& x, const Entry& y) {
        if (x.j != y.j) return x.j > y.j;
        if (x.depth != y.depth) return x.depth > y.depth;
        return x.id < y.id;
    };

    std::vector<Entry> exact;
    for (const auto& [id, c] : o.concepts) {
        std::set<std::string> L = token_set(c.label);
        if (L.empty()) continue;
        bool is_exact = (T == L);
        for (const auto& s : c.synonyms)
            if (token_set(s) == T) is_exact = true;
        if (is_exact) exact.push_back({id, jaccard(T, L), depth_of(o, id, depth_memo)});
    }
    if (!exact.empty()) {
        std::sort(exact.begin(), exact.end(), order);
        result.category = MatchCategory::Exact;
        result.matched_ids = {exact.front().id};
        result.score = 1.0;
        return result;
    }

    auto collect = [&](auto pred) {
        std::vector<Entry> found;
        for (const auto& [id, c] : o.concepts) {
            std::set<std::string> L = token_set(c.label);
            if (L.empty()) continue;
            if (pred(L)) found.push_back({id, jaccard(T, L), depth_of(o, id, depth_memo)});
        }
        std::sort(found.begin(), found.end(), order);
        return found;
    };
    auto proper_subset = [](const std::set<std::string>& x, const std::set<std::string>& y) {
        return x.size() < y.size() &&
               std::includes(y.begin(), y.end(), x.begin(), x.end());
    };

    std::vector<Entry> broader = collect([&](const std::set<std::string>& L) {
        return proper_subset(L, T);
    });
    if (!broader.empty()) {
        result.category = MatchCategory::Broader;
        for (const auto& e : broader)
            if (e.j == broader.front().j) result.matched_ids.push_back(e.id);
        result.score = broader.front().j;
        return result;
    }

    std::vector<Entry> narrower = collect([&](const std::set<std::string>& L) {
        return proper_subset(T, L);
    });
    if (!narrower.empty()) {
        result.category = MatchCategory::Narrower;
        for (const auto& e : narrower) result.matched_ids.push_back(e.id);
        result.score = narrower.front().j;
        return result;
    }

    std::vector<Entry> partial = collect([&](const std::set<std::string>& L) {
        std::vector<std::string> inter;
        std::set_intersection(T.begin(), T.end(), L.begin(), L.end(),
                              std::back_inserter(inter));
        return !inter.empty();
    });
    if (!partial.empty()) {
        result.category = MatchCategory::Partial;
        for (const auto& e : partial)
            if (e.j == partial.front().j) result.matched_ids.push_back(e.id);
        result.score = partial.front().j;
        return result;
    }
    return result;
}

// Direct evaluation of the weighted-kappa formula from raw counts.
inline double kappa_oracle(const std::vector<int>& a, const std::vector<int>& b, int categories,
                           bool quadratic) {
    int n = static_cast<int>(a.size());
    std::vector<std::vector<int>> counts(categories, std::vector<int>(categories, 0));
    for (int k = 0; k < n; ++k) counts[a[k]][b[k]] += 1;
    std::vector<double> pa(categories, 0.0), pb(categories, 0.0);
    for (int i = 0; i < categories; ++i)
        for (int j = 0; j < categories; ++j) {
            pa[i] += counts[i][j];
            pb[j] += counts[i][j];
        }
    for (auto& x : pa) x /= n;
    for (auto& x : pb) x /= n;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < categories; ++i)
        for (int j = 0; j < categories; ++j) {
            double w = std::abs(i - j) / static_cast<double>(categories - 1);
            if (quadratic) w *= w;
            num += w * counts[i][j] / static_cast<double>(n);
            den += w * pa[i] * pb[j];
        }
    if (den == 0.0) return std::nan("");
    return 1.0 - num / den;
}

// Reachability over parent edges by repeated relaxation (no search).
inline std::set<meso::ConceptId> ancestors_oracle(const meso::Ontology& o,
                                                  const meso::ConceptId& id) {
    std::set<meso::ConceptId> reach;
    for (const auto& p : o.get(id).parent_ids)
        if (o.contains(p)) reach.insert(p);
    for (;;) {
        std::set<meso::ConceptId> next = reach;
        for (const auto& r : reach)
            for (const auto& p : o.get(r).parent_ids)
                if (o.contains(p)) next.insert(p);
        if (next == reach) return reach;
        reach = std::move(next);
    }
}

// --- random generators (fixed-seed std::mt19937_64 supplied by the caller) ---

inline std::string strong_id(int n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "STRONG:%06d", n % 1000000);
    return buf;
}

// Small word pool with heavy overlap so subset/overlap relations actually
// occur; includes plural forms to exercise normalization.
inline const std::vector<std::string>& word_pool() {
    static const std::vector<std::string> pool = {
        "alpha", "beta",  "gamma", "delta", "omega", "stress", "worry",  "sleep",
        "work",  "family", "money", "health", "focus", "panic", "calm",  "habit"};
    return pool;
}

inline std::string camel(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        out += static_cast<char>(w[0] - 'a' + 'A');
        out += w.substr(1);
    }
    return out;
}

inline meso::Ontology random_ontology(std::mt19937_64& rng, int max_concepts = 30) {
    std::uniform_int_distribution<int> count_dist(1, max_concepts);
    std::uniform_int_distribution<int> label_len(1, 3);
    std::uniform_int_distribution<size_t> word(0, word_pool().size() - 1);
    meso::Ontology o;
    o.name = "random";
    o.version = "0";
    int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
        meso::Concept c;
        c.id = meso::ConceptId(strong_id(i + 1));
        std::vector<std::string> words;
        int len = label_len(rng);
        for (int k = 0; k < len; ++k) words.push_back(word_pool()[word(rng)]);
        c.label = camel(words);
        if (i > 0) {
            // Parents only among earlier concepts keeps the graph acyclic.
            std::uniform_int_distribution<int> parent_count(0, 2);
            std::uniform_int_distribution<int> pick(1, i);
            std::set<int> parents;
            int pc = parent_count(rng);
            for (int k = 0; k < pc; ++k) parents.insert(pick(rng));
            for (int p : parents) c.parent_ids.push_back(meso::ConceptId(strong_id(p)));
        }
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
            c.synonyms.push_back(word_pool()[word(rng)] + " " + word_pool()[word(rng)]);
        o.add_concept(std::move(c));
    }
    return o;
}

inline std::string random_term(std::mt19937_64& rng, int max_tokens = 5) {
    std::uniform_int_distribution<int> len(1, max_tokens);
    std::uniform_int_distribution<size_t> word(0, word_pool().size() - 1);
    std::uniform_int_distribution<int> plural(0, 3);
    std::string out;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        if (i) out += " ";
        std::string w = word_pool()[word(rng)];
        if (plural(rng) == 0) w += "s";
        out += w;
    }
    return out;
}

} // namespace oracle
