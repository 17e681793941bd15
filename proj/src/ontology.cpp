#include "meso/ontology.hpp"

#include "meso/io.hpp"
#include "meso/text.hpp"

#include <algorithm>
#include <json.hpp>

namespace meso {

using ordered_json = nlohmann::ordered_json;

bool ConceptId::is_valid(const std::string& v) {
    if (v.size() != 13) return false;
    if (v.compare(0, 7, "STRONG:") != 0) return false;
    for (size_t i = 7; i < 13; ++i)
        if (v[i] < '0' || v[i] > '9') return false;
    return true;
}

ConceptId ConceptId::parse(const std::string& v) {
    if (!is_valid(v)) throw std::invalid_argument("malformed concept id: '" + v + "'");
    return ConceptId(v);
}

const Concept& Ontology::get(const ConceptId& id) const {
    auto it = concepts.find(id);
    if (it == concepts.end()) throw std::invalid_argument("unknown concept id: " + id.value);
    return it->second;
}

void Ontology::add_concept(Concept c) {
    auto [it, inserted] = concepts.emplace(c.id, std::move(c));
    if (!inserted) throw std::invalid_argument("duplicate concept id: " + it->first.value);
}

std::vector<ConceptId> Ontology::root_ids() const {
    std::vector<ConceptId> roots;
    for (const auto& [id, c] : concepts)
        if (c.parent_ids.empty()) roots.push_back(id);
    return roots;
}

Severity severity_of(PitfallCode code) {
    switch (code) {
    case PitfallCode::CYCLE:
    case PitfallCode::DANGLING_PARENT:
    case PitfallCode::DUP_ID:
        return Severity::Error;
    case PitfallCode::DUP_LABEL:
    case PitfallCode::BAD_NAMING:
        return Severity::Warning;
    default:
        return Severity::Suggestion;
    }
}

std::string to_string(PitfallCode code) {
    switch (code) {
    case PitfallCode::CYCLE: return "CYCLE";
    case PitfallCode::DANGLING_PARENT: return "DANGLING_PARENT";
    case PitfallCode::DUP_ID: return "DUP_ID";
    case PitfallCode::DUP_LABEL: return "DUP_LABEL";
    case PitfallCode::BAD_NAMING: return "BAD_NAMING";
    case PitfallCode::MISSING_ANNOTATION: return "MISSING_ANNOTATION";
    case PitfallCode::POSSIBLE_EQUIVALENCE: return "POSSIBLE_EQUIVALENCE";
    case PitfallCode::PROFILE_ROOT_MISMATCH: return "PROFILE_ROOT_MISMATCH";
    }
    return "?";
}

std::string to_string(Severity severity) {
    switch (severity) {
    case Severity::Error: return "Error";
    case Severity::Warning: return "Warning";
    case Severity::Suggestion: return "Suggestion";
    }
    return "?";
}

Pitfall make_pitfall(PitfallCode code, std::vector<ConceptId> subjects, std::string message) {
    return Pitfall{code, severity_of(code), std::move(subjects), std::move(message)};
}

namespace {

void sort_pitfalls(std::vector<Pitfall>& pitfalls) {
    std::sort(pitfalls.begin(), pitfalls.end(), [](const Pitfall& a, const Pitfall& b) {
        if (a.code != b.code) return a.code < b.code;
        if (a.subjects != b.subjects) return a.subjects < b.subjects;
        return a.message < b.message;
    });
}

std::string join_ids(const std::vector<ConceptId>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ", ";
        out += id.value;
    }
    return out;
}

// Strongly connected components of the parent relation, iterative Tarjan.
// Every SCC of size >= 2 (or with a self-loop) is a parent cycle.
std::vector<std::vector<ConceptId>> parent_cycles(const Ontology& o) {
    std::vector<ConceptId> ids;
    ids.reserve(o.concepts.size());
    std::map<ConceptId, int> index_of;
    for (const auto& [id, c] : o.concepts) {
        index_of.emplace(id, static_cast<int>(ids.size()));
        ids.push_back(id);
    }
    int n = static_cast<int>(ids.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [id, c] : o.concepts) {
        int u = index_of[id];
        for (const auto& p : c.parent_ids) {
            auto it = index_of.find(p);
            if (it != index_of.end()) adj[u].push_back(it->second);
        }
    }

    std::vector<int> idx(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<ConceptId>> cycles;
    int counter = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    for (int start = 0; start < n; ++start) {
        if (idx[start] != -1) continue;
        std::vector<Frame> frames{{start, 0}};
        idx[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack[start] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                int w = adj[f.v][f.edge++];
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == idx[v]) {
                    std::vector<int> component;
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        component.push_back(w);
                        if (w == v) break;
                    }
                    bool self_loop = false;
                    if (component.size() == 1) {
                        int u = component[0];
                        self_loop = std::find(adj[u].begin(), adj[u].end(), u) != adj[u].end();
                    }
                    if (component.size() >= 2 || self_loop) {
                        std::vector<ConceptId> members;
                        members.reserve(component.size());
                        for (int u : component) members.push_back(ids[u]);
                        std::sort(members.begin(), members.end());
                        cycles.push_back(std::move(members));
                    }
                }
            }
        }
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

} // namespace

std::vector<Pitfall> validate_ontology(const Ontology& o, ValidationProfile profile) {
    std::vector<Pitfall> pitfalls;

    for (const auto& cycle : parent_cycles(o))
        pitfalls.push_back(make_pitfall(PitfallCode::CYCLE, cycle,
                                        "parent relation contains a cycle: " + join_ids(cycle)));

    for (const auto& [id, c] : o.concepts)
        for (const auto& p : c.parent_ids)
            if (!o.contains(p))
                pitfalls.push_back(make_pitfall(PitfallCode::DANGLING_PARENT, {id},
                                                id.value + " lists unknown parent " + p.value));

    // Duplicate labels after normalization (token-list equality).
    std::map<std::string, std::vector<ConceptId>> by_key;
    for (const auto& [id, c] : o.concepts) by_key[normalized_key(c.label)].push_back(id);
    for (const auto& [key, group] : by_key)
        if (group.size() >= 2 && !key.empty())
            pitfalls.push_back(make_pitfall(PitfallCode::DUP_LABEL, group,
                                            "labels normalize identically ('" + key + "')"));

    for (const auto& [id, c] : o.concepts)
        if (!is_upper_camel_case(c.label))
            pitfalls.push_back(make_pitfall(PitfallCode::BAD_NAMING, {id},
                                            "label '" + c.label + "' is not UpperCamelCase"));

    for (const auto& [id, c] : o.concepts) {
        std::vector<std::string> missing;
        if (!c.umls_cui) missing.push_back("umls_cui");
        if (!c.definition) missing.push_back("definition");
        if (!missing.empty()) {
            std::string fields;
            for (const auto& f : missing) {
                if (!fields.empty()) fields += ", ";
                fields += f;
            }
            pitfalls.push_back(make_pitfall(PitfallCode::MISSING_ANNOTATION, {id},
                                            id.value + " is missing " + fields));
        }
    }

    // Possible equivalence: shared CUI, or identical normalized token sets.
    std::map<std::string, std::vector<ConceptId>> by_cui;
    for (const auto& [id, c] : o.concepts)
        if (c.umls_cui) by_cui[*c.umls_cui].push_back(id);
    for (const auto& [cui, group] : by_cui)
        if (group.size() >= 2)
            pitfalls.push_back(make_pitfall(PitfallCode::POSSIBLE_EQUIVALENCE, group,
                                            "concepts share UMLS CUI " + cui));
    std::map<std::set<std::string>, std::vector<ConceptId>> by_token_set;
    for (const auto& [id, c] : o.concepts) {
        auto tokens = normalize_term(c.label);
        std::set<std::string> token_set(tokens.begin(), tokens.end());
        if (!token_set.empty()) by_token_set[std::move(token_set)].push_back(id);
    }
    for (const auto& [tokens, group] : by_token_set)
        if (group.size() >= 2)
            pitfalls.push_back(make_pitfall(PitfallCode::POSSIBLE_EQUIVALENCE, group,
                                            "labels share the same token set"));

    if (profile == ValidationProfile::MeSO) {
        std::vector<ConceptId> roots = o.root_ids();
        std::set<std::string> root_labels;
        for (const auto& r : roots) root_labels.insert(o.get(r).label);
        std::set<std::string> expected(meso_root_labels().begin(), meso_root_labels().end());
        if (roots.size() != expected.size() || root_labels != expected) {
            std::string msg = "expected the 8 MeSO top-level classes; found " +
                              std::to_string(roots.size()) + " root(s)";
            std::vector<std::string> missing, extra;
            for (const auto& e : expected)
                if (!root_labels.count(e)) missing.push_back(e);
            for (const auto& r : root_labels)
                if (!expected.count(r)) extra.push_back(r);
            if (!missing.empty()) {
                msg += "; missing:";
                for (const auto& m : missing) msg += " " + m;
            }
            if (!extra.empty()) {
                msg += "; unexpected:";
                for (const auto& e : extra) msg += " " + e;
            }
            pitfalls.push_back(make_pitfall(PitfallCode::PROFILE_ROOT_MISMATCH, roots, msg));
        }
    }

    sort_pitfalls(pitfalls);
    return pitfalls;
}

std::set<ConceptId> ancestors(const Ontology& o, const ConceptId& id) {
    if (!o.contains(id)) throw std::invalid_argument("unknown concept id: " + id.value);
    std::set<ConceptId> seen;
    std::vector<ConceptId> frontier{id};
    while (!frontier.empty()) {
        ConceptId current = frontier.back();
        frontier.pop_back();
        auto it = o.concepts.find(current);
        if (it == o.concepts.end()) continue;
        for (const auto& p : it->second.parent_ids)
            if (seen.insert(p).second) frontier.push_back(p);
    }
    seen.erase(id);
    return seen;
}

std::map<ConceptId, int> concept_depths(const Ontology& o) {
    // Kahn peeling over the parent relation; longest path from a root.
    std::map<ConceptId, int> depth;
    std::map<ConceptId, int> unresolved;
    std::map<ConceptId, std::vector<ConceptId>> children;
    std::vector<ConceptId> ready;
    for (const auto& [id, c] : o.concepts) {
        int count = 0;
        for (const auto& p : c.parent_ids)
            if (o.contains(p)) {
                ++count;
                children[p].push_back(id);
            }
        unresolved[id] = count;
        depth[id] = 0;
        if (count == 0) ready.push_back(id);
    }
    while (!ready.empty()) {
        ConceptId current = ready.back();
        ready.pop_back();
        auto it = children.find(current);
        if (it == children.end()) continue;
        for (const auto& child : it->second) {
            depth[child] = std::max(depth[child], depth[current] + 1);
            if (--unresolved[child] == 0) ready.push_back(child);
        }
    }
    return depth;
}

const std::vector<std::string>& meso_root_labels() {
    static const std::vector<std::string> labels = {
        "Stressor",           "StressMediator",      "StressAppraisal",
        "StressResponse",     "StressIntervention",  "StressCopingStrategy",
        "StressCopingOutcome", "StressCharacteristics",
    };
    return labels;
}

namespace {

std::optional<std::string> opt_string_field(const ordered_json& obj, const char* key,
                                            const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_string())
        throw OntologyLoadError("field '" + std::string(key) + "' in " + where +
                                " must be a string or null");
    return v.get<std::string>();
}

bool valid_cui(const std::string& v) {
    if (v.size() != 8 || v[0] != 'C') return false;
    for (size_t i = 1; i < 8; ++i)
        if (v[i] < '0' || v[i] > '9') return false;
    return true;
}

ordered_json opt_to_json(const std::optional<std::string>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

Ontology parse_ontology_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw OntologyLoadError(std::string("malformed ontology document: ") + e.what());
    }
    if (!doc.is_object()) throw OntologyLoadError("ontology document must be a JSON object");
    static const std::set<std::string> top_keys = {"name", "version", "concepts"};
    for (const auto& [key, value] : doc.items())
        if (!top_keys.count(key))
            throw OntologyLoadError("unknown top-level field '" + key + "'");
    for (const auto& key : top_keys)
        if (!doc.contains(key))
            throw OntologyLoadError("missing top-level field '" + key + "'");
    if (!doc["name"].is_string() || !doc["version"].is_string())
        throw OntologyLoadError("'name' and 'version' must be strings");
    if (!doc["concepts"].is_array()) throw OntologyLoadError("'concepts' must be an array");

    static const std::set<std::string> concept_keys = {
        "id",       "label",    "parent_ids",          "synonyms",
        "definition", "umls_cui", "umls_preferred_name", "umls_semantic_type",
        "translation_ko", "source_language"};

    Ontology o;
    o.name = doc["name"].get<std::string>();
    o.version = doc["version"].get<std::string>();

    std::vector<Pitfall> dup_ids;
    for (const auto& entry : doc["concepts"]) {
        if (!entry.is_object()) throw OntologyLoadError("concept entries must be objects");
        for (const auto& [key, value] : entry.items())
            if (!concept_keys.count(key))
                throw OntologyLoadError("unknown concept field '" + key + "'");
        if (!entry.contains("id") || !entry["id"].is_string())
            throw OntologyLoadError("concept entry is missing a string 'id'");
        std::string raw_id = entry["id"].get<std::string>();
        ConceptId id;
        try {
            id = ConceptId::parse(raw_id);
        } catch (const std::invalid_argument& e) {
            throw OntologyLoadError(e.what());
        }
        const std::string where = "concept " + id.value;
        if (!entry.contains("label") || !entry["label"].is_string())
            throw OntologyLoadError(where + " is missing a string 'label'");

        Concept c;
        c.id = id;
        c.label = entry["label"].get<std::string>();
        if (c.label.empty()) throw OntologyLoadError(where + " has an empty label");
        if (entry.contains("parent_ids")) {
            if (!entry["parent_ids"].is_array())
                throw OntologyLoadError("'parent_ids' in " + where + " must be an array");
            for (const auto& p : entry["parent_ids"]) {
                if (!p.is_string())
                    throw OntologyLoadError("'parent_ids' in " + where + " must hold strings");
                try {
                    c.parent_ids.push_back(ConceptId::parse(p.get<std::string>()));
                } catch (const std::invalid_argument& e) {
                    throw OntologyLoadError(e.what());
                }
            }
        }
        if (entry.contains("synonyms")) {
            if (!entry["synonyms"].is_array())
                throw OntologyLoadError("'synonyms' in " + where + " must be an array");
            for (const auto& s : entry["synonyms"]) {
                if (!s.is_string())
                    throw OntologyLoadError("'synonyms' in " + where + " must hold strings");
                c.synonyms.push_back(s.get<std::string>());
            }
        }
        c.definition = opt_string_field(entry, "definition", where);
        c.umls_cui = opt_string_field(entry, "umls_cui", where);
        if (c.umls_cui && !valid_cui(*c.umls_cui))
            throw OntologyLoadError("malformed UMLS CUI '" + *c.umls_cui + "' in " + where);
        c.umls_preferred_name = opt_string_field(entry, "umls_preferred_name", where);
        c.umls_semantic_type = opt_string_field(entry, "umls_semantic_type", where);
        c.translation_ko = opt_string_field(entry, "translation_ko", where);
        c.source_language = opt_string_field(entry, "source_language", where);

        if (o.contains(id)) {
            dup_ids.push_back(make_pitfall(PitfallCode::DUP_ID, {id},
                                           "concept id " + id.value + " appears more than once"));
            continue;
        }
        o.concepts.emplace(id, std::move(c));
    }

    std::vector<Pitfall> errors = std::move(dup_ids);
    for (const auto& p : validate_ontology(o, ValidationProfile::Generic))
        if (p.severity == Severity::Error) errors.push_back(p);
    if (!errors.empty()) {
        sort_pitfalls(errors);
        std::string msg = "ontology refused, " + std::to_string(errors.size()) +
                          " structural error(s): ";
        for (size_t i = 0; i < errors.size(); ++i) {
            if (i) msg += "; ";
            msg += to_string(errors[i].code) + " " + errors[i].message;
        }
        throw OntologyLoadError(msg, errors);
    }
    return o;
}

Ontology load_ontology(const std::filesystem::path& path) {
    return parse_ontology_json(read_file(path));
}

std::string ontology_to_json(const Ontology& o) {
    ordered_json doc;
    doc["name"] = o.name;
    doc["version"] = o.version;
    doc["concepts"] = ordered_json::array();
    for (const auto& [id, c] : o.concepts) {
        ordered_json entry;
        entry["id"] = id.value;
        entry["label"] = c.label;
        entry["parent_ids"] = ordered_json::array();
        for (const auto& p : c.parent_ids) entry["parent_ids"].push_back(p.value);
        entry["synonyms"] = c.synonyms;
        entry["definition"] = opt_to_json(c.definition);
        entry["umls_cui"] = opt_to_json(c.umls_cui);
        entry["umls_preferred_name"] = opt_to_json(c.umls_preferred_name);
        entry["umls_semantic_type"] = opt_to_json(c.umls_semantic_type);
        entry["translation_ko"] = opt_to_json(c.translation_ko);
        entry["source_language"] = opt_to_json(c.source_language);
        doc["concepts"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

void save_ontology(const Ontology& o, const std::filesystem::path& path) {
    atomic_write_file(path, ontology_to_json(o));
}

} // namespace meso
