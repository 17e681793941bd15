#include "meso/config.hpp"
#include "meso/evaluation.hpp"
#include "meso/extraction.hpp"
#include "meso/io.hpp"
#include "meso/keywords.hpp"
#include "meso/matcher.hpp"
#include "meso/ontology.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <json.hpp>

namespace {

using namespace meso;
using ordered_json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", score);
    return buf;
}

void print_pitfalls(const std::vector<Pitfall>& pitfalls, std::ostream& out) {
    for (const auto& p : pitfalls) {
        out << "[" << to_string(p.severity) << "] " << to_string(p.code) << " (";
        for (size_t i = 0; i < p.subjects.size(); ++i) {
            if (i) out << ", ";
            out << p.subjects[i].value;
        }
        out << "): " << p.message << "\n";
    }
    out << pitfalls.size() << " pitfall" << (pitfalls.size() == 1 ? "" : "s") << "\n";
}

int run_validate(const std::string& path, const std::string& profile_name) {
    ValidationProfile profile =
        profile_name == "meso" ? ValidationProfile::MeSO : ValidationProfile::Generic;
    Ontology o;
    try {
        o = load_ontology(path);
    } catch (const OntologyLoadError& e) {
        if (!e.pitfalls().empty()) {
            print_pitfalls(e.pitfalls(), std::cout);
            std::cerr << "error: " << path << " refused\n";
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return exit_failure;
    }
    print_pitfalls(validate_ontology(o, profile), std::cout);
    return exit_ok;
}

void print_match(const MatchResult& r, const Ontology& o, std::ostream& out) {
    out << "term: " << r.term << "\n";
    out << "category: " << to_string(r.category) << "\n";
    out << "score: " << format_score(r.score) << "\n";
    out << "matched:";
    for (const auto& id : r.matched_ids) out << " " << id.value << " " << o.get(id).label;
    out << "\n";
}

void print_distribution(const CategoryDistribution& dist, std::ostream& out) {
    out << "-- distribution --\n";
    for (MatchCategory c : all_match_categories) {
        char line[64];
        std::snprintf(line, sizeof(line), "%-9s %4d  %s%%", to_string(c).c_str(), dist.count(c),
                      dist.percent_text(c).c_str());
        out << line << "\n";
    }
    out << "total     " << dist.total << "\n";
}

int run_map(const std::string& ontology_path, const std::string& term,
            const std::string& keywords_path) {
    Ontology o = load_ontology(ontology_path);
    if (!term.empty()) {
        print_match(map_term(o, term), o, std::cout);
        return exit_ok;
    }
    std::vector<std::string> terms;
    for (const auto& line : read_lines(keywords_path))
        if (!line.empty()) terms.push_back(line);
    KeywordMapping mapping = map_keywords(o, terms);
    for (const auto& r : mapping.results) {
        std::cout << r.term << "\t" << to_string(r.category) << "\t" << format_score(r.score)
                  << "\t";
        for (size_t i = 0; i < r.matched_ids.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << r.matched_ids[i].value;
        }
        std::cout << "\n";
    }
    print_distribution(mapping.distribution, std::cout);
    return exit_ok;
}

int run_extract(const Config& config, const std::string& ontology_path,
                const std::string& input_path, const std::string& client_kind,
                const std::string& fixtures_dir, const std::string& out_path) {
    Ontology o = load_ontology(ontology_path);
    std::vector<Post> posts = posts_from_jsonl_file(input_path);
    std::unique_ptr<CompletionClient> client;
    if (client_kind == "mock") {
        if (fixtures_dir.empty())
            throw CLI::ValidationError("extract", "--fixtures is required with --client mock");
        client = std::make_unique<MockCompletionClient>(fixtures_dir);
    } else {
        if (config.llm.url.empty())
            throw CLI::ValidationError(
                "extract", "no LLM endpoint configured (set llm_endpoint or --llm-endpoint)");
        client = std::make_unique<HttpCompletionClient>(config.llm);
    }
    std::vector<ExtractionRecord> records =
        extract_batch(*client, o, posts, config.parallelism, config.retries);
    atomic_write_file(out_path, records_to_jsonl(records));
    size_t failed = 0;
    for (const auto& r : records)
        if (r.diagnostics.error) ++failed;
    std::cerr << records.size() << " record(s) written to " << out_path;
    if (failed) std::cerr << " (" << failed << " failed post(s), see diagnostics)";
    std::cerr << "\n";
    return exit_ok;
}

ordered_json coverage_to_json(const CoverageReport& report, int k, const std::set<int>& n_set) {
    ordered_json doc;
    doc["embedder_id"] = report.embedder_id;
    doc["k"] = k;
    doc["ngrams"] = std::vector<int>(n_set.begin(), n_set.end());
    doc["total_keywords"] = report.total_keywords;
    doc["distribution"] = ordered_json::object();
    for (MatchCategory c : all_match_categories) {
        ordered_json entry;
        entry["count"] = report.distribution.count(c);
        entry["percent"] = report.distribution.percent_tenths(c) / 10.0;
        doc["distribution"][to_string(c)] = std::move(entry);
    }
    doc["keywords"] = ordered_json::array();
    for (const auto& r : report.results) {
        ordered_json entry;
        entry["term"] = r.term;
        entry["category"] = to_string(r.category);
        entry["score"] = r.score;
        entry["matched_ids"] = ordered_json::array();
        for (const auto& id : r.matched_ids) entry["matched_ids"].push_back(id.value);
        doc["keywords"].push_back(std::move(entry));
    }
    return doc;
}

int run_coverage(const Config& config, const std::string& ontology_path,
                 const std::string& docs_dir, const std::string& embedder_kind, int k,
                 const std::string& ngrams_spec, const std::string& stopwords_path,
                 const std::string& out_path) {
    Ontology o = load_ontology(ontology_path);

    std::set<int> n_set;
    std::string tok;
    for (char c : ngrams_spec + ",") {
        if (c == ',') {
            if (!tok.empty()) {
                int n = std::stoi(tok);
                if (n < 1 || n > 3)
                    throw CLI::ValidationError("coverage", "--ngrams entries must be 1, 2, or 3");
                n_set.insert(n);
                tok.clear();
            }
        } else {
            tok.push_back(c);
        }
    }
    if (n_set.empty())
        throw CLI::ValidationError("coverage", "--ngrams must name at least one level");

    std::set<std::string> stopwords;
    if (stopwords_path.empty()) {
        stopwords = default_stopwords();
    } else {
        for (const auto& line : read_lines(stopwords_path))
            if (!line.empty()) stopwords.insert(line);
    }

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(docs_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<std::string> docs;
    for (const auto& f : files) docs.push_back(read_file(f));

    std::unique_ptr<Embedder> embedder;
    if (embedder_kind == "mock") {
        embedder = std::make_unique<HashEmbedder>();
    } else {
        if (config.embedding.url.empty())
            throw CLI::ValidationError(
                "coverage",
                "no embedding endpoint configured (set embed_endpoint or --embed-endpoint)");
        embedder = std::make_unique<HttpEmbedder>(config.embedding);
    }
    CoverageReport report =
        coverage_report(o, docs, *embedder, k, n_set, stopwords, config.parallelism);
    atomic_write_file(out_path, coverage_to_json(report, k, n_set).dump(2) + "\n");
    std::cerr << report.total_keywords << " keyword(s) mapped, report written to " << out_path
              << "\n";
    return exit_ok;
}

int run_review_init(const std::string& records_path, const std::string& out_path) {
    auto records = records_from_jsonl_file(records_path);
    atomic_write_file(out_path, review_sheet_to_csv(init_review_sheet(records)));
    return exit_ok;
}

int run_evaluate(const std::string& sheet_path, const std::string& out_path) {
    MetricsReport report = score_reviews(review_sheet_from_file(sheet_path));
    atomic_write_file(out_path, report.to_json());
    return exit_ok;
}

int run_kappa(const std::string& a_path, const std::string& b_path,
              const std::string& weights_name) {
    ReviewSheet a = review_sheet_from_file(a_path);
    ReviewSheet b = review_sheet_from_file(b_path);
    KappaWeights weights =
        weights_name == "quadratic" ? KappaWeights::Quadratic : KappaWeights::Linear;
    try {
        double kappa = review_sheet_kappa(a, b, weights);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", kappa);
        std::cout << "kappa = " << buf << "\n";
    } catch (const KappaDegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

int run_unmapped(const std::string& records_path, const std::string& out_path) {
    UnmappedReport report = unmapped_report(records_from_jsonl_file(records_path));
    atomic_write_file(out_path, report.to_json());
    std::cerr << report.total_unmapped << " unmapped item(s), " << report.duration_excluded
              << " duration item(s) excluded, " << report.unique_total()
              << " unique concept(s)\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MeSO toolkit: stress-ontology validation, term mapping, LLM extraction, "
                 "keyword coverage, and review scoring"};
    app.require_subcommand(0, 1);

    std::string config_path;
    bool show_config = false;
    app.add_option("--config", config_path, "Config file (flat key = \"value\" lines)");
    app.add_flag("--show-config", show_config, "Print the effective configuration and exit");

    auto* validate = app.add_subcommand("validate", "Scan an ontology file for pitfalls");
    std::string v_file, v_profile = "generic";
    validate->add_option("file", v_file, "Ontology JSON file")->required();
    validate->add_option("--profile", v_profile, "Validation profile")
        ->check(CLI::IsMember({"generic", "meso"}));

    auto* map_cmd = app.add_subcommand("map", "Map free-text terms to ontology concepts");
    std::string m_ontology, m_term, m_keywords;
    map_cmd->add_option("--ontology", m_ontology, "Ontology JSON file")->required();
    auto* m_term_opt = map_cmd->add_option("--term", m_term, "Single term to map");
    auto* m_kw_opt = map_cmd->add_option("--keywords", m_keywords, "File with one term per line");
    m_term_opt->excludes(m_kw_opt);

    auto* extract = app.add_subcommand("extract", "Run the LLM extraction pipeline over posts");
    std::string e_ontology, e_input, e_client = "mock", e_fixtures, e_out;
    unsigned e_parallelism = 0;
    int e_retries = -1;
    extract->add_option("--ontology", e_ontology, "Ontology JSON file")->required();
    extract->add_option("--input", e_input, "Posts JSONL file")->required();
    extract->add_option("--client", e_client, "Completion client")
        ->check(CLI::IsMember({"mock", "http"}));
    extract->add_option("--fixtures", e_fixtures, "Canned-response dir for the mock client");
    extract->add_option("--out", e_out, "Records JSONL output")->required();
    auto* e_par_opt = extract->add_option("--parallelism", e_parallelism, "Worker threads")
                          ->check(CLI::PositiveNumber);
    auto* e_retry_opt = extract->add_option("--retries", e_retries, "Retries on malformed output")
                            ->check(CLI::NonNegativeNumber);
    std::string e_llm_endpoint, e_llm_model, e_llm_auth_env;
    int e_llm_timeout = 0;
    auto* e_url_opt =
        extract->add_option("--llm-endpoint", e_llm_endpoint, "Completion endpoint URL");
    auto* e_model_opt = extract->add_option("--llm-model", e_llm_model, "Model name");
    auto* e_auth_opt =
        extract->add_option("--llm-auth-env", e_llm_auth_env, "Env var holding the auth token");
    auto* e_timeout_opt =
        extract->add_option("--llm-timeout", e_llm_timeout, "Request timeout in seconds");

    auto* coverage = app.add_subcommand("coverage", "Keyword coverage report over documents");
    std::string c_ontology, c_docs, c_embedder = "mock", c_ngrams = "1,2,3", c_stopwords, c_out;
    int c_k = 10;
    unsigned c_parallelism = 0;
    coverage->add_option("--ontology", c_ontology, "Ontology JSON file")->required();
    coverage->add_option("--docs", c_docs, "Directory of UTF-8 text documents")->required();
    coverage->add_option("--embedder", c_embedder, "Embedder")
        ->check(CLI::IsMember({"mock", "http"}));
    coverage->add_option("--k", c_k, "Keywords per n-gram level (default 10)");
    coverage->add_option("--ngrams", c_ngrams, "Comma-separated n-gram levels (default 1,2,3)");
    coverage->add_option("--stopwords", c_stopwords, "Stopword file (one word per line)");
    coverage->add_option("--out", c_out, "Coverage JSON output")->required();
    auto* c_par_opt = coverage->add_option("--parallelism", c_parallelism, "Worker threads")
                          ->check(CLI::PositiveNumber);
    std::string c_embed_endpoint, c_embed_model, c_embed_auth_env;
    int c_embed_timeout = 0;
    auto* c_url_opt =
        coverage->add_option("--embed-endpoint", c_embed_endpoint, "Embedding endpoint URL");
    auto* c_model_opt = coverage->add_option("--embed-model", c_embed_model, "Embedding model");
    auto* c_auth_opt = coverage->add_option("--embed-auth-env", c_embed_auth_env,
                                            "Env var holding the auth token");
    auto* c_timeout_opt =
        coverage->add_option("--embed-timeout", c_embed_timeout, "Request timeout in seconds");

    auto* review = app.add_subcommand("review", "Review-sheet workflows");
    review->require_subcommand(1);
    auto* review_init = review->add_subcommand("init", "Generate an unlabeled review sheet");
    std::string r_records, r_out;
    review_init->add_option("--records", r_records, "Records JSONL file")->required();
    review_init->add_option("--out", r_out, "Review sheet CSV output")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Score an adjudicated review sheet");
    std::string ev_sheet, ev_out;
    evaluate->add_option("--sheet", ev_sheet, "Completed review sheet CSV")->required();
    evaluate->add_option("--out", ev_out, "Metrics JSON output")->required();

    auto* kappa = app.add_subcommand("kappa", "Weighted kappa between two review sheets");
    std::string k_a, k_b, k_weights = "linear";
    kappa->add_option("--a", k_a, "First reviewer sheet CSV")->required();
    kappa->add_option("--b", k_b, "Second reviewer sheet CSV")->required();
    kappa->add_option("--weights", k_weights, "Disagreement weights")
        ->check(CLI::IsMember({"linear", "quadratic"}));

    auto* unmapped = app.add_subcommand("unmapped", "Unique unmapped phrases per category");
    std::string u_records, u_out;
    unmapped->add_option("--records", u_records, "Records JSONL file")->required();
    unmapped->add_option("--out", u_out, "Unmapped report JSON output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        Config config;
        if (!config_path.empty())
            config = load_config_file(config_path);
        else if (std::filesystem::exists("meso.toml"))
            config = load_config_file("meso.toml");

        // Flags override the config file.
        if (*e_url_opt) config.llm.url = e_llm_endpoint;
        if (*e_model_opt) config.llm.model = e_llm_model;
        if (*e_auth_opt) config.llm.auth_env = e_llm_auth_env;
        if (*e_timeout_opt) config.llm.timeout_seconds = e_llm_timeout;
        if (*c_url_opt) config.embedding.url = c_embed_endpoint;
        if (*c_model_opt) config.embedding.model = c_embed_model;
        if (*c_auth_opt) config.embedding.auth_env = c_embed_auth_env;
        if (*c_timeout_opt) config.embedding.timeout_seconds = c_embed_timeout;
        if (*e_par_opt) config.parallelism = e_parallelism;
        if (*c_par_opt) config.parallelism = c_parallelism;
        if (*e_retry_opt) config.retries = e_retries;

        if (show_config) {
            std::cout << config.to_string();
            return exit_ok;
        }

        if (*validate) return run_validate(v_file, v_profile);
        if (*map_cmd) {
            if (m_term.empty() && m_keywords.empty()) {
                std::cerr << "error: map needs --term or --keywords\n";
                return exit_usage;
            }
            return run_map(m_ontology, m_term, m_keywords);
        }
        if (*extract)
            return run_extract(config, e_ontology, e_input, e_client, e_fixtures, e_out);
        if (*coverage)
            return run_coverage(config, c_ontology, c_docs, c_embedder, c_k, c_ngrams, c_stopwords,
                                c_out);
        if (*review_init) return run_review_init(r_records, r_out);
        if (*evaluate) return run_evaluate(ev_sheet, ev_out);
        if (*kappa) return run_kappa(k_a, k_b, k_weights);
        if (*unmapped) return run_unmapped(u_records, u_out);

        std::cerr << app.help();
        return exit_usage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
}
