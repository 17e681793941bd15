#include "meso/config.hpp"

#include "meso/io.hpp"

#include <stdexcept>

namespace meso {

namespace {

std::string quote(const std::string& v) { return "\"" + v + "\""; }

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        int out = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "' needs an integer, got '" + v + "'");
    }
}

} // namespace

std::string Config::to_string() const {
    std::string out;
    out += "llm_endpoint = " + quote(llm.url) + "\n";
    out += "llm_model = " + quote(llm.model) + "\n";
    out += "llm_auth_env = " + quote(llm.auth_env) + "\n";
    out += "llm_timeout_seconds = " + quote(std::to_string(llm.timeout_seconds)) + "\n";
    out += "embed_endpoint = " + quote(embedding.url) + "\n";
    out += "embed_model = " + quote(embedding.model) + "\n";
    out += "embed_auth_env = " + quote(embedding.auth_env) + "\n";
    out += "embed_timeout_seconds = " + quote(std::to_string(embedding.timeout_seconds)) + "\n";
    out += "parallelism = " + quote(std::to_string(parallelism)) + "\n";
    out += "retries = " + quote(std::to_string(retries)) + "\n";
    return out;
}

Config parse_config(const std::string& text, const Config& base) {
    Config config = base;
    size_t lineno = 0;
    std::string line;
    auto apply = [&](const std::string& key, const std::string& value) {
        if (key == "llm_endpoint") config.llm.url = value;
        else if (key == "llm_model") config.llm.model = value;
        else if (key == "llm_auth_env") config.llm.auth_env = value;
        else if (key == "llm_timeout_seconds") config.llm.timeout_seconds = parse_int(value, key);
        else if (key == "embed_endpoint") config.embedding.url = value;
        else if (key == "embed_model") config.embedding.model = value;
        else if (key == "embed_auth_env") config.embedding.auth_env = value;
        else if (key == "embed_timeout_seconds")
            config.embedding.timeout_seconds = parse_int(value, key);
        else if (key == "parallelism") {
            int v = parse_int(value, key);
            if (v < 1) throw std::invalid_argument("parallelism must be >= 1");
            config.parallelism = static_cast<unsigned>(v);
        } else if (key == "retries") {
            int v = parse_int(value, key);
            if (v < 0) throw std::invalid_argument("retries must be >= 0");
            config.retries = v;
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    };
    auto handle_line = [&](const std::string& raw) {
        ++lineno;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') return;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not of the form key = \"value\"");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (value.size() < 2 || value.front() != '"' || value.back() != '"')
            throw std::invalid_argument("config value for '" + key +
                                        "' must be double-quoted (line " +
                                        std::to_string(lineno) + ")");
        apply(key, value.substr(1, value.size() - 2));
    };
    for (char c : text) {
        if (c == '\n') {
            handle_line(line);
            line.clear();
        } else {
            line.push_back(c);
        }
    }
    if (!line.empty()) handle_line(line);
    return config;
}

Config load_config_file(const std::filesystem::path& path, const Config& base) {
    return parse_config(read_file(path), base);
}

} // namespace meso
