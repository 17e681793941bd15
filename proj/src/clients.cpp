#include "meso/clients.hpp"

#include "meso/hash.hpp"
#include "meso/io.hpp"

#include <cstdlib>
#include <httplib.h>
#include <json.hpp>

namespace meso {

std::string MockCompletionClient::response_filename(const std::string& prompt) {
    return fnv1a64_hex(prompt) + ".txt";
}

std::string MockCompletionClient::complete(const std::string& prompt) {
    auto path = fixture_dir_ / response_filename(prompt);
    if (!std::filesystem::exists(path))
        throw ClientError("no canned response for prompt (expected " + path.string() + ")");
    return read_file(path);
}

namespace {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ClientError("malformed endpoint URL: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

httplib::Headers auth_headers(const EndpointConfig& config) {
    httplib::Headers headers;
    if (!config.auth_env.empty()) {
        const char* token = std::getenv(config.auth_env.c_str());
        if (token && *token) headers.emplace("Authorization", std::string("Bearer ") + token);
    }
    return headers;
}

nlohmann::json post_json(const EndpointConfig& config, const nlohmann::json& body) {
    SplitUrl url = split_url(config.url);
    httplib::Client client(url.base);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    auto res = client.Post(url.path, auth_headers(config), body.dump(), "application/json");
    if (!res) throw ClientError("request to " + config.url + " failed: " + to_string(res.error()));
    if (res->status != 200)
        throw ClientError("request to " + config.url + " returned status " +
                          std::to_string(res->status));
    try {
        return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ClientError(std::string("endpoint returned malformed JSON: ") + e.what());
    }
}

} // namespace

std::string HttpCompletionClient::complete(const std::string& prompt) {
    nlohmann::json reply =
        post_json(config_, nlohmann::json{{"model", config_.model}, {"prompt", prompt}});
    if (!reply.contains("completion") || !reply["completion"].is_string())
        throw ClientError("completion endpoint reply lacks a string 'completion' field");
    return reply["completion"].get<std::string>();
}

EmbeddingVector HttpEmbedder::embed(const std::string& text) {
    nlohmann::json reply =
        post_json(config_, nlohmann::json{{"model", config_.model}, {"input", text}});
    if (!reply.contains("embedding") || !reply["embedding"].is_array())
        throw ClientError("embedding endpoint reply lacks an 'embedding' array");
    EmbeddingVector v;
    for (const auto& x : reply["embedding"]) {
        if (!x.is_number()) throw ClientError("embedding entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

} // namespace meso
