#pragma once

#include "meso/embedding.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace meso {

class ClientError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CompletionClient {
  public:
    virtual ~CompletionClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
    virtual std::string model_id() const = 0;
};

// Deterministic canned-response client. The response to a prompt is the
// content of "<fixture_dir>/<fnv1a64 hex of prompt>.txt"; a missing file is
// a transport error.
class MockCompletionClient : public CompletionClient {
  public:
    explicit MockCompletionClient(std::filesystem::path fixture_dir)
        : fixture_dir_(std::move(fixture_dir)) {}

    std::string complete(const std::string& prompt) override;
    std::string model_id() const override { return "mock"; }

    static std::string response_filename(const std::string& prompt);

  private:
    std::filesystem::path fixture_dir_;
};

struct EndpointConfig {
    std::string url; // full URL, e.g. "http://localhost:8089/v1/complete"
    std::string model;
    std::string auth_env; // NAME of the env var holding the token; may be empty
    int timeout_seconds = 30;
};

// POSTs {"model":..., "prompt":...} to the configured URL and expects
// {"completion": "..."} back. Sends "Authorization: Bearer <token>" when the
// configured environment variable is set.
class HttpCompletionClient : public CompletionClient {
  public:
    explicit HttpCompletionClient(EndpointConfig config) : config_(std::move(config)) {}

    std::string complete(const std::string& prompt) override;
    std::string model_id() const override { return config_.model; }

  private:
    EndpointConfig config_;
};

// POSTs {"model":..., "input":...} and expects {"embedding": [...]}.
class HttpEmbedder : public Embedder {
  public:
    explicit HttpEmbedder(EndpointConfig config) : config_(std::move(config)) {}

    EmbeddingVector embed(const std::string& text) override;
    std::string embedder_id() const override { return config_.model; }

  private:
    EndpointConfig config_;
};

} // namespace meso
