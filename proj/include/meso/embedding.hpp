#pragma once

#include <memory>
#include <string>
#include <vector>

namespace meso {

using EmbeddingVector = std::vector<double>;

class Embedder {
  public:
    virtual ~Embedder() = default;
    virtual EmbeddingVector embed(const std::string& text) = 0;
    virtual std::string embedder_id() const = 0;
};

// Deterministic mock embedder, d = 256. Each word token is hashed (FNV-1a 64)
// and the hash expanded through splitmix64 into a 256-entry +/-1 sign
// pattern; the text vector is the L2-normalized sum of its token patterns.
class HashEmbedder : public Embedder {
  public:
    static constexpr std::size_t dimension = 256;

    EmbeddingVector embed(const std::string& text) override;
    std::string embedder_id() const override { return "hash-256"; }
};

} // namespace meso
