#include "meso/embedding.hpp"

#include "meso/hash.hpp"
#include "meso/text.hpp"

#include <cmath>

namespace meso {

EmbeddingVector HashEmbedder::embed(const std::string& text) {
    EmbeddingVector v(dimension, 0.0);
    for (const auto& token : tokenize_words(text)) {
        std::uint64_t state = fnv1a64(token);
        for (std::size_t i = 0; i < dimension; i += 64) {
            std::uint64_t bits = splitmix64(state);
            for (std::size_t b = 0; b < 64; ++b)
                v[i + b] += (bits >> b) & 1 ? 1.0 : -1.0;
        }
    }
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (norm_sq > 0.0) {
        double norm = std::sqrt(norm_sq);
        for (double& x : v) x /= norm;
    }
    return v;
}

} // namespace meso
