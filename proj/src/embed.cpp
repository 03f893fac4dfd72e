#include "longdoc/embed.hpp"

#include <cmath>

#include "longdoc/error.hpp"
#include "longdoc/rng.hpp"
#include "longdoc/text.hpp"

namespace longdoc {

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const EmbeddingVector& v) { return std::sqrt(dot(v, v)); }

EmbeddingVector basis0(std::size_t dim) {
    EmbeddingVector e(std::vector<double>(dim, 0.0));
    if (dim) e[0] = 1.0;
    return e;
}

namespace {

EmbeddingVector normalized_or_e0(EmbeddingVector v) {
    const double n = norm(v);
    if (!(n > 0) || !std::isfinite(n)) return basis0(v.dim());
    for (auto& x : v.values) x /= n;
    return v;
}

}  // namespace

EmbeddingVector hash_embed(std::string_view text, std::size_t dim, std::uint64_t seed) {
    if (dim < 8) throw ContractError("hash_embed requires dim >= 8");
    EmbeddingVector v(std::vector<double>(dim, 0.0));
    const std::uint64_t salt = splitmix64(seed);
    for (const auto& tok : text::tokens(text)) {
        const std::uint64_t h = splitmix64(fnv1a64(tok) ^ salt);
        v[h % dim] += (h >> 63) ? -1.0 : 1.0;
    }
    return normalized_or_e0(std::move(v));
}

ReferenceEmbedder::ReferenceEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
    if (dim < 8) throw ContractError("reference embedder requires dim >= 8");
}

ProviderInfo ReferenceEmbedder::info() const { return {"reference-hash", dim_, true}; }

std::vector<EmbeddingVector> ReferenceEmbedder::embed_batch(std::span<const std::string> texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(hash_embed(t, dim_, seed_));
    return out;
}

EmbeddingVector doc_centroid(std::span<const EmbeddingVector> vectors) {
    if (vectors.empty()) throw ContractError("doc_centroid of an empty set");
    const std::size_t dim = vectors.front().dim();
    EmbeddingVector mean(std::vector<double>(dim, 0.0));
    for (const auto& v : vectors) {
        if (v.dim() != dim) throw ContractError("doc_centroid: mixed dimensions");
        for (std::size_t i = 0; i < dim; ++i) mean[i] += v[i];
    }
    for (auto& x : mean.values) x /= static_cast<double>(vectors.size());
    return normalized_or_e0(std::move(mean));
}

}  // namespace longdoc
