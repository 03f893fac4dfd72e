#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace longdoc {

struct EmbeddingVector {
    std::vector<double> values;

    EmbeddingVector() = default;
    explicit EmbeddingVector(std::vector<double> v) : values(std::move(v)) {}

    std::size_t dim() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    bool operator==(const EmbeddingVector&) const = default;
};

double dot(const EmbeddingVector& a, const EmbeddingVector& b);
double norm(const EmbeddingVector& v);

// Unit basis vector e_0.
EmbeddingVector basis0(std::size_t dim);

struct ProviderInfo {
    std::string name;
    std::size_t dim = 0;
    bool deterministic = false;
};

// Sentence encoder contract. Implementations must be safe to call from
// several threads at once.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual ProviderInfo info() const = 0;
    // One vector per input, same order, each of dim info().dim.
    virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const = 0;
};

// Signed feature hashing over the same tokens the segmenter counts. The
// accumulated buckets are L2-normalized; text without tokens maps to e_0.
EmbeddingVector hash_embed(std::string_view text, std::size_t dim, std::uint64_t seed);

class ReferenceEmbedder final : public EmbeddingProvider {
public:
    // Throws ContractError when dim < 8.
    explicit ReferenceEmbedder(std::size_t dim = 256, std::uint64_t seed = 0);

    ProviderInfo info() const override;
    std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override;

private:
    std::size_t dim_;
    std::uint64_t seed_;
};

struct RemoteConfig {
    std::string url;  // http://host:port
    std::chrono::milliseconds timeout{30'000};
    // 0 = accept whatever /info reports.
    std::size_t expected_dim = 0;
    // Texts per POST /embed request.
    std::size_t max_batch = 32;
};

// Client for POST /embed and GET /info. Failures raise RemoteError with
// Transport, ResponseShape or DimMismatch.
class RemoteEmbedder final : public EmbeddingProvider {
public:
    explicit RemoteEmbedder(RemoteConfig config);

    // Queries GET /info once; later calls reuse the answer.
    ProviderInfo info() const override;
    std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override;

    const RemoteConfig& config() const { return config_; }

private:
    RemoteConfig config_;
    std::string host_;
    int port_ = 80;
    mutable std::mutex info_mutex_;
    mutable std::optional<ProviderInfo> info_;
};

// Mean of the vectors, L2-normalized; a zero mean maps to e_0.
EmbeddingVector doc_centroid(std::span<const EmbeddingVector> vectors);

}  // namespace longdoc
