#pragma once

// End-to-end orchestration: corpus -> segment -> strategy inputs -> head ->
// document decision -> evaluation. Three strategies share one linear head:
//
//   aggregate  every segmented sentence is a training example; documents are
//              decided by reducing their sentence distributions
//   mmr        each document is reduced to its MMR-selected key sentences,
//              concatenated in document order, and classified as one text
//   truncate   baseline: only the first truncate_tokens tokens are classified

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "longdoc/aggregate.hpp"
#include "longdoc/classifier.hpp"
#include "longdoc/corpus.hpp"
#include "longdoc/embed.hpp"
#include "longdoc/metrics.hpp"
#include "longdoc/mmr.hpp"
#include "longdoc/segmenter.hpp"

namespace longdoc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Strategy { Aggregate, Mmr, Truncate };

Strategy strategy_from_name(std::string_view name);
std::string_view strategy_name(Strategy s);

struct ProviderConfig {
    enum class Kind { Reference, Remote };
    Kind kind = Kind::Reference;
    std::size_t dim = 256;  // reference: embedding dim; remote: expected dim, 0 = trust /info
    std::uint64_t seed = 0;
    std::string url;
    double timeout_s = 30.0;
    std::size_t max_batch = 32;
};

struct PipelineConfig {
    std::string name;  // label in comparison tables; defaults to the strategy name
    Strategy strategy = Strategy::Aggregate;
    SegmentConfig segment;
    std::optional<MmrConfig> mmr;  // present exactly when strategy == mmr
    TrainConfig train;
    ProviderConfig provider;
    Aggregation aggregation = Aggregation::Mean;
    std::size_t truncate_tokens = 1024;
    std::size_t drop_leading = 0;
    std::size_t workers = 0;  // 0 = hardware concurrency; not part of the hash

    // Throws ContractError describing the first violated rule.
    void validate() const;

    // Canonical JSON (sorted keys, workers omitted). Round-trips through
    // from_json, which also validates.
    std::string to_json() const;
    static PipelineConfig from_json(const std::string& json);
    static PipelineConfig load(const std::filesystem::path& path);

    // 16 hex digits of FNV-1a over to_json().
    std::string hash() const;
    std::string display_name() const;
};

std::shared_ptr<const EmbeddingProvider> make_provider(const ProviderConfig& config);

struct KeySentences {
    MmrSelection selection;          // selection order
    std::vector<std::size_t> kept;   // sentence indices kept, ascending
    std::string text;                // kept sentences joined in document order
};

struct DocResult {
    std::string doc_id;
    std::optional<std::string> label;
    DocPrediction prediction;
};

struct EvalOutcome {
    EvalReport report;
    std::vector<DocResult> documents;
};

class Pipeline {
public:
    explicit Pipeline(PipelineConfig config, std::shared_ptr<const EmbeddingProvider> provider = nullptr);

    const PipelineConfig& config() const { return config_; }
    const EmbeddingProvider& provider() const { return *provider_; }

    // Drops leading boilerplate (when configured) and segments.
    std::vector<Sentence> segment_document(const Document& doc, std::vector<std::string>* warnings = nullptr) const;

    // Greedy MMR over the document's sentences, query = centroid of their
    // embeddings. With mmr.k == 0 the selection prefix is cut at the token
    // budget (always keeping at least one sentence).
    KeySentences select_key_sentences(const std::vector<Sentence>& sentences) const;

    std::string truncate(const Document& doc) const;

    // Texts the head sees for one document under the configured strategy.
    std::vector<std::string> model_inputs(const Document& doc) const;

    TrainResult train(const Corpus& corpus, const SplitManifest& manifest) const;

    std::vector<DocResult> predict(const LinearHead& head, const std::vector<const Document*>& docs) const;

    // Evaluates the manifest's test split.
    EvalOutcome evaluate(const LinearHead& head, const Corpus& corpus, const SplitManifest& manifest) const;

    // Checks that a checkpoint fits this pipeline's provider.
    void check_head(const LinearHead& head, const CheckpointMeta& meta) const;

private:
    struct Encoded {
        std::vector<EmbeddingVector> vectors;
    };
    std::vector<Encoded> encode(const std::vector<const Document*>& docs) const;

    PipelineConfig config_;
    std::shared_ptr<const EmbeddingProvider> provider_;
};

// Command implementations behind the C API and the CLI. Each returns the JSON
// it wrote (or a summary for JSONL outputs).
namespace commands {

std::string generate(const SyntheticSpec& spec, const std::filesystem::path& out);
std::string split(const std::filesystem::path& corpus, SplitFractions fractions, std::uint64_t seed,
                  const std::filesystem::path& out);
// Writes {"doc_id", "index", "text", "tokens"} per sentence, ordered by doc_id.
// The summary carries any truncation warnings.
std::string segment(const PipelineConfig& config, const std::filesystem::path& corpus,
                    const std::filesystem::path& out);
// Writes the checkpoint; returns (and writes to metrics_out when non-empty)
// per-epoch metrics.
std::string train(const PipelineConfig& config, const std::filesystem::path& corpus,
                  const std::filesystem::path& manifest, const std::filesystem::path& checkpoint_out,
                  const std::filesystem::path& metrics_out);
std::string eval(const PipelineConfig& config, const std::filesystem::path& corpus,
                 const std::filesystem::path& manifest, const std::filesystem::path& checkpoint,
                 const std::filesystem::path& report_out, const std::filesystem::path& predictions_out);
// Trains and evaluates every config; ranks by test macro-F1 (stable on ties).
std::string compare(const std::vector<PipelineConfig>& configs, const std::filesystem::path& corpus,
                    const std::filesystem::path& manifest, const std::filesystem::path& out);
std::string probe(const PipelineConfig& config);

}  // namespace commands

}  // namespace longdoc
