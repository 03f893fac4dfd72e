#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "longdoc/corpus.hpp"
#include "longdoc/embed.hpp"
#include "longdoc/segmenter.hpp"

namespace longdoc {

struct ClassDistribution {
    std::vector<double> probs;

    std::size_t classes() const { return probs.size(); }
    // Lowest index wins ties.
    std::size_t argmax() const;
    bool valid(double tol = 1e-6) const;
    bool operator==(const ClassDistribution&) const = default;
};

// Numerically stable softmax (max subtracted before exponentiation).
ClassDistribution softmax(std::span<const double> logits);

// softmax(W x + b) with W stored row-major as classes x dim.
struct LinearHead {
    LabelVocab vocab;
    std::size_t dim = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    static LinearHead zeros(LabelVocab vocab, std::size_t dim);
    std::size_t classes() const { return bias.size(); }
    double& w(std::size_t k, std::size_t d) { return weights[k * dim + d]; }
    double w(std::size_t k, std::size_t d) const { return weights[k * dim + d]; }
    bool operator==(const LinearHead&) const = default;
};

std::vector<double> logits(const LinearHead& head, const EmbeddingVector& x);
// Throws ContractError on a dim mismatch.
ClassDistribution forward(const LinearHead& head, const EmbeddingVector& x);

struct LabeledVector {
    EmbeddingVector x;
    std::size_t label = 0;
};

struct Gradients {
    std::vector<double> weights;
    std::vector<double> bias;

    double norm() const;
    void scale(double factor);
};

struct LossAndGrad {
    double loss = 0;  // mean cross-entropy
    Gradients grad;
};

// Mean of -log p[y] over the batch with analytic gradients. Throws
// ContractError for an empty batch or a label >= classes.
LossAndGrad loss_and_grad(const LinearHead& head, std::span<const LabeledVector> batch);

// Scales `grad` in place so its global L2 norm is at most max_norm. Returns the
// factor applied (1 when no clipping happened).
double clip_global_norm(Gradients& grad, double max_norm);

// Linear warmup from 0 to `peak` over ceil(warmup_ratio * total) steps, then
// linear decay to 0 at step `total`. Steps count from 1.
class LinearSchedule {
public:
    LinearSchedule(std::size_t total_steps, double warmup_ratio, double peak);
    double at(std::size_t step) const;
    std::size_t warmup_steps() const { return warmup_; }
    std::size_t total_steps() const { return total_; }

private:
    std::size_t total_;
    std::size_t warmup_;
    double peak_;
};

struct TrainConfig {
    std::size_t epochs = 20;
    double learning_rate = 5e-5;
    double adam_epsilon = 1e-8;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double warmup_ratio = 0.1;
    double max_grad_norm = 1.0;
    std::size_t train_batch = 64;
    std::size_t valid_batch = 128;
    std::uint64_t seed = 0;

    void validate() const;
};

class AdamOptimizer {
public:
    AdamOptimizer(std::size_t n_weights, std::size_t n_bias, double beta1, double beta2, double epsilon);
    void step(LinearHead& head, const Gradients& grad, double lr);
    std::size_t steps_taken() const { return t_; }

private:
    double beta1_, beta2_, epsilon_;
    std::size_t t_ = 0;
    Gradients m_, v_;
};

struct EpochMetrics {
    std::size_t epoch = 0;      // 1-based
    double train_loss = 0;      // mean cross-entropy over the training set after the epoch
    double valid_macro_f1 = 0;
    double learning_rate = 0;   // at the last step of the epoch
};

struct TrainResult {
    LinearHead head;  // parameters from the best validation epoch
    std::vector<EpochMetrics> epochs;
    std::size_t best_epoch = 0;
};

// Returns a validation macro-F1 for the current parameters.
using Validator = std::function<double(const LinearHead&)>;

// Example-level macro-F1 over `examples`.
double macro_f1_of(const LinearHead& head, std::span<const LabeledVector> examples);

// Zero-initialized head trained with Adam, the linear schedule and global-norm
// clipping. Shuffling depends only on config.seed. Every class must appear in
// `train`; the missing class is named otherwise.
TrainResult train_head(std::span<const LabeledVector> train, const LabelVocab& vocab, std::size_t dim,
                       const TrainConfig& config, const Validator& validate);

// Embeds labeled sentences and trains on them; validation is example-level
// macro-F1 on `valid` (the training set when `valid` is empty).
TrainResult train(std::span<const Sentence> sentences, const EmbeddingProvider& provider, const LabelVocab& vocab,
                  const TrainConfig& config, std::span<const Sentence> valid = {});

struct SentencePrediction {
    std::string doc_id;
    std::size_t index = 0;
    ClassDistribution dist;
};

// Provider errors are rethrown with the failing sentence range attached.
std::vector<SentencePrediction> predict_sentences(const LinearHead& head, std::span<const Sentence> sentences,
                                                  const EmbeddingProvider& provider);

// Embeds texts in chunks, attaching `what` context to provider failures.
std::vector<EmbeddingVector> embed_all(const EmbeddingProvider& provider, std::span<const std::string> texts,
                                       const std::string& what = "texts");

inline constexpr const char* kCheckpointFormat = "longdoc-linear-head/1";

struct CheckpointMeta {
    std::string provider;      // ProviderInfo::name
    std::string config_json;   // pipeline config the head was trained under
};

// JSON: {"format", "vocab", "dim", "k", "provider", "config", "params"} with
// params = W row-major then b.
std::string checkpoint_to_json(const LinearHead& head, const CheckpointMeta& meta);
LinearHead checkpoint_from_json(const std::string& json, CheckpointMeta* meta = nullptr);
void save_checkpoint(const std::filesystem::path& path, const LinearHead& head, const CheckpointMeta& meta);
LinearHead load_checkpoint(const std::filesystem::path& path, CheckpointMeta* meta = nullptr);

}  // namespace longdoc
