#include "longdoc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "longdoc/error.hpp"
#include "longdoc/metrics.hpp"
#include "longdoc/rng.hpp"

namespace longdoc {

using nlohmann::json;

std::size_t ClassDistribution::argmax() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < probs.size(); ++k)
        if (probs[k] > probs[best]) best = k;
    return best;
}

bool ClassDistribution::valid(double tol) const {
    if (probs.empty()) return false;
    double sum = 0;
    for (double p : probs) {
        if (!(p >= 0) || !std::isfinite(p)) return false;
        sum += p;
    }
    return std::abs(sum - 1.0) <= tol;
}

ClassDistribution softmax(std::span<const double> z) {
    ClassDistribution d;
    if (z.empty()) return d;
    const double zmax = *std::max_element(z.begin(), z.end());
    d.probs.resize(z.size());
    double sum = 0;
    for (std::size_t k = 0; k < z.size(); ++k) sum += d.probs[k] = std::exp(z[k] - zmax);
    for (auto& p : d.probs) p /= sum;
    return d;
}

LinearHead LinearHead::zeros(LabelVocab vocab, std::size_t dim) {
    LinearHead h;
    const std::size_t k = vocab.size();
    h.vocab = std::move(vocab);
    h.dim = dim;
    h.weights.assign(k * dim, 0.0);
    h.bias.assign(k, 0.0);
    return h;
}

std::vector<double> logits(const LinearHead& head, const EmbeddingVector& x) {
    if (x.dim() != head.dim)
        throw ContractError("input dim " + std::to_string(x.dim()) + " does not match head dim " +
                            std::to_string(head.dim));
    std::vector<double> z(head.bias);
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double* row = head.weights.data() + k * head.dim;
        for (std::size_t d = 0; d < head.dim; ++d) z[k] += row[d] * x[d];
    }
    return z;
}

ClassDistribution forward(const LinearHead& head, const EmbeddingVector& x) { return softmax(logits(head, x)); }

double Gradients::norm() const {
    double s = 0;
    for (double g : weights) s += g * g;
    for (double g : bias) s += g * g;
    return std::sqrt(s);
}

void Gradients::scale(double factor) {
    for (auto& g : weights) g *= factor;
    for (auto& g : bias) g *= factor;
}

LossAndGrad loss_and_grad(const LinearHead& head, std::span<const LabeledVector> batch) {
    if (batch.empty()) throw ContractError("loss_and_grad on an empty batch");
    const std::size_t K = head.classes();
    const std::size_t D = head.dim;

    LossAndGrad out;
    out.grad.weights.assign(K * D, 0.0);
    out.grad.bias.assign(K, 0.0);
    const double inv_n = 1.0 / static_cast<double>(batch.size());

    for (const auto& ex : batch) {
        if (ex.label >= K)
            throw ContractError("class index " + std::to_string(ex.label) + " out of range for " + std::to_string(K) +
                                " classes");
        const auto z = logits(head, ex.x);
        const double zmax = *std::max_element(z.begin(), z.end());
        double sum = 0;
        for (double v : z) sum += std::exp(v - zmax);
        const double log_norm = zmax + std::log(sum);
        out.loss += (log_norm - z[ex.label]) * inv_n;

        for (std::size_t k = 0; k < K; ++k) {
            const double delta = (std::exp(z[k] - log_norm) - (k == ex.label ? 1.0 : 0.0)) * inv_n;
            out.grad.bias[k] += delta;
            double* row = out.grad.weights.data() + k * D;
            for (std::size_t d = 0; d < D; ++d) row[d] += delta * ex.x[d];
        }
    }
    return out;
}

double clip_global_norm(Gradients& grad, double max_norm) {
    const double n = grad.norm();
    if (!(n > max_norm)) return 1.0;
    const double factor = max_norm / n;
    grad.scale(factor);
    return factor;
}

LinearSchedule::LinearSchedule(std::size_t total_steps, double warmup_ratio, double peak)
    : total_(total_steps),
      warmup_(static_cast<std::size_t>(std::ceil(warmup_ratio * static_cast<double>(total_steps) - 1e-9))),
      peak_(peak) {
    warmup_ = std::min(warmup_, total_);
}

double LinearSchedule::at(std::size_t step) const {
    if (step >= total_) return step == total_ && warmup_ == total_ ? peak_ : 0.0;
    if (step <= warmup_) return warmup_ == 0 ? peak_ : peak_ * (static_cast<double>(step) / static_cast<double>(warmup_));
    return peak_ * (static_cast<double>(total_ - step) / static_cast<double>(total_ - warmup_));
}

void TrainConfig::validate() const {
    if (epochs == 0 || train_batch == 0 || valid_batch == 0) throw ContractError("train counts must be >= 1");
    if (!(learning_rate > 0) || !(adam_epsilon > 0) || !(max_grad_norm > 0))
        throw ContractError("learning_rate, adam_epsilon and max_grad_norm must be positive");
    if (!(adam_beta1 > 0 && adam_beta1 < 1) || !(adam_beta2 > 0 && adam_beta2 < 1))
        throw ContractError("adam betas must be in (0, 1)");
    if (!(warmup_ratio >= 0 && warmup_ratio < 1)) throw ContractError("warmup_ratio must be in [0, 1)");
}

AdamOptimizer::AdamOptimizer(std::size_t n_weights, std::size_t n_bias, double beta1, double beta2, double epsilon)
    : beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {
    m_.weights.assign(n_weights, 0.0);
    m_.bias.assign(n_bias, 0.0);
    v_ = m_;
}

void AdamOptimizer::step(LinearHead& head, const Gradients& grad, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    const auto update = [&](std::vector<double>& p, const std::vector<double>& g, std::vector<double>& m,
                            std::vector<double>& v) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = beta1_ * m[i] + (1.0 - beta1_) * g[i];
            v[i] = beta2_ * v[i] + (1.0 - beta2_) * g[i] * g[i];
            p[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + epsilon_);
        }
    };
    update(head.weights, grad.weights, m_.weights, v_.weights);
    update(head.bias, grad.bias, m_.bias, v_.bias);
}

double macro_f1_of(const LinearHead& head, std::span<const LabeledVector> examples) {
    std::vector<std::size_t> gold, pred;
    gold.reserve(examples.size());
    pred.reserve(examples.size());
    for (const auto& ex : examples) {
        gold.push_back(ex.label);
        pred.push_back(forward(head, ex.x).argmax());
    }
    return report(confusion(gold, pred, head.vocab)).macro_f1;
}

namespace {

double mean_loss(const LinearHead& head, std::span<const LabeledVector> examples, std::size_t chunk) {
    double total = 0;
    for (std::size_t start = 0; start < examples.size(); start += chunk) {
        const auto part = examples.subspan(start, std::min(chunk, examples.size() - start));
        total += loss_and_grad(head, part).loss * static_cast<double>(part.size());
    }
    return total / static_cast<double>(examples.size());
}

}  // namespace

TrainResult train_head(std::span<const LabeledVector> train, const LabelVocab& vocab, std::size_t dim,
                       const TrainConfig& config, const Validator& validate) {
    config.validate();
    if (vocab.size() < 2) throw ContractError("training needs at least 2 classes");
    std::vector<std::size_t> per_class(vocab.size(), 0);
    for (const auto& ex : train) {
        if (ex.label >= vocab.size()) throw ContractError("training label index out of range");
        if (ex.x.dim() != dim) throw ContractError("training vector dim does not match head dim");
        ++per_class[ex.label];
    }
    for (std::size_t c = 0; c < per_class.size(); ++c)
        if (per_class[c] == 0) throw ContractError("class \"" + vocab.name(c) + "\" is absent from the training data");

    const std::size_t n = train.size();
    const std::size_t steps_per_epoch = (n + config.train_batch - 1) / config.train_batch;
    const LinearSchedule schedule(config.epochs * steps_per_epoch, config.warmup_ratio, config.learning_rate);

    TrainResult result;
    LinearHead head = LinearHead::zeros(vocab, dim);
    AdamOptimizer adam(head.weights.size(), head.bias.size(), config.adam_beta1, config.adam_beta2,
                       config.adam_epsilon);
    Rng rng(config.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<LabeledVector> batch;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t step = 0;

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        double lr = 0;
        for (std::size_t start = 0; start < n; start += config.train_batch) {
            batch.clear();
            for (std::size_t i = start; i < std::min(n, start + config.train_batch); ++i) batch.push_back(train[order[i]]);
            auto lg = loss_and_grad(head, batch);
            clip_global_norm(lg.grad, config.max_grad_norm);
            lr = schedule.at(++step);
            adam.step(head, lg.grad, lr);
        }
        EpochMetrics m;
        m.epoch = epoch;
        m.train_loss = mean_loss(head, train, config.valid_batch);
        m.valid_macro_f1 = validate(head);
        m.learning_rate = lr;
        result.epochs.push_back(m);
        if (m.valid_macro_f1 > best) {
            best = m.valid_macro_f1;
            result.head = head;
            result.best_epoch = epoch;
        }
    }
    return result;
}

std::vector<EmbeddingVector> embed_all(const EmbeddingProvider& provider, std::span<const std::string> texts,
                                       const std::string& what) {
    constexpr std::size_t kChunk = 128;
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t start = 0; start < texts.size(); start += kChunk) {
        const auto part = texts.subspan(start, std::min(kChunk, texts.size() - start));
        std::vector<EmbeddingVector> got;
        try {
            got = provider.embed_batch(part);
        } catch (const RemoteError& e) {
            throw RemoteError(e.failure(), "embedding " + what + " [" + std::to_string(start) + ", " +
                                               std::to_string(start + part.size()) + "): " + e.what());
        }
        if (got.size() != part.size())
            throw RemoteError(RemoteFailure::ResponseShape, "provider returned " + std::to_string(got.size()) +
                                                                " vectors for " + std::to_string(part.size()) + " texts");
        for (auto& v : got) out.push_back(std::move(v));
    }
    return out;
}

namespace {

std::vector<LabeledVector> labeled(std::span<const Sentence> sentences, const EmbeddingProvider& provider,
                                   const LabelVocab& vocab) {
    std::vector<std::string> texts;
    texts.reserve(sentences.size());
    for (const auto& s : sentences) texts.push_back(s.text);
    auto vectors = embed_all(provider, texts, "sentences");
    std::vector<LabeledVector> out;
    out.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (!sentences[i].label)
            throw ContractError("unlabeled training sentence in document " + sentences[i].doc_id);
        out.push_back({std::move(vectors[i]), vocab.index(*sentences[i].label)});
    }
    return out;
}

}  // namespace

TrainResult train(std::span<const Sentence> sentences, const EmbeddingProvider& provider, const LabelVocab& vocab,
                  const TrainConfig& config, std::span<const Sentence> valid) {
    const auto train_set = labeled(sentences, provider, vocab);
    const auto valid_set = valid.empty() ? train_set : labeled(valid, provider, vocab);
    return train_head(train_set, vocab, provider.info().dim, config,
                      [&](const LinearHead& head) { return macro_f1_of(head, valid_set); });
}

std::vector<SentencePrediction> predict_sentences(const LinearHead& head, std::span<const Sentence> sentences,
                                                  const EmbeddingProvider& provider) {
    if (sentences.empty()) return {};
    std::vector<std::string> texts;
    texts.reserve(sentences.size());
    for (const auto& s : sentences) texts.push_back(s.text);
    const std::string what = "sentences of document " + sentences.front().doc_id;
    const auto vectors = embed_all(provider, texts, what);
    std::vector<SentencePrediction> out;
    out.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i)
        out.push_back({sentences[i].doc_id, sentences[i].index, forward(head, vectors[i])});
    return out;
}

std::string checkpoint_to_json(const LinearHead& head, const CheckpointMeta& meta) {
    std::vector<double> params(head.weights);
    params.insert(params.end(), head.bias.begin(), head.bias.end());
    json config = meta.config_json.empty() ? json::object() : json::parse(meta.config_json);
    const json j = {{"format", kCheckpointFormat}, {"vocab", head.vocab.names()}, {"dim", head.dim},
                    {"k", head.classes()},         {"provider", meta.provider},   {"config", config},
                    {"params", params}};
    return j.dump();
}

LinearHead checkpoint_from_json(const std::string& text, CheckpointMeta* meta) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kCheckpointFormat)
            throw InputError("unsupported checkpoint format: " + j.at("format").get<std::string>());
        LinearHead head = LinearHead::zeros(LabelVocab(j.at("vocab").get<std::vector<std::string>>()),
                                            j.at("dim").get<std::size_t>());
        if (j.at("k").get<std::size_t>() != head.classes())
            throw InputError("checkpoint k does not match its vocabulary");
        const auto params = j.at("params").get<std::vector<double>>();
        if (params.size() != head.weights.size() + head.bias.size())
            throw InputError("checkpoint parameter count does not match k * dim + k");
        std::copy(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(head.weights.size()),
                  head.weights.begin());
        std::copy(params.begin() + static_cast<std::ptrdiff_t>(head.weights.size()), params.end(), head.bias.begin());
        for (double p : params)
            if (!std::isfinite(p)) throw InputError("checkpoint holds a non-finite parameter");
        if (meta) {
            meta->provider = j.at("provider").get<std::string>();
            meta->config_json = j.at("config").dump();
        }
        return head;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const LinearHead& head, const CheckpointMeta& meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write checkpoint: " + path.string());
    out << checkpoint_to_json(head, meta) << '\n';
}

LinearHead load_checkpoint(const std::filesystem::path& path, CheckpointMeta* meta) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open checkpoint: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return checkpoint_from_json(buf.str(), meta);
}

}  // namespace longdoc
