#include "longdoc/aggregate.hpp"

#include "longdoc/error.hpp"

namespace longdoc {

Aggregation aggregation_from_name(std::string_view name) {
    if (name == "mean") return Aggregation::Mean;
    if (name == "vote") return Aggregation::Vote;
    if (name == "max") return Aggregation::Max;
    throw ContractError("unknown aggregation: " + std::string(name));
}

std::string_view aggregation_name(Aggregation a) {
    switch (a) {
        case Aggregation::Mean: return "mean";
        case Aggregation::Vote: return "vote";
        case Aggregation::Max: return "max";
    }
    return "?";
}

namespace {

std::size_t check(std::span<const ClassDistribution> sentences) {
    if (sentences.empty()) throw ContractError("cannot aggregate an empty sentence list");
    const std::size_t k = sentences.front().classes();
    for (const auto& d : sentences)
        if (d.classes() != k || k == 0) throw ContractError("sentence distributions disagree on class count");
    return k;
}

DocPrediction finish(ClassDistribution dist, std::size_t n, Aggregation strategy) {
    DocPrediction p;
    p.final_class = dist.argmax();
    p.doc_distribution = std::move(dist);
    p.n_sentences = n;
    p.strategy = strategy;
    return p;
}

}  // namespace

DocPrediction aggregate_mean(std::span<const ClassDistribution> sentences) {
    const std::size_t k = check(sentences);
    ClassDistribution mean{std::vector<double>(k, 0.0)};
    for (const auto& d : sentences)
        for (std::size_t c = 0; c < k; ++c) mean.probs[c] += d.probs[c];
    for (auto& p : mean.probs) p /= static_cast<double>(sentences.size());
    return finish(std::move(mean), sentences.size(), Aggregation::Mean);
}

DocPrediction aggregate_vote(std::span<const ClassDistribution> sentences) {
    const std::size_t k = check(sentences);
    ClassDistribution shares{std::vector<double>(k, 0.0)};
    for (const auto& d : sentences) shares.probs[d.argmax()] += 1.0;
    for (auto& p : shares.probs) p /= static_cast<double>(sentences.size());
    return finish(std::move(shares), sentences.size(), Aggregation::Vote);
}

DocPrediction aggregate_max(std::span<const ClassDistribution> sentences) {
    const std::size_t k = check(sentences);
    std::size_t best_s = 0;
    std::size_t best_c = 0;
    for (std::size_t s = 0; s < sentences.size(); ++s)
        for (std::size_t c = 0; c < k; ++c)
            if (sentences[s].probs[c] > sentences[best_s].probs[best_c]) {
                best_s = s;
                best_c = c;
            }
    auto p = finish(sentences[best_s], sentences.size(), Aggregation::Max);
    p.final_class = best_c;
    return p;
}

DocPrediction aggregate(Aggregation strategy, std::span<const ClassDistribution> sentences) {
    switch (strategy) {
        case Aggregation::Mean: return aggregate_mean(sentences);
        case Aggregation::Vote: return aggregate_vote(sentences);
        case Aggregation::Max: return aggregate_max(sentences);
    }
    throw ContractError("unknown aggregation");
}

}  // namespace longdoc
