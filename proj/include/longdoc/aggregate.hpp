#pragma once

#include <span>
#include <string>
#include <string_view>

#include "longdoc/classifier.hpp"

namespace longdoc {

enum class Aggregation { Mean, Vote, Max };

Aggregation aggregation_from_name(std::string_view name);
std::string_view aggregation_name(Aggregation a);

struct DocPrediction {
    std::string doc_id;
    std::size_t final_class = 0;
    ClassDistribution doc_distribution;
    std::size_t n_sentences = 0;
    Aggregation strategy = Aggregation::Mean;
};

// Each throws ContractError on an empty list or mixed class counts.

// Mean of the sentence distributions; argmax with ties to the lowest class.
DocPrediction aggregate_mean(std::span<const ClassDistribution> sentences);
// Vote shares of per-sentence argmax; ties to the lowest class.
DocPrediction aggregate_vote(std::span<const ClassDistribution> sentences);
// Class of the single largest entry over all sentences; the distribution is
// that sentence's. Ties go to the earlier sentence, then the lower class.
DocPrediction aggregate_max(std::span<const ClassDistribution> sentences);

DocPrediction aggregate(Aggregation strategy, std::span<const ClassDistribution> sentences);

}  // namespace longdoc
