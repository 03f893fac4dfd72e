#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "longdoc/embed.hpp"

namespace longdoc {

enum class Kernel { Angular, Cosine, Euclidean, Jaccard };

// Throws ContractError for names outside {angular, cosine, euclidean, jaccard}.
Kernel kernel_from_name(std::string_view name);
std::string_view kernel_name(Kernel kernel);

// 1 - arccos(cos(u, v)) / pi, in [0, 1]. Zero vectors are rejected.
double angular_similarity(const EmbeddingVector& u, const EmbeddingVector& v);
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);
// 1 / (1 + |u - v|)
double euclidean_similarity(const EmbeddingVector& u, const EmbeddingVector& v);
// |A n B| / |A u B| over sorted unique token sets; 1 when both are empty.
double jaccard_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b);

// A selectable item: an embedding plus the token set used by the Jaccard kernel.
struct MmrItem {
    std::size_t index = 0;
    EmbeddingVector vector;
    std::vector<std::string> tokens;  // sorted, unique
};

double similarity(Kernel kernel, const MmrItem& a, const MmrItem& b);

struct MmrConfig {
    double lambda = 0.5;
    // 0 selects by token budget in the pipeline; mmr_select itself needs k >= 1.
    std::size_t k = 0;
    std::size_t token_budget = 512;
    Kernel sim1 = Kernel::Angular;
    Kernel sim2 = Kernel::Angular;

    void validate() const;
};

struct MmrSelection {
    std::vector<std::size_t> chosen;  // MmrItem::index values in selection order
    std::vector<double> scores;       // score at the moment each was chosen
};

// Greedy maximal marginal relevance:
//   argmax_i  lambda * sim1(i, query) - (1 - lambda) * max_{j in chosen} sim2(i, j)
// The penalty is 0 while nothing is chosen. Equal scores go to the lowest
// MmrItem::index. Stops after min(k, candidates) picks.
MmrSelection mmr_select(const std::vector<MmrItem>& candidates, const MmrItem& query, const MmrConfig& config,
                        std::size_t k);
inline MmrSelection mmr_select(const std::vector<MmrItem>& candidates, const MmrItem& query,
                               const MmrConfig& config) {
    return mmr_select(candidates, query, config, config.k);
}

}  // namespace longdoc
