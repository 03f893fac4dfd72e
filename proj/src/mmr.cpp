#include "longdoc/mmr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "longdoc/error.hpp"

namespace longdoc {

Kernel kernel_from_name(std::string_view name) {
    if (name == "angular") return Kernel::Angular;
    if (name == "cosine") return Kernel::Cosine;
    if (name == "euclidean") return Kernel::Euclidean;
    if (name == "jaccard") return Kernel::Jaccard;
    throw ContractError("unknown similarity kernel: " + std::string(name));
}

std::string_view kernel_name(Kernel kernel) {
    switch (kernel) {
        case Kernel::Angular: return "angular";
        case Kernel::Cosine: return "cosine";
        case Kernel::Euclidean: return "euclidean";
        case Kernel::Jaccard: return "jaccard";
    }
    return "?";
}

namespace {

void require_same_dim(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.dim() != v.dim())
        throw ContractError("similarity of vectors with dims " + std::to_string(u.dim()) + " and " +
                            std::to_string(v.dim()));
}

}  // namespace

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
    require_same_dim(u, v);
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0 || nv == 0) throw ContractError("cosine similarity of a zero vector");
    return dot(u, v) / (nu * nv);
}

double angular_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
    const double c = std::clamp(cosine_similarity(u, v), -1.0, 1.0);
    return 1.0 - std::acos(c) / std::numbers::pi;
}

double euclidean_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
    require_same_dim(u, v);
    double s = 0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        const double d = u[i] - v[i];
        s += d * d;
    }
    return 1.0 / (1.0 + std::sqrt(s));
}

double jaccard_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const std::size_t uni = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(uni);
}

double similarity(Kernel kernel, const MmrItem& a, const MmrItem& b) {
    switch (kernel) {
        case Kernel::Angular: return angular_similarity(a.vector, b.vector);
        case Kernel::Cosine: return cosine_similarity(a.vector, b.vector);
        case Kernel::Euclidean: return euclidean_similarity(a.vector, b.vector);
        case Kernel::Jaccard: return jaccard_similarity(a.tokens, b.tokens);
    }
    return 0;
}

void MmrConfig::validate() const {
    if (!(lambda >= 0 && lambda <= 1)) throw ContractError("mmr lambda must be in [0, 1]");
    if (k == 0 && token_budget == 0) throw ContractError("mmr needs k >= 1 or a positive token budget");
}

MmrSelection mmr_select(const std::vector<MmrItem>& candidates, const MmrItem& query, const MmrConfig& config,
                        std::size_t k) {
    if (!(config.lambda >= 0 && config.lambda <= 1)) throw ContractError("mmr lambda must be in [0, 1]");
    if (k == 0) throw ContractError("mmr_select needs k >= 1");
    if (candidates.empty()) throw ContractError("mmr_select needs at least one candidate");
    for (const auto& c : candidates)
        if (c.vector.dim() != query.vector.dim())
            throw ContractError("mmr candidate dim " + std::to_string(c.vector.dim()) + " != query dim " +
                                std::to_string(query.vector.dim()));

    const std::size_t n = candidates.size();
    const double lambda = config.lambda;

    std::vector<double> relevance(n);
    for (std::size_t i = 0; i < n; ++i) relevance[i] = similarity(config.sim1, candidates[i], query);

    // Running max of sim2 against the chosen set; 0 while the set is empty.
    std::vector<double> redundancy(n, 0.0);
    std::vector<bool> taken(n, false);

    MmrSelection out;
    const std::size_t picks = std::min(k, n);
    out.chosen.reserve(picks);
    out.scores.reserve(picks);
    for (std::size_t step = 0; step < picks; ++step) {
        std::size_t best = n;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double score = lambda * relevance[i] - (1.0 - lambda) * redundancy[i];
            if (best == n || score > best_score ||
                (score == best_score && candidates[i].index < candidates[best].index)) {
                best = i;
                best_score = score;
            }
        }
        taken[best] = true;
        out.chosen.push_back(candidates[best].index);
        out.scores.push_back(best_score);

        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double s = similarity(config.sim2, candidates[i], candidates[best]);
            redundancy[i] = step == 0 ? s : std::max(redundancy[i], s);
        }
    }
    return out;
}

}  // namespace longdoc
