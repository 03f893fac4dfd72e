#pragma once

// Analytic cross-entropy gradients vs. central finite differences.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "longdoc/classifier.hpp"
#include "longdoc/rng.hpp"

namespace gradcheck {

struct Result {
    std::size_t k = 0, d = 0;
    double relative_error = 0;     // |a - n| / max(|a|, |n|) over the whole parameter vector
    double max_element_error = 0;  // per parameter; absolute below 1e-6 magnitude
};

inline Result run(longdoc::Rng& rng, double h = 1e-5) {
    using namespace longdoc;
    Result r;
    r.k = rng.between(2, 5);
    r.d = rng.between(1, 16);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < r.k; ++i) names.push_back("k" + std::to_string(i));
    auto head = LinearHead::zeros(LabelVocab(names), r.d);
    for (auto& w : head.weights) w = 2 * rng.unit() - 1;
    for (auto& b : head.bias) b = 2 * rng.unit() - 1;

    std::vector<LabeledVector> batch(rng.between(1, 8));
    for (auto& ex : batch) {
        ex.x.values.resize(r.d);
        for (auto& v : ex.x.values) v = 2 * rng.unit() - 1;
        ex.label = rng.below(r.k);
    }

    const auto analytic = loss_and_grad(head, batch).grad;
    std::vector<double> a(analytic.weights);
    a.insert(a.end(), analytic.bias.begin(), analytic.bias.end());

    std::vector<double*> params;
    for (auto& w : head.weights) params.push_back(&w);
    for (auto& b : head.bias) params.push_back(&b);
    std::vector<double> n(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double keep = *params[i];
        *params[i] = keep + h;
        const double up = loss_and_grad(head, batch).loss;
        *params[i] = keep - h;
        const double down = loss_and_grad(head, batch).loss;
        *params[i] = keep;
        n[i] = (up - down) / (2 * h);
    }

    double diff = 0, na = 0, nn = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - n[i]) * (a[i] - n[i]);
        na += a[i] * a[i];
        nn += n[i] * n[i];
        const double scale = std::max(std::abs(a[i]), std::abs(n[i]));
        const double e = scale < 1e-6 ? std::abs(a[i] - n[i]) : std::abs(a[i] - n[i]) / scale;
        r.max_element_error = std::max(r.max_element_error, e);
    }
    const double denom = std::max(std::sqrt(na), std::sqrt(nn));
    r.relative_error = denom == 0 ? std::sqrt(diff) : std::sqrt(diff) / denom;
    return r;
}

}  // namespace gradcheck
