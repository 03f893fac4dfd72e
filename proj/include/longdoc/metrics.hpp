#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "longdoc/corpus.hpp"

namespace longdoc {

// Rows are gold classes, columns predicted classes.
struct ConfusionMatrix {
    LabelVocab vocab;
    std::vector<std::vector<std::uint64_t>> counts;

    explicit ConfusionMatrix(LabelVocab v);
    std::size_t classes() const { return counts.size(); }
    std::uint64_t total() const;
    void add(std::size_t gold, std::size_t predicted) { ++counts.at(gold).at(predicted); }
};

// Throws ContractError on a length mismatch or a label outside the vocabulary.
ConfusionMatrix confusion(const std::vector<std::string>& gold, const std::vector<std::string>& predicted,
                          const LabelVocab& vocab);
ConfusionMatrix confusion(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& predicted,
                          const LabelVocab& vocab);

struct ClassScores {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::uint64_t support = 0;
};

struct EvalReport {
    double macro_f1 = 0;
    double macro_precision = 0;
    double macro_recall = 0;
    double accuracy = 0;
    std::vector<ClassScores> per_class;
    std::uint64_t n = 0;
};

// Per-class P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R), with 0/0 = 0.
// Macro values average over every vocabulary class, zero-support included.
// An empty matrix yields all zeros.
EvalReport report(const ConfusionMatrix& matrix);

// Full-precision JSON object (per_class keyed by class name).
std::string report_to_json(const EvalReport& report, const LabelVocab& vocab);

// Aligned text table for terminals.
std::string report_table(const EvalReport& report, const LabelVocab& vocab);

}  // namespace longdoc
