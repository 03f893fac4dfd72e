#include "longdoc/metrics.hpp"

#include <cstdio>

#include <json.hpp>

#include "longdoc/error.hpp"

namespace longdoc {

ConfusionMatrix::ConfusionMatrix(LabelVocab v)
    : vocab(std::move(v)), counts(vocab.size(), std::vector<std::uint64_t>(vocab.size(), 0)) {}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t n = 0;
    for (const auto& row : counts)
        for (auto c : row) n += c;
    return n;
}

ConfusionMatrix confusion(const std::vector<std::string>& gold, const std::vector<std::string>& predicted,
                          const LabelVocab& vocab) {
    if (gold.size() != predicted.size())
        throw ContractError("confusion: " + std::to_string(gold.size()) + " gold labels vs " +
                            std::to_string(predicted.size()) + " predictions");
    ConfusionMatrix m(vocab);
    for (std::size_t i = 0; i < gold.size(); ++i) m.add(vocab.index(gold[i]), vocab.index(predicted[i]));
    return m;
}

ConfusionMatrix confusion(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& predicted,
                          const LabelVocab& vocab) {
    if (gold.size() != predicted.size())
        throw ContractError("confusion: " + std::to_string(gold.size()) + " gold labels vs " +
                            std::to_string(predicted.size()) + " predictions");
    ConfusionMatrix m(vocab);
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (gold[i] >= vocab.size() || predicted[i] >= vocab.size())
            throw ContractError("confusion: class index out of range at position " + std::to_string(i));
        m.add(gold[i], predicted[i]);
    }
    return m;
}

namespace {

double ratio(double num, double den) { return den == 0 ? 0.0 : num / den; }

}  // namespace

EvalReport report(const ConfusionMatrix& matrix) {
    const std::size_t k = matrix.classes();
    EvalReport r;
    r.n = matrix.total();
    r.per_class.resize(k);

    std::uint64_t trace = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t tp = matrix.counts[c][c];
        std::uint64_t fp = 0;
        std::uint64_t fn = 0;
        for (std::size_t o = 0; o < k; ++o) {
            if (o == c) continue;
            fp += matrix.counts[o][c];
            fn += matrix.counts[c][o];
        }
        auto& s = r.per_class[c];
        s.support = tp + fn;
        s.precision = ratio(static_cast<double>(tp), static_cast<double>(tp + fp));
        s.recall = ratio(static_cast<double>(tp), static_cast<double>(tp + fn));
        s.f1 = ratio(2 * s.precision * s.recall, s.precision + s.recall);
        trace += tp;
    }
    if (k) {
        for (const auto& s : r.per_class) {
            r.macro_precision += s.precision;
            r.macro_recall += s.recall;
            r.macro_f1 += s.f1;
        }
        r.macro_precision /= static_cast<double>(k);
        r.macro_recall /= static_cast<double>(k);
        r.macro_f1 /= static_cast<double>(k);
    }
    r.accuracy = ratio(static_cast<double>(trace), static_cast<double>(r.n));
    return r;
}

std::string report_to_json(const EvalReport& report, const LabelVocab& vocab) {
    nlohmann::json per_class = nlohmann::json::object();
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        const auto& s = report.per_class[c];
        per_class[vocab.name(c)] = {
            {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}, {"support", s.support}};
    }
    const nlohmann::json j = {{"macro_f1", report.macro_f1},
                              {"macro_precision", report.macro_precision},
                              {"macro_recall", report.macro_recall},
                              {"accuracy", report.accuracy},
                              {"n", report.n},
                              {"per_class", per_class}};
    return j.dump(2);
}

std::string report_table(const EvalReport& report, const LabelVocab& vocab) {
    std::size_t width = 9;
    for (const auto& name : vocab.names()) width = std::max(width, name.size());

    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-*s %9s %9s %9s %8s\n", static_cast<int>(width), "class", "precision",
                  "recall", "f1", "support");
    out += line;
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        const auto& s = report.per_class[c];
        std::snprintf(line, sizeof line, "%-*s %9.5f %9.5f %9.5f %8llu\n", static_cast<int>(width),
                      vocab.name(c).c_str(), s.precision, s.recall, s.f1,
                      static_cast<unsigned long long>(s.support));
        out += line;
    }
    std::snprintf(line, sizeof line, "%-*s %9.5f %9.5f %9.5f %8llu\n", static_cast<int>(width), "macro",
                  report.macro_precision, report.macro_recall, report.macro_f1,
                  static_cast<unsigned long long>(report.n));
    out += line;
    std::snprintf(line, sizeof line, "%-*s %9.5f\n", static_cast<int>(width), "accuracy", report.accuracy);
    out += line;
    return out;
}

}  // namespace longdoc
