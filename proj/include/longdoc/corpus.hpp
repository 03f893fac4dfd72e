#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace longdoc {

struct Document {
    std::string doc_id;
    std::string text;
    std::optional<std::string> label;  // absent at inference time

    bool operator==(const Document&) const = default;
};

// Ordered class names with a name -> index lookup.
class LabelVocab {
public:
    LabelVocab() = default;
    // Throws ContractError on duplicate or empty names.
    explicit LabelVocab(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t index) const { return names_.at(index); }
    std::optional<std::size_t> find(const std::string& name) const;
    // Throws ContractError naming the label when it is not in the vocabulary.
    std::size_t index(const std::string& name) const;

    bool operator==(const LabelVocab& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

struct Corpus {
    std::vector<Document> documents;
    LabelVocab vocab;  // sorted set of observed labels

    const Document* find(const std::string& doc_id) const;
};

using SplitFractions = std::array<double, 3>;
inline constexpr SplitFractions kDefaultFractions{0.8, 0.1, 0.1};

struct SplitManifest {
    std::vector<std::string> train;
    std::vector<std::string> valid;
    std::vector<std::string> test;
    std::uint64_t seed = 0;
    SplitFractions fractions = kDefaultFractions;

    bool operator==(const SplitManifest&) const = default;
};

// JSONL with {"id", "text", "label"?} per line. Blank lines are skipped.
// Errors (InputError) cite the 1-based line number, or the offending id for
// duplicates and empty text.
Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const std::vector<Document>& docs);
void save_corpus(const std::filesystem::path& path, const std::vector<Document>& docs);

// Builds the vocabulary from observed labels.
LabelVocab vocab_of(const std::vector<Document>& docs);

// Stratified split. Within each class the documents are shuffled with `seed`
// and cut using largest-remainder rounding, so every per-class split count is
// within one document of fraction * class size. Lists keep corpus order.
SplitManifest split_stratified(const Corpus& corpus, SplitFractions fractions = kDefaultFractions,
                               std::uint64_t seed = 0);

std::string manifest_to_json(const SplitManifest& manifest);
SplitManifest manifest_from_json(const std::string& json);
void save_manifest(const std::filesystem::path& path, const SplitManifest& manifest);
SplitManifest load_manifest(const std::filesystem::path& path);

// Checks that the manifest partitions exactly the corpus ids.
void check_manifest(const Corpus& corpus, const SplitManifest& manifest);

// Removes the first n boundary-delimited sentence spans. A document with at
// most n spans keeps its last span.
Document drop_leading_boilerplate(const Document& doc, std::size_t n_sentences = 1);

struct SyntheticSpec {
    std::size_t classes = 4;
    std::size_t docs_per_class = 50;
    std::size_t sentences_per_doc = 20;
    double signal_ratio = 0.3;  // fraction of sentences drawn from the class pool
    std::uint64_t seed = 1;
    std::size_t class_pool_size = 30;
    std::size_t background_pool_size = 300;
    std::size_t min_sentence_tokens = 8;
    std::size_t max_sentence_tokens = 16;
};

// Pseudo-Arabic corpus with class signal planted in a random subset of each
// document's sentences. Deterministic in the spec.
std::vector<Document> generate_synthetic(const SyntheticSpec& spec);

// Number of signal sentences per document: ceil(signal_ratio * sentences_per_doc).
std::size_t signal_sentences_per_doc(const SyntheticSpec& spec);

}  // namespace longdoc
