#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "longdoc/corpus.hpp"
#include "longdoc/text.hpp"

namespace longdoc {

struct Sentence {
    std::string doc_id;
    std::size_t index = 0;
    std::string text;
    std::size_t token_count = 0;
    std::optional<std::string> label;

    bool operator==(const Sentence&) const = default;
};

// Budget unit cost of one token, e.g. its wordpiece count. Must be >= 1.
using TokenWeight = std::function<std::size_t(std::string_view token)>;

struct SegmentConfig {
    std::size_t min_tokens = 30;
    std::size_t max_tokens = 150;
    std::size_t hard_cap = 512;
    // Split after any of these. Default: . ! ؟ ؛ … and newline.
    std::u32string boundary_chars = U".!؟؛…\n";
    // Empty means every token costs 1.
    TokenWeight token_weight;

    // Throws ContractError unless 0 < min_tokens <= max_tokens <= hard_cap.
    void validate() const;
};

// Token count under the config's weighting.
std::size_t count_tokens(std::string_view text, const SegmentConfig& config);

// Raw boundary spans, trimmed, in order. A '.' between two digits and the
// Arabic comma never end a span. Closing quotes and brackets directly after a
// boundary stay with the span they close.
std::vector<text::Span> split_boundaries(std::string_view text, const SegmentConfig& config = {});

// Merge short spans up to min_tokens without exceeding max_tokens, then cut
// anything longer than max_tokens. When a short run cannot absorb the next span
// whole, the two are joined and cut at max_tokens so that only the trailing
// sentence of a document can fall below min_tokens.
//
// Tokens whose own weight exceeds max_tokens are truncated; a message is
// appended to `warnings` when provided.
std::vector<Sentence> segment(const Document& doc, const SegmentConfig& config,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace longdoc
