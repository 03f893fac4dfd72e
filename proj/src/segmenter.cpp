#include "longdoc/segmenter.hpp"

#include <algorithm>
#include <numeric>

#include "longdoc/error.hpp"

namespace longdoc {

void SegmentConfig::validate() const {
    if (min_tokens == 0 || min_tokens > max_tokens || max_tokens > hard_cap)
        throw ContractError("segment config requires 0 < min_tokens <= max_tokens <= hard_cap, got " +
                            std::to_string(min_tokens) + "/" + std::to_string(max_tokens) + "/" +
                            std::to_string(hard_cap));
}

namespace {

std::size_t weight_of(const SegmentConfig& config, std::string_view token) {
    if (!config.token_weight) return 1;
    return std::max<std::size_t>(1, config.token_weight(token));
}

bool is_closing_mark(char32_t c) {
    switch (c) {
        case U'"':
        case U'\'':
        case U')':
        case U']':
        case U'}':
        case 0x00BB:  // »
        case 0x2019:  // ’
        case 0x201D:  // ”
        case 0x203A:  // ›
            return true;
        default:
            return false;
    }
}

// Weighted token index over one string. Cuts always fall on separators or
// token starts, so a byte range covers whole tokens only.
class TokenIndex {
public:
    TokenIndex(std::string_view s, const SegmentConfig& config) : spans_(text::token_spans(s)) {
        prefix_.resize(spans_.size() + 1, 0);
        for (std::size_t i = 0; i < spans_.size(); ++i)
            prefix_[i + 1] = prefix_[i] + weight_of(config, spans_[i].of(s));
    }

    // First token starting at or after `offset`.
    std::size_t token_at(std::size_t offset) const {
        return static_cast<std::size_t>(
            std::lower_bound(spans_.begin(), spans_.end(), offset,
                             [](const text::Span& t, std::size_t off) { return t.begin < off; }) -
            spans_.begin());
    }

    std::size_t weight(text::Span range) const {
        return prefix_[token_at(range.end)] - prefix_[token_at(range.begin)];
    }
    std::size_t weight(std::size_t first, std::size_t last) const { return prefix_[last] - prefix_[first]; }

    const text::Span& span(std::size_t i) const { return spans_[i]; }

private:
    std::vector<text::Span> spans_;
    std::vector<std::size_t> prefix_;
};

// Truncates tokens heavier than max_tokens. Only reachable with a custom weight.
std::string truncate_heavy_tokens(const Document& doc, const SegmentConfig& config,
                                  std::vector<std::string>* warnings) {
    if (!config.token_weight) return doc.text;
    std::string out;
    std::size_t copied = 0;
    for (const auto& span : text::token_spans(doc.text)) {
        std::string_view tok = span.of(doc.text);
        if (weight_of(config, tok) <= config.max_tokens) continue;
        std::string_view kept = tok;
        while (text::length(kept) > 1 && weight_of(config, kept) > config.max_tokens) {
            // drop the last code point
            std::size_t last = 0;
            for (std::size_t pos = 0; pos < kept.size(); pos += text::decode_at(kept, pos).length) last = pos;
            kept = kept.substr(0, last);
        }
        out.append(doc.text, copied, span.begin - copied);
        out.append(kept);
        copied = span.end;
        if (warnings)
            warnings->push_back("document " + doc.doc_id + ": token of " + std::to_string(text::length(tok)) +
                                " code points truncated to " + std::to_string(text::length(kept)) +
                                " to fit max_tokens");
    }
    if (copied == 0) return doc.text;
    out.append(doc.text, copied, std::string::npos);
    return out;
}

}  // namespace

std::size_t count_tokens(std::string_view text, const SegmentConfig& config) {
    if (!config.token_weight) return text::tokenize_count(text);
    std::size_t total = 0;
    for (const auto& span : text::token_spans(text)) total += weight_of(config, span.of(text));
    return total;
}

std::vector<text::Span> split_boundaries(std::string_view s, const SegmentConfig& config) {
    const auto is_boundary = [&](char32_t c) { return config.boundary_chars.find(c) != std::u32string::npos; };

    std::vector<text::Span> out;
    const auto emit = [&](std::size_t b, std::size_t e) {
        const auto t = text::trim(s, {b, e});
        if (!t.empty()) out.push_back(t);
    };

    std::size_t start = 0;
    char32_t prev = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto d = text::decode_at(s, pos);
        std::size_t next = pos + d.length;
        if (is_boundary(d.cp)) {
            const bool decimal_point = d.cp == U'.' && text::is_digit(prev) && next < s.size() &&
                                       text::is_digit(text::decode_at(s, next).cp);
            if (!decimal_point) {
                // Absorb a run of terminal marks and any closing quotes/brackets.
                while (next < s.size()) {
                    const auto n = text::decode_at(s, next);
                    if (!is_boundary(n.cp) && !is_closing_mark(n.cp)) break;
                    next += n.length;
                }
                emit(start, next);
                start = next;
            }
        }
        prev = d.cp;
        pos = next;
    }
    emit(start, s.size());
    return out;
}

std::vector<Sentence> segment(const Document& doc, const SegmentConfig& config, std::vector<std::string>* warnings) {
    config.validate();
    const std::string work = truncate_heavy_tokens(doc, config, warnings);
    const TokenIndex index(work, config);

    std::vector<text::Span> pieces;
    // Cuts `cur` into a prefix within budget and returns the remainder.
    const auto cut = [&](text::Span cur) -> text::Span {
        const std::size_t first = index.token_at(cur.begin);
        const std::size_t last = index.token_at(cur.end);
        // Largest t such that tokens [first, t) fit; at least one token.
        std::size_t t_max = first + 1;
        while (t_max + 1 < last && index.weight(first, t_max + 1) <= config.max_tokens) ++t_max;

        std::size_t split_at = index.span(t_max).begin;
        for (std::size_t t = t_max; t > first && index.weight(first, t) >= config.min_tokens; --t) {
            // Latest whitespace inside the gap before token t.
            std::size_t ws = std::string::npos;
            for (std::size_t p = index.span(t - 1).end; p < index.span(t).begin;) {
                const auto d = text::decode_at(work, p);
                if (text::is_space(d.cp)) ws = p;
                p += d.length;
            }
            if (ws != std::string::npos) {
                split_at = ws;
                break;
            }
        }
        const auto head = text::trim(work, {cur.begin, split_at});
        pieces.push_back(head);
        return text::trim(work, {split_at, cur.end});
    };

    std::optional<text::Span> cur;
    for (const auto& span : split_boundaries(work, config)) {
        if (!cur) {
            cur = span;
        } else if (index.weight(*cur) < config.min_tokens) {
            cur = text::Span{cur->begin, span.end};
        } else {
            pieces.push_back(*cur);
            cur = span;
        }
        while (index.weight(*cur) > config.max_tokens) cur = cut(*cur);
    }
    if (cur && !cur->empty()) pieces.push_back(*cur);

    std::vector<Sentence> out;
    out.reserve(pieces.size());
    for (const auto& piece : pieces) {
        Sentence s;
        s.doc_id = doc.doc_id;
        s.index = out.size();
        s.text = std::string(piece.of(work));
        s.token_count = index.weight(piece);
        s.label = doc.label;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace longdoc
