#pragma once

// UTF-8 helpers shared by the segmenter, the reference embedder and the
// Jaccard kernel. Everything works on logical-order byte offsets into the
// original string; malformed sequences decode as U+FFFD one byte at a time.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace longdoc::text {

struct Decoded {
    char32_t cp;
    std::size_t length;  // bytes consumed
};

Decoded decode_at(std::string_view s, std::size_t pos);

// Number of code points.
std::size_t length(std::string_view s);

bool is_space(char32_t c);
// Unicode general category P (connector, dash, open/close, quotes, other).
bool is_punct(char32_t c);
inline bool is_separator(char32_t c) { return is_space(c) || is_punct(c); }
inline bool is_digit(char32_t c) {
    return (c >= U'0' && c <= U'9') || (c >= 0x0660 && c <= 0x0669) || (c >= 0x06F0 && c <= 0x06F9);
}

// Byte range [begin, end) into some string.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
    bool empty() const { return end <= begin; }
    std::string_view of(std::string_view s) const { return s.substr(begin, end - begin); }
};

// Maximal runs of non-separator code points.
std::vector<Span> token_spans(std::string_view s);

std::size_t tokenize_count(std::string_view s);

// Token strings with ASCII letters folded to lower case.
std::vector<std::string> tokens(std::string_view s);

// Sorted, de-duplicated token set.
std::vector<std::string> token_set(std::string_view s);

// Trims Unicode whitespace from both ends of `span` within `s`.
Span trim(std::string_view s, Span span);
std::string_view trim(std::string_view s);

// Removes every whitespace code point.
std::string strip_whitespace(std::string_view s);

}  // namespace longdoc::text
