#include "longdoc/text.hpp"

#include <algorithm>

namespace longdoc::text {

Decoded decode_at(std::string_view s, std::size_t pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) return {b0, 1};

    std::size_t need = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        need = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        need = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        need = 3;
        cp = b0 & 0x07;
    } else {
        return {0xFFFD, 1};
    }
    if (pos + need >= s.size()) return {0xFFFD, 1};
    for (std::size_t i = 1; i <= need; ++i) {
        const auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, need + 1};
}

std::size_t length(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t pos = 0; pos < s.size(); pos += decode_at(s, pos).length) ++n;
    return n;
}

bool is_space(char32_t c) {
    if (c == 0x20 || (c >= 0x09 && c <= 0x0D)) return true;
    if (c < 0x85) return false;
    return c == 0x85 || c == 0xA0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
           c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

namespace {

struct Range {
    char32_t lo, hi;
};

// Sorted, non-overlapping.
constexpr Range kPunct[] = {
    {0x21, 0x23},     {0x25, 0x2A},     {0x2C, 0x2F},     {0x3A, 0x3B},     {0x3F, 0x40},
    {0x5B, 0x5D},     {0x5F, 0x5F},     {0x7B, 0x7B},     {0x7D, 0x7D},     {0xA1, 0xA1},
    {0xA7, 0xA7},     {0xAB, 0xAB},     {0xB6, 0xB7},     {0xBB, 0xBB},     {0xBF, 0xBF},
    {0x037E, 0x037E}, {0x0387, 0x0387}, {0x055A, 0x055F}, {0x0589, 0x058A}, {0x05BE, 0x05BE},
    {0x05C0, 0x05C0}, {0x05C3, 0x05C3}, {0x05C6, 0x05C6}, {0x05F3, 0x05F4}, {0x0609, 0x060A},
    {0x060C, 0x060D}, {0x061B, 0x061B}, {0x061D, 0x061F}, {0x066A, 0x066D}, {0x06D4, 0x06D4},
    {0x0964, 0x0965}, {0x0970, 0x0970}, {0x2010, 0x2027}, {0x2030, 0x2043}, {0x2045, 0x2051},
    {0x2053, 0x205E}, {0x207D, 0x207E}, {0x208D, 0x208E}, {0x2308, 0x230B}, {0x2329, 0x232A},
    {0x2E00, 0x2E2E}, {0x2E30, 0x2E4F}, {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F},
    {0xFD3E, 0xFD3F}, {0xFE10, 0xFE19}, {0xFE30, 0xFE52}, {0xFE54, 0xFE61}, {0xFF01, 0xFF03},
    {0xFF05, 0xFF0A}, {0xFF0C, 0xFF0F}, {0xFF1A, 0xFF1B}, {0xFF1F, 0xFF20}, {0xFF3B, 0xFF3D},
    {0xFF3F, 0xFF3F}, {0xFF5B, 0xFF5B}, {0xFF5D, 0xFF5D}, {0xFF5F, 0xFF65},
};

}  // namespace

bool is_punct(char32_t c) {
    const auto it = std::upper_bound(std::begin(kPunct), std::end(kPunct), c,
                                     [](char32_t v, const Range& r) { return v < r.lo; });
    if (it == std::begin(kPunct)) return false;
    return c <= std::prev(it)->hi;
}

std::vector<Span> token_spans(std::string_view s) {
    std::vector<Span> out;
    std::size_t pos = 0;
    bool in_token = false;
    std::size_t start = 0;
    while (pos < s.size()) {
        const auto d = decode_at(s, pos);
        if (is_separator(d.cp)) {
            if (in_token) out.push_back({start, pos});
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            start = pos;
        }
        pos += d.length;
    }
    if (in_token) out.push_back({start, s.size()});
    return out;
}

std::size_t tokenize_count(std::string_view s) { return token_spans(s).size(); }

std::vector<std::string> tokens(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& span : token_spans(s)) {
        std::string tok(span.of(s));
        for (auto& ch : tok)
            if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
        out.push_back(std::move(tok));
    }
    return out;
}

std::vector<std::string> token_set(std::string_view s) {
    auto toks = tokens(s);
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    return toks;
}

Span trim(std::string_view s, Span span) {
    std::size_t b = span.begin;
    while (b < span.end) {
        const auto d = decode_at(s, b);
        if (!is_space(d.cp)) break;
        b += d.length;
    }
    // Scan forward to find the end of the last non-space code point.
    std::size_t last_end = b;
    for (std::size_t pos = b; pos < span.end;) {
        const auto d = decode_at(s, pos);
        pos += d.length;
        if (!is_space(d.cp)) last_end = pos;
    }
    return {b, last_end};
}

std::string_view trim(std::string_view s) { return trim(s, Span{0, s.size()}).of(s); }

std::string strip_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t pos = 0; pos < s.size();) {
        const auto d = decode_at(s, pos);
        if (!is_space(d.cp)) out.append(s.substr(pos, d.length));
        pos += d.length;
    }
    return out;
}

}  // namespace longdoc::text
