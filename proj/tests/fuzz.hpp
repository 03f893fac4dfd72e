#pragma once

// Random mixed-script documents and an invariant checker for segment().

#include <string>
#include <vector>

#include "longdoc/rng.hpp"
#include "longdoc/segmenter.hpp"
#include "support.hpp"

namespace fuzz {

// Everything the generator emits that is not part of a word.
inline const std::vector<std::string>& separators() {
    static const std::vector<std::string> s = {" ", "\n", "\t", " ", "　", ".", "!", "؟", "؛", "…",
                                               "،", ",", ";", ":", "«", "»", "\"", "'", "(", ")", "-", "–"};
    return s;
}

inline std::vector<std::string> utf8_units(const std::string& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size();) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        const std::size_t n = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
        out.push_back(s.substr(i, n));
        i += n;
    }
    return out;
}

// Independent token counter for generator output.
inline std::size_t count_tokens(const std::string& s) {
    std::size_t n = 0;
    bool in_token = false;
    for (const auto& u : utf8_units(s)) {
        bool sep = false;
        for (const auto& x : separators()) sep = sep || x == u;
        if (!sep && !in_token) ++n;
        in_token = !sep;
    }
    return n;
}

inline std::string word(longdoc::Rng& rng) {
    static const std::vector<std::string> arabic = {"ب", "ت", "ث", "ج", "ح", "خ", "د", "ر", "س", "ع", "ق", "ل", "م", "ن", "ي"};
    static const std::vector<std::string> latin = {"a", "b", "c", "x", "y", "z", "K", "Q"};
    static const std::vector<std::string> digits = {"0", "1", "2", "3", "7", "9", "٣", "٤"};
    std::string w;
    const auto len = rng.between(1, 7);
    switch (rng.below(4)) {
        case 0:
        case 1:
            for (std::uint64_t i = 0; i < len; ++i) w += arabic[rng.below(arabic.size())];
            break;
        case 2:
            for (std::uint64_t i = 0; i < len; ++i) w += latin[rng.below(latin.size())];
            break;
        default:
            for (std::uint64_t i = 0; i < len; ++i) w += digits[rng.below(digits.size())];
            if (rng.below(2)) {  // decimal
                w += ".";
                w += digits[rng.below(digits.size())];
            }
    }
    return w;
}

// Documents of 1..400 words with terminal marks, commas, quotes, brackets,
// newlines and odd whitespace scattered through them.
inline std::string document(longdoc::Rng& rng) {
    std::string s;
    const auto words = rng.below(10) == 0 ? rng.between(1, 20) : rng.between(1, 400);
    const bool long_runs = rng.below(5) == 0;  // few boundaries
    for (std::uint64_t i = 0; i < words; ++i) {
        if (i) {
            const auto r = rng.below(40);
            s += r == 0 ? "\n" : r == 1 ? "  " : r == 2 ? " " : r == 3 ? "\t" : " ";
        }
        if (rng.below(30) == 0) s += rng.below(2) ? "«" : "(";
        s += word(rng);
        const auto p = rng.below(long_runs ? 200 : 12);
        if (p == 0) s += ".";
        else if (p == 1) s += "؟";
        else if (p == 2) s += "!";
        else if (p == 3) s += "؛";
        else if (p == 4) s += "…";
        else if (p == 5) s += "،";
        else if (p == 6) s += "...";
        else if (p == 7) s += ".»";
        else if (p == 8) s += "!)";
        else if (p == 9) s += ",";
        else if (p == 10) s += " - ";
    }
    if (rng.below(3) == 0) s += ".";
    if (rng.below(4) == 0) s = "  \n" + s + " \n";
    return s;
}

inline longdoc::SegmentConfig config(longdoc::Rng& rng) {
    longdoc::SegmentConfig c;
    if (rng.below(2)) return c;
    c.min_tokens = rng.between(1, 40);
    c.max_tokens = c.min_tokens + rng.between(0, 120);
    return c;
}

// Returns a description of the first violated invariant, or "" when all hold.
inline std::string violations(const longdoc::Document& doc, const std::vector<longdoc::Sentence>& out,
                              const longdoc::SegmentConfig& config) {
    if (out.empty()) return "no sentences";
    std::string joined;
    std::size_t undershoot = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& s = out[i];
        const auto where = "sentence " + std::to_string(i) + ": ";
        if (s.index != i) return where + "index " + std::to_string(s.index);
        if (s.doc_id != doc.doc_id) return where + "doc_id";
        if (s.label != doc.label) return where + "label";
        if (support::squeeze_ws(s.text).empty()) return where + "empty";
        const auto tokens = count_tokens(s.text);
        if (tokens != s.token_count)
            return where + "token_count " + std::to_string(s.token_count) + " != " + std::to_string(tokens);
        if (s.token_count > config.max_tokens) return where + "over budget: " + std::to_string(s.token_count);
        if (s.token_count < config.min_tokens) {
            ++undershoot;
            if (i + 1 != out.size()) return where + "undershoot before the last sentence";
        }
        joined += s.text;
        joined += ' ';
    }
    if (undershoot > 1) return "more than one undershoot";
    if (support::squeeze_ws(joined) != support::squeeze_ws(doc.text)) return "coverage";
    for (const auto& s : out) {
        const longdoc::Document single{doc.doc_id, s.text, doc.label};
        const auto again = longdoc::segment(single, config);
        if (again.size() != 1 || again[0].text != s.text || again[0].token_count != s.token_count)
            return "not idempotent on sentence " + std::to_string(s.index) + " (" + std::to_string(again.size()) +
                   " pieces)";
    }
    return "";
}

}  // namespace fuzz
