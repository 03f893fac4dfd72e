#pragma once

// Shared test helpers and independent reference implementations used by the
// unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace support {

class TempDir {
public:
    explicit TempDir(const std::string& tag = "t") {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("longdoc-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    out << body;
}

// ---- metrics -------------------------------------------------------------

struct OracleScores {
    std::vector<double> p, r, f1;
    double macro_p = 0, macro_r = 0, macro_f1 = 0, accuracy = 0;
};

inline double safe_div(double a, double b) { return b == 0 ? 0.0 : a / b; }

inline OracleScores oracle_report(const std::vector<std::vector<std::uint64_t>>& m) {
    const std::size_t k = m.size();
    OracleScores o;
    double n = 0, diag = 0;
    for (std::size_t g = 0; g < k; ++g)
        for (std::size_t q = 0; q < k; ++q) {
            n += static_cast<double>(m[g][q]);
            if (g == q) diag += static_cast<double>(m[g][q]);
        }
    for (std::size_t c = 0; c < k; ++c) {
        double tp = static_cast<double>(m[c][c]), fp = 0, fn = 0;
        for (std::size_t x = 0; x < k; ++x) {
            if (x == c) continue;
            fp += static_cast<double>(m[x][c]);
            fn += static_cast<double>(m[c][x]);
        }
        const double p = safe_div(tp, tp + fp);
        const double r = safe_div(tp, tp + fn);
        o.p.push_back(p);
        o.r.push_back(r);
        o.f1.push_back(safe_div(2 * p * r, p + r));
    }
    for (std::size_t c = 0; c < k; ++c) {
        o.macro_p += o.p[c] / static_cast<double>(k);
        o.macro_r += o.r[c] / static_cast<double>(k);
        o.macro_f1 += o.f1[c] / static_cast<double>(k);
    }
    o.accuracy = safe_div(diag, n);
    return o;
}

// ---- softmax -------------------------------------------------------------

inline std::vector<double> oracle_softmax(const std::vector<double>& z) {
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : z) hi = std::max(hi, v);
    std::vector<double> e(z.size());
    double s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) s += e[i] = std::exp(z[i] - hi);
    for (double& v : e) v /= s;
    return e;
}

// ---- mmr -----------------------------------------------------------------

enum class OKernel { Angular, Cosine, Euclidean, Jaccard };

struct OItem {
    std::size_t index;
    std::vector<double> v;
    std::set<std::string> tokens;
};

inline double o_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double o_sim(OKernel k, const OItem& a, const OItem& b) {
    switch (k) {
        case OKernel::Cosine:
        case OKernel::Angular: {
            const double c = o_dot(a.v, b.v) / (std::sqrt(o_dot(a.v, a.v)) * std::sqrt(o_dot(b.v, b.v)));
            if (k == OKernel::Cosine) return c;
            return 1.0 - std::acos(std::min(1.0, std::max(-1.0, c))) / 3.14159265358979323846;
        }
        case OKernel::Euclidean: {
            double s = 0;
            for (std::size_t i = 0; i < a.v.size(); ++i) s += (a.v[i] - b.v[i]) * (a.v[i] - b.v[i]);
            return 1.0 / (1.0 + std::sqrt(s));
        }
        case OKernel::Jaccard: {
            if (a.tokens.empty() && b.tokens.empty()) return 1.0;
            std::size_t inter = 0;
            for (const auto& t : a.tokens) inter += b.tokens.count(t);
            return static_cast<double>(inter) / static_cast<double>(a.tokens.size() + b.tokens.size() - inter);
        }
    }
    return 0;
}

// Re-evaluates every candidate's full objective from scratch at every step.
inline std::vector<std::size_t> oracle_mmr(const std::vector<OItem>& xs, const OItem& query, double lambda,
                                           OKernel sim1, OKernel sim2, std::size_t k) {
    std::vector<std::size_t> chosen_pos;
    std::vector<std::size_t> out;
    while (out.size() < std::min(k, xs.size())) {
        std::size_t best = xs.size();
        double best_score = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (std::find(chosen_pos.begin(), chosen_pos.end(), i) != chosen_pos.end()) continue;
            double penalty = 0;
            bool first = true;
            for (std::size_t j : chosen_pos) {
                const double s = o_sim(sim2, xs[i], xs[j]);
                penalty = first ? s : std::max(penalty, s);
                first = false;
            }
            const double score = lambda * o_sim(sim1, xs[i], query) - (1.0 - lambda) * penalty;
            const bool better = best == xs.size() || score > best_score ||
                                (score == best_score && xs[i].index < xs[best].index);
            if (better) {
                best = i;
                best_score = score;
            }
        }
        chosen_pos.push_back(best);
        out.push_back(xs[best].index);
    }
    return out;
}

// ---- segmenter -----------------------------------------------------------

inline bool o_is_ws_byte_seq(const std::string& s, std::size_t i, std::size_t& len) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
        len = 1;
        return true;
    }
    // U+00A0, U+2000..U+200A, U+2028, U+2029, U+202F, U+205F, U+3000, U+1680, U+0085
    if (c == 0xC2 && i + 1 < s.size()) {
        const unsigned char d = static_cast<unsigned char>(s[i + 1]);
        if (d == 0xA0 || d == 0x85) {
            len = 2;
            return true;
        }
    }
    if (c == 0xE2 && i + 2 < s.size()) {
        const unsigned char d = static_cast<unsigned char>(s[i + 1]);
        const unsigned char e = static_cast<unsigned char>(s[i + 2]);
        if (d == 0x80 && ((e >= 0x80 && e <= 0x8A) || e == 0xA8 || e == 0xA9 || e == 0xAF)) {
            len = 3;
            return true;
        }
        if (d == 0x81 && e == 0x9F) {
            len = 3;
            return true;
        }
    }
    if (c == 0xE3 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
        static_cast<unsigned char>(s[i + 2]) == 0x80) {
        len = 3;
        return true;
    }
    if (c == 0xE1 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x9A &&
        static_cast<unsigned char>(s[i + 2]) == 0x80) {
        len = 3;
        return true;
    }
    return false;
}

inline std::string squeeze_ws(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t len = 0;
        if (o_is_ws_byte_seq(s, i, len)) {
            i += len;
            continue;
        }
        out += s[i++];
    }
    return out;
}

}  // namespace support
