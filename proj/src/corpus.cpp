#include "longdoc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "longdoc/error.hpp"
#include "longdoc/rng.hpp"
#include "longdoc/segmenter.hpp"
#include "longdoc/text.hpp"

namespace longdoc {

using nlohmann::json;

LabelVocab::LabelVocab(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw ContractError("empty class name in vocabulary");
        if (!index_.emplace(names_[i], i).second) throw ContractError("duplicate class name: " + names_[i]);
    }
}

std::optional<std::size_t> LabelVocab::find(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t LabelVocab::index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw ContractError("unknown label: " + name);
}

const Document* Corpus::find(const std::string& doc_id) const {
    for (const auto& doc : documents)
        if (doc.doc_id == doc_id) return &doc;
    return nullptr;
}

LabelVocab vocab_of(const std::vector<Document>& docs) {
    std::set<std::string> labels;
    for (const auto& doc : docs)
        if (doc.label) labels.insert(*doc.label);
    return LabelVocab({labels.begin(), labels.end()});
}

Corpus parse_corpus(std::istream& in) {
    Corpus corpus;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        const auto where = "line " + std::to_string(line_no) + ": ";
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw InputError(where + "malformed JSON (" + e.what() + ")");
        }
        if (!record.is_object()) throw InputError(where + "expected a JSON object");
        const auto id = record.find("id");
        const auto body = record.find("text");
        if (id == record.end() || !id->is_string()) throw InputError(where + "missing string field \"id\"");
        if (body == record.end() || !body->is_string()) throw InputError(where + "missing string field \"text\"");

        Document doc;
        doc.doc_id = id->get<std::string>();
        doc.text = body->get<std::string>();
        if (doc.doc_id.empty()) throw InputError(where + "empty id");
        if (const auto label = record.find("label"); label != record.end() && !label->is_null()) {
            if (!label->is_string()) throw InputError(where + "field \"label\" must be a string");
            doc.label = label->get<std::string>();
        }
        if (!seen.insert(doc.doc_id).second) throw InputError("duplicate document id: " + doc.doc_id);
        if (text::trim(doc.text).empty()) throw InputError("empty text for document id: " + doc.doc_id);
        corpus.documents.push_back(std::move(doc));
    }
    corpus.vocab = vocab_of(corpus.documents);
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus file: " + path.string());
    try {
        return parse_corpus(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_corpus(std::ostream& out, const std::vector<Document>& docs) {
    for (const auto& doc : docs) {
        json record = {{"id", doc.doc_id}, {"text", doc.text}};
        if (doc.label) record["label"] = *doc.label;
        out << record.dump() << '\n';
    }
}

void save_corpus(const std::filesystem::path& path, const std::vector<Document>& docs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write corpus file: " + path.string());
    write_corpus(out, docs);
}

SplitManifest split_stratified(const Corpus& corpus, SplitFractions fractions, std::uint64_t seed) {
    double total = 0;
    for (double f : fractions) {
        if (!(f >= 0)) throw ContractError("split fractions must be non-negative");
        total += f;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ContractError("split fractions must sum to 1");

    std::vector<std::vector<std::size_t>> by_class(corpus.vocab.size());
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        const auto& doc = corpus.documents[i];
        if (!doc.label) throw ContractError("cannot stratify unlabeled document: " + doc.doc_id);
        by_class[corpus.vocab.index(*doc.label)].push_back(i);
    }

    // 0 = train, 1 = valid, 2 = test
    std::vector<int> assignment(corpus.documents.size(), 0);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        if (members.size() < 3)
            throw ContractError("class \"" + corpus.vocab.name(c) + "\" has fewer than 3 documents (" +
                                std::to_string(members.size()) + ")");
        Rng rng(splitmix64(seed ^ fnv1a64(corpus.vocab.name(c))));
        rng.shuffle(std::span<std::size_t>(members));

        // Largest remainder; ties go to the earlier split.
        const double n = static_cast<double>(members.size());
        std::array<std::size_t, 3> counts{};
        std::array<double, 3> rema{};
        std::size_t assigned = 0;
        for (int s = 0; s < 3; ++s) {
            const double exact = fractions[s] * n;
            counts[s] = static_cast<std::size_t>(std::floor(exact + 1e-9));
            rema[s] = exact - static_cast<double>(counts[s]);
            assigned += counts[s];
        }
        std::array<int, 3> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rema[a] > rema[b]; });
        for (std::size_t r = 0; assigned < members.size(); ++r, ++assigned) ++counts[order[r % 3]];

        std::size_t k = 0;
        for (int s = 0; s < 3; ++s)
            for (std::size_t j = 0; j < counts[s]; ++j) assignment[members[k++]] = s;
    }

    SplitManifest manifest;
    manifest.seed = seed;
    manifest.fractions = fractions;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        const auto& id = corpus.documents[i].doc_id;
        (assignment[i] == 0 ? manifest.train : assignment[i] == 1 ? manifest.valid : manifest.test).push_back(id);
    }
    return manifest;
}

std::string manifest_to_json(const SplitManifest& manifest) {
    json j = {{"seed", manifest.seed},
              {"fractions", manifest.fractions},
              {"train", manifest.train},
              {"valid", manifest.valid},
              {"test", manifest.test}};
    return j.dump(2);
}

SplitManifest manifest_from_json(const std::string& text) {
    try {
        const auto j = json::parse(text);
        SplitManifest m;
        m.seed = j.at("seed").get<std::uint64_t>();
        m.fractions = j.at("fractions").get<SplitFractions>();
        m.train = j.at("train").get<std::vector<std::string>>();
        m.valid = j.at("valid").get<std::vector<std::string>>();
        m.test = j.at("test").get<std::vector<std::string>>();
        return m;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed split manifest: ") + e.what());
    }
}

void save_manifest(const std::filesystem::path& path, const SplitManifest& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write manifest: " + path.string());
    out << manifest_to_json(manifest) << '\n';
}

SplitManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return manifest_from_json(buf.str());
}

void check_manifest(const Corpus& corpus, const SplitManifest& manifest) {
    std::unordered_set<std::string> known;
    for (const auto& doc : corpus.documents) known.insert(doc.doc_id);
    std::unordered_set<std::string> ids;
    for (const auto* list : {&manifest.train, &manifest.valid, &manifest.test})
        for (const auto& id : *list) {
            if (!ids.insert(id).second) throw ContractError("manifest lists document twice: " + id);
            if (!known.count(id)) throw ContractError("manifest names document not in corpus: " + id);
        }
    if (ids.size() != corpus.documents.size())
        throw ContractError("manifest does not cover the corpus (" + std::to_string(ids.size()) + " of " +
                            std::to_string(corpus.documents.size()) + " documents)");
}

Document drop_leading_boilerplate(const Document& doc, std::size_t n_sentences) {
    if (n_sentences == 0) return doc;
    const auto spans = split_boundaries(doc.text);
    if (spans.empty()) return doc;
    Document out = doc;
    const auto& keep_from = spans.size() <= n_sentences ? spans.back() : spans[n_sentences];
    out.text = std::string(text::trim(std::string_view(doc.text).substr(keep_from.begin)));
    return out;
}

namespace {

// Arabic letters ب..ي, skipping the tatweel and the non-letters between.
std::string random_word(Rng& rng, std::size_t min_len, std::size_t max_len) {
    static const std::u32string letters = U"ابتثجحخدذرزسشصضطظعغفقكلمنهوي";
    std::string word;
    const auto len = rng.between(min_len, max_len);
    for (std::uint64_t i = 0; i < len; ++i) {
        const char32_t c = letters[rng.below(letters.size())];
        // two-byte UTF-8, all of these are in U+0600..U+06FF
        word.push_back(static_cast<char>(0xC0 | (c >> 6)));
        word.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
    return word;
}

std::vector<std::string> make_pool(Rng& rng, std::size_t size, std::set<std::string>& taken) {
    std::vector<std::string> pool;
    while (pool.size() < size) {
        auto w = random_word(rng, 3, 7);
        if (taken.insert(w).second) pool.push_back(std::move(w));
    }
    return pool;
}

std::string make_sentence(Rng& rng, const std::vector<std::string>& pool, const SyntheticSpec& spec,
                          bool allow_numbers) {
    static const char* const kEndings[] = {".", ".", ".", ".", "؟", "!", "؛"};
    const auto len = rng.between(spec.min_sentence_tokens, spec.max_sentence_tokens);
    std::string s;
    for (std::uint64_t i = 0; i < len; ++i) {
        if (i) s += ' ';
        if (allow_numbers && rng.below(25) == 0) {
            s += std::to_string(rng.below(100)) + "." + std::to_string(rng.below(10));
        } else {
            s += pool[rng.below(pool.size())];
        }
        if (i + 1 < len && rng.below(10) == 0) s += "،";
    }
    s += kEndings[rng.below(std::size(kEndings))];
    return s;
}

}  // namespace

std::size_t signal_sentences_per_doc(const SyntheticSpec& spec) {
    const double exact = spec.signal_ratio * static_cast<double>(spec.sentences_per_doc);
    return std::min(spec.sentences_per_doc, static_cast<std::size_t>(std::ceil(exact - 1e-9)));
}

std::vector<Document> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.classes == 0 || spec.docs_per_class == 0 || spec.sentences_per_doc == 0)
        throw ContractError("synthetic corpus counts must be >= 1");
    if (!(spec.signal_ratio > 0 && spec.signal_ratio <= 1)) throw ContractError("signal_ratio must be in (0, 1]");
    if (spec.min_sentence_tokens == 0 || spec.min_sentence_tokens > spec.max_sentence_tokens)
        throw ContractError("synthetic sentence length range is empty");

    Rng rng(spec.seed);
    std::set<std::string> taken;
    const auto background = make_pool(rng, spec.background_pool_size, taken);
    std::vector<std::vector<std::string>> class_pools;
    for (std::size_t c = 0; c < spec.classes; ++c) class_pools.push_back(make_pool(rng, spec.class_pool_size, taken));

    const auto n_signal = signal_sentences_per_doc(spec);
    std::vector<Document> docs;
    docs.reserve(spec.classes * spec.docs_per_class);
    char buf[64];
    for (std::size_t c = 0; c < spec.classes; ++c) {
        std::snprintf(buf, sizeof buf, "topic_%02zu", c);
        const std::string label = buf;
        for (std::size_t d = 0; d < spec.docs_per_class; ++d) {
            std::vector<std::size_t> positions(spec.sentences_per_doc);
            for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
            rng.shuffle(std::span<std::size_t>(positions));
            std::vector<bool> is_signal(spec.sentences_per_doc, false);
            for (std::size_t i = 0; i < n_signal; ++i) is_signal[positions[i]] = true;

            std::string body;
            for (std::size_t i = 0; i < spec.sentences_per_doc; ++i) {
                if (i) body += (i % 8 == 0) ? "\n" : " ";
                body += is_signal[i] ? make_sentence(rng, class_pools[c], spec, false)
                                     : make_sentence(rng, background, spec, true);
            }
            std::snprintf(buf, sizeof buf, "doc-%02zu-%05zu", c, d);
            docs.push_back({buf, std::move(body), label});
        }
    }
    return docs;
}

}  // namespace longdoc
