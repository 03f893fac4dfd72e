#include "longdoc/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "longdoc/error.hpp"
#include "longdoc/parallel.hpp"
#include "longdoc/rng.hpp"
#include "longdoc/text.hpp"

namespace longdoc {

using nlohmann::json;

Strategy strategy_from_name(std::string_view name) {
    if (name == "aggregate") return Strategy::Aggregate;
    if (name == "mmr") return Strategy::Mmr;
    if (name == "truncate") return Strategy::Truncate;
    throw ContractError("unknown strategy: " + std::string(name));
}

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Aggregate: return "aggregate";
        case Strategy::Mmr: return "mmr";
        case Strategy::Truncate: return "truncate";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Config (de)serialization

namespace {

// Reads keys out of one JSON object and rejects anything left unread.
class Fields {
public:
    Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ContractError(where_ + " must be a JSON object");
    }

    template <typename T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            throw ContractError(where_ + "." + key + " has the wrong type");
        }
    }

    const json* sub(const char* key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ContractError("unknown config key " + where_ + "." + it.key());
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

json to_json_value(const PipelineConfig& c) {
    json j;
    j["name"] = c.display_name();
    j["strategy"] = strategy_name(c.strategy);
    j["segment"] = {{"min_tokens", c.segment.min_tokens},
                    {"max_tokens", c.segment.max_tokens},
                    {"hard_cap", c.segment.hard_cap}};
    if (c.mmr)
        j["mmr"] = {{"lambda", c.mmr->lambda},
                    {"k", c.mmr->k},
                    {"token_budget", c.mmr->token_budget},
                    {"sim1", kernel_name(c.mmr->sim1)},
                    {"sim2", kernel_name(c.mmr->sim2)}};
    j["train"] = {{"epochs", c.train.epochs},
                  {"learning_rate", c.train.learning_rate},
                  {"adam_epsilon", c.train.adam_epsilon},
                  {"adam_beta1", c.train.adam_beta1},
                  {"adam_beta2", c.train.adam_beta2},
                  {"warmup_ratio", c.train.warmup_ratio},
                  {"max_grad_norm", c.train.max_grad_norm},
                  {"train_batch", c.train.train_batch},
                  {"valid_batch", c.train.valid_batch},
                  {"seed", c.train.seed}};
    if (c.provider.kind == ProviderConfig::Kind::Reference)
        j["provider"] = {{"type", "reference"}, {"dim", c.provider.dim}, {"seed", c.provider.seed}};
    else
        j["provider"] = {{"type", "remote"},
                         {"url", c.provider.url},
                         {"dim", c.provider.dim},
                         {"timeout_s", c.provider.timeout_s},
                         {"max_batch", c.provider.max_batch}};
    j["aggregation"] = aggregation_name(c.aggregation);
    j["truncate_tokens"] = c.truncate_tokens;
    j["drop_leading"] = c.drop_leading;
    return j;
}

}  // namespace

void PipelineConfig::validate() const {
    segment.validate();
    train.validate();
    if (strategy == Strategy::Mmr && !mmr) throw ContractError("strategy \"mmr\" requires an \"mmr\" config block");
    if (strategy != Strategy::Mmr && mmr)
        throw ContractError("an \"mmr\" config block is only valid with strategy \"mmr\"");
    if (mmr) mmr->validate();
    if (strategy == Strategy::Truncate && truncate_tokens == 0) throw ContractError("truncate_tokens must be >= 1");
    if (provider.kind == ProviderConfig::Kind::Reference && provider.dim < 8)
        throw ContractError("reference provider dim must be >= 8");
    if (provider.kind == ProviderConfig::Kind::Remote) {
        if (provider.url.empty()) throw ContractError("remote provider requires a url");
        if (!(provider.timeout_s > 0)) throw ContractError("remote provider timeout must be positive");
        if (provider.max_batch == 0) throw ContractError("remote provider max_batch must be >= 1");
    }
}

std::string PipelineConfig::display_name() const { return name.empty() ? std::string(strategy_name(strategy)) : name; }

std::string PipelineConfig::to_json() const { return to_json_value(*this).dump(); }

std::string PipelineConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json())));
    return buf;
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig c;
    Fields top(j, "config");
    top.get("name", c.name);
    std::string s = "aggregate";
    top.get("strategy", s);
    c.strategy = strategy_from_name(s);

    if (const auto* seg = top.sub("segment")) {
        Fields f(*seg, "segment");
        f.get("min_tokens", c.segment.min_tokens);
        f.get("max_tokens", c.segment.max_tokens);
        f.get("hard_cap", c.segment.hard_cap);
        f.done();
    }
    if (const auto* m = top.sub("mmr"); m && !m->is_null()) {
        MmrConfig mc;
        Fields f(*m, "mmr");
        f.get("lambda", mc.lambda);
        f.get("k", mc.k);
        f.get("token_budget", mc.token_budget);
        std::string sim1 = "angular", sim2 = "angular";
        f.get("sim1", sim1);
        f.get("sim2", sim2);
        mc.sim1 = kernel_from_name(sim1);
        mc.sim2 = kernel_from_name(sim2);
        f.done();
        c.mmr = mc;
    }
    if (const auto* t = top.sub("train")) {
        Fields f(*t, "train");
        f.get("epochs", c.train.epochs);
        f.get("learning_rate", c.train.learning_rate);
        f.get("adam_epsilon", c.train.adam_epsilon);
        f.get("adam_beta1", c.train.adam_beta1);
        f.get("adam_beta2", c.train.adam_beta2);
        f.get("warmup_ratio", c.train.warmup_ratio);
        f.get("max_grad_norm", c.train.max_grad_norm);
        f.get("train_batch", c.train.train_batch);
        f.get("valid_batch", c.train.valid_batch);
        f.get("seed", c.train.seed);
        f.done();
    }
    if (const auto* p = top.sub("provider")) {
        Fields f(*p, "provider");
        std::string type = "reference";
        f.get("type", type);
        if (type == "reference") {
            c.provider.kind = ProviderConfig::Kind::Reference;
            f.get("dim", c.provider.dim);
            f.get("seed", c.provider.seed);
        } else if (type == "remote") {
            c.provider.kind = ProviderConfig::Kind::Remote;
            c.provider.dim = 0;
            f.get("url", c.provider.url);
            f.get("dim", c.provider.dim);
            f.get("timeout_s", c.provider.timeout_s);
            f.get("max_batch", c.provider.max_batch);
        } else {
            throw ContractError("provider.type must be \"reference\" or \"remote\", got \"" + type + "\"");
        }
        f.done();
    }
    std::string agg = "mean";
    top.get("aggregation", agg);
    c.aggregation = aggregation_from_name(agg);
    top.get("truncate_tokens", c.truncate_tokens);
    top.get("drop_leading", c.drop_leading);
    top.get("workers", c.workers);
    top.done();
    c.validate();
    return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::shared_ptr<const EmbeddingProvider> make_provider(const ProviderConfig& config) {
    if (config.kind == ProviderConfig::Kind::Reference)
        return std::make_shared<ReferenceEmbedder>(config.dim, config.seed);
    RemoteConfig rc;
    rc.url = config.url;
    rc.timeout = std::chrono::milliseconds(static_cast<long long>(config.timeout_s * 1000));
    rc.expected_dim = config.dim;
    rc.max_batch = config.max_batch;
    return std::make_shared<RemoteEmbedder>(rc);
}

// ---------------------------------------------------------------------------
// Pipeline

Pipeline::Pipeline(PipelineConfig config, std::shared_ptr<const EmbeddingProvider> provider)
    : config_(std::move(config)), provider_(std::move(provider)) {
    config_.validate();
    if (!provider_) provider_ = make_provider(config_.provider);
}

std::vector<Sentence> Pipeline::segment_document(const Document& doc, std::vector<std::string>* warnings) const {
    if (config_.drop_leading == 0) return segment(doc, config_.segment, warnings);
    return segment(drop_leading_boilerplate(doc, config_.drop_leading), config_.segment, warnings);
}

KeySentences Pipeline::select_key_sentences(const std::vector<Sentence>& sentences) const {
    const MmrConfig& mc = *config_.mmr;
    KeySentences out;
    if (sentences.empty()) return out;

    std::vector<std::string> texts;
    texts.reserve(sentences.size());
    for (const auto& s : sentences) texts.push_back(s.text);
    auto vectors = embed_all(*provider_, texts, "sentences of document " + sentences.front().doc_id);

    MmrItem query;
    query.vector = doc_centroid(vectors);
    std::vector<MmrItem> items(sentences.size());
    std::set<std::string> all_tokens;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        items[i].index = i;
        items[i].vector = std::move(vectors[i]);
        if (mc.sim1 == Kernel::Jaccard || mc.sim2 == Kernel::Jaccard) {
            items[i].tokens = text::token_set(sentences[i].text);
            all_tokens.insert(items[i].tokens.begin(), items[i].tokens.end());
        }
    }
    query.tokens.assign(all_tokens.begin(), all_tokens.end());

    if (mc.k > 0) {
        out.selection = mmr_select(items, query, mc, mc.k);
        out.kept = out.selection.chosen;
    } else {
        out.selection = mmr_select(items, query, mc, items.size());
        std::size_t used = 0;
        for (std::size_t idx : out.selection.chosen) {
            const std::size_t t = sentences[idx].token_count;
            if (!out.kept.empty() && used + t > mc.token_budget) break;
            out.kept.push_back(idx);
            used += t;
        }
        out.selection.chosen.resize(out.kept.size());
        out.selection.scores.resize(out.kept.size());
    }
    std::sort(out.kept.begin(), out.kept.end());
    for (std::size_t idx : out.kept) {
        if (!out.text.empty()) out.text += ' ';
        out.text += sentences[idx].text;
    }
    return out;
}

std::string Pipeline::truncate(const Document& doc) const {
    const Document d = config_.drop_leading ? drop_leading_boilerplate(doc, config_.drop_leading) : doc;
    const auto spans = text::token_spans(d.text);
    if (spans.size() <= config_.truncate_tokens) return std::string(text::trim(d.text));
    const auto end = spans[config_.truncate_tokens - 1].end;
    return std::string(text::trim(std::string_view(d.text).substr(0, end)));
}

std::vector<std::string> Pipeline::model_inputs(const Document& doc) const {
    switch (config_.strategy) {
        case Strategy::Aggregate: {
            std::vector<std::string> out;
            for (auto& s : segment_document(doc)) out.push_back(std::move(s.text));
            return out;
        }
        case Strategy::Mmr: return {select_key_sentences(segment_document(doc)).text};
        case Strategy::Truncate: return {truncate(doc)};
    }
    return {};
}

std::vector<Pipeline::Encoded> Pipeline::encode(const std::vector<const Document*>& docs) const {
    std::vector<Encoded> out(docs.size());
    parallel_for(docs.size(), config_.workers, [&](std::size_t i) {
        const auto inputs = model_inputs(*docs[i]);
        if (inputs.empty()) throw ContractError("document " + docs[i]->doc_id + " produced no model input");
        out[i].vectors = embed_all(*provider_, inputs, "inputs of document " + docs[i]->doc_id);
    });
    return out;
}

namespace {

std::vector<const Document*> resolve(const Corpus& corpus, const std::vector<std::string>& ids) {
    std::unordered_map<std::string, const Document*> by_id;
    for (const auto& d : corpus.documents) by_id.emplace(d.doc_id, &d);
    std::vector<const Document*> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw ContractError("manifest names document not in corpus: " + id);
        out.push_back(it->second);
    }
    return out;
}

DocPrediction decide(const LinearHead& head, const std::vector<EmbeddingVector>& vectors, Strategy strategy,
                     Aggregation aggregation) {
    std::vector<ClassDistribution> dists;
    dists.reserve(vectors.size());
    for (const auto& v : vectors) dists.push_back(forward(head, v));
    // Single-input strategies keep the head's distribution as is.
    return aggregate(strategy == Strategy::Aggregate ? aggregation : Aggregation::Mean, dists);
}

double doc_macro_f1(const LinearHead& head, const std::vector<std::vector<EmbeddingVector>>& inputs,
                    const std::vector<std::size_t>& gold, Strategy strategy, Aggregation aggregation) {
    std::vector<std::size_t> pred;
    pred.reserve(gold.size());
    for (const auto& v : inputs) pred.push_back(decide(head, v, strategy, aggregation).final_class);
    return report(confusion(gold, pred, head.vocab)).macro_f1;
}

}  // namespace

TrainResult Pipeline::train(const Corpus& corpus, const SplitManifest& manifest) const {
    check_manifest(corpus, manifest);
    const auto train_docs = resolve(corpus, manifest.train);
    const auto valid_docs = resolve(corpus, manifest.valid);

    const auto label_of = [&](const Document* d) {
        if (!d->label) throw ContractError("unlabeled document in training data: " + d->doc_id);
        return corpus.vocab.index(*d->label);
    };

    auto train_enc = encode(train_docs);
    std::vector<LabeledVector> examples;
    for (std::size_t i = 0; i < train_docs.size(); ++i) {
        const auto y = label_of(train_docs[i]);
        for (auto& v : train_enc[i].vectors) examples.push_back({std::move(v), y});
    }

    // Document-level validation; fall back to the training documents when the
    // validation split is empty.
    const auto& vdocs = valid_docs.empty() ? train_docs : valid_docs;
    auto valid_enc = encode(vdocs);
    std::vector<std::vector<EmbeddingVector>> valid_inputs;
    std::vector<std::size_t> valid_gold;
    for (std::size_t i = 0; i < vdocs.size(); ++i) {
        valid_gold.push_back(label_of(vdocs[i]));
        valid_inputs.push_back(std::move(valid_enc[i].vectors));
    }

    return train_head(examples, corpus.vocab, provider_->info().dim, config_.train, [&](const LinearHead& head) {
        return doc_macro_f1(head, valid_inputs, valid_gold, config_.strategy, config_.aggregation);
    });
}

std::vector<DocResult> Pipeline::predict(const LinearHead& head, const std::vector<const Document*>& docs) const {
    const auto enc = encode(docs);
    std::vector<DocResult> out(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        out[i].doc_id = docs[i]->doc_id;
        out[i].label = docs[i]->label;
        out[i].prediction = decide(head, enc[i].vectors, config_.strategy, config_.aggregation);
        out[i].prediction.doc_id = docs[i]->doc_id;
    }
    return out;
}

EvalOutcome Pipeline::evaluate(const LinearHead& head, const Corpus& corpus, const SplitManifest& manifest) const {
    check_manifest(corpus, manifest);
    const auto docs = resolve(corpus, manifest.test);
    std::vector<std::string> gold;
    for (const auto* d : docs) {
        if (!d->label) throw ContractError("unlabeled document in test split: " + d->doc_id);
        head.vocab.index(*d->label);  // names an unseen label
        gold.push_back(*d->label);
    }
    EvalOutcome out;
    out.documents = predict(head, docs);
    std::vector<std::string> pred;
    for (const auto& r : out.documents) pred.push_back(head.vocab.name(r.prediction.final_class));
    out.report = report(confusion(gold, pred, head.vocab));
    return out;
}

void Pipeline::check_head(const LinearHead& head, const CheckpointMeta& meta) const {
    const auto info = provider_->info();
    if (head.dim != info.dim)
        throw ContractError("checkpoint dim " + std::to_string(head.dim) + " does not match provider dim " +
                            std::to_string(info.dim));
    if (!meta.provider.empty() && meta.provider != info.name)
        throw ContractError("checkpoint was trained with provider \"" + meta.provider + "\", configured provider is \"" +
                            info.name + "\"");
}

// ---------------------------------------------------------------------------
// Commands

namespace commands {

namespace {

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << body;
    if (!body.empty() && body.back() != '\n') out << '\n';
}

json provenance(const PipelineConfig& config) {
    json j = {{"tool_version", kToolVersion},
              {"config_hash", config.hash()},
              {"name", config.display_name()},
              {"strategy", strategy_name(config.strategy)}};
    if (config.strategy == Strategy::Aggregate) j["aggregation"] = aggregation_name(config.aggregation);
    if (config.strategy == Strategy::Truncate) {
        j["truncate_tokens"] = config.truncate_tokens;
        j["note"] =
            "truncation baseline: classifies only the first truncate_tokens tokens; it stands in for the "
            "long-document baselines and does not reproduce them";
    }
    return j;
}

std::string prediction_label(const PipelineConfig& config) {
    if (config.strategy == Strategy::Aggregate)
        return "aggregate-" + std::string(aggregation_name(config.aggregation));
    return std::string(strategy_name(config.strategy));
}

json report_json(const EvalReport& r, const LabelVocab& vocab) { return json::parse(report_to_json(r, vocab)); }

json epochs_json(const TrainResult& result) {
    json epochs = json::array();
    for (const auto& e : result.epochs)
        epochs.push_back({{"epoch", e.epoch},
                          {"train_loss", e.train_loss},
                          {"valid_macro_f1", e.valid_macro_f1},
                          {"learning_rate", e.learning_rate}});
    return epochs;
}

}  // namespace

std::string generate(const SyntheticSpec& spec, const std::filesystem::path& out) {
    const auto docs = generate_synthetic(spec);
    save_corpus(out, docs);
    const json summary = {{"tool_version", kToolVersion},
                          {"documents", docs.size()},
                          {"classes", spec.classes},
                          {"signal_sentences_per_doc", signal_sentences_per_doc(spec)},
                          {"seed", spec.seed}};
    return summary.dump(2);
}

std::string split(const std::filesystem::path& corpus_path, SplitFractions fractions, std::uint64_t seed,
                  const std::filesystem::path& out) {
    const auto corpus = load_corpus(corpus_path);
    const auto manifest = split_stratified(corpus, fractions, seed);
    save_manifest(out, manifest);
    const json summary = {{"tool_version", kToolVersion},
                          {"train", manifest.train.size()},
                          {"valid", manifest.valid.size()},
                          {"test", manifest.test.size()},
                          {"seed", seed}};
    return summary.dump(2);
}

std::string segment(const PipelineConfig& config, const std::filesystem::path& corpus_path,
                    const std::filesystem::path& out) {
    const auto corpus = load_corpus(corpus_path);
    const Pipeline pipeline(config, std::make_shared<ReferenceEmbedder>(8));
    std::vector<std::vector<Sentence>> per_doc(corpus.documents.size());
    std::vector<std::vector<std::string>> warnings(corpus.documents.size());
    parallel_for(corpus.documents.size(), config.workers, [&](std::size_t i) {
        per_doc[i] = pipeline.segment_document(corpus.documents[i], &warnings[i]);
    });

    std::ofstream os(out, std::ios::binary);
    if (!os) throw InputError("cannot write " + out.string());
    std::size_t n = 0;
    json all_warnings = json::array();
    std::vector<std::size_t> order(corpus.documents.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return corpus.documents[a].doc_id < corpus.documents[b].doc_id;
    });
    for (const std::size_t i : order) {
        for (const auto& s : per_doc[i]) {
            os << json{{"doc_id", s.doc_id}, {"index", s.index}, {"text", s.text}, {"tokens", s.token_count}}.dump()
               << '\n';
            ++n;
        }
        for (auto& w : warnings[i]) all_warnings.push_back(std::move(w));
    }
    json summary = provenance(config);
    summary["documents"] = corpus.documents.size();
    summary["sentences"] = n;
    summary["warnings"] = all_warnings;
    return summary.dump(2);
}

std::string train(const PipelineConfig& config, const std::filesystem::path& corpus_path,
                  const std::filesystem::path& manifest_path, const std::filesystem::path& checkpoint_out,
                  const std::filesystem::path& metrics_out) {
    const auto corpus = load_corpus(corpus_path);
    const auto manifest = load_manifest(manifest_path);
    const Pipeline pipeline(config);
    const auto result = pipeline.train(corpus, manifest);
    save_checkpoint(checkpoint_out, result.head, {pipeline.provider().info().name, config.to_json()});

    json metrics = provenance(config);
    metrics["best_epoch"] = result.best_epoch;
    metrics["best_valid_macro_f1"] = result.epochs.at(result.best_epoch - 1).valid_macro_f1;
    metrics["epochs"] = epochs_json(result);
    const auto body = metrics.dump(2);
    if (!metrics_out.empty()) write_text(metrics_out, body);
    return body;
}

std::string eval(const PipelineConfig& config, const std::filesystem::path& corpus_path,
                 const std::filesystem::path& manifest_path, const std::filesystem::path& checkpoint,
                 const std::filesystem::path& report_out, const std::filesystem::path& predictions_out) {
    const auto corpus = load_corpus(corpus_path);
    const auto manifest = load_manifest(manifest_path);
    CheckpointMeta meta;
    const auto head = load_checkpoint(checkpoint, &meta);
    const Pipeline pipeline(config);
    pipeline.check_head(head, meta);
    const auto outcome = pipeline.evaluate(head, corpus, manifest);

    json rep = provenance(config);
    rep["split"] = "test";
    rep["report"] = report_json(outcome.report, head.vocab);
    const auto body = rep.dump(2);
    if (!report_out.empty()) write_text(report_out, body);

    if (!predictions_out.empty()) {
        std::ofstream os(predictions_out, std::ios::binary);
        if (!os) throw InputError("cannot write " + predictions_out.string());
        const auto label = prediction_label(config);
        auto docs = outcome.documents;
        std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
        for (const auto& r : docs)
            os << json{{"id", r.doc_id},
                       {"pred", head.vocab.name(r.prediction.final_class)},
                       {"dist", r.prediction.doc_distribution.probs},
                       {"strategy", label}}
                      .dump()
               << '\n';
    }
    return body;
}

std::string compare(const std::vector<PipelineConfig>& configs, const std::filesystem::path& corpus_path,
                    const std::filesystem::path& manifest_path, const std::filesystem::path& out) {
    if (configs.size() < 2) throw ContractError("compare needs at least 2 configs");
    const auto corpus = load_corpus(corpus_path);
    const auto manifest = load_manifest(manifest_path);

    json reports = json::array();
    std::vector<std::pair<double, std::size_t>> scores;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const Pipeline pipeline(configs[i]);
        const auto result = pipeline.train(corpus, manifest);
        const auto outcome = pipeline.evaluate(result.head, corpus, manifest);
        json entry = provenance(configs[i]);
        entry["best_epoch"] = result.best_epoch;
        entry["report"] = report_json(outcome.report, result.head.vocab);
        reports.push_back(std::move(entry));
        scores.emplace_back(outcome.report.macro_f1, i);
    }
    std::stable_sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    json ranking = json::array();
    for (std::size_t r = 0; r < scores.size(); ++r)
        ranking.push_back({{"rank", r + 1},
                           {"index", scores[r].second},
                           {"name", configs[scores[r].second].display_name()},
                           {"macro_f1", scores[r].first}});

    const json j = {{"tool_version", kToolVersion}, {"split", "test"}, {"reports", reports}, {"ranking", ranking}};
    const auto body = j.dump(2);
    if (!out.empty()) write_text(out, body);
    return body;
}

std::string probe(const PipelineConfig& config) {
    const auto provider = make_provider(config.provider);
    const auto info = provider->info();
    const json j = {{"name", info.name}, {"dim", info.dim}, {"deterministic", info.deterministic}};
    return j.dump(2);
}

}  // namespace commands

}  // namespace longdoc
