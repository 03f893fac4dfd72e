// longdoc: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "longdoc/longdoc.h"

namespace {

using nlohmann::json;

struct Shared {
    std::vector<std::string> configs;
    std::string strategy;
    std::optional<std::uint64_t> seed;
    std::string provider;
    std::string remote_url;
    std::optional<std::size_t> workers;
    std::string out;
};

void add_shared(CLI::App* cmd, Shared& s, bool multi_config = false) {
    if (multi_config)
        cmd->add_option("--config", s.configs, "Pipeline config JSON (repeat for each compared config)")
            ->required()
            ->check(CLI::ExistingFile);
    else
        cmd->add_option("--config", s.configs, "Pipeline config JSON")->expected(0, 1)->check(CLI::ExistingFile);
    cmd->add_option("--strategy", s.strategy, "aggregate | mmr | truncate")
        ->check(CLI::IsMember({"aggregate", "mmr", "truncate"}));
    cmd->add_option("--seed", s.seed, "Seed (training order; split and generator seed)");
    cmd->add_option("--provider", s.provider, "reference | remote")->check(CLI::IsMember({"reference", "remote"}));
    cmd->add_option("--remote-url", s.remote_url, "Embedding service, http://host:port");
    cmd->add_option("--workers", s.workers, "Document-level worker threads (0 = all cores)");
}

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

void check(longdoc_status status) {
    if (status != LONGDOC_OK) throw Failure(status, longdoc_last_error());
}

std::string take(char* s) {
    std::string out = s ? s : "";
    longdoc_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure(LONGDOC_ERR_INPUT, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Config file (or defaults) with command-line flags applied on top.
std::string config_json(const std::string& path, const Shared& s) {
    json j = json::object();
    if (!path.empty()) {
        try {
            j = json::parse(read_file(path));
        } catch (const json::exception& e) {
            throw Failure(LONGDOC_ERR_INPUT, path + ": " + e.what());
        }
    }
    if (!s.strategy.empty()) j["strategy"] = s.strategy;
    if (s.seed) j["train"]["seed"] = *s.seed;
    if (!s.provider.empty()) {
        if (!j.contains("provider") || j["provider"].value("type", "reference") != s.provider)
            j["provider"] = {{"type", s.provider}};
    }
    if (!s.remote_url.empty()) {
        if (!j.contains("provider")) j["provider"] = {{"type", "remote"}};
        j["provider"]["url"] = s.remote_url;
    }
    if (s.workers) j["workers"] = *s.workers;
    return j.dump();
}

using PipelinePtr = std::unique_ptr<longdoc_pipeline, decltype(&longdoc_pipeline_destroy)>;

PipelinePtr make_pipeline(const std::string& path, const Shared& s) {
    longdoc_pipeline* p = nullptr;
    check(longdoc_pipeline_create(config_json(path, s).c_str(), &p));
    return {p, &longdoc_pipeline_destroy};
}

std::string first_config(const Shared& s) { return s.configs.empty() ? std::string() : s.configs.front(); }

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

void print_report(const json& j) {
    const auto& r = j.at("report");
    std::printf("%s (%s, config %s)\n", j.value("name", "").c_str(), j.value("strategy", "").c_str(),
                j.value("config_hash", "").c_str());
    std::printf("  %-10s %9s %9s %9s %8s\n", "class", "precision", "recall", "f1", "support");
    for (auto it = r.at("per_class").begin(); it != r.at("per_class").end(); ++it)
        std::printf("  %-10s %9.5f %9.5f %9.5f %8llu\n", it.key().c_str(), it->at("precision").get<double>(),
                    it->at("recall").get<double>(), it->at("f1").get<double>(),
                    it->at("support").get<unsigned long long>());
    std::printf("  %-10s %9.5f %9.5f %9.5f %8llu\n", "macro", r.at("macro_precision").get<double>(),
                r.at("macro_recall").get<double>(), r.at("macro_f1").get<double>(),
                r.at("n").get<unsigned long long>());
    std::printf("  %-10s %9.5f\n", "accuracy", r.at("accuracy").get<double>());
}

void print_comparison(const json& j) {
    std::printf("%-4s %-20s %-10s %9s %9s %9s %9s\n", "rank", "name", "strategy", "macro_f1", "macro_p", "macro_r",
                "accuracy");
    for (const auto& row : j.at("ranking")) {
        const auto& entry = j.at("reports").at(row.at("index").get<std::size_t>());
        const auto& r = entry.at("report");
        std::printf("%-4zu %-20s %-10s %9.5f %9.5f %9.5f %9.5f\n", row.at("rank").get<std::size_t>(),
                    entry.value("name", "").c_str(), entry.value("strategy", "").c_str(),
                    r.at("macro_f1").get<double>(), r.at("macro_precision").get<double>(),
                    r.at("macro_recall").get<double>(), r.at("accuracy").get<double>());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-document classification: sentence aggregation, MMR key sentences, truncation baseline"};
    app.set_version_flag("--version", longdoc_version());
    app.require_subcommand(1);

    // gen
    Shared gen_s;
    std::size_t classes = 4, docs_per_class = 50, sentences_per_doc = 20;
    double signal_ratio = 0.3;
    auto* gen = app.add_subcommand("gen", "Write a synthetic labeled corpus (JSONL)");
    gen->add_option("--classes", classes)->check(CLI::PositiveNumber);
    gen->add_option("--docs-per-class", docs_per_class)->check(CLI::PositiveNumber);
    gen->add_option("--sentences-per-doc", sentences_per_doc)->check(CLI::PositiveNumber);
    gen->add_option("--signal-ratio", signal_ratio)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_s.seed);
    gen->add_option("--out", gen_s.out)->required();

    // split
    Shared split_s;
    std::string split_corpus;
    std::vector<double> fractions{0.8, 0.1, 0.1};
    auto* split = app.add_subcommand("split", "Stratified train/valid/test manifest");
    split->add_option("--corpus", split_corpus)->required()->check(CLI::ExistingFile);
    split->add_option("--fractions", fractions)->expected(3);
    split->add_option("--seed", split_s.seed);
    split->add_option("--out", split_s.out)->required();

    // segment
    Shared seg_s;
    std::string seg_corpus;
    auto* seg = app.add_subcommand("segment", "Segment a corpus into sentences (JSONL)");
    add_shared(seg, seg_s);
    seg->add_option("--corpus", seg_corpus)->required()->check(CLI::ExistingFile);
    seg->add_option("--out", seg_s.out)->required();

    // train
    Shared train_s;
    std::string train_corpus, train_manifest, train_metrics;
    auto* train = app.add_subcommand("train", "Train a classification head; writes a checkpoint");
    add_shared(train, train_s);
    train->add_option("--corpus", train_corpus)->required()->check(CLI::ExistingFile);
    train->add_option("--manifest", train_manifest)->required()->check(CLI::ExistingFile);
    train->add_option("--out", train_s.out, "Checkpoint path")->required();
    train->add_option("--metrics", train_metrics, "Per-epoch metrics JSON");

    // eval
    Shared eval_s;
    std::string eval_corpus, eval_manifest, eval_ckpt, eval_predictions;
    auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
    add_shared(eval, eval_s);
    eval->add_option("--corpus", eval_corpus)->required()->check(CLI::ExistingFile);
    eval->add_option("--manifest", eval_manifest)->required()->check(CLI::ExistingFile);
    eval->add_option("--checkpoint", eval_ckpt)->required()->check(CLI::ExistingFile);
    eval->add_option("--out", eval_s.out, "Report JSON");
    eval->add_option("--predictions", eval_predictions, "Predictions JSONL");

    // compare
    Shared cmp_s;
    std::string cmp_corpus, cmp_manifest;
    auto* compare = app.add_subcommand("compare", "Train and evaluate several configs side by side");
    add_shared(compare, cmp_s, true);
    compare->add_option("--corpus", cmp_corpus)->required()->check(CLI::ExistingFile);
    compare->add_option("--manifest", cmp_manifest)->required()->check(CLI::ExistingFile);
    compare->add_option("--out", cmp_s.out, "Comparison JSON");

    // serve-info
    Shared info_s;
    auto* info = app.add_subcommand("serve-info", "Probe the configured embedding provider");
    add_shared(info, info_s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : LONGDOC_ERR_INPUT;
    }

    try {
        char* out = nullptr;
        if (*gen) {
            check(longdoc_generate(classes, docs_per_class, sentences_per_doc, signal_ratio, gen_s.seed.value_or(1),
                                   gen_s.out.c_str(), &out));
            std::cout << take(out) << '\n';
        } else if (*split) {
            check(longdoc_split(split_corpus.c_str(), fractions.data(), split_s.seed.value_or(0),
                                split_s.out.c_str(), &out));
            std::cout << take(out) << '\n';
        } else if (*seg) {
            auto p = make_pipeline(first_config(seg_s), seg_s);
            check(longdoc_segment(p.get(), seg_corpus.c_str(), seg_s.out.c_str(), &out));
            const auto summary = json::parse(take(out));
            for (const auto& w : summary.at("warnings")) std::cerr << "longdoc: warning: " << w.get<std::string>() << '\n';
            std::cout << summary.dump(2) << '\n';
        } else if (*train) {
            auto p = make_pipeline(first_config(train_s), train_s);
            check(longdoc_train(p.get(), train_corpus.c_str(), train_manifest.c_str(), train_s.out.c_str(),
                                or_null(train_metrics), &out));
            const auto metrics = json::parse(take(out));
            for (const auto& e : metrics.at("epochs"))
                std::printf("epoch %3zu  loss %.6f  valid macro-F1 %.5f\n", e.at("epoch").get<std::size_t>(),
                            e.at("train_loss").get<double>(), e.at("valid_macro_f1").get<double>());
            std::printf("best epoch %zu\n", metrics.at("best_epoch").get<std::size_t>());
        } else if (*eval) {
            auto p = make_pipeline(first_config(eval_s), eval_s);
            check(longdoc_eval(p.get(), eval_corpus.c_str(), eval_manifest.c_str(), eval_ckpt.c_str(),
                               or_null(eval_s.out), or_null(eval_predictions), &out));
            print_report(json::parse(take(out)));
        } else if (*compare) {
            if (cmp_s.configs.size() < 2) throw Failure(LONGDOC_ERR_CONTRACT, "compare needs at least 2 --config files");
            std::vector<PipelinePtr> owned;
            std::vector<const longdoc_pipeline*> raw;
            for (const auto& path : cmp_s.configs) {
                owned.push_back(make_pipeline(path, cmp_s));
                raw.push_back(owned.back().get());
            }
            check(longdoc_compare(raw.data(), raw.size(), cmp_corpus.c_str(), cmp_manifest.c_str(),
                                  or_null(cmp_s.out), &out));
            print_comparison(json::parse(take(out)));
        } else if (*info) {
            auto p = make_pipeline(first_config(info_s), info_s);
            check(longdoc_probe_provider(p.get(), &out));
            std::cout << take(out) << '\n';
        }
    } catch (const Failure& f) {
        std::cerr << "longdoc: error: " << f.what() << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "longdoc: error: " << e.what() << '\n';
        return LONGDOC_ERR_INTERNAL;
    }
    return 0;
}
