#include "longdoc/longdoc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "longdoc/error.hpp"
#include "longdoc/pipeline.hpp"
#include "longdoc/text.hpp"

struct longdoc_pipeline {
    longdoc::PipelineConfig config;
    longdoc::Pipeline pipeline;
};

struct longdoc_model {
    longdoc::Pipeline pipeline;
    longdoc::LinearHead head;
};

namespace {

thread_local std::string g_last_error;

longdoc_status fail(longdoc_status status, const char* what) {
    g_last_error = what;
    return status;
}

// Maps exceptions thrown by `fn` onto status codes.
template <typename Fn>
longdoc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return LONGDOC_OK;
    } catch (const longdoc::Error& e) {
        return fail(static_cast<longdoc_status>(e.kind()), e.what());
    } catch (const std::invalid_argument& e) {
        return fail(LONGDOC_ERR_CONTRACT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LONGDOC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LONGDOC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LONGDOC_ERR_INTERNAL, "unknown error");
    }
}

char* dup(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const std::string& s) {
    if (out) *out = dup(s);
}

std::filesystem::path opt_path(const char* p) { return p ? std::filesystem::path(p) : std::filesystem::path(); }

void require(const void* p, const char* what) {
    if (!p) throw longdoc::ContractError(std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* longdoc_version(void) { return longdoc::kToolVersion; }

const char* longdoc_last_error(void) { return g_last_error.c_str(); }

void longdoc_string_free(char* s) { std::free(s); }

longdoc_status longdoc_pipeline_create(const char* config_json, longdoc_pipeline** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        auto config = (config_json && *config_json) ? longdoc::PipelineConfig::from_json(config_json)
                                                     : longdoc::PipelineConfig{};
        longdoc::Pipeline pipeline(config);
        *out = new longdoc_pipeline{std::move(config), std::move(pipeline)};
    });
}

longdoc_status longdoc_pipeline_load(const char* config_path, longdoc_pipeline** out) {
    return guarded([&] {
        require(config_path, "config_path");
        require(out, "out");
        *out = nullptr;
        auto config = longdoc::PipelineConfig::load(config_path);
        longdoc::Pipeline pipeline(config);
        *out = new longdoc_pipeline{std::move(config), std::move(pipeline)};
    });
}

void longdoc_pipeline_destroy(longdoc_pipeline* pipeline) { delete pipeline; }

longdoc_status longdoc_pipeline_config(const longdoc_pipeline* pipeline, char** config_json) {
    return guarded([&] {
        require(pipeline, "pipeline");
        emit(config_json, pipeline->config.to_json());
    });
}

longdoc_status longdoc_pipeline_hash(const longdoc_pipeline* pipeline, char** hash) {
    return guarded([&] {
        require(pipeline, "pipeline");
        emit(hash, pipeline->config.hash());
    });
}

longdoc_status longdoc_generate(size_t classes, size_t docs_per_class, size_t sentences_per_doc, double signal_ratio,
                                uint64_t seed, const char* out_path, char** summary_json) {
    return guarded([&] {
        require(out_path, "out_path");
        longdoc::SyntheticSpec spec;
        spec.classes = classes;
        spec.docs_per_class = docs_per_class;
        spec.sentences_per_doc = sentences_per_doc;
        spec.signal_ratio = signal_ratio;
        spec.seed = seed;
        emit(summary_json, longdoc::commands::generate(spec, out_path));
    });
}

longdoc_status longdoc_split(const char* corpus_path, const double fractions[3], uint64_t seed, const char* out_path,
                             char** summary_json) {
    return guarded([&] {
        require(corpus_path, "corpus_path");
        require(out_path, "out_path");
        longdoc::SplitFractions f = longdoc::kDefaultFractions;
        if (fractions) f = {fractions[0], fractions[1], fractions[2]};
        emit(summary_json, longdoc::commands::split(corpus_path, f, seed, out_path));
    });
}

longdoc_status longdoc_segment(const longdoc_pipeline* pipeline, const char* corpus_path, const char* out_path,
                               char** summary_json) {
    return guarded([&] {
        require(pipeline, "pipeline");
        require(corpus_path, "corpus_path");
        require(out_path, "out_path");
        emit(summary_json, longdoc::commands::segment(pipeline->config, corpus_path, out_path));
    });
}

longdoc_status longdoc_train(const longdoc_pipeline* pipeline, const char* corpus_path, const char* manifest_path,
                             const char* checkpoint_out, const char* metrics_out, char** metrics_json) {
    return guarded([&] {
        require(pipeline, "pipeline");
        require(corpus_path, "corpus_path");
        require(manifest_path, "manifest_path");
        require(checkpoint_out, "checkpoint_out");
        emit(metrics_json, longdoc::commands::train(pipeline->config, corpus_path, manifest_path, checkpoint_out,
                                                    opt_path(metrics_out)));
    });
}

longdoc_status longdoc_eval(const longdoc_pipeline* pipeline, const char* corpus_path, const char* manifest_path,
                            const char* checkpoint_path, const char* report_out, const char* predictions_out,
                            char** report_json) {
    return guarded([&] {
        require(pipeline, "pipeline");
        require(corpus_path, "corpus_path");
        require(manifest_path, "manifest_path");
        require(checkpoint_path, "checkpoint_path");
        emit(report_json, longdoc::commands::eval(pipeline->config, corpus_path, manifest_path, checkpoint_path,
                                                  opt_path(report_out), opt_path(predictions_out)));
    });
}

longdoc_status longdoc_compare(const longdoc_pipeline* const* pipelines, size_t count, const char* corpus_path,
                               const char* manifest_path, const char* out_path, char** comparison_json) {
    return guarded([&] {
        require(corpus_path, "corpus_path");
        require(manifest_path, "manifest_path");
        std::vector<longdoc::PipelineConfig> configs;
        for (size_t i = 0; i < count; ++i) {
            require(pipelines ? pipelines[i] : nullptr, "pipelines[i]");
            configs.push_back(pipelines[i]->config);
        }
        emit(comparison_json,
             longdoc::commands::compare(configs, corpus_path, manifest_path, opt_path(out_path)));
    });
}

longdoc_status longdoc_probe_provider(const longdoc_pipeline* pipeline, char** info_json) {
    return guarded([&] {
        require(pipeline, "pipeline");
        emit(info_json, longdoc::commands::probe(pipeline->config));
    });
}

longdoc_status longdoc_model_load(const longdoc_pipeline* pipeline, const char* checkpoint_path, longdoc_model** out) {
    return guarded([&] {
        require(pipeline, "pipeline");
        require(checkpoint_path, "checkpoint_path");
        require(out, "out");
        *out = nullptr;
        longdoc::CheckpointMeta meta;
        auto head = longdoc::load_checkpoint(checkpoint_path, &meta);
        pipeline->pipeline.check_head(head, meta);
        *out = new longdoc_model{pipeline->pipeline, std::move(head)};
    });
}

void longdoc_model_destroy(longdoc_model* model) { delete model; }

size_t longdoc_model_classes(const longdoc_model* model) { return model ? model->head.classes() : 0; }

const char* longdoc_model_class_name(const longdoc_model* model, size_t k) {
    if (!model || k >= model->head.classes()) return nullptr;
    return model->head.vocab.name(k).c_str();
}

longdoc_status longdoc_model_classify(const longdoc_model* model, const char* text, double* probs, size_t capacity,
                                      size_t* predicted) {
    return guarded([&] {
        require(model, "model");
        require(text, "text");
        const longdoc::Document doc{"input", text, std::nullopt};
        if (longdoc::text::trim(doc.text).empty()) throw longdoc::InputError("cannot classify empty text");
        const auto results = model->pipeline.predict(model->head, {&doc});
        const auto& p = results.front().prediction;
        if (probs) {
            if (capacity < p.doc_distribution.classes())
                throw longdoc::ContractError("probs capacity " + std::to_string(capacity) + " < " +
                                             std::to_string(p.doc_distribution.classes()) + " classes");
            std::copy(p.doc_distribution.probs.begin(), p.doc_distribution.probs.end(), probs);
        }
        if (predicted) *predicted = p.final_class;
    });
}

}  // extern "C"
