#include <doctest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "longdoc/embed.hpp"
#include "longdoc/error.hpp"

using namespace longdoc;
using nlohmann::json;

namespace {

std::vector<EmbeddingVector> embed(const EmbeddingProvider& p, std::vector<std::string> texts) {
    return p.embed_batch(texts);
}

// In-process /info + /embed server whose answers can be broken on purpose.
class FakeService {
public:
    enum class Mode { Good, WrongCount, BadJson, NoVectors, DimField, ShortRow, NonFinite, ServerError, BadInfo };

    explicit FakeService(std::size_t dim = 16, std::size_t max_batch = 64) : dim_(dim), max_batch_(max_batch) {
        server_.Get("/info", [this](const httplib::Request&, httplib::Response& res) {
            if (mode_ == Mode::BadInfo) {
                res.set_content(R"({"name": "fake"})", "application/json");
                return;
            }
            res.set_content(json{{"name", "fake-encoder"}, {"dim", dim_}}.dump(), "application/json");
        });
        server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            const auto texts = json::parse(req.body).at("texts").get<std::vector<std::string>>();
            if (texts.size() > max_batch_) {
                res.status = 413;
                res.set_content(R"({"error": "batch too large"})", "application/json");
                return;
            }
            json vectors = json::array();
            for (const auto& t : texts) vectors.push_back(hash_embed(t, dim_, 7).values);
            json body = {{"vectors", vectors}, {"dim", dim_}, {"model", "fake-encoder"}};
            switch (mode_.load()) {
                case Mode::Good: break;
                case Mode::WrongCount: body["vectors"].erase(0); break;
                case Mode::BadJson: res.set_content("{not json", "application/json"); return;
                case Mode::NoVectors: body.erase("vectors"); break;
                case Mode::DimField: body["dim"] = dim_ * 2; break;
                case Mode::ShortRow: body["vectors"][0].erase(0); body.erase("dim"); break;
                case Mode::NonFinite: body["vectors"][0][0] = std::nan(""); break;
                case Mode::ServerError:
                    res.status = 500;
                    res.set_content(R"({"error": "model exploded"})", "application/json");
                    return;
                case Mode::BadInfo: break;
            }
            res.set_content(body.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeService() {
        server_.stop();
        thread_.join();
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
    void set(Mode m) { mode_ = m; }
    int requests() const { return requests_; }

private:
    std::size_t dim_, max_batch_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<Mode> mode_{Mode::Good};
    std::atomic<int> requests_{0};
};

RemoteFailure failure_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const RemoteError& e) {
        return e.failure();
    }
    FAIL("expected a RemoteError");
    return RemoteFailure::Transport;
}

}  // namespace

TEST_SUITE("embed") {
    TEST_CASE("reference embedder is deterministic and unit norm") {
        const ReferenceEmbedder p;
        CHECK(p.info().name == "reference-hash");
        CHECK(p.info().dim == 256);
        CHECK(p.info().deterministic);
        const auto v = embed(p, {"a b", "a b"});
        REQUIRE(v.size() == 2);
        CHECK(v[0] == v[1]);
        CHECK(v[0].dim() == 256);
        CHECK(std::abs(norm(v[0]) - 1.0) < 1e-9);
        for (double x : v[0].values) CHECK(std::isfinite(x));
    }

    TEST_CASE("different tokens give different vectors") {
        const ReferenceEmbedder p;
        CHECK(embed(p, {"a"})[0] != embed(p, {"b"})[0]);
    }

    TEST_CASE("hash_embed degenerate and bag-of-tokens rules") {
        CHECK(hash_embed("", 8, 0) == basis0(8));
        CHECK(hash_embed(" ... ،؟ ", 32, 3) == basis0(32));
        CHECK(hash_embed("الولد قرأ الكتاب", 64, 1) == hash_embed("الكتاب الولد قرأ", 64, 1));
        CHECK(hash_embed("x x", 64, 0) == hash_embed("x", 64, 0));
        CHECK(hash_embed("Word", 64, 0) == hash_embed("word", 64, 0));
        CHECK(hash_embed("a b", 64, 0) != hash_embed("a b", 64, 1));
        CHECK_THROWS_AS(hash_embed("a", 7, 0), ContractError);
        CHECK_THROWS_AS(ReferenceEmbedder(4), ContractError);

        // one token: a signed unit basis vector
        const auto v = hash_embed("token", 16, 0);
        std::size_t nonzero = 0;
        for (double x : v.values)
            if (x != 0) {
                ++nonzero;
                CHECK(std::abs(x) == 1.0);
            }
        CHECK(nonzero == 1);
    }

    TEST_CASE("batch and singleton agree") {
        const ReferenceEmbedder p(64, 9);
        const std::vector<std::string> batch = {"one two", "three", "four five six", "three"};
        const auto all = p.embed_batch(batch);
        for (std::size_t i = 0; i < batch.size(); ++i) CHECK(embed(p, {batch[i]})[0] == all[i]);
    }

    TEST_CASE("centroid") {
        const EmbeddingVector v({3.0, 4.0});
        const std::vector<EmbeddingVector> one = {v};
        const auto c1 = doc_centroid(one);
        CHECK(c1[0] == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(c1[1] == doctest::Approx(0.8).epsilon(1e-15));

        const std::vector<EmbeddingVector> opposite = {v, EmbeddingVector({-3.0, -4.0})};
        CHECK(doc_centroid(opposite) == basis0(2));

        // mean (1/3, 2/3, 1) -> (1, 2, 3) / sqrt(14)
        const std::vector<EmbeddingVector> three = {EmbeddingVector({1, 0, 0}), EmbeddingVector({0, 2, 0}),
                                                    EmbeddingVector({0, 0, 3})};
        const auto c3 = doc_centroid(three);
        const double r = std::sqrt(14.0);
        CHECK(std::abs(c3[0] - 1 / r) < 1e-15);
        CHECK(std::abs(c3[1] - 2 / r) < 1e-15);
        CHECK(std::abs(c3[2] - 3 / r) < 1e-15);

        CHECK_THROWS_AS(doc_centroid(std::vector<EmbeddingVector>{}), ContractError);
        const std::vector<EmbeddingVector> mixed = {EmbeddingVector({1.0}), EmbeddingVector({1.0, 2.0})};
        CHECK_THROWS_AS(doc_centroid(mixed), ContractError);
    }
}

TEST_SUITE("remote") {
    TEST_CASE("well-behaved service") {
        FakeService svc(16, 4);
        RemoteConfig cfg;
        cfg.url = svc.url();
        cfg.max_batch = 4;
        const RemoteEmbedder client(cfg);
        CHECK(client.info().name == "fake-encoder");
        CHECK(client.info().dim == 16);

        std::vector<std::string> texts;
        for (int i = 0; i < 10; ++i) texts.push_back("نص رقم " + std::to_string(i));
        const auto before = svc.requests();
        const auto out = client.embed_batch(texts);
        CHECK(svc.requests() - before == 3);
        REQUIRE(out.size() == 10);
        for (std::size_t i = 0; i < texts.size(); ++i) CHECK(out[i] == hash_embed(texts[i], 16, 7));
        CHECK(client.embed_batch({}).empty());
    }

    TEST_CASE("concurrent callers") {
        FakeService svc(8);
        RemoteConfig cfg;
        cfg.url = svc.url();
        const RemoteEmbedder client(cfg);
        std::vector<std::thread> threads;
        std::atomic<int> ok{0};
        for (int t = 0; t < 4; ++t)
            threads.emplace_back([&, t] {
                const std::vector<std::string> texts = {"a" + std::to_string(t), "b"};
                const auto out = client.embed_batch(texts);
                if (out.size() == 2 && out[0] == hash_embed(texts[0], 8, 7)) ++ok;
            });
        for (auto& th : threads) th.join();
        CHECK(ok == 4);
    }

    TEST_CASE("misbehaving service maps to typed failures") {
        FakeService svc(16);
        RemoteConfig cfg;
        cfg.url = svc.url();
        const RemoteEmbedder client(cfg);
        const std::vector<std::string> texts = {"a", "b", "c"};
        const auto call = [&] { client.embed_batch(texts); };

        svc.set(FakeService::Mode::WrongCount);
        CHECK(failure_of(call) == RemoteFailure::ResponseShape);
        svc.set(FakeService::Mode::BadJson);
        CHECK(failure_of(call) == RemoteFailure::ResponseShape);
        svc.set(FakeService::Mode::NoVectors);
        CHECK(failure_of(call) == RemoteFailure::ResponseShape);
        svc.set(FakeService::Mode::NonFinite);
        CHECK(failure_of(call) == RemoteFailure::ResponseShape);
        svc.set(FakeService::Mode::DimField);
        CHECK(failure_of(call) == RemoteFailure::DimMismatch);
        svc.set(FakeService::Mode::ShortRow);
        CHECK(failure_of(call) == RemoteFailure::DimMismatch);
        svc.set(FakeService::Mode::ServerError);
        CHECK(failure_of(call) == RemoteFailure::Transport);
        try {
            call();
        } catch (const RemoteError& e) {
            CHECK(std::string(e.what()).find("model exploded") != std::string::npos);
            CHECK(e.kind() == ErrorKind::Remote);
        }
    }

    TEST_CASE("oversize batch is an error, not a partial result") {
        FakeService svc(8, 2);
        RemoteConfig cfg;
        cfg.url = svc.url();
        cfg.max_batch = 5;
        const RemoteEmbedder client(cfg);
        const std::vector<std::string> texts = {"a", "b", "c"};
        CHECK(failure_of([&] { client.embed_batch(texts); }) == RemoteFailure::Transport);
    }

    TEST_CASE("configured dim disagrees with the service") {
        FakeService svc(768);
        RemoteConfig cfg;
        cfg.url = svc.url();
        cfg.expected_dim = 256;
        const RemoteEmbedder client(cfg);
        CHECK(failure_of([&] { client.info(); }) == RemoteFailure::DimMismatch);
        const std::vector<std::string> texts = {"a"};
        CHECK(failure_of([&] { client.embed_batch(texts); }) == RemoteFailure::DimMismatch);
    }

    TEST_CASE("bad /info") {
        FakeService svc(16);
        svc.set(FakeService::Mode::BadInfo);
        RemoteConfig cfg;
        cfg.url = svc.url();
        CHECK(failure_of([&] { RemoteEmbedder(cfg).info(); }) == RemoteFailure::ResponseShape);
    }

    TEST_CASE("unreachable service") {
        int port = 0;
        {
            httplib::Server probe;
            port = probe.bind_to_any_port("127.0.0.1");
        }
        RemoteConfig cfg;
        cfg.url = "http://127.0.0.1:" + std::to_string(port);
        cfg.timeout = std::chrono::milliseconds(500);
        CHECK(failure_of([&] { RemoteEmbedder(cfg).info(); }) == RemoteFailure::Transport);
    }

    TEST_CASE("url validation") {
        RemoteConfig cfg;
        cfg.url = "https://example.com";
        CHECK_THROWS_AS(RemoteEmbedder{cfg}, ContractError);
        cfg.url = "localhost:80";
        CHECK_THROWS_AS(RemoteEmbedder{cfg}, ContractError);
        cfg.url = "http://localhost:8080/";
        CHECK_NOTHROW(RemoteEmbedder{cfg});
        cfg.max_batch = 0;
        CHECK_THROWS_AS(RemoteEmbedder{cfg}, ContractError);
    }
}
