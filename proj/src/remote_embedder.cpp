#include <cmath>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "longdoc/embed.hpp"
#include "longdoc/error.hpp"

namespace longdoc {

using nlohmann::json;

namespace {

httplib::Client make_client(const std::string& host, int port, std::chrono::milliseconds timeout) {
    httplib::Client client(host, port);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    return client;
}

[[noreturn]] void transport_failure(const std::string& what, httplib::Error err) {
    throw RemoteError(RemoteFailure::Transport, what + ": " + httplib::to_string(err));
}

std::string error_message(const httplib::Response& res) {
    try {
        const auto j = json::parse(res.body);
        if (j.is_object() && j.contains("error") && j["error"].is_string()) return j["error"].get<std::string>();
    } catch (const json::exception&) {
    }
    return res.body.substr(0, 200);
}

json parse_body(const httplib::Response& res, const std::string& endpoint) {
    if (res.status < 200 || res.status >= 300)
        throw RemoteError(RemoteFailure::Transport,
                          endpoint + " returned HTTP " + std::to_string(res.status) + ": " + error_message(res));
    try {
        return json::parse(res.body);
    } catch (const json::exception& e) {
        throw RemoteError(RemoteFailure::ResponseShape, endpoint + " returned invalid JSON: " + e.what());
    }
}

}  // namespace

RemoteEmbedder::RemoteEmbedder(RemoteConfig config) : config_(std::move(config)) {
    static const std::regex url_re(R"(^http://([^/:]+)(?::(\d+))?/?$)");
    std::smatch m;
    if (!std::regex_match(config_.url, m, url_re))
        throw ContractError("remote provider url must look like http://host:port, got \"" + config_.url + "\"");
    host_ = m[1].str();
    port_ = m[2].matched ? std::stoi(m[2].str()) : 80;
    if (config_.max_batch == 0) throw ContractError("remote provider max_batch must be >= 1");
    if (config_.timeout.count() <= 0) throw ContractError("remote provider timeout must be positive");
}

ProviderInfo RemoteEmbedder::info() const {
    std::lock_guard lock(info_mutex_);
    if (info_) return *info_;

    auto client = make_client(host_, port_, config_.timeout);
    auto res = client.Get("/info");
    if (!res) transport_failure("GET /info", res.error());
    const auto body = parse_body(*res, "GET /info");
    if (!body.is_object() || !body.contains("name") || !body["name"].is_string() || !body.contains("dim") ||
        !body["dim"].is_number_integer() || body["dim"].get<long long>() < 1)
        throw RemoteError(RemoteFailure::ResponseShape, "GET /info must return {\"name\": str, \"dim\": int >= 1}");

    ProviderInfo info{body["name"].get<std::string>(), body["dim"].get<std::size_t>(), false};
    if (config_.expected_dim && info.dim != config_.expected_dim)
        throw RemoteError(RemoteFailure::DimMismatch, "remote provider reports dim " + std::to_string(info.dim) +
                                                          ", expected " + std::to_string(config_.expected_dim));
    info_ = info;
    return info;
}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(std::span<const std::string> texts) const {
    if (texts.empty()) return {};
    const std::size_t want_dim = config_.expected_dim ? config_.expected_dim : info().dim;
    auto client = make_client(host_, port_, config_.timeout);

    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t start = 0; start < texts.size(); start += config_.max_batch) {
        const auto chunk = texts.subspan(start, std::min(config_.max_batch, texts.size() - start));
        const json request = {{"texts", std::vector<std::string>(chunk.begin(), chunk.end())}};
        auto res = client.Post("/embed", request.dump(), "application/json");
        if (!res) transport_failure("POST /embed", res.error());
        const auto body = parse_body(*res, "POST /embed");

        if (!body.is_object() || !body.contains("vectors") || !body["vectors"].is_array())
            throw RemoteError(RemoteFailure::ResponseShape, "POST /embed response lacks a \"vectors\" array");
        const auto& vectors = body["vectors"];
        if (vectors.size() != chunk.size())
            throw RemoteError(RemoteFailure::ResponseShape, "POST /embed returned " + std::to_string(vectors.size()) +
                                                                " vectors for " + std::to_string(chunk.size()) +
                                                                " texts");
        if (body.contains("dim")) {
            if (!body["dim"].is_number_integer())
                throw RemoteError(RemoteFailure::ResponseShape, "POST /embed \"dim\" must be an integer");
            const auto dim = body["dim"].get<long long>();
            if (dim != static_cast<long long>(want_dim))
                throw RemoteError(RemoteFailure::DimMismatch, "POST /embed returned dim " + std::to_string(dim) +
                                                                  ", expected " + std::to_string(want_dim));
        }
        for (const auto& row : vectors) {
            if (!row.is_array())
                throw RemoteError(RemoteFailure::ResponseShape, "POST /embed vector entries must be arrays");
            if (row.size() != want_dim)
                throw RemoteError(RemoteFailure::DimMismatch, "POST /embed vector of length " +
                                                                  std::to_string(row.size()) + ", expected " +
                                                                  std::to_string(want_dim));
            EmbeddingVector v;
            v.values.reserve(want_dim);
            for (const auto& x : row) {
                if (!x.is_number() || !std::isfinite(x.get<double>()))
                    throw RemoteError(RemoteFailure::ResponseShape, "POST /embed vector holds a non-finite value");
                v.values.push_back(x.get<double>());
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace longdoc
