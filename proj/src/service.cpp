#include "flora/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <thread>

#include "flora/errors.hpp"

namespace flora {

namespace {

using nlohmann::json;

PredictionRecord record_from_scores(const json& scores) {
    if (!scores.is_array() || scores.empty()) {
        throw Error(ErrorCode::InvalidPayload, "scores must be a non-empty array");
    }
    PredictionRecord record;
    record.provider_id = "passthrough";
    for (const auto& pair : scores) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
            !pair[1].is_number()) {
            throw Error(ErrorCode::InvalidPayload, "score entry is not [label, score]");
        }
        double score = pair[1].get<double>();
        if (score < 0.0 || score > 1.0) {
            throw Error(ErrorCode::InvalidPayload,
                        "score out of range: " + std::to_string(score));
        }
        record.ranked.push_back({pair[0].get<std::string>(), score});
    }
    std::stable_sort(record.ranked.begin(), record.ranked.end(),
                     [](const RankedScore& a, const RankedScore& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.label_id < b.label_id;
                     });
    return record;
}

json response_to_json(const IdentificationResponse& response) {
    json suggestions = json::array();
    for (const auto& suggestion : response.suggestions) {
        suggestions.push_back({{"canonical_name", suggestion.canonical_name},
                               {"score", suggestion.score},
                               {"confidence", confidence_name(suggestion.confidence)}});
    }
    return {{"suggestions", std::move(suggestions)},
            {"provider_id", response.provider_id},
            {"elapsed_ms", response.elapsed_ms}};
}

}  // namespace

struct IdentifyService::Impl {
    const SpeciesCatalog& catalog;
    ServiceConfig config;
    std::ostream* log;
    httplib::Server server;
    std::thread thread;
    int bound_port = -1;

    Impl(const SpeciesCatalog& catalog_in, ServiceConfig config_in, std::ostream* log_in)
        : catalog(catalog_in), config(std::move(config_in)), log(log_in) {
        server.set_payload_max_length(config.max_body_bytes);

        server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(R"({"status":"ok"})", "application/json");
        });

        server.Post("/v1/identify", [this](const httplib::Request& req,
                                           httplib::Response& res) {
            const auto started = std::chrono::steady_clock::now();
            int status = 200;
            try {
                json body;
                try {
                    body = json::parse(req.body);
                } catch (const json::exception& e) {
                    throw Error(ErrorCode::InvalidPayload, e.what());
                }

                PredictionRecord record;
                if (body.contains("scores")) {
                    record = record_from_scores(body["scores"]);
                } else if (body.contains("image_ref")) {
                    if (!config.scorer) {
                        throw Error(ErrorCode::InvalidPayload,
                                    "no external scorer configured for image_ref requests");
                    }
                    ExternalScorerClient client(*config.scorer);
                    record = client.fetch_scores(body["image_ref"].get<std::string>());
                } else {
                    throw Error(ErrorCode::InvalidPayload,
                                "payload needs 'scores' or 'image_ref'");
                }

                IdentificationResponse response =
                    make_suggestions(record, catalog, config.policy);
                response.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - started)
                                          .count();
                res.set_content(response_to_json(response).dump(), "application/json");
            } catch (const Error& e) {
                switch (e.code()) {
                    case ErrorCode::InvalidPayload:
                    case ErrorCode::UnknownTaxon:
                    case ErrorCode::ScoreOutOfRange:
                        status = 400;
                        break;
                    case ErrorCode::ScorerUnreachable:
                    case ErrorCode::ScorerRateLimited:
                    case ErrorCode::MalformedScorerResponse:
                        status = 502;
                        break;
                    default:
                        status = 500;
                }
                res.status = status;
                res.set_content(json{{"error", e.what()}}.dump(), "application/json");
            }
            if (log) {
                auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
                (*log) << "identify status=" << (status == 200 ? res.status : status)
                       << " bytes=" << req.body.size() << " elapsed_ms=" << elapsed << "\n";
            }
        });
    }
};

IdentifyService::IdentifyService(const SpeciesCatalog& catalog, ServiceConfig config,
                                 std::ostream* log)
    : impl_(std::make_unique<Impl>(catalog, std::move(config), log)) {}

IdentifyService::~IdentifyService() { stop(); }

int IdentifyService::start() {
    if (impl_->config.port == 0) {
        impl_->bound_port =
            impl_->server.bind_to_any_port(impl_->config.listen_addr);
    } else {
        impl_->server.bind_to_port(impl_->config.listen_addr, impl_->config.port);
        impl_->bound_port = impl_->config.port;
    }
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return impl_->bound_port;
}

void IdentifyService::run() {
    impl_->server.listen(impl_->config.listen_addr, impl_->config.port);
}

void IdentifyService::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace flora
