#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <thread>

#include "flora/errors.hpp"
#include "flora/identify.hpp"

namespace flora {

namespace {

using nlohmann::json;

std::vector<RankedScore> parse_ranked(const json& doc) {
    const json* list = nullptr;
    if (doc.is_array()) {
        list = &doc;
    } else if (doc.is_object() && doc.contains("results") && doc["results"].is_array()) {
        list = &doc["results"];
    } else {
        throw Error(ErrorCode::MalformedScorerResponse, "expected array or {results: [...]}");
    }
    std::vector<RankedScore> ranked;
    for (const auto& pair : *list) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
            !pair[1].is_number()) {
            throw Error(ErrorCode::MalformedScorerResponse, "ranked entry is not [label, score]");
        }
        ranked.push_back({pair[0].get<std::string>(), pair[1].get<double>()});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedScore& a, const RankedScore& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.label_id < b.label_id;
                     });
    return ranked;
}

}  // namespace

ExternalScorerClient::ExternalScorerClient(ScorerConfig config) : config_(std::move(config)) {}

PredictionRecord ExternalScorerClient::fetch_scores(const std::string& image_ref) const {
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(0, config_.timeout_ms * 1000);
    client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
    httplib::Headers headers;
    if (!config_.auth_token.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.auth_token);
    }

    json body;
    body["image_ref"] = image_ref;
    const std::string payload = body.dump();

    int backoff_ms = config_.backoff_initial_ms;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        auto result = client.Post(config_.path, headers, payload, "application/json");
        if (!result) {
            throw Error(ErrorCode::ScorerUnreachable,
                        config_.base_url + ": " + httplib::to_string(result.error()));
        }
        if (result->status == 429 || result->status == 503) {
            if (attempt == config_.max_retries) {
                throw Error(ErrorCode::ScorerRateLimited,
                            "still rate-limited after " +
                                std::to_string(config_.max_retries) + " retries");
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
            continue;
        }
        if (result->status != 200) {
            throw Error(ErrorCode::ScorerUnreachable,
                        "scorer returned status " + std::to_string(result->status));
        }
        PredictionRecord record;
        record.image_id = image_ref;
        record.provider_id = config_.base_url;
        record.is_full_distribution = false;
        try {
            record.ranked = parse_ranked(json::parse(result->body));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::MalformedScorerResponse, e.what());
        }
        validate_prediction(record);
        return record;
    }
    throw Error(ErrorCode::ScorerRateLimited, "retry loop exhausted");
}

}  // namespace flora
