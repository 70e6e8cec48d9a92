#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flora/catalog.hpp"
#include "flora/evaluator.hpp"

namespace flora {

enum class Confidence { High, Medium, Low };

const char* confidence_name(Confidence confidence);

struct ConfidencePolicy {
    double high_above = 0.70;          // exclusive lower bound for HIGH
    double medium_at_or_above = 0.40;  // inclusive
    double suggestion_floor = 0.15;    // inclusive
    int max_suggestions = 5;
};

struct Suggestion {
    std::string canonical_name;
    double score = 0.0;
    Confidence confidence = Confidence::Low;
};

struct IdentificationResponse {
    std::vector<Suggestion> suggestions;
    std::string provider_id;
    std::int64_t elapsed_ms = 0;
};

Confidence label_confidence(double score, const ConfidencePolicy& policy);

// Keeps ranked labels at or above the suggestion floor, in input order,
// truncated to max_suggestions. Labels may be taxon ids or names known to
// the catalog.
IdentificationResponse make_suggestions(const PredictionRecord& prediction,
                                        const SpeciesCatalog& catalog,
                                        const ConfidencePolicy& policy);

struct ScorerConfig {
    std::string base_url;  // e.g. http://localhost:9100
    std::string path = "/score";
    std::string auth_token;
    int timeout_ms = 10000;
    int max_retries = 5;
    int backoff_initial_ms = 100;
};

// Client for an external ranked-scores API. Retries rate-limited responses
// with exponential backoff up to the configured cap.
class ExternalScorerClient {
public:
    explicit ExternalScorerClient(ScorerConfig config);

    PredictionRecord fetch_scores(const std::string& image_ref) const;

private:
    ScorerConfig config_;
};

}  // namespace flora
