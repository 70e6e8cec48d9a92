#include "flora/identify.hpp"

#include "flora/errors.hpp"

namespace flora {

const char* confidence_name(Confidence confidence) {
    switch (confidence) {
        case Confidence::High: return "HIGH";
        case Confidence::Medium: return "MEDIUM";
        case Confidence::Low: return "LOW";
    }
    return "LOW";
}

Confidence label_confidence(double score, const ConfidencePolicy& policy) {
    if (score < 0.0 || score > 1.0) {
        throw Error(ErrorCode::ScoreOutOfRange, std::to_string(score));
    }
    if (score > policy.high_above) return Confidence::High;
    if (score >= policy.medium_at_or_above) return Confidence::Medium;
    return Confidence::Low;
}

IdentificationResponse make_suggestions(const PredictionRecord& prediction,
                                        const SpeciesCatalog& catalog,
                                        const ConfidencePolicy& policy) {
    IdentificationResponse response;
    response.provider_id = prediction.provider_id;
    for (const auto& [label, score] : prediction.ranked) {
        if (static_cast<int>(response.suggestions.size()) >= policy.max_suggestions) break;
        if (score < policy.suggestion_floor) continue;
        Suggestion suggestion;
        if (auto taxon_id = catalog.resolve_name(label)) {
            suggestion.canonical_name = catalog.taxon(*taxon_id).canonical_name;
        } else {
            suggestion.canonical_name = catalog.taxon(label).canonical_name;  // throws UnknownTaxon
        }
        suggestion.score = score;
        suggestion.confidence = label_confidence(score, policy);
        response.suggestions.push_back(std::move(suggestion));
    }
    return response;
}

}  // namespace flora
