#include "flora/errors.hpp"

namespace flora {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyCatalog: return "EmptyCatalog";
        case ErrorCode::DuplicateCanonical: return "DuplicateCanonical";
        case ErrorCode::DuplicateSynonym: return "DuplicateSynonym";
        case ErrorCode::MalformedBinomial: return "MalformedBinomial";
        case ErrorCode::UnknownTaxon: return "UnknownTaxon";
        case ErrorCode::MissingDescriptor: return "MissingDescriptor";
        case ErrorCode::MalformedDescriptor: return "MalformedDescriptor";
        case ErrorCode::CoreFileMissing: return "CoreFileMissing";
        case ErrorCode::JoinKeyMissing: return "JoinKeyMissing";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EmptyResult: return "EmptyResult";
        case ErrorCode::EmptyManifest: return "EmptyManifest";
        case ErrorCode::InconsistentSplit: return "InconsistentSplit";
        case ErrorCode::LabelContainsDelimiter: return "LabelContainsDelimiter";
        case ErrorCode::MalformedRecord: return "MalformedRecord";
        case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
        case ErrorCode::DistributionNotNormalized: return "DistributionNotNormalized";
        case ErrorCode::MissingTruth: return "MissingTruth";
        case ErrorCode::MissingSource: return "MissingSource";
        case ErrorCode::MismatchedImageSets: return "MismatchedImageSets";
        case ErrorCode::ScorerUnreachable: return "ScorerUnreachable";
        case ErrorCode::ScorerRateLimited: return "ScorerRateLimited";
        case ErrorCode::MalformedScorerResponse: return "MalformedScorerResponse";
        case ErrorCode::InvalidPayload: return "InvalidPayload";
        case ErrorCode::UsageError: return "UsageError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace flora
